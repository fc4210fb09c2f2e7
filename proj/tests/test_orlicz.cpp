#include <cmath>
#include <stdexcept>
#include <vector>

#include "bostat/orlicz.hpp"
#include "bostat/rng.hpp"
#include "brute_oracles.hpp"
#include "doctest.h"

using namespace bostat;

TEST_SUITE_BEGIN("orlicz");

TEST_CASE("young_eval matches the closed forms") {
  CHECK(young_eval(psi2(), 1.0) == doctest::Approx(1.7182818284590452).epsilon(1e-14));
  CHECK(young_eval(psi2(), 0.0) == 0.0);
  CHECK(young_eval(YoungFunction::exponential(1.0), 2.0) ==
        doctest::Approx(6.3890560989306502).epsilon(1e-14));
  CHECK(young_eval(YoungFunction::power(2.0), 3.0) == doctest::Approx(9.0));
  CHECK(young_eval(psi2(), 1.5) == doctest::Approx(std::expm1(2.25)).epsilon(1e-15));
  CHECK_THROWS_AS(young_eval(psi2(), -1.0), std::domain_error);
  CHECK_THROWS_AS(young_eval(psi2(), std::nan("")), std::domain_error);
}

TEST_CASE("young_inv matches the closed forms and inverts young_eval") {
  CHECK(young_inv(psi2(), 1.0) == doctest::Approx(0.83255461115769776).epsilon(1e-14));
  CHECK(young_inv(psi2(), 0.0) == 0.0);
  CHECK(young_inv(psi2(), 2.0) == doctest::Approx(1.0481470739682049).epsilon(1e-14));
  CHECK_THROWS_AS(young_inv(psi2(), -0.5), std::domain_error);

  const std::vector<YoungFunction> gauges = {
      psi2(), YoungFunction::exponential(1.0), YoungFunction::exponential(3.0),
      YoungFunction::power(1.0), YoungFunction::power(2.5)};
  for (const auto& psi : gauges) {
    // Stay below the exponential-argument overflow clamp: beyond it
    // young_eval saturates to +inf by design and cannot round-trip.
    const double x_max = psi.kind == YoungFunction::Kind::Exponential
                             ? std::pow(700.0, 1.0 / psi.p)
                             : 20.0;
    for (double x = 1e-6; x <= x_max; x *= 2.3) {
      const double back = young_inv(psi, young_eval(psi, x));
      CHECK(back == doctest::Approx(x).epsilon(1e-10));
    }
  }
}

TEST_CASE("modulus_eval matches the closed forms") {
  CHECK(modulus_eval(Modulus{0.5, 0.5}, 1.0) == doctest::Approx(1.0));
  CHECK(modulus_eval(Modulus{0.5, 0.0}, 0.25) == 0.5);  // exact sqrt
  CHECK(modulus_eval(Modulus{0.5, 0.5}, 1.0 / std::exp(1.0)) ==
        doctest::Approx(0.8577638849607068).epsilon(1e-14));
  CHECK(modulus_eval(Modulus{1.0, 2.0}, 0.5) ==
        doctest::Approx(0.5 * std::pow(1.0 - std::log(0.5), 2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(modulus_eval(Modulus{0.5, 0.0}, 0.0), std::domain_error);
  CHECK_THROWS_AS(modulus_eval(Modulus{0.5, 0.0}, 1.5), std::domain_error);
  CHECK_THROWS_AS(modulus_eval(Modulus{0.0, 0.0}, 0.5), std::domain_error);
  CHECK_THROWS_AS(modulus_eval(Modulus{0.5, -1.0}, 0.5), std::domain_error);
}

TEST_CASE("empirical_orlicz_norm solves the textbook instances") {
  const std::vector<double> zeros(8, 0.0);
  CHECK(empirical_orlicz_norm({zeros, 0.125}, psi2()) == 0.0);
  CHECK(empirical_orlicz_norm({{}, 1.0}, psi2()) == 0.0);

  const std::vector<double> one{1.0};
  CHECK(empirical_orlicz_norm({one, 1.0}, psi2()) ==
        doctest::Approx(1.2011224087864498).epsilon(1e-11));

  const std::vector<double> zero_one{0.0, 1.0};
  CHECK(empirical_orlicz_norm({zero_one, 0.5}, psi2()) ==
        doctest::Approx(0.9540645820000014).epsilon(1e-11));

  // Budget generalizes the right-hand side of the defining inequality.
  CHECK(empirical_orlicz_norm({zero_one, 0.5}, psi2(), 2.0) ==
        doctest::Approx(0.78824801589322875).epsilon(1e-11));

  CHECK_THROWS_AS(empirical_orlicz_norm({one, 0.0}, psi2()), std::domain_error);
  CHECK_THROWS_AS(empirical_orlicz_norm({one, 1.0}, psi2(), 0.0),
                  std::domain_error);
  const std::vector<double> bad{1.0, std::nan("")};
  CHECK_THROWS_AS(empirical_orlicz_norm({bad, 0.5}, psi2()), std::domain_error);
  const std::vector<double> neg{1.0, -0.5};
  CHECK_THROWS_AS(empirical_orlicz_norm({neg, 0.5}, psi2()), std::domain_error);
}

TEST_CASE("solver properties: homogeneity, monotonicity, consistency") {
  Rng rng(RngSpec{42, 0});
  std::vector<double> data(257);
  for (double& v : data) v = std::fabs(rng.next_gaussian());
  const double w = 1.0 / static_cast<double>(data.size());

  const std::vector<YoungFunction> gauges = {
      psi2(), YoungFunction::exponential(1.0), YoungFunction::power(3.0)};
  for (const auto& psi : gauges) {
    const double base = empirical_orlicz_norm({data, w}, psi);
    CHECK(base > 0.0);

    for (const double c : {1e-3, 3.0, 1e6}) {
      std::vector<double> scaled = data;
      for (double& v : scaled) v *= c;
      CHECK(empirical_orlicz_norm({scaled, w}, psi) ==
            doctest::Approx(c * base).epsilon(1e-9));
    }

    std::vector<double> bumped = data;
    bumped[17] += 2.0;
    CHECK(empirical_orlicz_norm({bumped, w}, psi) >= base);

    // Re-evaluating the defining sum at the solution recovers the budget.
    double sum = 0.0;
    for (const double v : data) sum += young_eval(psi, v / base);
    CHECK(w * sum == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("solver stays finite under extreme magnitudes") {
  const std::vector<double> huge{1e300, 1e299};
  const double k_huge = empirical_orlicz_norm({huge, 0.5}, psi2());
  CHECK(std::isfinite(k_huge));
  CHECK(k_huge > 1e299);

  const std::vector<double> tiny{1e-300, 5e-301};
  const double k_tiny = empirical_orlicz_norm({tiny, 0.5}, psi2());
  CHECK(std::isfinite(k_tiny));
  CHECK(k_tiny > 0.0);
}

TEST_CASE("solver agrees with a naive bisection oracle") {
  Rng rng(RngSpec{7, 3});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> data(1 + static_cast<std::size_t>(trial) * 3);
    for (double& v : data) v = std::fabs(rng.next_gaussian());
    const double w = 1.0 / static_cast<double>(data.size());
    const double fast = empirical_orlicz_norm({data, w}, psi2());
    const double slow = brute::orlicz_norm(data, w);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-9));
  }
}

TEST_CASE("gaussian magnitudes land on the sub-Gaussian constant") {
  Rng rng(RngSpec{11, 0});
  std::vector<double> mags(100000);
  for (double& v : mags) v = std::fabs(rng.next_gaussian());
  const double k = empirical_orlicz_norm(
      {mags, 1.0 / static_cast<double>(mags.size())}, psi2());
  CHECK(k == doctest::Approx(1.6329931618554521).epsilon(0.012));
  // Sharpness of the sub-Gaussian inequality: sqrt(3/8)*K = sigma = 1.
  CHECK(std::sqrt(3.0 / 8.0) * k == doctest::Approx(1.0).epsilon(0.012));
}

TEST_SUITE_END();
