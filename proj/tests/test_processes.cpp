// Path generation: RNG streams, Brownian sampling, partial-sum processes,
// parametric signals and their antiderivatives, model samplers.
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bostat/orlicz.hpp"
#include "bostat/processes.hpp"
#include "bostat/quadrature.hpp"
#include "bostat/rng.hpp"
#include "doctest.h"

using namespace bostat;

namespace {

std::vector<double> gaussian_vector(std::size_t n, RngSpec spec) {
  Rng rng(spec);
  std::vector<double> out(n);
  for (auto& x : out) x = rng.next_gaussian();
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("processes");

TEST_CASE("rng reproduces identical draw sequences for identical specs") {
  Rng a({42, 7});
  Rng b({42, 7});
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
  for (int i = 0; i < 16; ++i) CHECK(a.next_gaussian() == b.next_gaussian());
}

TEST_CASE("rng streams and seeds produce distinct sequences") {
  Rng base({42, 0});
  Rng stream({42, 1});
  Rng seed({43, 0});
  bool stream_differs = false, seed_differs = false;
  Rng base2({42, 0});
  for (int i = 0; i < 8; ++i) {
    const auto w = base.next_u64();
    if (w != stream.next_u64()) stream_differs = true;
    const auto w2 = base2.next_u64();
    if (w2 != seed.next_u64()) seed_differs = true;
  }
  CHECK(stream_differs);
  CHECK(seed_differs);
}

TEST_CASE("rng uniform draws stay strictly inside the open unit interval") {
  Rng rng({5, 3});
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.next_unit();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("rng gaussian draws have standard-normal moments") {
  Rng rng({11, 0});
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0, sum_q = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.next_gaussian();
    sum += x;
    sum_sq += x * x;
    sum_q += x * x * x * x;
  }
  CHECK(std::fabs(sum / n) < 0.01);
  CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(sum_q / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("rng sign draws are symmetric Rademacher values") {
  Rng rng({13, 2});
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double s = rng.next_sign();
    CHECK((s == 1.0 || s == -1.0));
    sum += s;
  }
  CHECK(std::fabs(sum / 100000.0) < 0.02);
}

TEST_CASE("sample_brownian starts at zero and is replicate-deterministic") {
  const auto w = sample_brownian(64, 3, {9, 4});
  CHECK(w.N == 64);
  CHECK(w.d == 3);
  CHECK(w.values.size() == 65 * 3);
  for (std::size_t c = 0; c < 3; ++c) CHECK(w.at(0)[c] == 0.0);
  const auto w2 = sample_brownian(64, 3, {9, 4});
  CHECK(std::equal(w.values.begin(), w.values.end(), w2.values.begin()));
  const auto w3 = sample_brownian(64, 3, {9, 5});
  CHECK(!std::equal(w.values.begin(), w.values.end(), w3.values.begin()));
  CHECK_THROWS_AS(sample_brownian(0, 1, {1, 0}), std::domain_error);
  CHECK_THROWS_AS(sample_brownian(8, 0, {1, 0}), std::domain_error);
}

TEST_CASE("sample_brownian endpoint and scaled quarter-point have unit variance") {
  const std::size_t N = 1024;
  const int reps = 2000;
  double var_end = 0.0, var_quarter = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto w = sample_brownian(N, 1, {321, static_cast<std::uint64_t>(r)});
    const double end = w.scalar_at(N);
    const double quarter = 2.0 * w.scalar_at(N / 4);  // Var(2 W(1/4)) = 1
    var_end += end * end;
    var_quarter += quarter * quarter;
  }
  CHECK(var_end / reps == doctest::Approx(1.0).epsilon(0.07));
  CHECK(var_quarter / reps == doctest::Approx(1.0).epsilon(0.07));
}

TEST_CASE("partial_sum_polygonal matches hand-computed small cases") {
  const auto one = Observations::from({1.0});
  const auto p1 = partial_sum_polygonal(one, 2);
  REQUIRE(p1.N == 2);
  CHECK(p1.scalar_at(0) == 0.0);
  CHECK(p1.scalar_at(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p1.scalar_at(2) == doctest::Approx(1.0).epsilon(1e-15));

  const auto pm = Observations::from({1.0, -1.0});
  const auto p2 = partial_sum_polygonal(pm, 1);
  REQUIRE(p2.N == 2);
  CHECK(p2.scalar_at(0) == 0.0);
  CHECK(p2.scalar_at(1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(p2.scalar_at(2) == doctest::Approx(0.0));

  CHECK_THROWS_AS(partial_sum_polygonal(pm, 0), std::domain_error);
  CHECK_THROWS_AS(partial_sum_polygonal(Observations{}, 1), std::domain_error);
}

TEST_CASE("polygonal and step partial sums agree exactly on the coarse grid") {
  for (std::size_t d : {std::size_t{1}, std::size_t{3}}) {
    Observations obs;
    obs.n = 7;
    obs.d = d;
    obs.data = gaussian_vector(7 * d, {77, d});
    const std::size_t refine = 3;
    const auto poly = partial_sum_polygonal(obs, refine);
    const auto prefix = partial_sum_step(obs);
    const auto step = prefix.step_path();
    REQUIRE(poly.N == refine * obs.n);
    REQUIRE(step.N == obs.n);
    for (std::size_t k = 0; k <= obs.n; ++k)
      for (std::size_t c = 0; c < d; ++c)
        CHECK(poly.at(k * refine)[c] == step.at(k)[c]);
  }
}

TEST_CASE("step_eval picks the floor prefix sum at arbitrary times") {
  const auto prefix = partial_sum_step(Observations::from({1.0, -1.0}));
  CHECK(step_eval(prefix, 0.0)[0] == 0.0);
  CHECK(step_eval(prefix, 0.75)[0] ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(step_eval(prefix, 1.0)[0] == doctest::Approx(0.0));
  CHECK_THROWS_AS(step_eval(prefix, -0.1), std::domain_error);
  CHECK_THROWS_AS(step_eval(prefix, 1.1), std::domain_error);
}

TEST_CASE("prefix sums telescope back to the observations") {
  Observations obs;
  obs.n = 50;
  obs.d = 3;
  obs.data = gaussian_vector(150, {31, 0});
  const auto prefix = partial_sum_step(obs);
  REQUIRE(prefix.P.size() == 51 * 3);
  for (std::size_t t = 1; t <= obs.n; ++t)
    for (std::size_t c = 0; c < 3; ++c)
      CHECK(prefix.P[t * 3 + c] - prefix.P[(t - 1) * 3 + c] ==
            doctest::Approx(obs.row(t)[c]).epsilon(1e-12));
}

TEST_CASE("polygonal-step gap norm is bounded by the scaled observation norm") {
  // Interpolation-gap inequality at desk scale, both noise families:
  // the sequential Orlicz norm of |S_polygonal - S_step| over the refined
  // grid is at most the observation-magnitude norm divided by sqrt(n).
  const std::size_t n = 32, refine = 4;
  for (int family = 0; family < 2; ++family) {
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
      Rng rng({909 + static_cast<std::uint64_t>(family), rep});
      Observations obs;
      obs.n = n;
      obs.d = 1;
      obs.data.resize(n);
      for (auto& x : obs.data)
        x = family == 0 ? rng.next_gaussian() : rng.next_sign();

      const auto poly = partial_sum_polygonal(obs, refine);
      const auto prefix = partial_sum_step(obs);
      const std::size_t M = refine * n;
      std::vector<double> gap(M + 1);
      for (std::size_t i = 0; i <= M; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(M);
        gap[i] = std::fabs(poly.scalar_at(i) - step_eval(prefix, u)[0]);
      }
      const double lhs = empirical_orlicz_norm(
          {gap, 1.0 / static_cast<double>(M)}, psi2(), 1.0);

      std::vector<double> mags(n);
      for (std::size_t t = 1; t <= n; ++t) mags[t - 1] = std::fabs(obs.row(t)[0]);
      const double rhs = empirical_orlicz_norm(
                             {mags, 1.0 / static_cast<double>(n)}, psi2(), 1.0) /
                         std::sqrt(static_cast<double>(n));
      CHECK(lhs <= rhs + 1e-9);
    }
  }
}

TEST_CASE("signal_eval matches the pointwise definitions") {
  CHECK(signal_eval(DopplerSignal{1.0}, 0.0) == 0.0);
  CHECK(signal_eval(DopplerSignal{2.0}, 2.0 / std::acos(-1.0)) ==
        doctest::Approx(0.0).epsilon(1e-12));

  FlipSignal flip{0.0625, 1.0, std::vector<int>(9, 1)};
  CHECK(signal_eval(flip, 0.03) == doctest::Approx(1.0));
  CHECK(signal_eval(flip, 0.1) == doctest::Approx(-1.0));
  flip.signs[0] = -1;
  CHECK(signal_eval(flip, 0.03) == doctest::Approx(-1.0));

  const SineSignal sine{3.0, 0.125};
  CHECK(signal_eval(sine, 0.125 * std::acos(-1.0) / 2.0) ==
        doctest::Approx(3.0).epsilon(1e-12));

  const BumpSignal bump{0.25, 0.5, 2.0};
  CHECK(signal_eval(bump, 0.2) == 0.0);
  CHECK(signal_eval(bump, 0.25) == 2.0);
  CHECK(signal_eval(bump, 0.3) == 2.0);
  CHECK(signal_eval(bump, 0.5) == 2.0);
  CHECK(signal_eval(bump, 0.51) == 0.0);

  CHECK(signal_eval(ZeroSignal{}, 0.4) == 0.0);
}

TEST_CASE("signal validation rejects malformed parameters") {
  CHECK_THROWS_AS(signal_eval(FlipSignal{0.3, 1.0, {}}, 0.1),
                  std::domain_error);  // l not a dyadic reciprocal
  CHECK_THROWS_AS(signal_eval(FlipSignal{0.6, 1.0, {}}, 0.1),
                  std::domain_error);  // l > 1/2
  CHECK_THROWS_AS(signal_eval(FlipSignal{0.25, 1.0, {1, -1}}, 0.1),
                  std::domain_error);  // needs ceil(1/(2l))+1 = 3 signs
  CHECK_THROWS_AS(signal_eval(FlipSignal{0.25, 1.0, {1, 2, -1}}, 0.1),
                  std::domain_error);  // entries must be +-1
  CHECK_THROWS_AS(signal_eval(FlipSignal{0.25, 1.0, {}}, 0.1),
                  std::domain_error);  // signs not yet drawn
  CHECK_THROWS_AS(signal_eval(BumpSignal{0.5, 0.5, 1.0}, 0.1),
                  std::domain_error);  // a < b required
  CHECK_THROWS_AS(signal_eval(BumpSignal{0.2, 1.2, 1.0}, 0.1),
                  std::domain_error);  // b <= 1 required
  CHECK_THROWS_AS(signal_eval(SineSignal{1.0, 0.0}, 0.1), std::domain_error);
  CHECK_THROWS_AS(signal_eval(DopplerSignal{std::nan("")}, 0.1),
                  std::domain_error);
  CHECK_THROWS_AS(signal_eval(ZeroSignal{}, -0.2), std::domain_error);
  CHECK_THROWS_AS(signal_eval(ZeroSignal{}, 1.2), std::domain_error);
}

TEST_CASE("materialize_signal draws flip signs and leaves the rest alone") {
  const FlipSignal pending{0.0625, 1.0, {}};
  CHECK(!signal_is_deterministic(pending));
  Rng rng({5, 9});
  const auto fixed = materialize_signal(pending, rng);
  CHECK(signal_is_deterministic(fixed));
  const auto& flip = std::get<FlipSignal>(fixed);
  REQUIRE(flip.signs.size() == 9);
  for (int s : flip.signs) CHECK((s == 1 || s == -1));

  // Deterministic specs pass through without consuming randomness.
  Rng before({5, 9});
  Rng after({5, 9});
  const SineSignal sine{1.0, 0.25};
  CHECK(signal_is_deterministic(SignalSpec{sine}));
  const auto same = materialize_signal(sine, after);
  CHECK(std::get<SineSignal>(same).l == sine.l);
  CHECK(before.next_u64() == after.next_u64());
}

TEST_CASE("flip antiderivative is triangular and vanishes at block boundaries") {
  std::vector<int> signs(5, 1);
  signs[1] = -1;
  const FlipSignal flip{0.125, 2.0, signs};
  CHECK(signal_antiderivative(flip, 0.0) == 0.0);
  for (int k = 1; k <= 4; ++k)
    CHECK(signal_antiderivative(flip, 0.25 * k) == doctest::Approx(0.0));
  CHECK(signal_antiderivative(flip, 0.125) ==
        doctest::Approx(2.0 * 0.125).epsilon(1e-15));  // first peak, sign +1
  CHECK(signal_antiderivative(flip, 0.375) ==
        doctest::Approx(-2.0 * 0.125).epsilon(1e-15));  // second peak, sign -1
  for (int i = 0; i <= 200; ++i) {
    const double u = i / 200.0;
    CHECK(std::fabs(signal_antiderivative(flip, u)) <= 2.0 * 0.125 + 1e-15);
  }
}

TEST_CASE("sine and bump antiderivatives match their closed forms") {
  const SineSignal sine{1.5, 0.2};
  for (double u : {0.0, 0.1, 0.37, 0.8, 1.0})
    CHECK(signal_antiderivative(sine, u) ==
          doctest::Approx(1.5 * 0.2 * (1.0 - std::cos(u / 0.2))).epsilon(1e-14));

  const BumpSignal bump{0.25, 0.5, 2.0};
  CHECK(signal_antiderivative(bump, 0.1) == 0.0);
  CHECK(signal_antiderivative(bump, 0.3) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(signal_antiderivative(bump, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(signal_antiderivative(bump, 0.9) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("antiderivatives agree with direct quadrature of signal_eval") {
  std::vector<SignalSpec> specs = {
      FlipSignal{0.125, 1.3, std::vector<int>(5, 1)},
      SineSignal{2.0, 0.15},
      BumpSignal{0.2, 0.7, 1.1},
  };
  for (const auto& spec : specs) {
    for (double u : {0.21, 0.5, 0.93}) {
      const double direct = adaptive_simpson(
          [&](double v) { return signal_eval(spec, v); }, 0.0, u, 1e-11);
      CHECK(signal_antiderivative(spec, u) ==
            doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("doppler antiderivative matches independently computed references") {
  // High-precision reference values for the integral of sin(4/v) on [0, u].
  const std::vector<std::pair<double, double>> refs = {
      {0.00390625, 3.7652524440016901e-6},
      {0.015625, -2.9047852863143795e-6},
      {0.05, -8.4428075884926718e-5},
      {0.1, -0.0015687155369001891},
      {0.2, 0.0049097667641122647},
      {0.25, -0.015175068685506234},
      {0.5, 0.0049435931836526597},
      {0.75, 0.037779040102023283},
      {0.9, -0.10574168347275518},
      {1.0, -0.1928757037602066},
  };
  const DopplerSignal unit{1.0};
  CHECK(signal_antiderivative(unit, 0.0) == 0.0);
  for (const auto& [u, want] : refs)
    CHECK(signal_antiderivative(unit, u) == doctest::Approx(want).epsilon(1e-9));

  const DopplerSignal scaled{-2.5};
  CHECK(signal_antiderivative(scaled, 0.75) ==
        doctest::Approx(-2.5 * 0.037779040102023283).epsilon(1e-8));
}

TEST_CASE("doppler grid sweep agrees with pointwise antiderivatives") {
  const DopplerSignal unit{1.0};
  for (std::size_t N : {std::size_t{64}, std::size_t{1024}}) {
    const auto grid = signal_antiderivative_grid(unit, N);
    REQUIRE(grid.size() == N + 1);
    CHECK(grid[0] == 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i <= N; ++i) {
      const double u = static_cast<double>(i) / static_cast<double>(N);
      worst = std::max(worst,
                       std::fabs(grid[i] - signal_antiderivative(unit, u)));
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("closed-form signals produce exact antiderivative grids") {
  const SineSignal sine{1.0, 0.25};
  const auto grid = signal_antiderivative_grid(sine, 16);
  for (std::size_t i = 0; i <= 16; ++i)
    CHECK(grid[i] == signal_antiderivative(sine, i / 16.0));
  CHECK_THROWS_AS(signal_antiderivative_grid(sine, 0), std::domain_error);
}

TEST_CASE("white-noise paths with no drift reduce to plain Brownian motion") {
  const RngSpec rs{2024, 17};
  const auto plain = sample_brownian(256, 1, rs);
  const auto zero_signal = sample_white_noise_path(ZeroSignal{}, 4096.0, 256, rs);
  const auto zero_drift =
      sample_white_noise_path(SineSignal{1.0, 0.25}, 0.0, 256, rs);
  CHECK(std::equal(plain.values.begin(), plain.values.end(),
                   zero_signal.values.begin()));
  CHECK(std::equal(plain.values.begin(), plain.values.end(),
                   zero_drift.values.begin()));
}

TEST_CASE("drift-only white-noise path is the scaled antiderivative") {
  const double n_drift = 2.5;
  const auto path = white_noise_drift_only(BumpSignal{0.0, 1.0, 1.0}, n_drift, 16);
  REQUIRE(path.N == 16);
  for (std::size_t i = 0; i <= 16; ++i)
    CHECK(path.scalar_at(i) ==
          doctest::Approx(std::sqrt(n_drift) * (i / 16.0)).epsilon(1e-14));
}

TEST_CASE("precomputed drift grids reproduce the one-shot sampler bitwise") {
  const SineSignal sine{0.7, 0.125};
  const std::size_t N = 128;
  const double n_drift = 512.0;
  const RngSpec rs{88, 3};
  const auto direct = sample_white_noise_path(sine, n_drift, N, rs);
  const auto grid = signal_antiderivative_grid(sine, N);
  Rng rng(rs);
  const auto cached = white_noise_from_drift(grid, n_drift, N, rng);
  CHECK(std::equal(direct.values.begin(), direct.values.end(),
                   cached.values.begin()));
  CHECK_THROWS_AS(white_noise_from_drift(grid, n_drift, 64, rng),
                  std::domain_error);
}

TEST_CASE("white-noise flip paths draw fresh signs per replicate stream") {
  const FlipSignal pending{0.0625, 3.0, {}};
  const auto a = sample_white_noise_path(pending, 4096.0, 128, {50, 0});
  const auto a2 = sample_white_noise_path(pending, 4096.0, 128, {50, 0});
  const auto b = sample_white_noise_path(pending, 4096.0, 128, {50, 1});
  CHECK(std::equal(a.values.begin(), a.values.end(), a2.values.begin()));
  CHECK(!std::equal(a.values.begin(), a.values.end(), b.values.begin()));
}

TEST_CASE("regression sampler adds unit-variance noise to the signal") {
  const auto rad = sample_regression(ZeroSignal{}, 500, NoiseFamily::Rademacher,
                                     {71, 0});
  REQUIRE(rad.n == 500);
  for (std::size_t t = 1; t <= rad.n; ++t)
    CHECK((rad.row(t)[0] == 1.0 || rad.row(t)[0] == -1.0));

  const auto gauss = sample_regression(ZeroSignal{}, 100000,
                                       NoiseFamily::Gaussian, {71, 1});
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t t = 1; t <= gauss.n; ++t) {
    sum += gauss.row(t)[0];
    sum_sq += gauss.row(t)[0] * gauss.row(t)[0];
  }
  const double mean = sum / static_cast<double>(gauss.n);
  CHECK(std::fabs(mean) < 0.012);
  CHECK(sum_sq / static_cast<double>(gauss.n) - mean * mean ==
        doctest::Approx(1.0).epsilon(0.02));

  const auto rerun = sample_regression(ZeroSignal{}, 500,
                                       NoiseFamily::Rademacher, {71, 0});
  CHECK(std::equal(rad.data.begin(), rad.data.end(), rerun.data.begin()));
  CHECK_THROWS_AS(sample_regression(ZeroSignal{}, 0, NoiseFamily::Gaussian,
                                    {1, 0}),
                  std::domain_error);
}

TEST_CASE("noise-suppressed regression returns the bare signal values") {
  const auto flat = regression_drift_only(BumpSignal{0.0, 1.0, 2.0}, 20);
  for (std::size_t t = 1; t <= flat.n; ++t) CHECK(flat.row(t)[0] == 2.0);
  const auto sine = regression_drift_only(SineSignal{1.0, 0.25}, 8);
  for (std::size_t t = 1; t <= sine.n; ++t)
    CHECK(sine.row(t)[0] ==
          doctest::Approx(std::sin((t / 8.0) / 0.25)).epsilon(1e-15));
}

TEST_SUITE_END();
