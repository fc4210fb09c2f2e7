#include "bostat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bostat/parallel.hpp"
#include "bostat/quadrature.hpp"

namespace bostat {

double brownian_modulus_limit() { return std::sqrt(8.0 / 3.0); }

RatioTable modulus_ratio_table(const SampledPath& path, const LagGrid& lags,
                               std::uint64_t replicate) {
  RatioTable table;
  table.replicate = replicate;
  const YoungFunction psi = psi2();
  for (const std::size_t m : lags.resolve(path.N)) {
    RatioRow row;
    row.lag = m;
    row.h = static_cast<double>(m) / static_cast<double>(path.N);
    row.modulus = orlicz_modulus_discrete(path, m, psi);
    row.ratio = row.modulus / std::sqrt(row.h);
    table.rows.push_back(row);
  }
  return table;
}

namespace {

bool close_rel(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

RateFit deviation_rate_fit(const std::vector<RatioTable>& tables,
                           const std::vector<double>& h_grid) {
  std::vector<double> grid = h_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return close_rel(a, b); }),
             grid.end());
  if (grid.size() < 2)
    throw std::domain_error("deviation_rate_fit: need >= 2 distinct lags");

  constexpr double kFloor = 1e-6;
  const double limit = brownian_modulus_limit();
  double slope_sum = 0.0;
  std::size_t used = 0;
  bool any_unfloored = false;
  for (const RatioTable& table : tables) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t npts = 0;
    for (const RatioRow& row : table.rows) {
      const bool in_grid = std::any_of(grid.begin(), grid.end(),
                                       [&](double g) { return close_rel(row.h, g); });
      if (!in_grid) continue;
      const double dev = row.ratio - limit;
      if (dev <= 0.0) continue;  // one-sided: only upward deviations count
      if (dev > kFloor) any_unfloored = true;
      const double x = std::log(row.h);
      const double y = std::log(std::max(dev, kFloor));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++npts;
    }
    if (npts < 2) continue;
    const double n = static_cast<double>(npts);
    const double denom = sxx - sx * sx / n;
    if (denom <= 0.0) continue;  // all surviving lags coincide
    slope_sum += (sxy - sx * sy / n) / denom;
    ++used;
  }

  RateFit fit;
  fit.replicates_used = used;
  fit.degenerate = used == 0 || !any_unfloored;
  fit.slope = used > 0 ? slope_sum / static_cast<double>(used) : 0.0;
  return fit;
}

double modulus_tail_bound(double p, double r, double h, double h0,
                          double kappa) {
  if (!(p > 1.0) || !(p < 4.0 / 3.0))
    throw std::domain_error("modulus_tail_bound: p must lie in (1, 4/3)");
  if (!(r > 0.0)) throw std::domain_error("modulus_tail_bound: r must be > 0");
  if (!(h > 0.0) || !(h0 >= 0.0) || !(kappa >= 0.0))
    throw std::domain_error("modulus_tail_bound: need h > 0, h0 >= 0, kappa >= 0");
  const double raw = std::pow(16.0, p) * std::pow(1.0 + kappa, p) *
                     std::pow((1.0 + r) / r, p) *
                     std::pow(std::max(h, h0), p - 1.0) /
                     std::sqrt(1.0 - 0.75 * p);
  return std::min(1.0, raw);
}

double TailEstimate::std_error() const {
  if (replicates == 0) return 0.0;
  const double n = static_cast<double>(replicates);
  return std::sqrt(estimate * (1.0 - estimate) / n);
}

TailEstimate tail_probability_mc(double h, double r, std::size_t reps,
                                 std::size_t N, RngSpec rng,
                                 unsigned threads) {
  if (!(h > 0.0) || h > 1.0)
    throw std::domain_error("tail_probability_mc: h must lie in (0,1]");
  if (N == 0 || h * static_cast<double>(N) < 1.0)
    throw std::domain_error("tail_probability_mc: need h*N >= 1");
  if (reps == 0) throw std::domain_error("tail_probability_mc: reps must be >= 1");
  if (!(r >= 0.0)) throw std::domain_error("tail_probability_mc: r must be >= 0");

  const auto m =
      static_cast<std::size_t>(std::floor(h * static_cast<double>(N)));
  const double threshold = brownian_modulus_limit() * std::sqrt(h) * (1.0 + r);
  const YoungFunction psi = psi2();

  std::vector<unsigned char> exceeds(reps, 0);
  parallel_for_index(reps, threads, [&](std::size_t i) {
    const SampledPath path =
        sample_brownian(N, 1, RngSpec{rng.seed, rng.stream + i});
    exceeds[i] = orlicz_modulus_discrete(path, m, psi) >= threshold ? 1 : 0;
  });

  TailEstimate est;
  est.replicates = reps;
  for (const unsigned char e : exceeds) est.exceed_count += e;
  est.estimate =
      static_cast<double>(est.exceed_count) / static_cast<double>(reps);
  return est;
}

ShrinkCheck shrink_bound_check(double K2, double p) {
  if (!(p >= 1.0) || !(p <= 2.0))
    throw std::domain_error("shrink_bound_check: p must lie in [1,2]");
  if (!(K2 > p)) throw std::domain_error("shrink_bound_check: need K^2 > p");

  // Substituting v = (t/(1-t))^p maps the improper integral to
  // int_0^1 2p t^{p-1} (1-t)^{K2-p-1} dt on a compact interval.
  const auto integrand = [K2, p](double t) {
    const double tp = p == 1.0 ? 1.0 : std::pow(t, p - 1.0);
    const double q = K2 - p - 1.0;
    const double om = q == 0.0 ? 1.0 : std::pow(1.0 - t, q);
    return 2.0 * p * tp * om;
  };

  double integral;
  const double q = K2 - p;  // tail exponent at t = 1
  if (q >= 1.0) {
    const double rough = adaptive_simpson(integrand, 0.0, 1.0, 1e-6);
    integral = adaptive_simpson(integrand, 0.0, 1.0,
                                std::max(1e-13, 1e-9 * std::fabs(rough)));
  } else {
    // Integrable endpoint singularity: stop short of t = 1 and add the
    // series tail int_0^eps 2p (1-s)^{p-1} s^{q-1} ds expanded in s.
    const double eps = 1e-3;
    const double cut = 1.0 - eps;
    const double rough = adaptive_simpson(integrand, 0.0, cut, 1e-6);
    integral = adaptive_simpson(integrand, 0.0, cut,
                                std::max(1e-13, 1e-9 * std::fabs(rough)));
    const double a1 = p - 1.0;
    const double a2 = (p - 1.0) * (p - 2.0) / 2.0;
    integral += 2.0 * p *
                (std::pow(eps, q) / q - a1 * std::pow(eps, q + 1.0) / (q + 1.0) +
                 a2 * std::pow(eps, q + 2.0) / (q + 2.0));
  }

  ShrinkCheck check;
  check.integral = integral;
  check.bound = 2.0 + 2.0 / (K2 / p - 1.0);
  check.exact_p1 =
      p == 1.0 ? 2.0 / (K2 - 1.0) : std::numeric_limits<double>::quiet_NaN();
  check.ok = integral <= check.bound * (1.0 + 1e-6);
  if (p == 1.0)
    check.ok = check.ok && std::fabs(integral - check.exact_p1) <=
                               1e-8 * std::max(1.0, check.exact_p1);
  return check;
}

double gaussian_mgf_oracle(double K2, int dim) {
  if (!(K2 > 2.0))
    throw std::domain_error("gaussian_mgf_oracle: need K^2 > 2");
  if (dim != 1 && dim != 2)
    throw std::domain_error("gaussian_mgf_oracle: dim must be 1 or 2");
  return std::pow(1.0 - 2.0 / K2, -0.5 * static_cast<double>(dim));
}

}  // namespace bostat
