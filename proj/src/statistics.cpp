#include "bostat/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bostat {

LagGrid LagGrid::all() { return LagGrid{Kind::All, {}}; }
LagGrid LagGrid::dyadic() { return LagGrid{Kind::Dyadic, {}}; }
LagGrid LagGrid::explicit_lags(std::vector<std::size_t> lags) {
  return LagGrid{Kind::Explicit, std::move(lags)};
}

std::vector<std::size_t> LagGrid::resolve(std::size_t N) const {
  if (N == 0) throw std::domain_error("LagGrid::resolve: N must be >= 1");
  std::vector<std::size_t> out;
  switch (kind) {
    case Kind::All:
      out.resize(N);
      for (std::size_t m = 1; m <= N; ++m) out[m - 1] = m;
      break;
    case Kind::Dyadic:
      // ceil(N / 2^j) for j = 0, 1, 2, ... until the lag reaches 1.
      for (std::size_t div = 1;; div *= 2) {
        const std::size_t m = (N + div - 1) / div;
        if (out.empty() || m != out.back()) out.push_back(m);
        if (m == 1) break;
      }
      std::reverse(out.begin(), out.end());
      break;
    case Kind::Explicit:
      out = lags;
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      if (out.empty())
        throw std::domain_error("LagGrid::resolve: explicit grid is empty");
      if (out.front() < 1 || out.back() > N)
        throw std::domain_error("LagGrid::resolve: lags must lie in [1, N]");
      break;
  }
  return out;
}

namespace {

double increment_magnitude(const SampledPath& path, std::size_t a,
                           std::size_t m) {
  if (path.d == 1) return std::fabs(path.values[a + m] - path.values[a]);
  double s = 0.0;
  for (std::size_t j = 0; j < path.d; ++j) {
    const double diff =
        path.values[(a + m) * path.d + j] - path.values[a * path.d + j];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double contrast_magnitude(const SampledPath& path, std::size_t a,
                          std::size_t m) {
  if (path.d == 1)
    return std::fabs(2.0 * path.values[a] - path.values[a - m] -
                     path.values[a + m]);
  double s = 0.0;
  for (std::size_t j = 0; j < path.d; ++j) {
    const double diff = 2.0 * path.values[a * path.d + j] -
                        path.values[(a - m) * path.d + j] -
                        path.values[(a + m) * path.d + j];
    s += diff * diff;
  }
  return std::sqrt(s);
}

void check_path(const SampledPath& path, const char* who) {
  if (path.N == 0 || path.d == 0 ||
      path.values.size() != (path.N + 1) * path.d)
    throw std::domain_error(std::string(who) + ": malformed path");
}

std::vector<double> lag_increments(const SampledPath& path, std::size_t m) {
  std::vector<double> mags(path.N - m + 1);
  for (std::size_t a = 0; a + m <= path.N; ++a)
    mags[a] = increment_magnitude(path, a, m);
  return mags;
}

}  // namespace

double orlicz_modulus_discrete(const SampledPath& path, std::size_t lag,
                               const YoungFunction& psi) {
  check_path(path, "orlicz_modulus_discrete");
  if (lag < 1 || lag > path.N)
    throw std::domain_error("orlicz_modulus_discrete: lag must lie in [1, N]");
  const auto mags = lag_increments(path, lag);
  const WeightedMagnitudes data{mags, 1.0 / static_cast<double>(path.N)};
  return empirical_orlicz_norm(data, psi);
}

double sup_modulus_discrete(const SampledPath& path, std::size_t lag) {
  check_path(path, "sup_modulus_discrete");
  if (lag < 1 || lag > path.N)
    throw std::domain_error("sup_modulus_discrete: lag must lie in [1, N]");
  double best = 0.0;
  for (std::size_t a = 0; a + lag <= path.N; ++a)
    best = std::max(best, increment_magnitude(path, a, lag));
  return best;
}

StatValue besov_orlicz_stat(const SampledPath& path, const Modulus& rho,
                            const YoungFunction& psi, const LagGrid& lags) {
  check_path(path, "besov_orlicz_stat");
  StatValue out;
  out.name = "bo";
  bool first = true;
  for (const std::size_t m : lags.resolve(path.N)) {
    const double h = static_cast<double>(m) / static_cast<double>(path.N);
    const double val = orlicz_modulus_discrete(path, m, psi) / modulus_eval(rho, h);
    if (first || val > out.value) {
      out.value = val;
      out.witness = StatWitness{m, std::nullopt};
      first = false;
    }
  }
  return out;
}

StatValue holder_stat(const SampledPath& path, const Modulus& rho,
                      const LagGrid& lags) {
  check_path(path, "holder_stat");
  StatValue out;
  out.name = "holder";
  bool first = true;
  for (const std::size_t m : lags.resolve(path.N)) {
    const double h = static_cast<double>(m) / static_cast<double>(path.N);
    const double inv_rho = 1.0 / modulus_eval(rho, h);
    for (std::size_t a = 0; a + m <= path.N; ++a) {
      const double val = increment_magnitude(path, a, m) * inv_rho;
      if (first || val > out.value) {
        out.value = val;
        out.witness = StatWitness{m, a};
        first = false;
      }
    }
  }
  return out;
}

StatValue t_km(const Observations& X, const LagGrid& lags) {
  StatValue out = holder_stat(partial_sum_step(X).step_path(),
                              Modulus{0.5, 0.5}, lags);
  out.name = "km";
  return out;
}

StatValue t_ds(const Observations& X, const LagGrid& lags) {
  StatValue out = ds_scan_path(partial_sum_step(X).step_path(), lags);
  out.name = "ds";
  return out;
}

StatValue t_bo(const Observations& X, const Modulus& rho,
               const YoungFunction& psi, const LagGrid& lags) {
  StatValue out =
      besov_orlicz_stat(partial_sum_step(X).step_path(), rho, psi, lags);
  out.name = "bo";
  return out;
}

StatValue ds_scan_path(const SampledPath& path, const LagGrid& lags) {
  check_path(path, "ds_scan_path");
  StatValue out;
  out.name = "ds";
  bool first = true;
  for (const std::size_t m : lags.resolve(path.N)) {
    const double h = static_cast<double>(m) / static_cast<double>(path.N);
    const double inv_sqrt_h = 1.0 / std::sqrt(h);
    const double penalty = std::sqrt(2.0 * (1.0 - std::log(h)));
    for (std::size_t a = 0; a + m <= path.N; ++a) {
      const double val = increment_magnitude(path, a, m) * inv_sqrt_h - penalty;
      if (first || val > out.value) {
        out.value = val;
        out.witness = StatWitness{m, a};
        first = false;
      }
    }
  }
  return out;
}

StatValue changepoint_stat_holder(const SampledPath& path, const Modulus& rho,
                                  const LagGrid& lags) {
  check_path(path, "changepoint_stat_holder");
  StatValue out;
  out.name = "cp-holder";
  bool first = true;
  const std::size_t half = path.N / 2;
  for (const std::size_t m : lags.resolve(path.N)) {
    if (m > half) continue;
    const double h = static_cast<double>(m) / static_cast<double>(path.N);
    const double inv_rho = 1.0 / modulus_eval(rho, h);
    for (std::size_t a = m; a + m <= path.N; ++a) {
      const double val = contrast_magnitude(path, a, m) * inv_rho;
      if (first || val > out.value) {
        out.value = val;
        out.witness = StatWitness{m, a};
        first = false;
      }
    }
  }
  if (first)
    throw std::domain_error("changepoint_stat_holder: no usable lag <= N/2");
  return out;
}

StatValue changepoint_stat_orlicz(const SampledPath& path, const Modulus& rho,
                                  const YoungFunction& psi,
                                  const LagGrid& lags) {
  check_path(path, "changepoint_stat_orlicz");
  StatValue out;
  out.name = "cp-orlicz";
  bool first = true;
  const std::size_t half = path.N / 2;
  const double weight = 1.0 / static_cast<double>(path.N);
  for (const std::size_t m : lags.resolve(path.N)) {
    if (m > half) continue;
    const double h = static_cast<double>(m) / static_cast<double>(path.N);
    const double inv_rho = 1.0 / modulus_eval(rho, h);
    std::vector<double> scaled(path.N - 2 * m + 1);
    for (std::size_t a = m; a + m <= path.N; ++a)
      scaled[a - m] = contrast_magnitude(path, a, m) * inv_rho;
    const double val = empirical_orlicz_norm({scaled, weight}, psi);
    if (first || val > out.value) {
      out.value = val;
      out.witness = StatWitness{m, std::nullopt};
      first = false;
    }
  }
  if (first)
    throw std::domain_error("changepoint_stat_orlicz: no usable lag <= N/2");
  return out;
}

double seminorm_lower_bound(double delta, double h, double m,
                            const YoungFunction& psi, const Modulus& rho) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw std::domain_error("seminorm_lower_bound: delta must be finite and >= 0");
  if (!(h > 0.0) || h >= 1.0)
    throw std::domain_error("seminorm_lower_bound: h must lie in (0,1)");
  if (!(m > 0.0) || !(m * h <= 1.0))
    throw std::domain_error("seminorm_lower_bound: need m > 0 and m*h <= 1");
  return delta * h / (modulus_eval(rho, h) * young_inv(psi, 1.0 / (m * h)));
}

double seminorm_lower_bound_psi2_sqrth(double delta, double h, double m) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw std::domain_error("seminorm_lower_bound: delta must be finite and >= 0");
  if (!(h > 0.0) || h >= 1.0)
    throw std::domain_error("seminorm_lower_bound: h must lie in (0,1)");
  if (!(m > 0.0) || !(m * h <= 1.0))
    throw std::domain_error("seminorm_lower_bound: need m > 0 and m*h <= 1");
  return delta * std::sqrt(h) / std::sqrt(1.0 - std::log(m * h));
}

}  // namespace bostat
