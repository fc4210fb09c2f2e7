#include "bostat/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bostat/parallel.hpp"

namespace bostat {

double EmpiricalDistribution::median() const {
  if (values.empty())
    throw std::domain_error("EmpiricalDistribution::median: empty sample");
  const std::size_t B = values.size();
  return B % 2 == 1 ? values[B / 2]
                    : 0.5 * (values[B / 2 - 1] + values[B / 2]);
}

ResolvedStatistic resolve_statistic(const StatisticSpec& spec, std::size_t N) {
  // O(N^2) exhaustive scans stay exact up to this grid size; above it the
  // sup-type statistics fall back to the dyadic grid.
  constexpr std::size_t kAllLagCutoff = std::size_t{1} << 13;
  ResolvedStatistic out;
  out.name = spec.name;
  out.scale = spec.scale;
  const bool orlicz_type = spec.name == "bo" || spec.name == "cp-orlicz";
  if (spec.name == "bo" || spec.name == "km" || spec.name == "ds" ||
      spec.name == "cp-holder" || spec.name == "cp-orlicz") {
    out.rho = spec.rho.value_or(orlicz_type ? Modulus{0.5, 0.0}
                                            : Modulus{0.5, 0.5});
    out.lags = spec.lags.value_or(orlicz_type || N > kAllLagCutoff
                                      ? LagGrid::dyadic()
                                      : LagGrid::all());
  } else {
    throw std::domain_error("unknown statistic: " + spec.name);
  }
  if (!(out.scale > 0.0) || !std::isfinite(out.scale))
    throw std::domain_error("statistic scale must be finite and > 0");
  return out;
}

StatValue evaluate_statistic(const ResolvedStatistic& stat,
                             const SampledPath& path) {
  StatValue out;
  if (stat.name == "bo") {
    out = besov_orlicz_stat(path, stat.rho, psi2(), stat.lags);
  } else if (stat.name == "km") {
    out = holder_stat(path, stat.rho, stat.lags);
  } else if (stat.name == "ds") {
    out = ds_scan_path(path, stat.lags);
  } else if (stat.name == "cp-holder") {
    out = changepoint_stat_holder(path, stat.rho, stat.lags);
  } else if (stat.name == "cp-orlicz") {
    out = changepoint_stat_orlicz(path, stat.rho, psi2(), stat.lags);
  } else {
    throw std::domain_error("unknown statistic: " + stat.name);
  }
  out.name = stat.name;
  out.value *= stat.scale;
  return out;
}

namespace {

bool is_zero_signal(const SignalSpec& spec) {
  return std::holds_alternative<ZeroSignal>(spec);
}

SampledPath draw_replicate(const McConfig& config,
                           const std::vector<double>* cached_drift,
                           std::uint64_t replicate) {
  const RngSpec rs{config.seed, config.stream_offset + replicate};
  if (config.model == ModelKind::WhiteNoise) {
    if (is_zero_signal(config.signal) || config.n_drift == 0.0)
      return sample_brownian(config.mesh, 1, rs);
    if (cached_drift != nullptr) {
      // Same draw order as sample_white_noise_path: a deterministic signal
      // consumes no randomness, so the Brownian part starts immediately.
      Rng rng(rs);
      return white_noise_from_drift(*cached_drift, config.n_drift, config.mesh,
                                    rng);
    }
    return sample_white_noise_path(config.signal, config.n_drift, config.mesh,
                                   rs);
  }
  const Observations obs =
      sample_regression(config.signal, config.n_obs, config.noise, rs);
  return partial_sum_step(obs).step_path();
}

}  // namespace

std::vector<EmpiricalDistribution> run_batch(const McConfig& config) {
  if (config.replicates < 1)
    throw std::domain_error("run_batch: need at least one replicate");
  if (config.statistics.empty())
    throw std::domain_error("run_batch: statistic list is empty");

  const std::size_t N =
      config.model == ModelKind::WhiteNoise ? config.mesh : config.n_obs;
  std::vector<ResolvedStatistic> resolved;
  resolved.reserve(config.statistics.size());
  for (const auto& spec : config.statistics)
    resolved.push_back(resolve_statistic(spec, N));

  std::vector<double> drift;
  const std::vector<double>* cached_drift = nullptr;
  if (config.model == ModelKind::WhiteNoise && !is_zero_signal(config.signal) &&
      config.n_drift > 0.0 && signal_is_deterministic(config.signal)) {
    drift = signal_antiderivative_grid(config.signal, config.mesh);
    cached_drift = &drift;
  }

  std::vector<std::vector<double>> slots(
      resolved.size(), std::vector<double>(config.replicates, 0.0));
  parallel_for_index(config.replicates, config.threads, [&](std::size_t r) {
    const SampledPath path = draw_replicate(config, cached_drift, r);
    for (std::size_t s = 0; s < resolved.size(); ++s)
      slots[s][r] = evaluate_statistic(resolved[s], path).value;
  });

  std::vector<EmpiricalDistribution> out(resolved.size());
  for (std::size_t s = 0; s < resolved.size(); ++s) {
    out[s].name = resolved[s].name;
    out[s].values = std::move(slots[s]);
    std::sort(out[s].values.begin(), out[s].values.end());
  }
  return out;
}

double p_value(double value, const EmpiricalDistribution& null_dist) {
  if (null_dist.values.empty())
    throw std::domain_error("p_value: empty null distribution");
  const auto& v = null_dist.values;
  const std::size_t at_least =
      v.size() - (std::lower_bound(v.begin(), v.end(), value) - v.begin());
  return static_cast<double>(1 + at_least) / static_cast<double>(v.size() + 1);
}

RocCurve roc_curve(const EmpiricalDistribution& null_dist,
                   const EmpiricalDistribution& alt_dist,
                   const std::vector<double>& levels) {
  if (null_dist.values.empty() || alt_dist.values.empty())
    throw std::domain_error("roc_curve: empty distribution");
  std::vector<double> pvals(alt_dist.values.size());
  for (std::size_t i = 0; i < pvals.size(); ++i)
    pvals[i] = p_value(alt_dist.values[i], null_dist);
  std::sort(pvals.begin(), pvals.end());
  RocCurve curve;
  curve.alpha = levels;
  curve.power.resize(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::size_t hits =
        std::upper_bound(pvals.begin(), pvals.end(), levels[i]) -
        pvals.begin();
    curve.power[i] =
        static_cast<double>(hits) / static_cast<double>(pvals.size());
  }
  return curve;
}

double coupled_delta(double l, double n) {
  if (!(l > 0.0) || !(l < 1.0))
    throw std::domain_error("coupled_delta: l must lie in (0,1)");
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::domain_error("coupled_delta: n must be finite and > 0");
  return std::sqrt(std::pow(std::fabs(std::log2(l)), 0.25) / (n * l));
}

}  // namespace bostat
