#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bostat/processes.hpp"
#include "bostat/statistics.hpp"

namespace bostat {

// Which data-generating mechanism each replicate draws from.
enum class ModelKind {
  WhiteNoise,  // Y(i/N) = sqrt(n_drift) * F(i/N) + W(i/N) on a mesh of N cells
  Regression,  // Y_t = f(t/n) + eta_t, evaluated through the partial-sum path
};

// One statistic to evaluate per replicate. Unset options pick the
// per-statistic defaults documented with resolve_statistic().
struct StatisticSpec {
  std::string name;                  // bo | km | ds | cp-holder | cp-orlicz
  std::optional<Modulus> rho;        // only meaningful for bo / cp-*
  std::optional<LagGrid> lags;
  double scale = 1.0;                // multiplies the reported value (bo only)
};

struct McConfig {
  std::size_t replicates = 1;
  ModelKind model = ModelKind::WhiteNoise;
  std::size_t mesh = 4096;           // white-noise grid cells N
  double n_drift = 4096.0;           // drift amplitude factor sqrt(n_drift)
  std::size_t n_obs = 1024;          // regression sample size
  NoiseFamily noise = NoiseFamily::Gaussian;
  SignalSpec signal = ZeroSignal{};
  std::vector<StatisticSpec> statistics;
  std::uint64_t seed = 1;
  std::uint64_t stream_offset = 0;   // replicate r uses stream offset + r
  unsigned threads = 1;
};

struct EmpiricalDistribution {
  std::string name;
  std::vector<double> values;  // sorted ascending, one per replicate

  double median() const;
};

struct RocCurve {
  std::vector<double> alpha;
  std::vector<double> power;
};

// A statistic with every option resolved against the grid size N.
struct ResolvedStatistic {
  std::string name;
  Modulus rho;
  LagGrid lags;
  double scale = 1.0;
};

// Fills defaults: rho is sqrt(h) for bo/cp-orlicz and sqrt(h*log(e/h)) for
// km/cp-holder; the lag grid is dyadic for the Orlicz-norm statistics
// (bo, cp-orlicz) and exhaustive for the sup-type ones (km, ds, cp-holder)
// up to N = 2^13, dyadic above. Unknown names throw.
ResolvedStatistic resolve_statistic(const StatisticSpec& spec, std::size_t N);

// Evaluates one resolved statistic on a sampled path.
StatValue evaluate_statistic(const ResolvedStatistic& stat,
                             const SampledPath& path);

// Runs config.replicates independent replicates; replicate r draws from
// RngSpec{seed, stream_offset + r}, so results do not depend on the thread
// count. Returns one distribution per configured statistic, in order.
std::vector<EmpiricalDistribution> run_batch(const McConfig& config);

// (1 + #{null samples >= value}) / (B + 1).
double p_value(double value, const EmpiricalDistribution& null_dist);

// Power at each level: fraction of alternative samples whose p-value against
// the null table is <= alpha.
RocCurve roc_curve(const EmpiricalDistribution& null_dist,
                   const EmpiricalDistribution& alt_dist,
                   const std::vector<double>& levels);

// Signal amplitude delta solving n * delta^2 * l = |log2 l|^{1/4}.
double coupled_delta(double l, double n);

}  // namespace bostat
