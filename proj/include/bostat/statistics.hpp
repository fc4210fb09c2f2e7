#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bostat/orlicz.hpp"
#include "bostat/processes.hpp"

namespace bostat {

// Which increment lags m (1 <= m <= N) a multiscale statistic scans.
struct LagGrid {
  enum class Kind { All, Dyadic, Explicit };

  Kind kind = Kind::Dyadic;
  std::vector<std::size_t> lags;  // used when kind == Explicit

  static LagGrid all();
  static LagGrid dyadic();
  static LagGrid explicit_lags(std::vector<size_t> lags);

  // Concrete ascending, deduplicated lag list for a path with N increments.
  // All: 1..N. Dyadic: ceil(2^-j N) for j = 0,1,2,... down to lag 1.
  std::vector<std::size_t> resolve(std::size_t N) const;
};

// Location at which a scan statistic attains its maximum.
struct StatWitness {
  std::size_t lag = 0;                    // window length m (in grid steps)
  std::optional<std::size_t> offset;      // left endpoint a, when meaningful
};

struct StatValue {
  std::string name;
  double value = 0.0;
  StatWitness witness;
};

// Empirical Orlicz norm of the lag-m increments of a sampled path:
// the increments {|S((a+m)/N) - S(a/N)| : a = 0..N-m} weighted by 1/N.
double orlicz_modulus_discrete(const SampledPath& path, std::size_t lag,
                               const YoungFunction& psi);

// Plain sup of the lag-m increment magnitudes.
double sup_modulus_discrete(const SampledPath& path, std::size_t lag);

// max over lags of orlicz_modulus_discrete / rho(m/N).
StatValue besov_orlicz_stat(const SampledPath& path, const Modulus& rho,
                            const YoungFunction& psi, const LagGrid& lags);

// max over lags and offsets of |increment| / rho(m/N).
StatValue holder_stat(const SampledPath& path, const Modulus& rho,
                      const LagGrid& lags);

// Multiscale scan statistics on raw observations (through their normalized
// partial-sum step path). km: sup |sum / sqrt(|I|)| / sqrt(log(e n / |I|)).
// ds: same local quantity with sqrt(2 log(e n / |I|)) subtracted, sup'd.
StatValue t_km(const Observations& X, const LagGrid& lags);
StatValue t_ds(const Observations& X, const LagGrid& lags);
// Besov-Orlicz statistic of the partial-sum step path.
StatValue t_bo(const Observations& X, const Modulus& rho,
               const YoungFunction& psi, const LagGrid& lags);

// ds-type scan evaluated directly on a sampled path (used by t_ds and by the
// white-noise models, where the path is already a normalized partial sum).
StatValue ds_scan_path(const SampledPath& path, const LagGrid& lags);

// Changepoint scans built from the symmetric second difference
// |2 S(a/N) - S((a-m)/N) - S((a+m)/N)| over m = 1..floor(N/2), a in [m, N-m].
StatValue changepoint_stat_holder(const SampledPath& path, const Modulus& rho,
                                  const LagGrid& lags = LagGrid::all());
StatValue changepoint_stat_orlicz(const SampledPath& path, const Modulus& rho,
                                  const YoungFunction& psi,
                                  const LagGrid& lags = LagGrid::all());

// Deterministic lower bound delta*h / (rho(h) * psi^{-1}(1/(m h))) for the
// Orlicz-seminorm contribution of a height-delta, width-h drift bump when the
// lag grid contains h (m h <= 1 required).
double seminorm_lower_bound(double delta, double h, double m,
                            const YoungFunction& psi, const Modulus& rho);
// Specialization for psi_2 and rho = sqrt: delta*sqrt(h)/sqrt(log(e/(m h))).
double seminorm_lower_bound_psi2_sqrth(double delta, double h, double m);

}  // namespace bostat
