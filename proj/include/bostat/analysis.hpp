#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bostat/processes.hpp"
#include "bostat/rng.hpp"
#include "bostat/statistics.hpp"

namespace bostat {

// One lag of the modulus-to-sqrt ratio table r(h) = omega_hat(h) / sqrt(h).
struct RatioRow {
  std::size_t lag = 0;
  double h = 0.0;
  double modulus = 0.0;
  double ratio = 0.0;
};

struct RatioTable {
  std::uint64_t replicate = 0;
  std::vector<RatioRow> rows;
};

// Ratio of the discrete psi_2 Orlicz modulus to sqrt(h) at each grid lag;
// for Brownian paths this ratio approaches sqrt(8/3) as h shrinks.
RatioTable modulus_ratio_table(const SampledPath& path, const LagGrid& lags,
                               std::uint64_t replicate = 0);

// sqrt(8/3): the limiting value of the ratio above.
double brownian_modulus_limit();

struct RateFit {
  double slope = 0.0;
  std::size_t replicates_used = 0;
  bool degenerate = false;  // no replicate had a positive, unfloored deviation
};

// Least-squares slope of log(deviation) against log(h), where the deviation
// is r(h) - sqrt(8/3) restricted to positive values and floored at 1e-6;
// fitted per replicate over the lags whose h falls in h_grid (within 1e-12
// relative), then averaged across replicates with >= 2 usable lags.
RateFit deviation_rate_fit(const std::vector<RatioTable>& tables,
                           const std::vector<double>& h_grid);

// Closed-form tail bound min(1, 16^p (1+kappa)^p ((1+r)/r)^p (h v h0)^{p-1}
// (1 - 3p/4)^{-1/2}) for the probability that the psi_2 modulus at lag h
// exceeds sqrt(8/3)*sqrt(h)*(1+r). Requires p in (1, 4/3).
double modulus_tail_bound(double p, double r, double h, double h0,
                          double kappa);

struct TailEstimate {
  double estimate = 0.0;        // exceed_count / replicates
  std::size_t exceed_count = 0;
  std::size_t replicates = 0;

  double std_error() const;     // binomial MC standard error
};

// Fraction of Brownian replicates whose discrete psi_2 modulus at lag
// floor(h*N) exceeds sqrt(8/3)*sqrt(h)*(1+r). Requires h*N >= 1.
TailEstimate tail_probability_mc(double h, double r, std::size_t reps,
                                 std::size_t N, RngSpec rng,
                                 unsigned threads = 1);

struct ShrinkCheck {
  double integral = 0.0;   // quadrature of int_0^inf 2 (1+v^{1/p})^{-K^2} dv
  double bound = 0.0;      // 2 + 2/(K^2/p - 1)
  double exact_p1 = 0.0;   // 2/(K^2-1) when p == 1, NaN otherwise
  bool ok = false;         // integral <= bound * (1 + 1e-6)
};

// Verifies the closed integral bound by quadrature. Requires p in [1,2]
// and K^2 > p.
ShrinkCheck shrink_bound_check(double K2, double p);

// E exp(|Z|^2 / K^2) = (1 - 2/K^2)^{-d/2} for a standard d-dim Gaussian;
// requires K^2 > 2 and d in {1, 2}.
double gaussian_mgf_oracle(double K2, int dim);

}  // namespace bostat
