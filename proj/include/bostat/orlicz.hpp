#pragma once
// Young functions, smoothness moduli, and the empirical (Luxemburg-type)
// Orlicz norm solver that every statistic in this library reduces to.

#include <cstddef>
#include <span>

namespace bostat {

// Young gauge. Exponential means psi_p(x) = exp(x^p) - 1 (sub-Gaussian for
// p = 2, sub-exponential for p = 1); Power means psi(x) = x^p.
struct YoungFunction {
  enum class Kind { Exponential, Power };
  Kind kind = Kind::Exponential;
  double p = 2.0;  // family exponent, >= 1

  static YoungFunction exponential(double p);
  static YoungFunction power(double p);
};

// The sub-Gaussian gauge exp(x^2) - 1; the default almost everywhere.
YoungFunction psi2();

// psi(x). Negative or non-finite x is a domain error.
double young_eval(const YoungFunction& psi, double x);

// psi^{-1}(y): (log(1+y))^{1/p} for the exponential family, y^{1/p} for the
// power family. Negative y is a domain error.
double young_inv(const YoungFunction& psi, double y);

// rho_{mu,nu}(h) = h^mu * (log(e/h))^nu, defined for h in (0,1].
// rho_{1/2,0}(h) is computed as sqrt(h) exactly.
struct Modulus {
  double mu = 0.5;  // in (0,1]
  double nu = 0.0;  // >= 0
};
double modulus_eval(const Modulus& rho, double h);

// Uniformly weighted nonnegative magnitudes: carrier for the discrete sums
// weight * sum_i psi(v_i / K). The weight is per-term (typically 1/n).
struct WeightedMagnitudes {
  std::span<const double> values;
  double weight = 1.0;
};

// Smallest K >= 0 with weight * sum_i psi(v_i / K) <= budget. The sum is
// continuous and strictly decreasing in K wherever finite, so K* solves the
// equality when some v_i > 0; empty or all-zero data give 0 by convention.
//
// Solver: bracket by exponential doubling/halving from the root-mean-square
// of the data, then bisect (relative tolerance 1e-12, 200-iteration cap).
// Exponential arguments beyond 709 count as an infinite contribution, which
// pushes the bracket upward instead of overflowing.
double empirical_orlicz_norm(const WeightedMagnitudes& data,
                             const YoungFunction& psi, double budget = 1.0);

}  // namespace bostat
