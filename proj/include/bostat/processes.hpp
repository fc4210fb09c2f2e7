#pragma once
// Path generation: Brownian motion, polygonal and step partial-sum
// processes, parametric test signals with exact antiderivatives, and the
// white-noise / regression model samplers.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "bostat/rng.hpp"

namespace bostat {

// Path sampled on the uniform grid u_i = i/N (i = 0..N); d-dimensional
// values stored row-major. Every process constructor here starts at 0.
struct SampledPath {
  std::size_t N = 0;
  std::size_t d = 1;
  std::vector<double> values;  // (N+1) * d entries

  std::span<const double> at(std::size_t i) const {
    return {values.data() + i * d, d};
  }
  double scalar_at(std::size_t i) const { return values[i * d]; }
};

// Raw observations X_1..X_n, row-major n x d.
struct Observations {
  std::size_t n = 0;
  std::size_t d = 1;
  std::vector<double> data;

  static Observations from(std::vector<double> xs);  // d = 1
  std::span<const double> row(std::size_t t) const {  // t = 1..n
    return {data.data() + (t - 1) * d, d};
  }
};

// Prefix sums P_0 = 0, P_k = X_1 + ... + X_k (raw, not normalized).
struct PrefixSums {
  std::size_t n = 0;
  std::size_t d = 1;
  std::vector<double> P;  // (n+1) * d entries

  // The step (non-interpolated) partial-sum process: values P_k/sqrt(n) on
  // the grid k/n.
  SampledPath step_path() const;
};

// ---------------------------------------------------------------- signals

struct ZeroSignal {};

// Blockwise sign-flip signal: on block k = [2kl, (2k+1)l) the value is
// +delta * sign_k, on [(2k+1)l, (2k+2)l) it is -delta * sign_k. l must be
// 2^-j with j >= 1. An empty `signs` vector means "draw fresh Rademacher
// signs from the replicate's own stream" (done by materialize_signal).
struct FlipSignal {
  double l = 0.25;
  double delta = 1.0;
  std::vector<int> signs;  // ceil(1/(2l)) + 1 entries of +-1, or empty
};

struct DopplerSignal {  // delta * sin(4/u), defined as 0 at u = 0
  double delta = 1.0;
};

struct SineSignal {  // delta * sin(u/l)
  double delta = 1.0;
  double l = 0.25;
};

struct BumpSignal {  // delta * 1[a,b](u), 0 <= a < b <= 1
  double a = 0.0;
  double b = 1.0;
  double delta = 1.0;
};

using SignalSpec =
    std::variant<ZeroSignal, FlipSignal, DopplerSignal, SineSignal, BumpSignal>;

// False only for a FlipSignal whose signs are still to be drawn.
bool signal_is_deterministic(const SignalSpec& spec);

// Draws any missing randomness (flip signs) from rng and returns a fully
// deterministic spec; consumes no draws when the spec already is.
SignalSpec materialize_signal(const SignalSpec& spec, Rng& rng);

// Pointwise value f(u), u in [0,1]. Requires a deterministic spec.
double signal_eval(const SignalSpec& spec, double u);

// F(u) = integral of f over [0,u]: exact closed forms for flip/sine/bump,
// adaptive quadrature (absolute tolerance 1e-10) for the doppler signal.
double signal_antiderivative(const SignalSpec& spec, double u);

// F(i/N) for i = 0..N. One incremental quadrature sweep for doppler, exact
// closed forms otherwise.
std::vector<double> signal_antiderivative_grid(const SignalSpec& spec,
                                               std::size_t N);

// --------------------------------------------------------------- samplers

// W(i/N) = sum of i iid N(0, (1/N) Identity) increments; W(0) = 0.
SampledPath sample_brownian(std::size_t N, std::size_t d, RngSpec rng);

// Polygonal partial-sum process on the refined grid of size N = refine * n:
// S(u) = P_{floor(un)}/sqrt(n) + (un - floor(un)) * X_{ceil(un)}/sqrt(n).
SampledPath partial_sum_polygonal(const Observations& X, std::size_t refine);

PrefixSums partial_sum_step(const Observations& X);

// Step-process evaluation P_{floor(un)}/sqrt(n) at an arbitrary u in [0,1].
std::vector<double> step_eval(const PrefixSums& prefix, double u);

enum class NoiseFamily { Gaussian, Rademacher };

// White-noise model path Y(i/N) = sqrt(n_drift) * F(i/N) + W(i/N) with a
// fresh Brownian sample W. Flip signs, when unspecified, are drawn from rng
// before the Brownian increments. Zero signal or n_drift = 0 reduce to
// sample_brownian bit for bit.
SampledPath sample_white_noise_path(const SignalSpec& spec, double n_drift,
                                    std::size_t N, RngSpec rng);

// Same, with the antiderivative grid F precomputed by the caller (the
// Monte-Carlo engine shares one grid across replicates of a deterministic
// signal). Bitwise identical to sample_white_noise_path for a matching spec.
SampledPath white_noise_from_drift(std::span<const double> drift_grid,
                                   double n_drift, std::size_t N, Rng& rng);

// Drift-only path sqrt(n_drift) * F(i/N) with the noise suppressed
// (diagnostic / test hook).
SampledPath white_noise_drift_only(const SignalSpec& spec, double n_drift,
                                   std::size_t N);

// Regression observations Y_t = f(t/n) + eta_t, eta iid unit-variance from
// the named family.
Observations sample_regression(const SignalSpec& spec, std::size_t n,
                               NoiseFamily noise, RngSpec rng);

// Noise-suppressed regression Y_t = f(t/n) (diagnostic / test hook).
Observations regression_drift_only(const SignalSpec& spec, std::size_t n);

}  // namespace bostat
