#include "bostat/processes.hpp"

#include <cmath>
#include <stdexcept>

#include "bostat/quadrature.hpp"

namespace bostat {

Observations Observations::from(std::vector<double> xs) {
  Observations obs;
  obs.n = xs.size();
  obs.d = 1;
  obs.data = std::move(xs);
  return obs;
}

SampledPath PrefixSums::step_path() const {
  SampledPath path;
  path.N = n;
  path.d = d;
  path.values.resize(P.size());
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < P.size(); ++i) path.values[i] = P[i] / sqrt_n;
  return path;
}

// ---------------------------------------------------------------- signals

namespace {

void check_unit_interval(double u, const char* who) {
  if (!(u >= 0.0) || u > 1.0)
    throw std::domain_error(std::string(who) + ": u must lie in [0,1]");
}

void check_delta(double delta) {
  if (!std::isfinite(delta))
    throw std::domain_error("signal: delta must be finite");
}

std::size_t flip_sign_count(double l) {
  // l = 2^-j makes 1/(2l) = 2^{j-1} an exact integer.
  return static_cast<std::size_t>(std::llround(1.0 / (2.0 * l))) + 1;
}

void validate_signal(const SignalSpec& spec, bool need_signs) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FlipSignal>) {
          check_delta(s.delta);
          int exponent = 0;
          const double mant = std::frexp(s.l, &exponent);
          if (!(s.l > 0.0) || s.l > 0.5 || mant != 0.5)
            throw std::domain_error("flip: l must be 2^-j for integer j >= 1");
          if (s.signs.empty()) {
            if (need_signs)
              throw std::domain_error("flip: signs unspecified; materialize the signal first");
          } else {
            if (s.signs.size() != flip_sign_count(s.l))
              throw std::domain_error("flip: signs must have ceil(1/(2l))+1 entries");
            for (int v : s.signs)
              if (v != 1 && v != -1)
                throw std::domain_error("flip: sign entries must be +1 or -1");
          }
        } else if constexpr (std::is_same_v<T, DopplerSignal>) {
          check_delta(s.delta);
        } else if constexpr (std::is_same_v<T, SineSignal>) {
          check_delta(s.delta);
          if (!(s.l > 0.0) || !std::isfinite(s.l))
            throw std::domain_error("sine: l must be positive and finite");
        } else if constexpr (std::is_same_v<T, BumpSignal>) {
          check_delta(s.delta);
          if (!(s.a >= 0.0) || !(s.a < s.b) || s.b > 1.0)
            throw std::domain_error("bump: need 0 <= a < b <= 1");
        }
      },
      spec);
}

// Block index and in-block offset of u for a flip signal.
struct FlipCell {
  std::size_t k;
  double t;
};
FlipCell flip_cell(const FlipSignal& s, double u) {
  const double two_l = 2.0 * s.l;
  std::size_t k = static_cast<std::size_t>(u / two_l);
  const std::size_t last = flip_sign_count(s.l) - 1;
  if (k > last) k = last;
  return {k, u - two_l * static_cast<double>(k)};
}

// ------------------------------------------------------- doppler quadrature
//
// F(u) = delta * int_0^u sin(4/v) dv. Substituting w = 4/v turns the tail
// near 0 into 4 * int_{4/u}^inf sin(w)/w^2 dw, which has the integration-by-
// parts asymptotic expansion
//   int_A^inf sin(w)/w^2 dw = cos(A) [1/A^2 - 3!/A^4 + 5!/A^6 - ...]
//                           + sin(A) [2!/A^3 - 4!/A^5 + ...]
// whose alternating terms decay while (2k+1)(2k+2) < A^2; truncating leaves
// an error below the first omitted term (~1e-17 for A >= 80). Above the
// switch point u = 0.05 (A = 80) the integrand is tame and adaptive Simpson
// finishes the job.

constexpr double kDopplerSwitch = 0.05;

double sin_tail_integral(double A) {
  const double A2 = A * A;
  double cos_coeff = 1.0 / A2;        // (2k-1)!/A^{2k}   at k = 1
  double sin_coeff = 2.0 / (A2 * A);  // (2k)!/A^{2k+1}   at k = 1
  double cos_sum = 0.0, sin_sum = 0.0, sign = 1.0;
  for (int k = 1; k <= 16; ++k) {
    cos_sum += sign * cos_coeff;
    sin_sum += sign * sin_coeff;
    cos_coeff *= (2.0 * k) * (2.0 * k + 1.0) / A2;
    sin_coeff *= (2.0 * k + 1.0) * (2.0 * k + 2.0) / A2;
    sign = -sign;
    if (cos_coeff + sin_coeff < 1e-18) break;
  }
  return std::cos(A) * cos_sum + std::sin(A) * sin_sum;
}

double doppler_oscillation(double v) { return std::sin(4.0 / v); }

double doppler_antiderivative_unit(double u) {
  if (u <= 0.0) return 0.0;
  if (u <= kDopplerSwitch) return 4.0 * sin_tail_integral(4.0 / u);
  const double base = 4.0 * sin_tail_integral(4.0 / kDopplerSwitch);
  return base + adaptive_simpson(doppler_oscillation, kDopplerSwitch, u, 1e-11);
}

std::vector<double> doppler_grid_unit(std::size_t N) {
  std::vector<double> F(N + 1, 0.0);
  // Per-cell tolerance sized so the accumulated sweep error stays ~1e-11.
  const double cell_tol =
      std::clamp(4e-11 / static_cast<double>(N), 1e-15, 1e-11);
  double last_u = kDopplerSwitch;
  double running = 4.0 * sin_tail_integral(4.0 / kDopplerSwitch);
  for (std::size_t i = 1; i <= N; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(N);
    if (u <= kDopplerSwitch) {
      F[i] = 4.0 * sin_tail_integral(4.0 / u);
    } else {
      running += adaptive_simpson(doppler_oscillation, last_u, u, cell_tol);
      last_u = u;
      F[i] = running;
    }
  }
  return F;
}

}  // namespace

bool signal_is_deterministic(const SignalSpec& spec) {
  const auto* flip = std::get_if<FlipSignal>(&spec);
  return flip == nullptr || !flip->signs.empty();
}

SignalSpec materialize_signal(const SignalSpec& spec, Rng& rng) {
  validate_signal(spec, /*need_signs=*/false);
  if (const auto* flip = std::get_if<FlipSignal>(&spec);
      flip != nullptr && flip->signs.empty()) {
    FlipSignal drawn = *flip;
    drawn.signs.resize(flip_sign_count(flip->l));
    for (int& v : drawn.signs) v = rng.next_sign() > 0 ? 1 : -1;
    return drawn;
  }
  return spec;
}

double signal_eval(const SignalSpec& spec, double u) {
  validate_signal(spec, /*need_signs=*/true);
  check_unit_interval(u, "signal_eval");
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ZeroSignal>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, FlipSignal>) {
          const auto cell = flip_cell(s, u);
          const double sign = static_cast<double>(s.signs[cell.k]);
          return cell.t < s.l ? sign * s.delta : -sign * s.delta;
        } else if constexpr (std::is_same_v<T, DopplerSignal>) {
          return u == 0.0 ? 0.0 : s.delta * std::sin(4.0 / u);
        } else if constexpr (std::is_same_v<T, SineSignal>) {
          return s.delta * std::sin(u / s.l);
        } else {  // BumpSignal
          return (u >= s.a && u <= s.b) ? s.delta : 0.0;
        }
      },
      spec);
}

double signal_antiderivative(const SignalSpec& spec, double u) {
  validate_signal(spec, /*need_signs=*/true);
  check_unit_interval(u, "signal_antiderivative");
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ZeroSignal>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, FlipSignal>) {
          // Each full block integrates to zero; inside a block the area is a
          // triangle rising to delta*l at the half-block point.
          const auto cell = flip_cell(s, u);
          const double sign = static_cast<double>(s.signs[cell.k]);
          const double tri = cell.t <= s.l ? cell.t : 2.0 * s.l - cell.t;
          return sign * s.delta * tri;
        } else if constexpr (std::is_same_v<T, DopplerSignal>) {
          return s.delta * doppler_antiderivative_unit(u);
        } else if constexpr (std::is_same_v<T, SineSignal>) {
          return s.delta * s.l * (1.0 - std::cos(u / s.l));
        } else {  // BumpSignal
          return s.delta * std::max(0.0, std::min(u, s.b) - s.a);
        }
      },
      spec);
}

std::vector<double> signal_antiderivative_grid(const SignalSpec& spec,
                                               std::size_t N) {
  validate_signal(spec, /*need_signs=*/true);
  if (N == 0) throw std::domain_error("signal_antiderivative_grid: N must be >= 1");
  if (const auto* doppler = std::get_if<DopplerSignal>(&spec)) {
    auto F = doppler_grid_unit(N);
    for (double& v : F) v *= doppler->delta;
    return F;
  }
  std::vector<double> F(N + 1);
  for (std::size_t i = 0; i <= N; ++i)
    F[i] = signal_antiderivative(spec, static_cast<double>(i) / static_cast<double>(N));
  return F;
}

// --------------------------------------------------------------- samplers

SampledPath sample_brownian(std::size_t N, std::size_t d, RngSpec rng_spec) {
  if (N == 0) throw std::domain_error("sample_brownian: N must be >= 1");
  if (d == 0) throw std::domain_error("sample_brownian: d must be >= 1");
  Rng rng(rng_spec);
  SampledPath path;
  path.N = N;
  path.d = d;
  path.values.assign((N + 1) * d, 0.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  for (std::size_t i = 1; i <= N; ++i)
    for (std::size_t j = 0; j < d; ++j)
      path.values[i * d + j] =
          path.values[(i - 1) * d + j] + rng.next_gaussian() * scale;
  return path;
}

SampledPath partial_sum_polygonal(const Observations& X, std::size_t refine) {
  if (X.n == 0) throw std::domain_error("partial_sum_polygonal: need n >= 1");
  if (refine == 0) throw std::domain_error("partial_sum_polygonal: refine must be >= 1");
  const PrefixSums prefix = partial_sum_step(X);
  const double sqrt_n = std::sqrt(static_cast<double>(X.n));
  SampledPath path;
  path.N = refine * X.n;
  path.d = X.d;
  path.values.resize((path.N + 1) * X.d);
  for (std::size_t i = 0; i <= path.N; ++i) {
    const std::size_t k = i / refine;
    const std::size_t r = i % refine;
    const double frac = static_cast<double>(r) / static_cast<double>(refine);
    for (std::size_t j = 0; j < X.d; ++j) {
      double v = prefix.P[k * X.d + j];
      if (r != 0) v += frac * X.data[k * X.d + j];  // X_{k+1} is row index k
      path.values[i * X.d + j] = v / sqrt_n;
    }
  }
  return path;
}

PrefixSums partial_sum_step(const Observations& X) {
  PrefixSums prefix;
  prefix.n = X.n;
  prefix.d = X.d;
  prefix.P.assign((X.n + 1) * X.d, 0.0);
  for (std::size_t t = 1; t <= X.n; ++t)
    for (std::size_t j = 0; j < X.d; ++j)
      prefix.P[t * X.d + j] = prefix.P[(t - 1) * X.d + j] + X.data[(t - 1) * X.d + j];
  return prefix;
}

std::vector<double> step_eval(const PrefixSums& prefix, double u) {
  check_unit_interval(u, "step_eval");
  std::size_t k = static_cast<std::size_t>(u * static_cast<double>(prefix.n));
  if (k > prefix.n) k = prefix.n;
  const double sqrt_n = std::sqrt(static_cast<double>(prefix.n));
  std::vector<double> out(prefix.d);
  for (std::size_t j = 0; j < prefix.d; ++j)
    out[j] = prefix.P[k * prefix.d + j] / sqrt_n;
  return out;
}

SampledPath sample_white_noise_path(const SignalSpec& spec, double n_drift,
                                    std::size_t N, RngSpec rng_spec) {
  if (!(n_drift >= 0.0) || !std::isfinite(n_drift))
    throw std::domain_error("sample_white_noise_path: n_drift must be finite and >= 0");
  if (std::holds_alternative<ZeroSignal>(spec) || n_drift == 0.0)
    return sample_brownian(N, 1, rng_spec);
  Rng rng(rng_spec);
  const SignalSpec materialized = materialize_signal(spec, rng);
  const auto drift = signal_antiderivative_grid(materialized, N);
  return white_noise_from_drift(drift, n_drift, N, rng);
}

SampledPath white_noise_from_drift(std::span<const double> drift_grid,
                                   double n_drift, std::size_t N, Rng& rng) {
  if (N == 0) throw std::domain_error("white_noise_from_drift: N must be >= 1");
  if (drift_grid.size() != N + 1)
    throw std::domain_error("white_noise_from_drift: drift grid size must be N+1");
  SampledPath path;
  path.N = N;
  path.d = 1;
  path.values.resize(N + 1);
  const double amp = std::sqrt(n_drift);
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  double w = 0.0;
  path.values[0] = amp * drift_grid[0];  // F(0) = 0 for every signal here
  for (std::size_t i = 1; i <= N; ++i) {
    w += rng.next_gaussian() * scale;
    path.values[i] = amp * drift_grid[i] + w;
  }
  return path;
}

SampledPath white_noise_drift_only(const SignalSpec& spec, double n_drift,
                                   std::size_t N) {
  const auto drift = signal_antiderivative_grid(spec, N);
  SampledPath path;
  path.N = N;
  path.d = 1;
  path.values.resize(N + 1);
  const double amp = std::sqrt(n_drift);
  for (std::size_t i = 0; i <= N; ++i) path.values[i] = amp * drift[i];
  return path;
}

Observations sample_regression(const SignalSpec& spec, std::size_t n,
                               NoiseFamily noise, RngSpec rng_spec) {
  if (n == 0) throw std::domain_error("sample_regression: n must be >= 1");
  Rng rng(rng_spec);
  const SignalSpec materialized = materialize_signal(spec, rng);
  Observations obs;
  obs.n = n;
  obs.d = 1;
  obs.data.resize(n);
  for (std::size_t t = 1; t <= n; ++t) {
    const double mean =
        signal_eval(materialized, static_cast<double>(t) / static_cast<double>(n));
    const double eta =
        noise == NoiseFamily::Gaussian ? rng.next_gaussian() : rng.next_sign();
    obs.data[t - 1] = mean + eta;
  }
  return obs;
}

Observations regression_drift_only(const SignalSpec& spec, std::size_t n) {
  if (n == 0) throw std::domain_error("regression_drift_only: n must be >= 1");
  Observations obs;
  obs.n = n;
  obs.d = 1;
  obs.data.resize(n);
  for (std::size_t t = 1; t <= n; ++t)
    obs.data[t - 1] =
        signal_eval(spec, static_cast<double>(t) / static_cast<double>(n));
  return obs;
}

}  // namespace bostat
