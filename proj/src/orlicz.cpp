#include "bostat/orlicz.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bostat {

namespace {
constexpr double kExpOverflow = 709.0;  // expm1 argument ceiling before inf
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_family_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::domain_error("YoungFunction: family exponent p must be finite and >= 1");
}
}  // namespace

YoungFunction YoungFunction::exponential(double p) {
  check_family_exponent(p);
  return {Kind::Exponential, p};
}

YoungFunction YoungFunction::power(double p) {
  check_family_exponent(p);
  return {Kind::Power, p};
}

YoungFunction psi2() { return YoungFunction::exponential(2.0); }

double young_eval(const YoungFunction& psi, double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("young_eval: x must be finite and >= 0");
  if (psi.kind == YoungFunction::Kind::Exponential) {
    const double a = (psi.p == 2.0) ? x * x : std::pow(x, psi.p);
    return std::expm1(a);
  }
  return std::pow(x, psi.p);
}

double young_inv(const YoungFunction& psi, double y) {
  if (!(y >= 0.0))
    throw std::domain_error("young_inv: y must be >= 0");
  if (psi.kind == YoungFunction::Kind::Exponential) {
    const double a = std::log1p(y);
    return (psi.p == 2.0) ? std::sqrt(a) : std::pow(a, 1.0 / psi.p);
  }
  return std::pow(y, 1.0 / psi.p);
}

double modulus_eval(const Modulus& rho, double h) {
  if (!(rho.mu > 0.0) || rho.mu > 1.0 || !(rho.nu >= 0.0))
    throw std::domain_error("modulus_eval: need mu in (0,1] and nu >= 0");
  if (!(h > 0.0) || h > 1.0)
    throw std::domain_error("modulus_eval: h must lie in (0,1]");
  const double hm = (rho.mu == 0.5) ? std::sqrt(h) : std::pow(h, rho.mu);
  if (rho.nu == 0.0) return hm;
  return hm * std::pow(1.0 - std::log(h), rho.nu);  // log(e/h) = 1 - log h
}

namespace {

// weight * sum_i psi(y_i / k) over magnitudes pre-divided by their maximum,
// so y_i is in [0,1] and the psi_2 squares cannot overflow or underflow.
// Any exponential argument beyond kExpOverflow makes the whole sum +inf,
// which pushes the bracket upward instead of overflowing.
struct Objective {
  const YoungFunction& psi;
  double weight;
  bool squares_mode;
  std::vector<double> vals;  // y_i^2 in squares mode, y_i otherwise

  Objective(const WeightedMagnitudes& data, const YoungFunction& f,
            double scale)
      : psi(f), weight(data.weight) {
    squares_mode = psi.kind == YoungFunction::Kind::Exponential && psi.p == 2.0;
    vals.reserve(data.values.size());
    for (double x : data.values) {
      const double y = x / scale;
      vals.push_back(squares_mode ? y * y : y);
    }
  }

  double operator()(double k) const {
    double s = 0.0;
    if (squares_mode) {
      const double ik2 = 1.0 / (k * k);
      for (double q : vals) {
        const double a = q * ik2;
        if (a > kExpOverflow) return kInf;
        s += std::expm1(a);
      }
    } else if (psi.kind == YoungFunction::Kind::Exponential) {
      const double ik = 1.0 / k;
      for (double y : vals) {
        const double a = std::pow(y * ik, psi.p);
        if (a > kExpOverflow) return kInf;
        s += std::expm1(a);
      }
    } else {
      const double ik = 1.0 / k;
      for (double y : vals) s += std::pow(y * ik, psi.p);
    }
    return weight * s;
  }
};

}  // namespace

double empirical_orlicz_norm(const WeightedMagnitudes& data,
                             const YoungFunction& psi, double budget) {
  if (!(budget > 0.0) || !std::isfinite(budget))
    throw std::domain_error("empirical_orlicz_norm: budget must be positive and finite");
  if (data.values.empty()) return 0.0;
  if (!(data.weight > 0.0) || !std::isfinite(data.weight))
    throw std::domain_error("empirical_orlicz_norm: weight must be positive and finite");

  double max_v = 0.0;
  for (double x : data.values) {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw std::domain_error("empirical_orlicz_norm: values must be finite and >= 0");
    if (x > max_v) max_v = x;
  }
  if (max_v == 0.0) return 0.0;

  const Objective objective(data, psi, max_v);
  double norm_sq = 0.0;
  for (const double q : objective.vals)
    norm_sq += objective.squares_mode ? q : q * q;

  // Bracket [lo, hi] with objective(lo) > budget >= objective(hi), in the
  // rescaled units where magnitudes lie in [0,1]. The RMS seed is the right
  // order of magnitude for sub-Gaussian data, so the doubling / halving phase
  // is short. The objective tends to +inf as k -> 0 (some y_i > 0) and to 0
  // as k -> inf, so a bracket always exists.
  double lo, hi;
  const double k0 =
      std::sqrt(norm_sq / static_cast<double>(data.values.size()));
  if (objective(k0) > budget) {
    hi = k0;
    int guard = 0;
    do {
      hi *= 2.0;
    } while (objective(hi) > budget && ++guard < 200);
    lo = hi / 2.0;
  } else {
    lo = k0;
    int guard = 0;
    do {
      lo /= 2.0;
    } while (objective(lo) <= budget && ++guard < 200);
    hi = lo * 2.0;
  }

  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (objective(mid) > budget)
      lo = mid;
    else
      hi = mid;
  }
  return max_v * (0.5 * (lo + hi));
}

}  // namespace bostat
