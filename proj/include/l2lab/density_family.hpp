#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace l2lab::density_family {

/// Breakpoints of f_n: (e^{-3n}, e^{-2n}, e^{-n}, 1/n + e^{-n}).
inline std::array<double, 4> breakpoints(unsigned n) {
  if (n < 2) throw std::invalid_argument("density family: n must be >= 2");
  double en = std::exp(-static_cast<double>(n));
  return {std::exp(-3.0 * n), std::exp(-2.0 * n), en, 1.0 / n + en};
}

/// The five-branch family f_n: [0,1] -> [0,1]. Monotone, continuous,
/// f_n(0) = 0, f_n(1) = 1, and f_n -> id pointwise while the integrals
/// of f_n/lambda stay bounded away from 1.
inline double f_eval(unsigned n, double lambda) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("f_eval: lambda outside [0,1]");
  auto [b1, b2, b3, b4] = breakpoints(n);
  if (lambda <= b1) return lambda;
  if (lambda <= b2) {
    double top = 1.0 / (2.0 * n) + b2;  // value at the right end
    return ((b2 - lambda) * b1 + (lambda - b1) * top) / (b2 - b1);
  }
  if (lambda <= b3) return 1.0 / (-std::log(lambda)) + lambda;
  if (lambda <= b4) return b4;
  return lambda;
}

/// int_{0+}^{1} f_n(lambda)/lambda dlambda, per-branch antiderivatives:
///   branch 1: b1
///   branch 2: 1/(2n) + b2 - b1 - 1/(2(e^n - 1))
///   branch 3: ln 2 + b3 - b2
///   branch 4: (1/n + e^-n) ln(e^n/n + 1)
///   branch 5: 1 - 1/n - e^-n
inline double f_integral(unsigned n) {
  auto [b1, b2, b3, b4] = breakpoints(n);
  double branch2 = 1.0 / (2.0 * n) + b2 - b1 - 1.0 / (2.0 * (std::exp(static_cast<double>(n)) - 1.0));
  double branch3 = std::log(2.0) + b3 - b2;
  double branch4 = b4 * std::log(std::exp(static_cast<double>(n)) / n + 1.0);
  double branch5 = 1.0 - b4;
  return b1 + branch2 + branch3 + branch4 + branch5;
}

namespace detail {

// Adaptive Simpson on [a,b]; integrands here are smooth per call.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double eps, int depth) {
  double m = (a + b) / 2;
  double lm = (a + m) / 2, rm = (m + b) / 2;
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * eps)
    return left + right + (left + right - whole) / 15;
  return adaptive_simpson(f, a, m, fa, flm, fm, eps / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, eps / 2, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-11) {
  if (a == b) return 0.0;
  double m = (a + b) / 2;
  return adaptive_simpson(f, a, b, f(a), f(m), f(b), eps, 48);
}

}  // namespace detail

/// Quadrature oracle for f_integral: substituting lambda = e^t flattens the
/// exponentially small branches, then each branch is integrated adaptively.
inline double f_integral_quadrature(unsigned n) {
  auto [b1, b2, b3, b4] = breakpoints(n);
  double total = b1;  // branch 1 integrand is identically 1
  std::array<double, 4> lo = {b1, b2, b3, b4};
  std::array<double, 4> hi = {b2, b3, b4, 1.0};
  for (int i = 0; i < 4; ++i) {
    auto g = [n](double t) { return f_eval(n, std::exp(t)); };
    total += detail::integrate(g, std::log(lo[static_cast<std::size_t>(i)]),
                               std::log(hi[static_cast<std::size_t>(i)]));
  }
  return total;
}

/// One member of the family as a value: index, breakpoints, and evaluation.
/// Construction validates continuity at the breakpoints and the endpoint
/// normalization f(0) = 0, f(1) = 1.
struct PiecewiseDensity {
  unsigned n;
  std::array<double, 4> knots;

  explicit PiecewiseDensity(unsigned index) : n(index), knots(breakpoints(index)) {
    for (double b : knots) {
      double left = f_eval(n, std::nextafter(b, 0.0));
      double right = f_eval(n, std::nextafter(b, 1.0));
      if (std::abs(left - right) > 1e-12)
        throw std::logic_error("PiecewiseDensity: branch discontinuity at a breakpoint");
    }
    if (f_eval(n, 0.0) != 0.0 || f_eval(n, 1.0) != 1.0)
      throw std::logic_error("PiecewiseDensity: endpoint normalization violated");
  }

  double operator()(double lambda) const { return f_eval(n, lambda); }
};

/// sup_n f_n(lambda) = 1/(-ln lambda) + lambda on (0, e^{-1}].
inline double sup_envelope(double lambda) {
  if (!(lambda > 0.0) || lambda > std::exp(-1.0))
    throw std::invalid_argument("sup_envelope: lambda outside (0, e^-1]");
  return 1.0 / (-std::log(lambda)) + lambda;
}

/// Partial integrals int_eps^{e^-1} sup_n f_n(lambda)/lambda dlambda
///   = e^-1 - eps + ln(-ln eps),
/// unbounded as eps -> 0 (the uniform integrability failure).
inline std::vector<double> envelope_divergence(const std::vector<double>& eps_sequence) {
  std::vector<double> out;
  out.reserve(eps_sequence.size());
  double prev = -1;
  bool first = true;
  for (double eps : eps_sequence) {
    if (!(eps > 0.0) || eps >= std::exp(-1.0))
      throw std::invalid_argument("envelope_divergence: eps outside (0, e^-1)");
    if (!first && eps >= prev)
      throw std::invalid_argument("envelope_divergence: eps sequence must decrease");
    first = false;
    prev = eps;
    out.push_back(std::exp(-1.0) - eps + std::log(-std::log(eps)));
  }
  return out;
}

/// int_{0+}^{eps} C / (lambda (-ln lambda)^{1+delta}) dlambda = (C/delta)(-ln eps)^-delta.
/// Finite for every delta > 0; this is the uniform logarithmic estimate.
inline double log_bound_integral(double c, double delta, double eps) {
  if (!(c > 0.0)) throw std::invalid_argument("log_bound_integral: C must be > 0");
  if (!(delta > 0.0))
    throw std::invalid_argument("log_bound_integral: delta must be > 0 (delta = 0 diverges)");
  if (!(eps > 0.0) || eps >= 1.0)
    throw std::invalid_argument("log_bound_integral: eps outside (0,1)");
  return c / delta * std::pow(-std::log(eps), -delta);
}

/// Quadrature oracle: substitute lambda = e^{-e^s}; the integrand becomes
/// C e^{-delta s}, truncated where the certified tail drops below 1e-13.
inline double log_bound_integral_quadrature(double c, double delta, double eps) {
  if (!(c > 0.0) || !(delta > 0.0) || !(eps > 0.0) || eps >= 1.0)
    throw std::invalid_argument("log_bound_integral_quadrature: bad parameters");
  double s0 = std::log(-std::log(eps));
  // tail beyond S is (C/delta) e^{-delta S}
  double s1 = std::max(s0, std::log(c / (delta * 1e-13)) / delta);
  auto g = [c, delta](double s) { return c * std::exp(-delta * s); };
  return detail::integrate(g, s0, s1) + c / delta * std::exp(-delta * s1);
}

/// Partial integrals int_x^{eps} C/(lambda(-ln lambda)) dlambda
///   = C (ln(-ln x) - ln(-ln eps)),
/// unbounded as x -> 0: the delta = 0 case genuinely diverges.
inline std::vector<double> divergence_of_inverse_log(double c, double eps,
                                                     const std::vector<double>& xs) {
  if (!(c > 0.0)) throw std::invalid_argument("divergence_of_inverse_log: C must be > 0");
  if (!(eps > 0.0) || eps >= 1.0)
    throw std::invalid_argument("divergence_of_inverse_log: eps outside (0,1)");
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (!(x > 0.0) || x >= eps)
      throw std::invalid_argument("divergence_of_inverse_log: x outside (0, eps)");
    out.push_back(c * (std::log(-std::log(x)) - std::log(-std::log(eps))));
  }
  return out;
}

}  // namespace l2lab::density_family
