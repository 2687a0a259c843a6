#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "l2lab/exactalg.hpp"
#include "l2lab/groupring.hpp"

namespace l2lab::spectral {

using groupring::GroupRingMatrix;
using groupring::LaurentPoly;
using groupring::PushedMatrix;
using groupring::Quotient;

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi, ascending with
/// multiplicity. Iterates until the off-diagonal Frobenius norm drops below
/// 1e-13 * ||M||_F. Rejects input that is not Hermitian to 1e-12 relative.
inline std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eigenvalues: non-square");
  const Eigen::Index n = m.rows();
  if (n == 0) return {};
  double norm = m.norm();
  if ((m - m.adjoint()).norm() > 1e-12 * std::max(norm, 1e-300))
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");

  Eigen::MatrixXcd a = (m + m.adjoint()) / 2.0;
  const double target = 1e-13 * norm;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
    off = std::sqrt(off);
    if (off <= target || off == 0.0) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        std::complex<double> phase = a(p, q) / apq;
        double app = a(p, p).real(), aqq = a(q, q).real();
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
        // A <- U^H A U with U = [[c, s*phase], [-s*conj(phase), c]] on (p,q)
        for (Eigen::Index r = 0; r < n; ++r) {
          std::complex<double> arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - s * std::conj(phase) * arq;
          a(r, q) = s * phase * arp + c * arq;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          std::complex<double> apr = a(p, r), aqr = a(q, r);
          a(p, r) = c * apr - s * phase * aqr;
          a(q, r) = s * std::conj(phase) * apr + c * aqr;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Eigenvalue multiset of a pushed A*A with its normalization |Q| and the
/// exact rank deficiency of the regular representation over Q. The
/// exact_nullity smallest entries are pinned to zero: the rational rank says
/// they vanish, so the numeric residue there is noise.
struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::size_t normalization = 1;
  std::size_t exact_nullity = 0;
  std::size_t cols = 0;

  std::size_t count() const { return eigenvalues.size(); }
};

namespace detail {

inline Spectrum make_spectrum(std::vector<double> ev, std::size_t normalization,
                              std::size_t nullity, std::size_t cols) {
  std::sort(ev.begin(), ev.end());
  if (nullity > ev.size()) throw std::logic_error("spectrum: nullity exceeds eigenvalue count");
  for (std::size_t i = 0; i < nullity; ++i) ev[i] = 0.0;
  for (auto& v : ev)
    if (v < 0.0) v = 0.0;  // A*A is positive semidefinite
  Spectrum s;
  s.eigenvalues = std::move(ev);
  s.normalization = normalization;
  s.exact_nullity = nullity;
  s.cols = cols;
  return s;
}

// Degree of gcd(p, z^n - 1) over Q[z], with p given densely (unit z^k stripped).
inline std::size_t gcd_degree_with_cyclotomic(const std::vector<Rat>& p, std::uint64_t n) {
  auto deg = [](const std::vector<Rat>& f) -> std::ptrdiff_t {
    for (std::ptrdiff_t d = static_cast<std::ptrdiff_t>(f.size()) - 1; d >= 0; --d)
      if (f[static_cast<std::size_t>(d)] != 0) return d;
    return -1;
  };
  std::vector<Rat> a(static_cast<std::size_t>(n) + 1, Rat(0));
  a[0] = -1;
  a[static_cast<std::size_t>(n)] = 1;
  std::vector<Rat> b = p;
  while (deg(b) >= 0) {
    std::ptrdiff_t da = deg(a), db = deg(b);
    if (da < db) {
      std::swap(a, b);
      continue;
    }
    const Rat& lead = b[static_cast<std::size_t>(db)];
    for (std::ptrdiff_t i = da; i >= db; --i) {
      Rat f = a[static_cast<std::size_t>(i)] / lead;
      if (f == 0) continue;
      for (std::ptrdiff_t j = 0; j <= db; ++j)
        a[static_cast<std::size_t>(i - db + j)] -= f * b[static_cast<std::size_t>(j)];
      a[static_cast<std::size_t>(i)] = 0;
    }
    std::swap(a, b);
  }
  std::ptrdiff_t d = deg(a);
  return d < 0 ? 0 : static_cast<std::size_t>(d);
}

}  // namespace detail

/// Exact kernel dimension of the regular representation of push(A, Q) over Q.
inline std::size_t exact_nullity(const GroupRingMatrix& a, const Quotient& q) {
  const std::size_t total = a.cols() * q.size();
  if (a.rows() == 1 && a.cols() == 1 && a.ambient_rank() == 1) {
    const LaurentPoly& p = a(0, 0);
    if (p.is_zero()) return total;
    // multiplication by p on Q[z]/(z^n - 1): kernel dimension is deg gcd(p, z^n-1)
    auto [lo, coeffs] = p.dense_univariate();
    (void)lo;
    return detail::gcd_degree_with_cyclotomic(coeffs, q.size());
  }
  PushedMatrix pm = push(a, q);
  return total - exactalg::rank_over_Q(pm.regular_rep());
}

/// Concatenated eigenvalues of A_chi^* A_chi over all characters, with the
/// exact nullity of the regular representation.
inline Spectrum spectrum_of(const GroupRingMatrix& a, const Quotient& q) {
  PushedMatrix pm = push(a, q);
  std::vector<double> ev;
  ev.reserve(a.cols() * q.size());
  for (const auto& k : q.residues()) {
    Eigen::MatrixXcd b = pm.character_block(k);
    Eigen::MatrixXcd h = b.adjoint() * b;
    for (double v : hermitian_eigenvalues(h)) ev.push_back(v);
  }
  return detail::make_spectrum(std::move(ev), q.size(), exact_nullity(a, q), a.cols());
}

/// Spectrum of M^T M for an integer matrix (normalization 1).
inline Spectrum spectrum_of_int(const IntMatrix& m) {
  Eigen::MatrixXcd b(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<double>(m(i, j));
  Eigen::MatrixXcd h = b.adjoint() * b;
  std::size_t nullity = m.cols() - exactalg::rank_over_field(m);
  return detail::make_spectrum(hermitian_eigenvalues(h), 1, nullity, m.cols());
}

/// Spectrum of a symmetric positive semidefinite integer matrix itself
/// (Laplacians), normalization 1.
inline Spectrum spectrum_of_symmetric_int(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("spectrum_of_symmetric_int: non-square");
  Eigen::MatrixXcd b(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<double>(m(i, j));
  std::size_t nullity = m.cols() - exactalg::rank_over_field(m);
  return detail::make_spectrum(hermitian_eigenvalues(b), 1, nullity, m.cols());
}

/// Log of the product of the (count - exact_nullity) largest eigenvalues:
/// the log-determinant of the nonzero part of the positive operator the
/// spectrum belongs to. Zero on an empty product.
inline double log_det_nonzero(const Spectrum& s) {
  double acc = 0;
  for (std::size_t i = s.exact_nullity; i < s.eigenvalues.size(); ++i) {
    double v = s.eigenvalues[i];
    if (v <= 1e-300)
      throw std::runtime_error(
          "detprime: retained eigenvalue is numerically zero (exact nullity disagrees "
          "with the numeric spectrum)");
    acc += std::log(v);
  }
  return acc;
}

/// ln det'(S) for a spectrum of some A*A: half the log-sum above.
inline double log_detprime(const Spectrum& s) { return log_det_nonzero(s) / 2.0; }

inline double detprime(const Spectrum& s) { return std::exp(log_detprime(s)); }

/// ln(det'(S)) / normalization.
inline double normalized_logdet(const Spectrum& s) {
  return log_detprime(s) / static_cast<double>(s.normalization);
}

/// Normalized eigenvalue counting function of a spectrum.
struct SpectralDensity {
  Spectrum underlying;
};

inline SpectralDensity density(Spectrum s) { return {std::move(s)}; }

/// F(lambda) = #{eigenvalues <= lambda} / normalization; F(0) = exact kernel fraction.
inline double evaluate(const SpectralDensity& f, double lambda) {
  if (lambda < 0) throw std::invalid_argument("density: lambda must be >= 0");
  const auto& ev = f.underlying.eigenvalues;
  std::size_t cnt = static_cast<std::size_t>(
      std::upper_bound(ev.begin(), ev.end(), lambda) - ev.begin());
  return static_cast<double>(cnt) / static_cast<double>(f.underlying.normalization);
}

/// ln(K)*(F(K)-F(0)) - int_0+^K (F(lambda)-F(0))/lambda dlambda, evaluated as
/// the exact finite sum for the step density. Equals (1/norm) * sum of ln of
/// the retained eigenvalues, i.e. twice normalized_logdet.
inline double logdet_via_density(const Spectrum& s, double k) {
  if (!s.eigenvalues.empty() && k < s.eigenvalues.back())
    throw std::invalid_argument("logdet_via_density: K below the spectral radius");
  if (k <= 0) throw std::invalid_argument("logdet_via_density: K must be positive");
  const double norm = static_cast<double>(s.normalization);
  std::vector<double> retained(s.eigenvalues.begin() +
                                   static_cast<std::ptrdiff_t>(s.exact_nullity),
                               s.eigenvalues.end());
  double f_at_k = static_cast<double>(retained.size()) / norm;  // F(K) - F(0)
  double integral = 0;
  for (std::size_t i = 0; i < retained.size(); ++i) {
    if (retained[i] <= 1e-300)
      throw std::runtime_error(
          "logdet_via_density: retained eigenvalue is numerically zero");
    double hi = (i + 1 < retained.size()) ? retained[i + 1] : k;
    double steps = static_cast<double>(i + 1) / norm;
    integral += steps * (std::log(hi) - std::log(retained[i]));
  }
  return std::log(k) * f_at_k - integral;
}

/// Exact von Neumann kernel dimension of the pushed operator, as a rational.
inline Rat vn_kernel_dim(const GroupRingMatrix& a, const Quotient& q) {
  return Rat(Int(exact_nullity(a, q)), Int(q.size()));
}

namespace detail {

struct DensePoly {
  std::vector<double> c;  // c[0] + c[1] z + ...
  double operator()(std::complex<double> z, std::complex<double>* deriv = nullptr) const {
    std::complex<double> v = 0, d = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      d = d * z + v;
      v = v * z + c[i];
    }
    if (deriv) *deriv = d;
    last = v;
    return std::abs(v);
  }
  mutable std::complex<double> last;
};

inline std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
  const std::size_t deg = coeffs.size() - 1;
  if (deg == 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(deg),
                                                      static_cast<Eigen::Index>(deg));
  for (std::size_t i = 1; i < deg; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < deg; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) =
        -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("polynomial_roots: eigensolver failed");

  DensePoly p{coeffs, {}};
  double l1 = 0;
  for (double v : coeffs) l1 += std::abs(v);
  std::vector<std::complex<double>> roots;
  roots.reserve(deg);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(deg); ++i) {
    std::complex<double> z = solver.eigenvalues()(i);
    double best = p(z);
    std::complex<double> best_z = z;
    for (int it = 0; it < 24; ++it) {
      double scale = l1 * std::max(1.0, std::pow(std::abs(z), static_cast<double>(deg)));
      if (best <= 1e-14 * scale) break;
      std::complex<double> d;
      p(z, &d);
      std::complex<double> val = p.last;
      if (std::abs(d) == 0.0) break;
      z -= val / d;
      double r = p(z);
      if (r < best) {
        best = r;
        best_z = z;
      } else {
        break;
      }
    }
    roots.push_back(best_z);
  }
  return roots;
}

}  // namespace detail

/// Mahler measure |c| * prod max(1, |root|) of a univariate Laurent
/// polynomial, monomial factors stripped; roots from the companion matrix,
/// Newton-polished.
inline double mahler(const LaurentPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("mahler: zero polynomial");
  if (p.ambient_rank() != 1) throw std::invalid_argument("mahler: ambient rank must be 1");
  auto [lo, coeffs] = p.dense_univariate();
  (void)lo;
  std::vector<double> c(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = static_cast<double>(coeffs[i]);
  double lead = std::abs(c.back());
  double m = lead;
  for (const auto& z : detail::polynomial_roots(c)) {
    double r = std::abs(z);
    if (r > 1.0) m *= r;
  }
  return m;
}

/// exp of the mean of ln|p| over the half-shifted N^rank grid on the torus.
/// Grid points where |p| < 1e-14 are skipped and counted; more than 1% of
/// them aborts the computation.
inline double fk_det_torus(const LaurentPoly& p, unsigned grid) {
  if (p.is_zero()) throw std::invalid_argument("fk_det_torus: zero polynomial");
  if (grid < 2) throw std::invalid_argument("fk_det_torus: grid must be >= 2");
  const std::size_t rank = p.ambient_rank();
  const std::int64_t n = grid;

  std::vector<std::int64_t> idx(rank, 0);
  double sum = 0;
  std::uint64_t total = 0, skipped = 0;
  for (;;) {
    // p at omega with omega_t = exp(2 pi i (k_t + 1/2)/N)
    std::complex<double> v = 0;
    for (const auto& [e, coeff] : p.terms()) {
      std::int64_t twice = 0;  // angle as multiples of pi/N, mod 2N
      for (std::size_t t = 0; t < rank; ++t) {
        std::int64_t part = ((2 * idx[t] + 1) % (2 * n)) * (e[t] % (2 * n)) % (2 * n);
        twice = (twice + part) % (2 * n);
      }
      if (twice < 0) twice += 2 * n;
      double angle = std::numbers::pi * static_cast<double>(twice) / static_cast<double>(n);
      v += static_cast<double>(coeff) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    ++total;
    double a = std::abs(v);
    if (a < 1e-14)
      ++skipped;
    else
      sum += std::log(a);

    std::size_t t = rank;
    bool done = true;
    while (t > 0) {
      --t;
      if (++idx[t] < n) {
        done = false;
        break;
      }
      idx[t] = 0;
    }
    if (done) break;
  }
  if (100 * skipped > total)
    throw std::runtime_error("fk_det_torus: more than 1% of grid points hit a zero of p");
  return std::exp(sum / static_cast<double>(total - skipped));
}

/// Values at grids N, 2N, 4N for convergence assessment.
inline std::array<double, 3> fk_det_torus_sequence(const LaurentPoly& p, unsigned grid) {
  return {fk_det_torus(p, grid), fk_det_torus(p, 2 * grid), fk_det_torus(p, 4 * grid)};
}

}  // namespace l2lab::spectral
