#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "l2lab/laurent.hpp"

namespace l2lab::groupring {

/// Matrix over Q[Z^n].
class GroupRingMatrix {
public:
  GroupRingMatrix() : rank_(1), rows_(0), cols_(0) {}
  GroupRingMatrix(std::size_t ambient_rank, std::size_t rows, std::size_t cols)
      : rank_(ambient_rank), rows_(rows), cols_(cols),
        entries_(rows * cols, LaurentPoly(ambient_rank)) {}

  static GroupRingMatrix identity(std::size_t ambient_rank, std::size_t n) {
    GroupRingMatrix m(ambient_rank, n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = LaurentPoly::constant(ambient_rank, 1);
    return m;
  }

  static GroupRingMatrix scalar(const LaurentPoly& p) {
    GroupRingMatrix m(p.ambient_rank(), 1, 1);
    m(0, 0) = p;
    return m;
  }

  std::size_t ambient_rank() const { return rank_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  LaurentPoly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const LaurentPoly& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  bool operator==(const GroupRingMatrix& o) const {
    return rank_ == o.rank_ && rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

  bool integral() const {
    for (const auto& e : entries_)
      if (!e.integral()) return false;
    return true;
  }

  std::int64_t support_radius() const {
    std::int64_t r = 0;
    for (const auto& e : entries_) r = std::max(r, e.support_radius());
    return r;
  }

private:
  std::size_t rank_, rows_, cols_;
  std::vector<LaurentPoly> entries_;
};

/// Conjugate-transpose over the group ring: entry (j,i) of the result is the
/// involution of entry (i,j).
inline GroupRingMatrix involute(const GroupRingMatrix& a) {
  GroupRingMatrix r(a.ambient_rank(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j).involute();
  return r;
}

inline GroupRingMatrix matmul(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw std::invalid_argument("matmul: ambient rank mismatch");
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  GroupRingMatrix c(a.ambient_rank(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j).is_zero()) continue;
        c(i, j) = c(i, j) + a(i, k) * b(k, j);
      }
    }
  return c;
}

/// Finite quotient Z^n / (m_1 Z x ... x m_n Z), given by its moduli.
struct Quotient {
  std::vector<std::int64_t> moduli;

  Quotient() = default;
  explicit Quotient(std::vector<std::int64_t> m) : moduli(std::move(m)) {
    for (auto v : moduli)
      if (v < 1) throw std::invalid_argument("Quotient: moduli must be >= 1");
  }
  static Quotient cyclic(std::int64_t n) { return Quotient(std::vector<std::int64_t>{n}); }

  std::size_t rank() const { return moduli.size(); }

  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (auto v : moduli) {
      std::uint64_t next = s * static_cast<std::uint64_t>(v);
      if (v != 0 && next / static_cast<std::uint64_t>(v) != s)
        throw std::overflow_error("Quotient: size overflows");
      s = next;
    }
    return s;
  }

  /// All residue vectors in lexicographic order.
  std::vector<Exponent> residues() const {
    std::vector<Exponent> out;
    out.reserve(size());
    Exponent cur(moduli.size(), 0);
    for (;;) {
      out.push_back(cur);
      std::size_t t = moduli.size();
      while (t > 0) {
        --t;
        if (++cur[t] < moduli[t]) break;
        cur[t] = 0;
        if (t == 0) return out;
      }
      if (moduli.empty()) return out;
    }
  }

  Exponent reduce(const Exponent& e) const {
    Exponent r(moduli.size());
    for (std::size_t t = 0; t < moduli.size(); ++t) {
      std::int64_t v = e[t] % moduli[t];
      if (v < 0) v += moduli[t];
      r[t] = v;
    }
    return r;
  }

  std::size_t index_of(const Exponent& residue) const {
    std::size_t idx = 0;
    for (std::size_t t = 0; t < moduli.size(); ++t)
      idx = idx * static_cast<std::size_t>(moduli[t]) + static_cast<std::size_t>(residue[t]);
    return idx;
  }

  bool operator==(const Quotient& o) const { return moduli == o.moduli; }
};

/// A group-ring matrix pushed down to a finite quotient: the reduced
/// Q[Z^n/L]-matrix, its character blocks, and (on demand) the exact regular
/// representation over Q.
class PushedMatrix {
public:
  PushedMatrix(const GroupRingMatrix& a, const Quotient& q) : quotient_(q) {
    if (q.rank() != a.ambient_rank())
      throw std::invalid_argument("push: quotient rank != ambient rank");
    reduced_ = GroupRingMatrix(a.ambient_rank(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        LaurentPoly p(a.ambient_rank());
        for (const auto& [e, c] : a(i, j).terms()) p.add_term(q.reduce(e), c);
        reduced_(i, j) = std::move(p);
      }
  }

  const Quotient& quotient() const { return quotient_; }
  const GroupRingMatrix& reduced() const { return reduced_; }
  std::size_t rows() const { return reduced_.rows(); }
  std::size_t cols() const { return reduced_.cols(); }

  /// Block of the character chi_k, k a residue vector: entry (i,j) is
  /// sum over terms of coeff * exp(2*pi*i*<k,e>/moduli).
  Eigen::MatrixXcd character_block(const Exponent& k) const {
    Eigen::MatrixXcd b(rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) {
        std::complex<double> v = 0;
        for (const auto& [e, c] : reduced_(i, j).terms()) {
          // phase <k,e>/m as an exact rational reduced mod 1, only then to double
          Rat phase = 0;
          for (std::size_t t = 0; t < quotient_.moduli.size(); ++t)
            phase += Rat(Int(k[t]) * Int(e[t]), Int(quotient_.moduli[t]));
          Int whole = rat_num(phase) / rat_den(phase);
          phase -= Rat(whole);
          if (phase < 0) phase += 1;
          double angle = 2.0 * std::numbers::pi * static_cast<double>(phase);
          v += static_cast<double>(c) * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      }
    return b;
  }

  /// All character blocks, in lexicographic residue order.
  std::vector<Eigen::MatrixXcd> character_blocks() const {
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(quotient_.size());
    for (const auto& k : quotient_.residues()) out.push_back(character_block(k));
    return out;
  }

  /// Regular representation over Q: (rows*|Q|) x (cols*|Q|), basis e_g per
  /// residue g in lexicographic order. Block (i,j) maps e_g to sum over
  /// terms c * e_{g+e}.
  RatMatrix regular_rep() const {
    const std::size_t n = quotient_.size();
    auto res = quotient_.residues();
    RatMatrix m(rows() * n, cols() * n);
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j)
        for (const auto& [e, c] : reduced_(i, j).terms())
          for (std::size_t g = 0; g < n; ++g) {
            Exponent target(quotient_.rank());
            for (std::size_t t = 0; t < quotient_.rank(); ++t) {
              std::int64_t v = res[g][t] + e[t];
              if (v >= quotient_.moduli[t]) v -= quotient_.moduli[t];
              target[t] = v;
            }
            m(i * n + quotient_.index_of(target), j * n + g) += c;
          }
    return m;
  }

  /// Same matrix with integer entries; throws if any coefficient is non-integral.
  IntMatrix regular_rep_int() const {
    if (!reduced_.integral())
      throw std::invalid_argument("regular_rep_int: matrix has non-integer coefficients");
    RatMatrix q = regular_rep();
    IntMatrix m(q.rows(), q.cols());
    for (std::size_t i = 0; i < q.rows(); ++i)
      for (std::size_t j = 0; j < q.cols(); ++j) m(i, j) = rat_num(q(i, j));
    return m;
  }

private:
  Quotient quotient_;
  GroupRingMatrix reduced_;  // exponents reduced mod moduli
};

inline PushedMatrix push(const GroupRingMatrix& a, const Quotient& q) {
  return PushedMatrix(a, q);
}

/// Von Neumann trace over N(Z^n): sum of the identity coefficients on the diagonal.
inline Rat trace_vn(const GroupRingMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("trace_vn: non-square");
  Rat s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i).identity_coeff();
  return s;
}

/// Trace over N(Z^n / L): sum of the coefficients at the identity of the
/// quotient group, i.e. (1/|Q|) * trace of the regular representation.
inline Rat trace_pushed(const PushedMatrix& p) {
  if (p.rows() != p.cols()) throw std::invalid_argument("trace_pushed: non-square");
  Rat s = 0;
  Exponent zero(p.quotient().rank(), 0);
  for (std::size_t i = 0; i < p.rows(); ++i) s += p.reduced()(i, i).coeff(zero);
  return s;
}

/// K^G(A) = rows*cols*max L^1 norm of an entry; bounds the operator norm.
inline double l1_bound(const GroupRingMatrix& a) {
  Rat best = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) best = std::max(best, a(i, j).l1_norm());
  return static_cast<double>(a.rows() * a.cols()) * static_cast<double>(best);
}

}  // namespace l2lab::groupring
