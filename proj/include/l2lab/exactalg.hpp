#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "l2lab/int_matrix.hpp"

namespace l2lab::exactalg {

/// Field selector for rank computations: Q or F_p for a prime p.
struct FieldSpec {
  std::optional<Int> prime;  // empty = Q
  static FieldSpec Q() { return {}; }
  static FieldSpec Fp(Int p) { return {std::move(p)}; }
  bool is_rational() const { return !prime.has_value(); }
};

inline bool is_prime(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

struct SNFResult {
  std::vector<Int> diagonal;  // length min(rows, cols), d1 | d2 | ..., trailing zeros
  IntMatrix left, right;      // unimodular: left * M * right = diag
  IntMatrix left_inv, right_inv;
  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& d : diagonal) if (d != 0) ++r;
    return r;
  }
};

struct SNFOptions {
  bool track_left = false;
  bool track_right = false;
  bool track_left_inv = false;
  bool track_right_inv = false;
  static SNFOptions diagonal_only() { return {}; }
  static SNFOptions full() { return {true, true, true, true}; }
};

namespace detail {

// Quotient rounding to nearest keeps remainders at most half the pivot.
inline Int nearest_quotient(const Int& a, const Int& b) {
  Int q = a / b, r = a - q * b;
  if (r != 0) {
    Int twice = 2 * boost::multiprecision::abs(r);
    if (twice > boost::multiprecision::abs(b) ||
        (twice == boost::multiprecision::abs(b) && ((r > 0) == (b > 0))))
      q += ((r > 0) == (b > 0)) ? 1 : -1;
  }
  return q;
}

class SNFWorker {
public:
  SNFWorker(const IntMatrix& m, SNFOptions opt) : a_(m), opt_(opt) {
    if (opt.track_left) left_ = IntMatrix::identity(m.rows());
    if (opt.track_left_inv) left_inv_ = IntMatrix::identity(m.rows());
    if (opt.track_right) right_ = IntMatrix::identity(m.cols());
    if (opt.track_right_inv) right_inv_ = IntMatrix::identity(m.cols());
  }

  SNFResult run() {
    const std::size_t n = std::min(a_.rows(), a_.cols());
    for (std::size_t t = 0; t < n; ++t)
      if (!reduce_pivot(t)) break;
    SNFResult res;
    res.diagonal.resize(n);
    for (std::size_t t = 0; t < n; ++t) res.diagonal[t] = a_(t, t);
    res.left = std::move(left_);
    res.right = std::move(right_);
    res.left_inv = std::move(left_inv_);
    res.right_inv = std::move(right_inv_);
    return res;
  }

private:
  IntMatrix a_;
  SNFOptions opt_;
  IntMatrix left_, left_inv_, right_, right_inv_;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_(i, c), a_(j, c));
    if (opt_.track_left)
      for (std::size_t c = 0; c < left_.cols(); ++c) std::swap(left_(i, c), left_(j, c));
    if (opt_.track_left_inv)
      for (std::size_t r = 0; r < left_inv_.rows(); ++r) std::swap(left_inv_(r, i), left_inv_(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_(r, i), a_(r, j));
    if (opt_.track_right)
      for (std::size_t r = 0; r < right_.rows(); ++r) std::swap(right_(r, i), right_(r, j));
    if (opt_.track_right_inv)
      for (std::size_t c = 0; c < right_inv_.cols(); ++c) std::swap(right_inv_(i, c), right_inv_(j, c));
  }

  // row_i -= q * row_t
  void row_op(std::size_t i, std::size_t t, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < a_.cols(); ++c)
      if (a_(t, c) != 0) a_(i, c) -= q * a_(t, c);
    if (opt_.track_left)
      for (std::size_t c = 0; c < left_.cols(); ++c)
        if (left_(t, c) != 0) left_(i, c) -= q * left_(t, c);
    if (opt_.track_left_inv)
      for (std::size_t r = 0; r < left_inv_.rows(); ++r)
        if (left_inv_(r, i) != 0) left_inv_(r, t) += q * left_inv_(r, i);
  }

  // col_i -= q * col_t
  void col_op(std::size_t i, std::size_t t, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < a_.rows(); ++r)
      if (a_(r, t) != 0) a_(r, i) -= q * a_(r, t);
    if (opt_.track_right)
      for (std::size_t r = 0; r < right_.rows(); ++r)
        if (right_(r, t) != 0) right_(r, i) -= q * right_(r, t);
    if (opt_.track_right_inv)
      for (std::size_t c = 0; c < right_inv_.cols(); ++c)
        if (right_inv_(i, c) != 0) right_inv_(t, c) += q * right_inv_(i, c);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(i, c) = -a_(i, c);
    if (opt_.track_left)
      for (std::size_t c = 0; c < left_.cols(); ++c) left_(i, c) = -left_(i, c);
    if (opt_.track_left_inv)
      for (std::size_t r = 0; r < left_inv_.rows(); ++r) left_inv_(r, i) = -left_inv_(r, i);
  }

  bool find_pivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    Int best;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (a_(i, j) == 0) continue;
        Int v = boost::multiprecision::abs(a_(i, j));
        if (!found || v < best) {
          found = true;
          best = v;
          bi = i;
          bj = j;
        }
        if (best == 1) goto done;
      }
  done:
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  bool reduce_pivot(std::size_t t) {
    if (!find_pivot(t)) return false;
    for (;;) {
      // clear the pivot column
      bool restart = false;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (a_(i, t) == 0) continue;
        Int q = nearest_quotient(a_(i, t), a_(t, t));
        row_op(i, t, q);
        if (a_(i, t) != 0) {  // remainder is strictly smaller: promote it
          swap_rows(t, i);
          restart = true;
          break;
        }
      }
      if (restart) continue;
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (a_(t, j) == 0) continue;
        Int q = nearest_quotient(a_(t, j), a_(t, t));
        col_op(j, t, q);
        if (a_(t, j) != 0) {
          swap_cols(t, j);
          restart = true;
          break;
        }
      }
      if (restart) continue;
      // divisibility sweep over the trailing block
      const Int& d = a_(t, t);
      bool fixed = true;
      for (std::size_t i = t + 1; i < a_.rows() && fixed; ++i)
        for (std::size_t j = t + 1; j < a_.cols(); ++j)
          if (a_(i, j) % d != 0) {
            row_op(t, i, Int(-1));  // row_t += row_i, brings the entry into play
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    if (a_(t, t) < 0) negate_row(t);
    return true;
  }
};

}  // namespace detail

/// Smith normal form with unimodular transforms: left * M * right = diag(diagonal).
inline SNFResult snf(const IntMatrix& m, SNFOptions opt = SNFOptions::full()) {
  return detail::SNFWorker(m, opt).run();
}

namespace detail {

inline Int mod_reduce(const Int& v, const Int& p) {
  Int r = v % p;
  if (r < 0) r += p;
  return r;
}

// a^-1 mod p by extended Euclid.
inline Int mod_inverse(const Int& a, const Int& p) {
  Int old_r = mod_reduce(a, p), r = p;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int t = old_r - q * r; old_r = r; r = t;
    t = old_s - q * s; old_s = s; s = t;
  }
  return mod_reduce(old_s, p);
}

inline std::size_t rank_mod_p(const IntMatrix& m, const Int& p) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod_reduce(m(i, j), p);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[rank], a[piv]);
    Int inv = mod_inverse(a[rank][col], p);
    for (std::size_t j = col; j < cols; ++j) a[rank][j] = mod_reduce(a[rank][j] * inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      Int f = a[i][col];
      for (std::size_t j = col; j < cols; ++j)
        a[i][j] = mod_reduce(a[i][j] - f * a[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

inline Int row_content(const std::vector<Int>& row) {
  Int g = 0;
  for (const auto& v : row) {
    if (v == 0) continue;
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(v));
    if (g == 1) break;
  }
  return g;
}

// Integer Gaussian elimination with per-row content reduction. Rows with a
// zero entry in the pivot column are untouched, which keeps structured
// matrices (circulants of short polynomials) fast.
inline std::size_t rank_over_Q_int(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j);
    Int g = row_content(a[i]);
    if (g > 1)
      for (auto& v : a[i]) v /= g;
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rows;
    Int best;
    for (std::size_t i = rank; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      Int v = boost::multiprecision::abs(a[i][col]);
      if (piv == rows || v < best) {
        piv = i;
        best = v;
      }
      if (best == 1) break;
    }
    if (piv == rows) continue;
    std::swap(a[rank], a[piv]);
    const std::vector<Int>& pr = a[rank];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      Int g = boost::multiprecision::gcd(boost::multiprecision::abs(a[i][col]),
                                         boost::multiprecision::abs(pr[col]));
      Int fp = pr[col] / g, fi = a[i][col] / g;
      for (std::size_t j = col; j < cols; ++j)
        a[i][j] = fp * a[i][j] - fi * pr[j];
      Int c = row_content(a[i]);
      if (c > 1)
        for (auto& v : a[i]) v /= c;
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Rank of M over Q or over F_p. Rejects non-prime moduli.
inline std::size_t rank_over_field(const IntMatrix& m, const FieldSpec& field = FieldSpec::Q()) {
  if (m.empty()) return 0;
  if (field.is_rational()) return detail::rank_over_Q_int(m);
  if (!is_prime(*field.prime)) throw std::invalid_argument("rank_over_field: modulus is not prime");
  return detail::rank_mod_p(m, *field.prime);
}

inline std::size_t rank_over_Q(const RatMatrix& m) {
  // clearing denominators row by row does not change the row space
  IntMatrix scaled(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j)
      l = boost::multiprecision::lcm(l, rat_den(m(i, j)));
    for (std::size_t j = 0; j < m.cols(); ++j)
      scaled(i, j) = rat_num(m(i, j)) * (l / rat_den(m(i, j)));
  }
  return detail::rank_over_Q_int(scaled);
}

/// Lagrange-style pairwise size reduction of lattice basis columns; a
/// unimodular operation that keeps SNF-derived bases from carrying huge
/// nearly-parallel vectors.
inline void size_reduce_columns(IntMatrix& m) {
  const std::size_t n = m.cols();
  if (n < 2) return;
  auto dot = [&](std::size_t a, std::size_t b) {
    Int s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, a) * m(i, b);
    return s;
  };
  for (int round = 0; round < 64; ++round) {
    bool changed = false;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j) continue;
        Int den = dot(i, i);
        if (den == 0) continue;
        Int q = detail::nearest_quotient(dot(i, j), den);
        if (q == 0) continue;
        for (std::size_t r = 0; r < m.rows(); ++r) m(r, j) -= q * m(r, i);
        changed = true;
      }
    if (!changed) break;
  }
}

/// Z-basis of ker(M) = {x : Mx = 0}, as matrix columns. The kernel of an
/// integer matrix is saturated, and the SNF pullback yields a basis of it.
inline IntMatrix kernel_basis_saturated(const IntMatrix& m) {
  if (m.cols() == 0) return IntMatrix(0, 0);
  if (m.rows() == 0) return IntMatrix::identity(m.cols());
  SNFOptions opt;
  opt.track_right = true;
  SNFResult s = snf(m, opt);
  std::vector<std::size_t> zero_cols;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (j >= s.diagonal.size() || s.diagonal[j] == 0) zero_cols.push_back(j);
  IntMatrix basis(m.cols(), zero_cols.size());
  for (std::size_t k = 0; k < zero_cols.size(); ++k)
    for (std::size_t i = 0; i < m.cols(); ++i) basis(i, k) = s.right(i, zero_cols[k]);
  size_reduce_columns(basis);
  return basis;
}

/// det'(M)^2 as an exact rational: the product of the nonzero eigenvalues of
/// M^T M. For rank-deficient M this is det(U^T M^T M U) / det(U^T U) with U a
/// basis of the saturated row-space lattice (the orthogonal complement of the
/// kernel), on which M^T M acts invariantly.
inline Rat gram_pseudodet(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 1;
  std::size_t r = rank_over_field(m);
  if (r == 0) return 1;
  if (r == m.cols()) return Rat(det(m.transpose() * m));
  IntMatrix kernel = kernel_basis_saturated(m);
  IntMatrix u = kernel_basis_saturated(kernel.transpose());
  IntMatrix mu = m * u;
  return Rat(det(mu.transpose() * mu), det(u.transpose() * u));
}

/// Product of the nonzero eigenvalues of a symmetric integer matrix, exact.
inline Rat symmetric_pseudodet(const IntMatrix& s) {
  if (s.rows() != s.cols()) throw std::invalid_argument("symmetric_pseudodet: non-square");
  if (s.rows() == 0) return 1;
  std::size_t r = rank_over_field(s);
  if (r == 0) return 1;
  if (r == s.rows()) return Rat(det(s));
  IntMatrix kernel = kernel_basis_saturated(s);
  IntMatrix u = kernel_basis_saturated(kernel.transpose());
  return Rat(det(u.transpose() * s * u), det(u.transpose() * u));
}

struct FGAbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Int> elementary_divisors;  // each >= 2, dividing the next
  Int torsion_order() const {
    Int t = 1;
    for (const auto& d : elementary_divisors) t *= d;
    return t;
  }
  bool trivial() const { return free_rank == 0 && elementary_divisors.empty(); }
  bool operator==(const FGAbelianGroup& o) const {
    return free_rank == o.free_rank && elementary_divisors == o.elementary_divisors;
  }
};

/// Isomorphism type of Z^rows / (column span of M).
inline FGAbelianGroup cokernel_structure(const IntMatrix& m) {
  FGAbelianGroup g;
  if (m.rows() == 0) return g;
  if (m.cols() == 0) {
    g.free_rank = m.rows();
    return g;
  }
  SNFResult s = snf(m, SNFOptions::diagonal_only());
  g.free_rank = m.rows() - s.rank();
  for (const auto& d : s.diagonal)
    if (d > 1) g.elementary_divisors.push_back(d);
  return g;
}

struct HomologyData {
  FGAbelianGroup group;
  std::vector<std::vector<Int>> free_lifts;  // cycles in C_n mapping to a basis of H_n(C)_f
};

/// Homology at a single spot of ... -> C_{n+1} --d_out--> C_n --d_in--> C_{n-1} -> ...
/// d_in may be an empty matrix (0 x dim) and likewise d_out (dim x 0).
inline HomologyData homology_pair(const IntMatrix& d_in, const IntMatrix& d_out) {
  const std::size_t dim = d_in.cols();
  if (d_out.rows() != dim) throw std::invalid_argument("homology_pair: shape mismatch");

  SNFOptions opt;
  opt.track_right = true;
  opt.track_right_inv = d_out.cols() > 0;
  SNFResult s = snf(d_in, opt);
  std::vector<std::size_t> zero_cols;
  for (std::size_t j = 0; j < dim; ++j)
    if (j >= s.diagonal.size() || s.diagonal[j] == 0) zero_cols.push_back(j);
  const std::size_t k = zero_cols.size();
  IntMatrix kernel(dim, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < dim; ++i) kernel(i, c) = s.right(i, zero_cols[c]);

  HomologyData h;
  if (k == 0) return h;

  // express im(d_out) in the kernel basis: kernel is right * (selected columns),
  // so coordinates are the corresponding rows of right_inv * d_out
  IntMatrix b(k, d_out.cols());
  if (d_out.cols() > 0) {
    IntMatrix x = s.right_inv * d_out;
    for (std::size_t j = 0; j < dim; ++j) {
      bool in_kernel = (j >= s.diagonal.size() || s.diagonal[j] == 0);
      if (in_kernel) continue;
      for (std::size_t c = 0; c < d_out.cols(); ++c)
        if (x(j, c) != 0)
          throw std::logic_error("homology_pair: boundary does not land in the kernel");
    }
    std::size_t row = 0;
    for (std::size_t j : zero_cols) {
      for (std::size_t c = 0; c < d_out.cols(); ++c) b(row, c) = x(j, c);
      ++row;
    }
  }

  SNFOptions bopt;
  bopt.track_left = true;
  bopt.track_left_inv = true;
  SNFResult sb = snf(b, bopt);
  h.group.free_rank = k - sb.rank();
  for (const auto& d : sb.diagonal)
    if (d > 1) h.group.elementary_divisors.push_back(d);

  // free generators of Z^k / im(b) pull back through left_inv
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < k; ++i)
    if (i >= sb.diagonal.size() || sb.diagonal[i] == 0) free_idx.push_back(i);
  for (std::size_t i : free_idx) {
    std::vector<Int> lift(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      Int acc = 0;
      for (std::size_t c = 0; c < k; ++c) acc += kernel(r, c) * sb.left_inv(c, i);
      lift[r] = acc;
    }
    h.free_lifts.push_back(std::move(lift));
  }
  return h;
}

namespace detail {

// Solve G x = rhs over Q for symmetric PSD G coming from normal equations;
// the system is consistent by construction, free variables are set to zero.
inline std::vector<Rat> solve_normal_equations(RatMatrix g, std::vector<Rat> rhs) {
  const std::size_t n = g.rows();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && g(piv, col) == 0) ++piv;
    if (piv == n) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(g(row, j), g(piv, j));
      std::swap(rhs[row], rhs[piv]);
    }
    Rat p = g(row, col);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || g(i, col) == 0) continue;
      Rat f = g(i, col) / p;
      for (std::size_t j = col; j < n; ++j) g(i, j) -= f * g(row, j);
      rhs[i] -= f * rhs[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < n; ++i)
    if (rhs[i] != 0) throw std::logic_error("normal equations inconsistent");
  std::vector<Rat> x(n, Rat(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) {
    std::size_t c = pivot_col[i];
    x[c] = rhs[i] / g(i, c);
  }
  return x;
}

}  // namespace detail

/// Gram matrix <h_i, h_j> of the projections h_i of `vectors` onto the
/// orthogonal complement of span(subspace), all exact over Q.
inline RatMatrix rational_gram_projection(const std::vector<std::vector<Rat>>& vectors,
                                          const std::vector<std::vector<Rat>>& subspace) {
  std::size_t dim = 0;
  if (!vectors.empty()) dim = vectors[0].size();
  else if (!subspace.empty()) dim = subspace[0].size();
  for (const auto& v : vectors)
    if (v.size() != dim) throw std::invalid_argument("rational_gram_projection: dimension mismatch");
  for (const auto& w : subspace)
    if (w.size() != dim) throw std::invalid_argument("rational_gram_projection: dimension mismatch");

  const std::size_t m = subspace.size();
  RatMatrix gw(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      Rat s = 0;
      for (std::size_t t = 0; t < dim; ++t) s += subspace[i][t] * subspace[j][t];
      gw(i, j) = s;
      gw(j, i) = s;
    }

  std::vector<std::vector<Rat>> h;
  h.reserve(vectors.size());
  for (const auto& v : vectors) {
    std::vector<Rat> proj = v;
    if (m > 0) {
      std::vector<Rat> rhs(m, Rat(0));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t t = 0; t < dim; ++t) rhs[i] += subspace[i][t] * v[t];
      std::vector<Rat> x = detail::solve_normal_equations(gw, rhs);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t t = 0; t < dim; ++t) proj[t] -= x[i] * subspace[i][t];
    }
    h.push_back(std::move(proj));
  }

  RatMatrix gram(h.size(), h.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i; j < h.size(); ++j) {
      Rat s = 0;
      for (std::size_t t = 0; t < dim; ++t) s += h[i][t] * h[j][t];
      gram(i, j) = s;
      gram(j, i) = s;
    }
  return gram;
}

/// Determinant of a rational matrix by exact Gaussian elimination.
inline Rat det(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  Rat d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(piv, j));
      d = -d;
    }
    d *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

}  // namespace l2lab::exactalg
