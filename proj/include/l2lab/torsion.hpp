#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "l2lab/chain_complex.hpp"
#include "l2lab/exactalg.hpp"
#include "l2lab/spectral.hpp"

namespace l2lab::torsion {

using exactalg::FGAbelianGroup;
using exactalg::HomologyData;
using groupring::GroupRingMatrix;
using groupring::LaurentPoly;
using groupring::Quotient;

/// H_n(C) with cycles lifting a basis of the free part.
inline HomologyData homology(const IntChainComplex& c, std::size_t n) {
  if (n > c.top_degree()) {
    return {};
  }
  return exactalg::homology_pair(c.boundary(n), c.boundary(n + 1));
}

/// ln det'(M) for an integer matrix through the exact rational
/// pseudo-determinant of M^T M; no floating eigenvalues involved.
inline double log_detprime_exact(const IntMatrix& m) {
  return log_rat(exactalg::gram_pseudodet(m)) / 2.0;
}

/// rho^(2) of C ox C over N({1}): -sum_{n>=1} (-1)^n ln det'(c_n), the
/// displayed definition taken literally.
inline double rho2_finite(const IntChainComplex& c) {
  double acc = 0;
  for (std::size_t n = 1; n <= c.top_degree(); ++n) {
    double ld = log_detprime_exact(c.boundary(n));
    acc -= (n % 2 == 0 ? 1.0 : -1.0) * ld;
  }
  return acc;
}

struct IntegralTorsion {
  double value = 0;                  // sum (-1)^n ln |tors H_n|
  std::vector<Int> torsion_orders;   // |tors H_n| per degree, exact
};

/// rho^Z: alternating sum of logs of the torsion orders of H_*(C).
inline IntegralTorsion integral_torsion(const IntChainComplex& c) {
  IntegralTorsion out;
  for (std::size_t n = 0; n <= c.top_degree(); ++n) {
    Int t = homology(c, n).group.torsion_order();
    out.value += (n % 2 == 0 ? 1.0 : -1.0) * log_int(t);
    out.torsion_orders.push_back(std::move(t));
  }
  return out;
}

/// Exact Gram determinant of the harmonic projections of an integral basis
/// of H_n(C)_f; the regulator is half its log. Returns 1 when the free rank
/// vanishes.
inline Rat regulator_gram_det(const IntChainComplex& c, std::size_t n) {
  HomologyData h = homology(c, n);
  if (h.free_lifts.empty()) return Rat(1);
  std::vector<std::vector<Rat>> lifts;
  lifts.reserve(h.free_lifts.size());
  for (const auto& v : h.free_lifts) {
    std::vector<Rat> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    lifts.push_back(std::move(r));
  }
  IntMatrix next = c.boundary(n + 1);
  std::vector<std::vector<Rat>> image;
  image.reserve(next.cols());
  for (std::size_t j = 0; j < next.cols(); ++j) {
    std::vector<Rat> col(next.rows());
    for (std::size_t i = 0; i < next.rows(); ++i) col[i] = Rat(next(i, j));
    image.push_back(std::move(col));
  }
  RatMatrix gram = exactalg::rational_gram_projection(lifts, image);
  Rat d = exactalg::det(gram);
  if (d == 0)
    throw std::logic_error("regulator: singular Gram matrix for genuine homology lifts");
  return d;
}

/// R_n(C) = (1/2) ln det of the harmonic Gram matrix.
inline double regulator(const IntChainComplex& c, std::size_t n) {
  return log_rat(regulator_gram_det(c, n)) / 2.0;
}

/// det' of the combinatorial Laplacians Delta_n = c_n^T c_n + c_{n+1} c_{n+1}^T,
/// cross-checked against rho2_finite through the alternating-weight identity.
inline std::vector<double> laplacian_dets(const IntChainComplex& c) {
  std::vector<double> dets;
  double weighted = 0;
  for (std::size_t n = 0; n <= c.top_degree(); ++n) {
    IntMatrix cn = c.boundary(n);
    IntMatrix cn1 = c.boundary(n + 1);
    IntMatrix lap = cn.transpose() * cn + cn1 * cn1.transpose();
    // Delta is itself positive: its det' is the plain product of nonzero eigenvalues
    double ld = log_rat(exactalg::symmetric_pseudodet(lap));
    dets.push_back(std::exp(ld));
    weighted += (n % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(n) * ld;
  }
  double rho = rho2_finite(c);
  if (std::abs(-0.5 * weighted - rho) > 1e-9 * (1.0 + std::abs(rho)))
    throw std::logic_error("laplacian_dets: Laplacian identity disagrees with rho2_finite");
  return dets;
}

/// The worked four-term complex 0 -> Z -> Z^2 -> Z^2 -> Z -> 0 with
/// c_3 = (-l, k)^T, c_2 = g * (a,b)^T (k,l), c_1 = (-b, a); H_1 = Z/g.
inline IntChainComplex section9_complex(long long a, long long b, long long k, long long l,
                                        long long g) {
  auto gcd_ll = [](long long x, long long y) {
    while (y) {
      long long t = x % y;
      x = y;
      y = t;
    }
    return x < 0 ? -x : x;
  };
  if (gcd_ll(a, b) != 1 || gcd_ll(k, l) != 1)
    throw std::invalid_argument("section9_complex: (a,b) and (k,l) must be coprime pairs");
  if (g < 1) throw std::invalid_argument("section9_complex: g must be >= 1");
  IntMatrix c1(1, 2), c2(2, 2), c3(2, 1);
  c1(0, 0) = -b;
  c1(0, 1) = a;
  c2(0, 0) = g * k * a;
  c2(0, 1) = g * l * a;
  c2(1, 0) = g * k * b;
  c2(1, 1) = g * l * b;
  c3(0, 0) = -l;
  c3(1, 0) = k;
  return IntChainComplex({1, 2, 2, 1}, {c1, c2, c3});
}

/// C ox_{Z[Z^n]} Z[Z^n/L]: the regular-representation integer complex,
/// ranks multiplied by |Q|.
inline IntChainComplex push_complex(const GRChainComplex& c, const Quotient& q) {
  if (q.rank() != c.ambient_rank())
    throw std::invalid_argument("push_complex: quotient rank mismatch");
  std::vector<std::size_t> ranks;
  for (auto r : c.ranks()) ranks.push_back(r * q.size());
  std::vector<IntMatrix> diffs;
  for (std::size_t k = 1; k <= c.top_degree(); ++k)
    diffs.push_back(groupring::push(c.differential(k), q).regular_rep_int());
  return IntChainComplex(std::move(ranks), std::move(diffs));
}

/// E_* = D_* ox Z[Z] where D_* is the one-dimensional complex whose only
/// differential is the section-9 matrix c_2. Not L^2-acyclic: integral
/// torsion growth sees ln(g) while the L^2-torsion carries the extra
/// (ln(a^2+b^2) + ln(k^2+l^2))/2.
inline GRChainComplex e_star_complex(long long a, long long b, long long k, long long l,
                                     long long g) {
  IntChainComplex s9 = section9_complex(a, b, k, l, g);
  IntMatrix c2 = s9.boundary(2);
  GroupRingMatrix d(1, 2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      d(i, j) = LaurentPoly::constant(1, Rat(c2(i, j)));
  return GRChainComplex(1, {2, 2}, {d});
}

/// Two-term complex over Z[Z] with d_1 = I - z M, the chain model of a
/// mapping torus of the endomorphism M.
inline GRChainComplex mapping_torus_complex(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("mapping_torus_complex: non-square");
  const std::size_t r = m.rows();
  GroupRingMatrix d(1, r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      LaurentPoly p(1);
      if (i == j) p.add_term({0}, 1);
      if (m(i, j) != 0) p.add_term({1}, Rat(-m(i, j)));
      d(i, j) = std::move(p);
    }
  return GRChainComplex(1, {r, r}, {d});
}

/// Betti number of the mapping torus T_{f^d} of a surface automorphism with
/// H_1(f;Z) = M, by the Wang sequence: b_1 = dim coker(I - M^d) + 1,
/// b_2 = dim ker(I - M^d) + 1, b_0 = b_3 = 1.
inline std::size_t wang_betti(const IntMatrix& m, unsigned long long d,
                              const exactalg::FieldSpec& field, unsigned degree) {
  if (m.rows() != m.cols()) throw std::invalid_argument("wang_betti: non-square");
  if (d < 1) throw std::invalid_argument("wang_betti: power must be >= 1");
  if (degree > 3) throw std::invalid_argument("wang_betti: degree out of range");
  if (degree == 0 || degree == 3) return 1;
  IntMatrix j = IntMatrix::identity(m.rows()) - mat_pow(m, d);
  std::size_t rank = exactalg::rank_over_field(j, field);
  return (m.rows() - rank) + 1;  // coker and ker of a square matrix have equal dimension
}

/// from_simplicial output: the chain complex, simplex counts per degree and,
/// when requested on a closed oriented pseudo-manifold, the fundamental cycle.
struct SimplicialChainData {
  IntChainComplex complex;
  std::vector<std::size_t> simplex_counts;
  std::optional<std::vector<Int>> fundamental_cycle;
  std::string orientation_error;  // set when the cycle was requested but absent
};

namespace detail {

inline std::vector<std::vector<std::vector<int>>> all_faces(const SimplicialComplex& s,
                                                            std::size_t dim) {
  std::vector<std::set<std::vector<int>>> faces(dim + 1);
  for (const auto& f : s.facets) {
    std::size_t d = f.size() - 1;
    for (std::uint64_t mask = 1; mask < (1ull << f.size()); ++mask) {
      std::vector<int> face;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask & (1ull << i)) face.push_back(f[i]);
      faces[face.size() - 1].insert(face);
    }
    (void)d;
  }
  std::vector<std::vector<std::vector<int>>> out(dim + 1);
  for (std::size_t k = 0; k <= dim; ++k)
    out[k].assign(faces[k].begin(), faces[k].end());
  return out;
}

}  // namespace detail

/// Boundary matrices with the alternating-sign convention on sorted vertex
/// tuples; reports simplex counts, and the fundamental cycle when S is a
/// closed oriented pseudo-manifold and the caller asks for it.
inline SimplicialChainData from_simplicial(const SimplicialComplex& s,
                                           bool want_fundamental_cycle = false) {
  if (s.facets.empty()) throw std::invalid_argument("from_simplicial: no facets");
  std::size_t dim = 0;
  for (const auto& f : s.facets) dim = std::max(dim, f.size() - 1);
  auto faces = detail::all_faces(s, dim);

  std::vector<std::map<std::vector<int>, std::size_t>> index(dim + 1);
  for (std::size_t k = 0; k <= dim; ++k)
    for (std::size_t i = 0; i < faces[k].size(); ++i) index[k][faces[k][i]] = i;

  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k <= dim; ++k) ranks.push_back(faces[k].size());

  std::vector<IntMatrix> diffs;
  for (std::size_t k = 1; k <= dim; ++k) {
    IntMatrix d(ranks[k - 1], ranks[k]);
    for (std::size_t j = 0; j < faces[k].size(); ++j) {
      const auto& simplex = faces[k][j];
      for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
        std::vector<int> face;
        for (std::size_t i = 0; i < simplex.size(); ++i)
          if (i != drop) face.push_back(simplex[i]);
        d(index[k - 1][face], j) += (drop % 2 == 0) ? 1 : -1;
      }
    }
    diffs.push_back(std::move(d));
  }

  SimplicialChainData out{IntChainComplex(ranks, diffs), ranks, std::nullopt, {}};

  if (!want_fundamental_cycle) return out;
  // closed pseudo-manifold: every (dim-1)-face lies in exactly two facets
  if (dim == 0) {
    out.orientation_error = "dimension zero has no fundamental cycle machinery";
    return out;
  }
  for (const auto& f : s.facets)
    if (f.size() - 1 != dim) {
      out.orientation_error = "facets of mixed dimension";
      return out;
    }
  const IntMatrix& top = diffs[dim - 1];
  std::vector<std::vector<std::size_t>> cofaces(ranks[dim - 1]);
  for (std::size_t j = 0; j < ranks[dim]; ++j)
    for (std::size_t i = 0; i < ranks[dim - 1]; ++i)
      if (top(i, j) != 0) cofaces[i].push_back(j);
  for (const auto& c : cofaces)
    if (c.size() != 2) {
      out.orientation_error = "not a closed pseudo-manifold: a codimension-1 face is not shared by exactly two facets";
      return out;
    }
  // propagate orientations across codimension-1 adjacencies
  std::vector<int> sign(ranks[dim], 0);
  sign[0] = 1;
  std::vector<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t j = queue.back();
    queue.pop_back();
    for (std::size_t i = 0; i < ranks[dim - 1]; ++i) {
      if (top(i, j) == 0) continue;
      std::size_t other = cofaces[i][0] == j ? cofaces[i][1] : cofaces[i][0];
      int needed = -sign[j] * static_cast<int>(top(i, j)) * static_cast<int>(top(i, other));
      if (sign[other] == 0) {
        sign[other] = needed;
        queue.push_back(other);
      } else if (sign[other] != needed) {
        out.orientation_error = "orientation coherence fails (non-orientable)";
        return out;
      }
    }
  }
  for (int v : sign)
    if (v == 0) {
      out.orientation_error = "facet adjacency graph is disconnected";
      return out;
    }
  std::vector<Int> cycle(ranks[dim]);
  for (std::size_t j = 0; j < ranks[dim]; ++j) cycle[j] = sign[j];
  // verify it is a cycle
  for (std::size_t i = 0; i < ranks[dim - 1]; ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < ranks[dim]; ++j) acc += top(i, j) * cycle[j];
    if (acc != 0) {
      out.orientation_error = "orientation coherence fails (boundary of candidate cycle is nonzero)";
      return out;
    }
  }
  out.fundamental_cycle = std::move(cycle);
  return out;
}

struct TorsionReport {
  double rho_l2 = 0;
  double rho_z = 0;
  std::vector<double> regulators;
  std::vector<double> laplacians;
  std::vector<Int> torsion_orders;
};

inline TorsionReport torsion_report(const IntChainComplex& c) {
  TorsionReport r;
  r.rho_l2 = rho2_finite(c);
  IntegralTorsion it = integral_torsion(c);
  r.rho_z = it.value;
  r.torsion_orders = std::move(it.torsion_orders);
  for (std::size_t n = 0; n <= c.top_degree(); ++n) r.regulators.push_back(regulator(c, n));
  r.laplacians = laplacian_dets(c);
  return r;
}

/// Random complexes with exact boundary-of-boundary zero: c_2 is free random,
/// c_1 rows come from the saturated left kernel of c_2 and c_3 columns from
/// its right kernel.
inline IntChainComplex random_complex(std::mt19937_64& rng, std::size_t max_rank = 8,
                                      long long entry_bound = 5) {
  std::uniform_int_distribution<std::size_t> rank_dist(1, max_rank);
  std::uniform_int_distribution<long long> entry(-entry_bound, entry_bound);
  std::uniform_int_distribution<long long> small(-2, 2);

  std::size_t r1 = rank_dist(rng), r2 = rank_dist(rng);
  IntMatrix c2(r1, r2);
  for (std::size_t i = 0; i < r1; ++i)
    for (std::size_t j = 0; j < r2; ++j) c2(i, j) = entry(rng);

  IntMatrix left_kernel = exactalg::kernel_basis_saturated(c2.transpose());
  std::size_t r0 = rank_dist(rng);
  IntMatrix c1(r0, r1);
  for (std::size_t i = 0; i < r0; ++i)
    for (std::size_t k = 0; k < left_kernel.cols(); ++k) {
      long long w = small(rng);
      if (w == 0) continue;
      for (std::size_t j = 0; j < r1; ++j) c1(i, j) += w * left_kernel(j, k);
    }

  IntMatrix right_kernel = exactalg::kernel_basis_saturated(c2);
  std::size_t r3 = rank_dist(rng);
  IntMatrix c3(r2, r3);
  for (std::size_t j = 0; j < r3; ++j)
    for (std::size_t k = 0; k < right_kernel.cols(); ++k) {
      long long w = small(rng);
      if (w == 0) continue;
      for (std::size_t i = 0; i < r2; ++i) c3(i, j) += w * right_kernel(i, k);
    }

  return IntChainComplex({r0, r1, r2, r3}, {c1, c2, c3});
}

}  // namespace l2lab::torsion
