#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "l2lab/groupring.hpp"
#include "l2lab/int_matrix.hpp"

namespace l2lab::torsion {

/// Finite based free Z-chain complex: differentials[k-1] is c_k : C_k -> C_{k-1},
/// shaped ranks[k-1] x ranks[k]. Validated so that c_{k-1} c_k = 0 exactly.
class IntChainComplex {
public:
  IntChainComplex(std::vector<std::size_t> ranks, std::vector<IntMatrix> differentials)
      : ranks_(std::move(ranks)), diffs_(std::move(differentials)) {
    if (ranks_.empty()) throw std::invalid_argument("IntChainComplex: no ranks");
    if (diffs_.size() + 1 != ranks_.size())
      throw std::invalid_argument("IntChainComplex: need one differential per positive degree");
    for (std::size_t k = 1; k < ranks_.size(); ++k) {
      const IntMatrix& c = diffs_[k - 1];
      if (c.rows() != ranks_[k - 1] || c.cols() != ranks_[k])
        throw std::invalid_argument("IntChainComplex: differential shape mismatch at degree " +
                                    std::to_string(k));
    }
    for (std::size_t k = 1; k + 1 < ranks_.size(); ++k)
      if (!(diffs_[k - 1] * diffs_[k]).is_zero())
        throw std::invalid_argument("IntChainComplex: boundary of boundary is nonzero at degree " +
                                    std::to_string(k + 1));
  }

  std::size_t top_degree() const { return ranks_.size() - 1; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  std::size_t rank(std::size_t n) const { return n < ranks_.size() ? ranks_[n] : 0; }

  /// c_k for k in [0, top+1]; c_0 and c_{top+1} are the empty maps.
  IntMatrix boundary(std::size_t k) const {
    if (k == 0) return IntMatrix(0, ranks_[0]);
    if (k <= top_degree()) return diffs_[k - 1];
    if (k == top_degree() + 1) return IntMatrix(ranks_[top_degree()], 0);
    throw std::out_of_range("IntChainComplex: boundary degree out of range");
  }

private:
  std::vector<std::size_t> ranks_;
  std::vector<IntMatrix> diffs_;
};

/// Finite based free Z[Z^n]-chain complex, same indexing. Coefficients must
/// be integral Laurent polynomials.
class GRChainComplex {
public:
  GRChainComplex(std::size_t ambient_rank, std::vector<std::size_t> ranks,
                 std::vector<groupring::GroupRingMatrix> differentials)
      : ambient_rank_(ambient_rank), ranks_(std::move(ranks)), diffs_(std::move(differentials)) {
    if (ranks_.empty()) throw std::invalid_argument("GRChainComplex: no ranks");
    if (diffs_.size() + 1 != ranks_.size())
      throw std::invalid_argument("GRChainComplex: need one differential per positive degree");
    for (std::size_t k = 1; k < ranks_.size(); ++k) {
      const auto& c = diffs_[k - 1];
      if (c.ambient_rank() != ambient_rank_)
        throw std::invalid_argument("GRChainComplex: ambient rank mismatch");
      if (c.rows() != ranks_[k - 1] || c.cols() != ranks_[k])
        throw std::invalid_argument("GRChainComplex: differential shape mismatch");
      if (!c.integral())
        throw std::invalid_argument("GRChainComplex: coefficients must lie in Z[Z^n]");
    }
    for (std::size_t k = 1; k + 1 < ranks_.size(); ++k) {
      auto prod = groupring::matmul(diffs_[k - 1], diffs_[k]);
      for (std::size_t i = 0; i < prod.rows(); ++i)
        for (std::size_t j = 0; j < prod.cols(); ++j)
          if (!prod(i, j).is_zero())
            throw std::invalid_argument("GRChainComplex: boundary of boundary is nonzero");
    }
  }

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t top_degree() const { return ranks_.size() - 1; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  const groupring::GroupRingMatrix& differential(std::size_t k) const { return diffs_[k - 1]; }

private:
  std::size_t ambient_rank_;
  std::vector<std::size_t> ranks_;
  std::vector<groupring::GroupRingMatrix> diffs_;
};

/// Abstract simplicial complex given by its facets; all faces are implied,
/// orientation comes from the sorted vertex order.
struct SimplicialComplex {
  std::size_t vertices = 0;
  std::vector<std::vector<int>> facets;

  SimplicialComplex() = default;
  SimplicialComplex(std::size_t v, std::vector<std::vector<int>> f)
      : vertices(v), facets(std::move(f)) {
    std::set<std::vector<int>> seen;
    for (auto& facet : facets) {
      if (facet.empty()) throw std::invalid_argument("SimplicialComplex: empty facet");
      std::sort(facet.begin(), facet.end());
      for (std::size_t i = 0; i < facet.size(); ++i) {
        if (facet[i] < 0 || static_cast<std::size_t>(facet[i]) >= vertices)
          throw std::invalid_argument("SimplicialComplex: vertex out of range");
        if (i > 0 && facet[i] == facet[i - 1])
          throw std::invalid_argument("SimplicialComplex: repeated vertex in facet");
      }
      if (!seen.insert(facet).second)
        throw std::invalid_argument("SimplicialComplex: duplicate facet");
    }
  }
};

}  // namespace l2lab::torsion
