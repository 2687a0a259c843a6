#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "l2lab/chain_complex.hpp"
#include "l2lab/groupring.hpp"
#include "l2lab/int_matrix.hpp"
#include "l2lab/laurent.hpp"

namespace l2lab::json_io {

using nlohmann::json;

inline Int int_from_json(const json& v) {
  if (v.is_string()) return Int(v.get<std::string>());
  if (v.is_number_integer()) return Int(v.get<long long>());
  if (v.is_number_unsigned()) return Int(v.get<unsigned long long>());
  throw std::invalid_argument("matrix entry must be an integer or a decimal string");
}

// numbers stay numbers while they are exactly representable; beyond 2^53 a
// decimal string is mandatory
inline json int_to_json(const Int& v) {
  static const Int bound = Int(1) << 53;
  if (v >= -bound && v <= bound) return static_cast<long long>(v);
  return v.str();
}

inline IntMatrix int_matrix_from_json(const json& j) {
  std::size_t rows = j.at("rows").get<std::size_t>();
  std::size_t cols = j.at("cols").get<std::size_t>();
  const json& entries = j.at("entries");
  if (entries.size() != rows) throw std::invalid_argument("entries: wrong row count");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (entries[i].size() != cols) throw std::invalid_argument("entries: ragged row");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = int_from_json(entries[i][c]);
  }
  return m;
}

inline json int_matrix_to_json(const IntMatrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(int_to_json(m(i, c)));
    entries.push_back(row);
  }
  j["entries"] = entries;
  return j;
}

inline groupring::GroupRingMatrix group_ring_matrix_from_json(const json& j) {
  std::size_t rank = j.at("ambient_rank").get<std::size_t>();
  std::size_t rows = j.at("rows").get<std::size_t>();
  std::size_t cols = j.at("cols").get<std::size_t>();
  const json& entries = j.at("entries");
  if (entries.size() != rows) throw std::invalid_argument("entries: wrong row count");
  groupring::GroupRingMatrix m(rank, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (entries[i].size() != cols) throw std::invalid_argument("entries: ragged row");
    for (std::size_t c = 0; c < cols; ++c)
      m(i, c) = groupring::parse_poly(entries[i][c].get<std::string>(), rank);
  }
  return m;
}

inline json group_ring_matrix_to_json(const groupring::GroupRingMatrix& m) {
  json j;
  j["ambient_rank"] = m.ambient_rank();
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c).to_string());
    entries.push_back(row);
  }
  j["entries"] = entries;
  return j;
}

using AnyComplex = std::variant<torsion::IntChainComplex, torsion::GRChainComplex>;

/// {"ring": "Z" | {"laurent_rank": n}, "ranks": [...], "differentials": [...]}
/// where differentials[k] maps degree k+1 to k.
inline AnyComplex complex_from_json(const json& j) {
  std::vector<std::size_t> ranks = j.at("ranks").get<std::vector<std::size_t>>();
  const json& diffs = j.at("differentials");
  const json& ring = j.at("ring");
  if (ring.is_string() && ring.get<std::string>() == "Z") {
    std::vector<IntMatrix> ds;
    for (const auto& d : diffs) ds.push_back(int_matrix_from_json(d));
    return torsion::IntChainComplex(std::move(ranks), std::move(ds));
  }
  if (ring.is_object() && ring.contains("laurent_rank")) {
    std::size_t rank = ring.at("laurent_rank").get<std::size_t>();
    std::vector<groupring::GroupRingMatrix> ds;
    for (const auto& d : diffs) {
      auto m = group_ring_matrix_from_json(d);
      if (m.ambient_rank() != rank)
        throw std::invalid_argument("complex: differential ambient rank mismatch");
      ds.push_back(std::move(m));
    }
    return torsion::GRChainComplex(rank, std::move(ranks), std::move(ds));
  }
  throw std::invalid_argument("complex: ring must be \"Z\" or {\"laurent_rank\": n}");
}

inline torsion::SimplicialComplex simplicial_from_json(const json& j) {
  return torsion::SimplicialComplex(
      j.at("vertices").get<std::size_t>(),
      j.at("facets").get<std::vector<std::vector<int>>>());
}

}  // namespace l2lab::json_io
