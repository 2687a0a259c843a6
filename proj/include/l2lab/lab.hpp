#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "l2lab/spectral.hpp"
#include "l2lab/torsion.hpp"

namespace l2lab::lab {

using exactalg::FieldSpec;
using groupring::GroupRingMatrix;
using groupring::LaurentPoly;
using groupring::Quotient;
using torsion::GRChainComplex;

/// A tower of finite quotients of Z^n: either moduli base^i per coordinate,
/// or an explicit list. Quotient sizes must strictly increase.
struct TowerSpec {
  enum class Kind { Power, Explicit };
  Kind kind = Kind::Power;
  std::vector<std::int64_t> base;  // per coordinate, each >= 2
  unsigned max_index = 0;
  std::vector<Quotient> quotients;

  static TowerSpec power(std::vector<std::int64_t> base, unsigned max_index) {
    for (auto b : base)
      if (b < 2) throw std::invalid_argument("TowerSpec: power base coordinates must be >= 2");
    if (base.empty()) throw std::invalid_argument("TowerSpec: empty base");
    TowerSpec t;
    t.kind = Kind::Power;
    t.base = std::move(base);
    t.max_index = max_index;
    return t;
  }

  static TowerSpec explicit_list(std::vector<Quotient> qs) {
    if (qs.empty()) throw std::invalid_argument("TowerSpec: empty quotient list");
    for (std::size_t i = 1; i < qs.size(); ++i)
      if (qs[i].size() <= qs[i - 1].size())
        throw std::invalid_argument("TowerSpec: quotient sizes must strictly increase");
    TowerSpec t;
    t.kind = Kind::Explicit;
    t.quotients = std::move(qs);
    t.max_index = static_cast<unsigned>(t.quotients.size());
    return t;
  }

  std::size_t ambient_rank() const {
    return kind == Kind::Power ? base.size() : quotients.front().rank();
  }

  /// Quotients in tower order, dropping any whose size exceeds max_size.
  std::vector<Quotient> materialize(std::uint64_t max_size = 4096) const {
    std::vector<Quotient> out;
    if (kind == Kind::Explicit) {
      for (const auto& q : quotients)
        if (q.size() <= max_size) out.push_back(q);
      return out;
    }
    std::vector<std::int64_t> moduli(base.size(), 1);
    for (unsigned i = 1; i <= max_index; ++i) {
      bool overflow = false;
      for (std::size_t t = 0; t < base.size(); ++t) {
        if (moduli[t] > static_cast<std::int64_t>(max_size) / base[t] + 1) overflow = true;
        moduli[t] *= base[t];
      }
      Quotient q(moduli);
      if (overflow || q.size() > max_size) break;
      out.push_back(q);
    }
    return out;
  }
};

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string format_rat(const Rat& q) {
  std::ostringstream os;
  os << rat_num(q);
  if (rat_den(q) != 1) os << "/" << rat_den(q);
  return os.str();
}

struct ReportRow {
  unsigned index = 0;
  std::uint64_t quotient_size = 0;
  std::vector<std::string> values;  // aligned with ExperimentReport::columns
};

struct ExperimentReport {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<ReportRow> rows;
  std::optional<double> limit_reference;
  std::string limit_provenance = "none";

  std::string to_csv() const {
    std::ostringstream os;
    os << "experiment,index,quotient_size";
    for (const auto& c : columns) os << "," << c;
    os << "\n";
    for (const auto& r : rows) {
      os << experiment << "," << r.index << "," << r.quotient_size;
      for (const auto& v : r.values) os << "," << v;
      os << "\n";
    }
    return os.str();
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["columns"] = columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json row;
      row["index"] = r.index;
      row["quotient_size"] = r.quotient_size;
      nlohmann::json vals;
      for (std::size_t i = 0; i < columns.size(); ++i) vals[columns[i]] = r.values[i];
      row["values"] = vals;
      j["rows"].push_back(row);
    }
    if (limit_reference) j["limit_reference"] = *limit_reference;
    j["limit_provenance"] = limit_provenance;
    return j;
  }
};

namespace detail {

inline LaurentPoly laurent_det(const GroupRingMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("laurent_det: non-square");
  const std::size_t n = a.rows();
  if (n == 0) return LaurentPoly::constant(a.ambient_rank(), 1);
  if (n == 1) return a(0, 0);
  LaurentPoly acc(a.ambient_rank());
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, 0).is_zero()) continue;
    GroupRingMatrix minor(a.ambient_rank(), n - 1, n - 1);
    std::size_t mi = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      for (std::size_t c = 1; c < n; ++c) minor(mi, c - 1) = a(r, c);
      ++mi;
    }
    LaurentPoly term = a(i, 0) * laurent_det(minor);
    acc = (i % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

inline bool is_lehmer(const LaurentPoly& p) {
  if (p.ambient_rank() != 1) return false;
  auto [lo, c] = p.dense_univariate();
  (void)lo;
  static const std::vector<long long> lehmer = {1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
  if (c.size() != lehmer.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != lehmer[i]) return false;
  return true;
}

}  // namespace detail

/// Per tower index, ln(det'(pushed))/[G:G_i]; the reference limit is the log
/// Mahler measure of the determinant polynomial when that is computable.
inline ExperimentReport run_det_approx(const GroupRingMatrix& a, const TowerSpec& tower,
                                       std::uint64_t max_size = 4096) {
  if (tower.ambient_rank() != a.ambient_rank())
    throw std::invalid_argument("run_det_approx: tower rank != ambient rank");
  ExperimentReport rep;
  rep.experiment = "det-approx";
  rep.columns = {"normalized_logdet"};
  unsigned idx = 0;
  for (const auto& q : tower.materialize(max_size)) {
    ++idx;
    double v = spectral::normalized_logdet(spectral::spectrum_of(a, q));
    rep.rows.push_back({idx, q.size(), {format_double(v)}});
  }
  if (a.ambient_rank() == 1 && a.rows() == a.cols() && a.rows() >= 1 && a.rows() <= 6) {
    LaurentPoly d = detail::laurent_det(a);
    if (!d.is_zero()) {
      if (detail::is_lehmer(d)) {
        rep.limit_reference = std::log(1.17628);
        rep.limit_provenance = "paper:lehmer";
      } else {
        rep.limit_reference = std::log(spectral::mahler(d));
        rep.limit_provenance = "mahler";
      }
    }
  }
  return rep;
}

/// Per tower index, the exact normalized kernel dimension over Q, and over
/// F_p when a prime is given.
inline ExperimentReport run_betti_approx(const GroupRingMatrix& a, const TowerSpec& tower,
                                         const FieldSpec& field = FieldSpec::Q(),
                                         std::uint64_t max_size = 4096) {
  if (tower.ambient_rank() != a.ambient_rank())
    throw std::invalid_argument("run_betti_approx: tower rank != ambient rank");
  ExperimentReport rep;
  rep.experiment = "betti-approx";
  rep.columns = {"kernel_dim_Q", "kernel_dim_Q_exact"};
  const bool with_fp = !field.is_rational();
  if (with_fp) {
    if (!exactalg::is_prime(*field.prime))
      throw std::invalid_argument("run_betti_approx: modulus is not prime");
    rep.columns.push_back("kernel_dim_Fp");
  }
  unsigned idx = 0;
  for (const auto& q : tower.materialize(max_size)) {
    ++idx;
    Rat dim = spectral::vn_kernel_dim(a, q);
    ReportRow row{idx, q.size(), {format_double(static_cast<double>(dim)), format_rat(dim)}};
    if (with_fp) {
      IntMatrix reg = groupring::push(a, q).regular_rep_int();
      std::size_t r = exactalg::rank_over_field(reg, field);
      double fp_dim = static_cast<double>(reg.cols() - r) / static_cast<double>(q.size());
      row.values.push_back(format_double(fp_dim));
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

/// Torsion growth along a tower for a complex over Z[Z]: per index,
/// rho^Z / n, rho^(2) / n and their difference (the regulator mass).
inline ExperimentReport run_torsion_growth(const GRChainComplex& c, const TowerSpec& tower,
                                           std::uint64_t max_size = 4096) {
  if (c.ambient_rank() != 1)
    throw std::invalid_argument("run_torsion_growth: only Z[Z] complexes are supported");
  if (tower.ambient_rank() != 1)
    throw std::invalid_argument("run_torsion_growth: tower rank must be 1");
  ExperimentReport rep;
  rep.experiment = "torsion-growth";
  rep.columns = {"rho_z_normalized", "rho_l2_normalized", "difference"};
  unsigned idx = 0;
  for (const auto& q : tower.materialize(max_size)) {
    ++idx;
    torsion::IntChainComplex pushed = torsion::push_complex(c, q);
    double n = static_cast<double>(q.size());
    double rho_z = torsion::integral_torsion(pushed).value / n;
    double rho_l2 = torsion::rho2_finite(pushed) / n;
    rep.rows.push_back({idx, q.size(),
                        {format_double(rho_z), format_double(rho_l2),
                         format_double(rho_z - rho_l2)}});
  }
  // reference: -sum (-1)^n ln M(det c_n) when every differential is square
  // with nonzero Laurent determinant (weak isomorphisms)
  bool ok = true;
  double ref = 0;
  for (std::size_t k = 1; k <= c.top_degree() && ok; ++k) {
    const auto& d = c.differential(k);
    if (d.rows() != d.cols() || d.rows() > 6) {
      ok = false;
      break;
    }
    LaurentPoly det = detail::laurent_det(d);
    if (det.is_zero()) {
      ok = false;
      break;
    }
    ref -= (k % 2 == 0 ? 1.0 : -1.0) * std::log(spectral::mahler(det));
  }
  if (ok) {
    rep.limit_reference = ref;
    rep.limit_provenance = "mahler";
  }
  return rep;
}

/// Trace convergence: for monomials p(x) = x^j with B = A^* A, the von
/// Neumann trace of p(B) against the pushed trace per index.
inline ExperimentReport run_trace_approx(const GroupRingMatrix& a, const TowerSpec& tower,
                                         unsigned poly_degree, std::uint64_t max_size = 4096) {
  if (tower.ambient_rank() != a.ambient_rank())
    throw std::invalid_argument("run_trace_approx: tower rank != ambient rank");
  GroupRingMatrix b = groupring::matmul(groupring::involute(a), a);
  std::vector<GroupRingMatrix> powers;
  powers.push_back(GroupRingMatrix::identity(a.ambient_rank(), b.rows()));
  for (unsigned j = 1; j <= poly_degree; ++j)
    powers.push_back(groupring::matmul(powers.back(), b));

  ExperimentReport rep;
  rep.experiment = "trace-approx";
  for (unsigned j = 0; j <= poly_degree; ++j) {
    rep.columns.push_back("tr_vn_" + std::to_string(j));
    rep.columns.push_back("tr_push_" + std::to_string(j));
  }
  unsigned idx = 0;
  for (const auto& q : tower.materialize(max_size)) {
    ++idx;
    ReportRow row{idx, q.size(), {}};
    for (unsigned j = 0; j <= poly_degree; ++j) {
      Rat vn = groupring::trace_vn(powers[j]);
      Rat pushed = groupring::trace_pushed(groupring::push(powers[j], q));
      row.values.push_back(format_rat(vn));
      row.values.push_back(format_rat(pushed));
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

/// Mapping-torus sweep: Wang Betti numbers of T_{f^d} for d = 1..d_max and
/// the torsion of coker(I - M^d) with its normalized log.
inline ExperimentReport run_mapping_torus(const IntMatrix& m, unsigned d_max,
                                          const FieldSpec& field = FieldSpec::Q()) {
  if (m.rows() != m.cols()) throw std::invalid_argument("run_mapping_torus: non-square");
  ExperimentReport rep;
  rep.experiment = "mapping-torus";
  rep.columns = {"b0", "b1", "b2", "b3", "b1_norm", "tors_order", "tors_log_norm"};
  for (unsigned d = 1; d <= d_max; ++d) {
    std::size_t b0 = torsion::wang_betti(m, d, field, 0);
    std::size_t b1 = torsion::wang_betti(m, d, field, 1);
    std::size_t b2 = torsion::wang_betti(m, d, field, 2);
    std::size_t b3 = torsion::wang_betti(m, d, field, 3);
    IntMatrix j = IntMatrix::identity(m.rows()) - mat_pow(m, d);
    Int tors = exactalg::cokernel_structure(j).torsion_order();
    double log_norm = log_int(tors) / static_cast<double>(d);
    rep.rows.push_back({d, d,
                        {std::to_string(b0), std::to_string(b1), std::to_string(b2),
                         std::to_string(b3),
                         format_double(static_cast<double>(b1) / static_cast<double>(d)),
                         tors.str(), format_double(log_norm)}});
  }
  return rep;
}

/// Tower flag syntax: "pow:BASE:IMAX" with BASE = comma-separated integers,
/// or "list:q1,q2,..." where each q is either a modulus (rank 1) or an
/// "x"-separated moduli vector.
inline TowerSpec parse_tower(const std::string& text) {
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
      if (ch == sep) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    parts.push_back(cur);
    return parts;
  };
  if (text.rfind("pow:", 0) == 0) {
    auto parts = split(text.substr(4), ':');
    if (parts.size() != 2) throw std::invalid_argument("tower: expected pow:BASE:IMAX");
    std::vector<std::int64_t> base;
    for (const auto& p : split(parts[0], ',')) base.push_back(std::stoll(p));
    return TowerSpec::power(std::move(base), static_cast<unsigned>(std::stoul(parts[1])));
  }
  if (text.rfind("list:", 0) == 0) {
    std::vector<Quotient> qs;
    for (const auto& item : split(text.substr(5), ',')) {
      std::vector<std::int64_t> moduli;
      for (const auto& p : split(item, 'x')) moduli.push_back(std::stoll(p));
      qs.emplace_back(moduli);
    }
    return TowerSpec::explicit_list(std::move(qs));
  }
  throw std::invalid_argument("tower: expected pow:... or list:...");
}

/// Field flag syntax: "Q" or "Fp:P".
inline FieldSpec parse_field(const std::string& text) {
  if (text == "Q") return FieldSpec::Q();
  if (text.rfind("Fp:", 0) == 0) {
    Int p(text.substr(3));
    if (!exactalg::is_prime(p)) throw std::invalid_argument("field: modulus is not prime");
    return FieldSpec::Fp(p);
  }
  throw std::invalid_argument("field: expected Q or Fp:P");
}

}  // namespace l2lab::lab
