#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "l2lab/json_io.hpp"
#include "l2lab/lab.hpp"

using namespace l2lab;
using namespace l2lab::lab;
using groupring::GroupRingMatrix;
using groupring::parse_poly;
using groupring::Quotient;

TEST_CASE("tower specs") {
  SECTION("power towers") {
    auto t = TowerSpec::power({2}, 6);
    auto qs = t.materialize();
    REQUIRE(qs.size() == 6);
    for (std::size_t i = 0; i < qs.size(); ++i)
      REQUIRE(qs[i].size() == (1ull << (i + 1)));
    REQUIRE_THROWS_AS(TowerSpec::power({1}, 3), std::invalid_argument);
  }
  SECTION("max size caps the sweep") {
    auto t = TowerSpec::power({2}, 30);
    REQUIRE(t.materialize(64).size() == 6);
    REQUIRE(t.materialize(4096).size() == 12);
  }
  SECTION("explicit towers must strictly increase") {
    REQUIRE_THROWS_AS(
        TowerSpec::explicit_list({Quotient::cyclic(4), Quotient::cyclic(4)}),
        std::invalid_argument);
    auto t = TowerSpec::explicit_list({Quotient::cyclic(2), Quotient::cyclic(6)});
    REQUIRE(t.materialize().size() == 2);
  }
  SECTION("multi-coordinate power towers") {
    auto t = TowerSpec::power({2, 3}, 3);
    auto qs = t.materialize(10000);
    REQUIRE(qs.size() == 3);
    REQUIRE(qs[0].size() == 6);
    REQUIRE(qs[1].size() == 36);
    REQUIRE(qs[2].size() == 216);
  }
  SECTION("parsing") {
    auto t = parse_tower("pow:2:10");
    REQUIRE(t.kind == TowerSpec::Kind::Power);
    REQUIRE(t.base == std::vector<std::int64_t>{2});
    auto e = parse_tower("list:3,9,27");
    REQUIRE(e.kind == TowerSpec::Kind::Explicit);
    REQUIRE(e.quotients.size() == 3);
    auto m = parse_tower("list:2x2,4x4");
    REQUIRE(m.quotients[1].moduli == std::vector<std::int64_t>{4, 4});
    REQUIRE_THROWS_AS(parse_tower("pow:2"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_tower("nonsense"), std::invalid_argument);
  }
  SECTION("field parsing") {
    REQUIRE(parse_field("Q").is_rational());
    REQUIRE(*parse_field("Fp:7").prime == 7);
    REQUIRE_THROWS_AS(parse_field("Fp:6"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_field("R"), std::invalid_argument);
  }
}

TEST_CASE("det approximation experiment") {
  SECTION("constant 1 gives zero everywhere") {
    auto rep = run_det_approx(GroupRingMatrix::scalar(parse_poly("1", 1)),
                              TowerSpec::power({2}, 5));
    for (const auto& row : rep.rows) REQUIRE(std::stod(row.values[0]) == 0.0);
  }
  SECTION("z - 2 approaches ln 2 with the exact resultant values") {
    auto rep = run_det_approx(GroupRingMatrix::scalar(parse_poly("z - 2", 1)),
                              TowerSpec::power({2}, 5));
    REQUIRE(rep.limit_reference.has_value());
    REQUIRE(rep.limit_provenance == "mahler");
    REQUIRE_THAT(*rep.limit_reference, Catch::Matchers::WithinAbs(std::log(2.0), 1e-10));
    for (const auto& row : rep.rows) {
      double n = static_cast<double>(row.quotient_size);
      double expected = log_int((Int(1) << row.quotient_size) - 1) / n;
      REQUIRE_THAT(std::stod(row.values[0]), Catch::Matchers::WithinAbs(expected, 1e-10));
      // the empirical envelope of the determinant inequality
      REQUIRE(std::stod(row.values[0]) <=
              *rep.limit_reference + 1e-6 + 3.0 * std::log(3.0 + 1.0) / n);
    }
  }
  SECTION("Lehmer polynomial approaches its Mahler measure") {
    auto rep = run_det_approx(
        GroupRingMatrix::scalar(parse_poly("z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1", 1)),
        TowerSpec::explicit_list(
            {Quotient::cyclic(100), Quotient::cyclic(200), Quotient::cyclic(400)}));
    REQUIRE(rep.limit_provenance == "paper:lehmer");
    REQUIRE_THAT(*rep.limit_reference, Catch::Matchers::WithinAbs(std::log(1.17628), 1e-12));
    double v100 = std::stod(rep.rows[0].values[0]);
    double v400 = std::stod(rep.rows[2].values[0]);
    REQUIRE(std::abs(v400 - *rep.limit_reference) < std::abs(v100 - *rep.limit_reference));
    REQUIRE_THAT(v400, Catch::Matchers::WithinAbs(*rep.limit_reference, 1e-2));
  }
}

TEST_CASE("betti approximation experiment") {
  SECTION("z - 1 has kernel dimension exactly 1/n") {
    auto rep = run_betti_approx(GroupRingMatrix::scalar(parse_poly("z - 1", 1)),
                                TowerSpec::power({2}, 6));
    for (const auto& row : rep.rows) {
      REQUIRE(row.values[1] == "1/" + std::to_string(row.quotient_size));
    }
  }
  SECTION("z - 2 has trivial kernel") {
    auto rep = run_betti_approx(GroupRingMatrix::scalar(parse_poly("z - 2", 1)),
                                TowerSpec::power({2}, 5));
    for (const auto& row : rep.rows) REQUIRE(row.values[1] == "0");
  }
  SECTION("the zero matrix has full kernel") {
    auto rep = run_betti_approx(GroupRingMatrix(1, 1, 1), TowerSpec::power({3}, 3));
    for (const auto& row : rep.rows) REQUIRE(row.values[1] == "1");
  }
  SECTION("prime field column matches Q for z - 1 away from p | n") {
    auto rep = run_betti_approx(GroupRingMatrix::scalar(parse_poly("z - 1", 1)),
                                TowerSpec::power({2}, 4), exactalg::FieldSpec::Fp(3));
    REQUIRE(rep.columns.size() == 3);
    for (const auto& row : rep.rows) REQUIRE(row.values[2] == row.values[0]);
  }
}

TEST_CASE("torsion growth experiment") {
  SECTION("mapping torus of [[2]]") {
    auto c = torsion::mapping_torus_complex(IntMatrix{{2}});
    auto rep = run_torsion_growth(c, TowerSpec::power({2}, 4));
    REQUIRE(rep.limit_provenance == "mahler");
    REQUIRE_THAT(*rep.limit_reference, Catch::Matchers::WithinAbs(std::log(2.0), 1e-10));
    for (const auto& row : rep.rows) {
      double n = static_cast<double>(row.quotient_size);
      double expected = log_int((Int(1) << row.quotient_size) - 1) / n;
      REQUIRE_THAT(std::stod(row.values[0]), Catch::Matchers::WithinAbs(expected, 1e-10));
    }
  }
  SECTION("E_* reproduces the documented failure of the homological conjecture") {
    auto e = torsion::e_star_complex(2, 1, 3, 2, 5);
    auto rep = run_torsion_growth(e, TowerSpec::explicit_list(
                                         {Quotient::cyclic(2), Quotient::cyclic(5)}));
    double extra = (std::log(5.0) + std::log(13.0)) / 2;
    for (const auto& row : rep.rows) {
      REQUIRE_THAT(std::stod(row.values[0]), Catch::Matchers::WithinAbs(std::log(5.0), 1e-10));
      REQUIRE_THAT(std::stod(row.values[1]),
                   Catch::Matchers::WithinAbs(std::log(5.0) + extra, 1e-9));
      REQUIRE_THAT(std::stod(row.values[2]), Catch::Matchers::WithinAbs(-extra, 1e-9));
    }
    REQUIRE(rep.limit_provenance == "none");
  }
  SECTION("rationally acyclic complexes have vanishing difference") {
    // section-9 complex tensored up to Z[Z]: all pushed homology stays torsion
    auto s9 = torsion::section9_complex(2, 1, 3, 2, 5);
    std::vector<groupring::GroupRingMatrix> diffs;
    for (std::size_t k = 1; k <= 3; ++k) {
      IntMatrix d = s9.boundary(k);
      groupring::GroupRingMatrix gd(1, d.rows(), d.cols());
      for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
          gd(i, j) = groupring::LaurentPoly::constant(1, Rat(d(i, j)));
      diffs.push_back(std::move(gd));
    }
    torsion::GRChainComplex c(1, {1, 2, 2, 1}, diffs);
    auto rep = run_torsion_growth(c, TowerSpec::power({2}, 3));
    for (const auto& row : rep.rows)
      REQUIRE_THAT(std::stod(row.values[2]), Catch::Matchers::WithinAbs(0.0, 1e-9));
  }
  SECTION("ambient rank above 1 is rejected") {
    groupring::GroupRingMatrix d(2, 1, 1);
    d(0, 0) = groupring::LaurentPoly::constant(2, 1);
    torsion::GRChainComplex c(2, {1, 1}, {d});
    REQUIRE_THROWS_AS(run_torsion_growth(c, TowerSpec::power({2, 2}, 2)),
                      std::invalid_argument);
  }
}

TEST_CASE("trace approximation experiment") {
  auto a = GroupRingMatrix::scalar(parse_poly("z - 2", 1));
  auto rep = run_trace_approx(a, TowerSpec::power({2}, 4), 2);
  REQUIRE(rep.columns ==
          std::vector<std::string>{"tr_vn_0", "tr_push_0", "tr_vn_1", "tr_push_1", "tr_vn_2",
                                   "tr_push_2"});
  for (const auto& row : rep.rows) {
    REQUIRE(row.values[0] == "1");  // j = 0: identity, trace = cols
    REQUIRE(row.values[1] == "1");
    REQUIRE(row.values[2] == "5");  // tr B = constant coefficient of (z-2)*(z-2)
    if (row.quotient_size >= 2) REQUIRE(row.values[3] == "5");
  }
  // B has support radius 1, B^2 radius 2: exact agreement once n > 4
  for (const auto& row : rep.rows)
    if (row.quotient_size > 4) REQUIRE(row.values[5] == row.values[4]);
}

TEST_CASE("mapping torus experiment") {
  SECTION("Anosov example") {
    IntMatrix m{{2, 1}, {1, 1}};
    auto rep = run_mapping_torus(m, 12);
    const double limit = std::log((3.0 + std::sqrt(5.0)) / 2.0);
    for (const auto& row : rep.rows) {
      REQUIRE(row.values[0] == "1");
      REQUIRE(row.values[1] == "1");
      REQUIRE(row.values[3] == "1");
      double d = static_cast<double>(row.index);
      REQUIRE(std::stod(row.values[4]) <= 1.0 / d + 1e-12);
    }
    REQUIRE_THAT(std::stod(rep.rows.back().values[6]), Catch::Matchers::WithinAbs(limit, 2e-2));
  }
  SECTION("identity monodromy has no torsion") {
    auto rep = run_mapping_torus(IntMatrix::identity(2), 6);
    for (const auto& row : rep.rows) {
      REQUIRE(row.values[5] == "1");
      REQUIRE(std::stod(row.values[6]) == 0.0);
      REQUIRE(row.values[1] == "3");
    }
  }
}

TEST_CASE("reports are deterministic and well-formed") {
  auto a = GroupRingMatrix::scalar(parse_poly("z - 2", 1));
  auto rep1 = run_det_approx(a, TowerSpec::power({2}, 5));
  auto rep2 = run_det_approx(a, TowerSpec::power({2}, 5));
  REQUIRE(rep1.to_csv() == rep2.to_csv());
  REQUIRE(rep1.to_json().dump() == rep2.to_json().dump());

  std::string csv = rep1.to_csv();
  REQUIRE(csv.rfind("experiment,index,quotient_size,normalized_logdet\n", 0) == 0);
  REQUIRE(csv.find("det-approx,1,2,") != std::string::npos);
}

TEST_CASE("json round trips") {
  SECTION("integer matrices, including entries beyond 2^53") {
    IntMatrix m(2, 2);
    m(0, 0) = Int("123456789012345678901234567890");
    m(0, 1) = -7;
    m(1, 1) = 1;
    auto j = json_io::int_matrix_to_json(m);
    REQUIRE(j["entries"][0][0].is_string());
    REQUIRE(j["entries"][0][1].is_number_integer());
    REQUIRE(json_io::int_matrix_from_json(j) == m);
  }
  SECTION("group ring matrices") {
    GroupRingMatrix m(2, 1, 2);
    m(0, 0) = parse_poly("3*z1^2*z2^-1 - 1/2", 2);
    m(0, 1) = parse_poly("z2", 2);
    auto j = json_io::group_ring_matrix_to_json(m);
    REQUIRE(json_io::group_ring_matrix_from_json(j) == m);
  }
  SECTION("chain complexes over Z and over Z[Z]") {
    nlohmann::json j = {
        {"ring", "Z"},
        {"ranks", {1, 2}},
        {"differentials",
         {{{"rows", 1}, {"cols", 2}, {"entries", {{-1, 2}}}}}}};
    auto any = json_io::complex_from_json(j);
    auto* zc = std::get_if<torsion::IntChainComplex>(&any);
    REQUIRE(zc != nullptr);
    REQUIRE(zc->boundary(1) == IntMatrix{{-1, 2}});

    nlohmann::json jl = {
        {"ring", {{"laurent_rank", 1}}},
        {"ranks", {1, 1}},
        {"differentials",
         {{{"ambient_rank", 1}, {"rows", 1}, {"cols", 1}, {"entries", {{"1 - 2*z"}}}}}}};
    auto any2 = json_io::complex_from_json(jl);
    auto* gc = std::get_if<torsion::GRChainComplex>(&any2);
    REQUIRE(gc != nullptr);
    REQUIRE(gc->differential(1)(0, 0) == parse_poly("1 - 2*z", 1));
  }
  SECTION("simplicial complexes") {
    nlohmann::json j = {{"vertices", 3}, {"facets", {{0, 1}, {1, 2}, {0, 2}}}};
    auto s = json_io::simplicial_from_json(j);
    REQUIRE(s.facets.size() == 3);
  }
}
