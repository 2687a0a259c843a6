#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "l2lab/exactalg.hpp"

using namespace l2lab;
using exactalg::FieldSpec;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim = 6, long long bound = 9) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<long long> entry(-bound, bound);
  IntMatrix m(dim(rng), dim(rng));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
  return m;
}

// Independent oracle: elementary row/column reduction without transform
// bookkeeping, pivot on the smallest magnitude, no divisibility fixing. The
// multiset of diagonal gcd-invariants is recovered afterwards from the
// determinant divisors d_1*...*d_k = gcd of all k x k minors.
Int gcd_of_minors(const IntMatrix& m, std::size_t k) {
  std::vector<std::size_t> rows(k), cols(k);
  Int g = 0;
  std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t start,
                                                                std::size_t depth) {
    if (depth == k) {
      std::function<void(std::size_t, std::size_t)> pick_cols = [&](std::size_t cstart,
                                                                    std::size_t cdepth) {
        if (cdepth == k) {
          IntMatrix sub(k, k);
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
          g = boost::multiprecision::gcd(g, boost::multiprecision::abs(det(sub)));
          return;
        }
        for (std::size_t c = cstart; c < m.cols(); ++c) {
          cols[cdepth] = c;
          pick_cols(c + 1, cdepth + 1);
        }
      };
      pick_cols(0, 0);
      return;
    }
    for (std::size_t r = start; r < m.rows(); ++r) {
      rows[depth] = r;
      pick_rows(r + 1, depth + 1);
    }
  };
  pick_rows(0, 0);
  return g;
}

std::vector<Int> snf_diagonal_oracle(const IntMatrix& m) {
  std::size_t n = std::min(m.rows(), m.cols());
  std::vector<Int> diag(n, 0);
  Int prev = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Int dk = gcd_of_minors(m, k);
    if (dk == 0) break;  // all later ones vanish too
    diag[k - 1] = dk / prev;
    prev = dk;
  }
  return diag;
}

}  // namespace

TEST_CASE("snf on the worked examples") {
  SECTION("diag(2,3) has diagonal (1,6)") {
    auto s = exactalg::snf(IntMatrix{{2, 0}, {0, 3}});
    REQUIRE(s.diagonal == std::vector<Int>{1, 6});
  }
  SECTION("identity") {
    auto s = exactalg::snf(IntMatrix::identity(3));
    REQUIRE(s.diagonal == std::vector<Int>{1, 1, 1});
  }
  SECTION("[[2,4],[6,8]] against the minor-gcd oracle") {
    IntMatrix m{{2, 4}, {6, 8}};
    REQUIRE(snf_diagonal_oracle(m) == std::vector<Int>{2, 4});
    REQUIRE(exactalg::snf(m).diagonal == std::vector<Int>{2, 4});
  }
  SECTION("empty matrix gives an empty diagonal") {
    REQUIRE(exactalg::snf(IntMatrix(0, 3)).diagonal.empty());
    REQUIRE(exactalg::snf(IntMatrix(2, 0)).diagonal.empty());
  }
}

TEST_CASE("snf transforms reconstruct and are unimodular") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix m = random_matrix(rng);
    auto s = exactalg::snf(m);
    REQUIRE(s.diagonal == snf_diagonal_oracle(m));

    IntMatrix recon = s.left * m * s.right;
    for (std::size_t i = 0; i < recon.rows(); ++i)
      for (std::size_t j = 0; j < recon.cols(); ++j)
        REQUIRE(recon(i, j) == (i == j && i < s.diagonal.size() ? s.diagonal[i] : Int(0)));

    REQUIRE(boost::multiprecision::abs(det(s.left)) == 1);
    REQUIRE(boost::multiprecision::abs(det(s.right)) == 1);
    REQUIRE(s.left * s.left_inv == IntMatrix::identity(m.rows()));
    REQUIRE(s.right * s.right_inv == IntMatrix::identity(m.cols()));

    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
      REQUIRE(s.diagonal[i] >= 0);
      if (s.diagonal[i] != 0) REQUIRE(s.diagonal[i + 1] % s.diagonal[i] == 0);
      if (s.diagonal[i] == 0) REQUIRE(s.diagonal[i + 1] == 0);
    }
  }
}

TEST_CASE("rank over fields") {
  REQUIRE(exactalg::rank_over_field(IntMatrix{{2}}, FieldSpec::Fp(2)) == 0);
  REQUIRE(exactalg::rank_over_field(IntMatrix{{2}}) == 1);
  REQUIRE(exactalg::rank_over_field(IntMatrix{{1, 1}, {1, 1}}) == 1);
  REQUIRE_THROWS_AS(exactalg::rank_over_field(IntMatrix{{1}}, FieldSpec::Fp(6)),
                    std::invalid_argument);

  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m = random_matrix(rng);
    REQUIRE(exactalg::rank_over_field(m) == exactalg::snf(m).rank());
    REQUIRE(exactalg::rank_over_Q(RatMatrix(m)) == exactalg::snf(m).rank());
  }
}

TEST_CASE("saturated kernel bases") {
  SECTION("[[-1,2]] has kernel generated by (2,1)") {
    IntMatrix k = exactalg::kernel_basis_saturated(IntMatrix{{-1, 2}});
    REQUIRE(k.cols() == 1);
    Int a = k(0, 0), b = k(1, 0);
    REQUIRE(boost::multiprecision::abs(a) == 2);
    REQUIRE(boost::multiprecision::abs(b) == 1);
    REQUIRE(-a + 2 * b == 0);
  }
  SECTION("identity has empty kernel") {
    REQUIRE(exactalg::kernel_basis_saturated(IntMatrix::identity(4)).cols() == 0);
  }
  SECTION("zero matrix has the full standard lattice") {
    IntMatrix k = exactalg::kernel_basis_saturated(IntMatrix(2, 2));
    REQUIRE(k.cols() == 2);
    REQUIRE(boost::multiprecision::abs(det(k)) == 1);
  }
  SECTION("kernel columns are killed and saturated on random input") {
    std::mt19937_64 rng(56);
    for (int trial = 0; trial < 40; ++trial) {
      IntMatrix m = random_matrix(rng);
      IntMatrix k = exactalg::kernel_basis_saturated(m);
      REQUIRE(k.cols() == m.cols() - exactalg::rank_over_field(m));
      IntMatrix prod = m * k;
      REQUIRE(prod.is_zero());
      // saturation: the columns of k extend to a basis, i.e. their gcd of
      // maximal minors is 1
      if (k.cols() > 0) {
        Int g = gcd_of_minors(k, k.cols());
        REQUIRE(g == 1);
      }
    }
  }
}

TEST_CASE("cokernel structures") {
  SECTION("section-9 c2 at (2,1,3,2,5) is Z + Z/5") {
    IntMatrix c2{{30, 20}, {15, 10}};
    auto g = exactalg::cokernel_structure(c2);
    REQUIRE(g.free_rank == 1);
    REQUIRE(g.elementary_divisors == std::vector<Int>{5});
  }
  SECTION("identity is trivial") {
    REQUIRE(exactalg::cokernel_structure(IntMatrix::identity(3)).trivial());
  }
  SECTION("[[2]] is Z/2") {
    auto g = exactalg::cokernel_structure(IntMatrix{{2}});
    REQUIRE(g.free_rank == 0);
    REQUIRE(g.elementary_divisors == std::vector<Int>{2});
  }
  SECTION("torsion order and free rank follow the SNF diagonal") {
    std::mt19937_64 rng(78);
    for (int trial = 0; trial < 40; ++trial) {
      IntMatrix m = random_matrix(rng);
      auto g = exactalg::cokernel_structure(m);
      auto s = exactalg::snf(m, exactalg::SNFOptions::diagonal_only());
      Int product = 1;
      for (const auto& d : s.diagonal)
        if (d > 1) product *= d;
      REQUIRE(g.torsion_order() == product);
      REQUIRE(g.free_rank == m.rows() - s.rank());
    }
  }
}

TEST_CASE("homology of simple pairs") {
  SECTION("zero differentials on Z^2 in degree 0") {
    auto h = exactalg::homology_pair(IntMatrix(0, 2), IntMatrix(2, 0));
    REQUIRE(h.group.free_rank == 2);
    REQUIRE(h.group.elementary_divisors.empty());
    REQUIRE(h.free_lifts.size() == 2);
  }
  SECTION("free lifts are cycles and project to a basis") {
    std::mt19937_64 rng(90);
    for (int trial = 0; trial < 40; ++trial) {
      // build a two-step pair d_in * d_out = 0 through a random middle kernel
      IntMatrix d_in = random_matrix(rng, 4, 4);
      IntMatrix k = exactalg::kernel_basis_saturated(d_in);
      if (k.cols() == 0) continue;
      std::uniform_int_distribution<long long> w(-2, 2);
      IntMatrix d_out(d_in.cols(), 3);
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t c = 0; c < k.cols(); ++c) {
          long long f = w(rng);
          for (std::size_t i = 0; i < k.rows(); ++i) d_out(i, j) += f * k(i, c);
        }
      auto h = exactalg::homology_pair(d_in, d_out);
      REQUIRE(h.free_lifts.size() == h.group.free_rank);
      for (const auto& lift : h.free_lifts) {
        for (std::size_t r = 0; r < d_in.rows(); ++r) {
          Int acc = 0;
          for (std::size_t c = 0; c < d_in.cols(); ++c) acc += d_in(r, c) * lift[c];
          REQUIRE(acc == 0);
        }
      }
    }
  }
}

TEST_CASE("rational gram projection") {
  using Vec = std::vector<Rat>;
  SECTION("(1,0) away from span (1,1) has gram [[1/2]]") {
    RatMatrix g = exactalg::rational_gram_projection({Vec{1, 0}}, {Vec{1, 1}});
    REQUIRE(g(0, 0) == Rat(1, 2));
  }
  SECTION("empty subspace leaves the gram of the inputs") {
    RatMatrix g = exactalg::rational_gram_projection({Vec{1, 2}, Vec{0, 1}}, {});
    REQUIRE(g(0, 0) == Rat(5));
    REQUIRE(g(0, 1) == Rat(2));
    REQUIRE(g(1, 1) == Rat(1));
  }
  SECTION("vector inside the subspace projects to zero") {
    RatMatrix g = exactalg::rational_gram_projection({Vec{2, 2}}, {Vec{1, 1}});
    REQUIRE(g(0, 0) == Rat(0));
  }
  SECTION("dimension mismatch is rejected") {
    REQUIRE_THROWS_AS(exactalg::rational_gram_projection({Vec{1, 0}}, {Vec{1, 1, 1}}),
                      std::invalid_argument);
  }
  SECTION("gram matrices are symmetric positive semidefinite") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> e(-4, 4);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Vec> vecs(2, Vec(4)), sub(2, Vec(4));
      for (auto& v : vecs)
        for (auto& x : v) x = e(rng);
      for (auto& v : sub)
        for (auto& x : v) x = e(rng);
      RatMatrix g = exactalg::rational_gram_projection(vecs, sub);
      REQUIRE(g(0, 1) == g(1, 0));
      REQUIRE(g(0, 0) >= 0);
      REQUIRE(g(1, 1) >= 0);
      REQUIRE(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) >= 0);
    }
  }
}
