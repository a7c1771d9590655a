#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "propkoszul/linalg.hpp"

using namespace propkoszul;

namespace {

RationalMatrix to_matrix(const oracle::Dense& d, std::size_t cols) {
  if (d.empty()) return RationalMatrix(0, cols);
  return RationalMatrix::from_dense(d);
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("rationals parse and print") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-2/4") == Rational(-1, 2));
    Rational q(6, -4);
    q.canonicalize();
    CHECK(format_rational(q) == "-3/2");
    CHECK(format_rational(parse_rational("7/1")) == "7");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  }

  TEST_CASE("sparse helpers keep entries sorted and drop zeros") {
    SparseVec v = make_sparse({{3, 1}, {1, 2}, {3, -1}, {0, 0}});
    REQUIRE(v.size() == 1);
    CHECK(v[0].first == 1);
    SparseVec w = axpy(v, 2, {{1, -1}, {4, 5}});
    REQUIRE(w.size() == 1);
    CHECK(w[0] == std::pair<std::size_t, Rational>{4, 10});
  }

  TEST_CASE("rank agrees with dense elimination on random matrices") {
    std::mt19937 rng(7);
    for (int t = 0; t < 60; ++t) {
      std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
      auto d = oracle::random_matrix(rng, r, c, -2, 2, 0.4);
      CHECK(rank(to_matrix(d, c)) == oracle::rank(d));
    }
  }

  TEST_CASE("kernel basis is a basis of the kernel") {
    std::mt19937 rng(11);
    for (int t = 0; t < 40; ++t) {
      std::size_t r = 1 + rng() % 6, c = 1 + rng() % 7;
      auto d = oracle::random_matrix(rng, r, c, -2, 2, 0.5);
      RationalMatrix m = to_matrix(d, c);
      RationalMatrix k = kernel_basis(m);
      CHECK(k.rows() == c);
      CHECK(k.cols() + oracle::rank(d) == c);
      CHECK((m * k).is_zero());
      CHECK(rank(k) == k.cols());
    }
  }

  TEST_CASE("inverse and Kronecker product") {
    std::mt19937 rng(3);
    int invertible = 0;
    for (int t = 0; t < 30; ++t) {
      auto d = oracle::random_matrix(rng, 4, 4, -3, 3);
      auto inv = inverse(to_matrix(d, 4));
      CHECK(inv.has_value() == (oracle::rank(d) == 4));
      if (inv) {
        ++invertible;
        CHECK(to_matrix(d, 4) * *inv == RationalMatrix::identity(4));
      }
    }
    CHECK(invertible > 0);
    CHECK_FALSE(inverse(RationalMatrix(2, 2)).has_value());

    auto a = oracle::random_matrix(rng, 2, 3), b = oracle::random_matrix(rng, 3, 2);
    RationalMatrix k = kronecker(to_matrix(a, 3), to_matrix(b, 2));
    REQUIRE(k.rows() == 6);
    REQUIRE(k.cols() == 6);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t p = 0; p < 3; ++p)
          for (std::size_t q = 0; q < 2; ++q) CHECK(k.at(i * 3 + p, j * 2 + q) == a[i][j] * b[p][q]);
  }

  TEST_CASE("transpose and matrix product match the dense product") {
    std::mt19937 rng(5);
    auto a = oracle::random_matrix(rng, 3, 4, -2, 2, 0.6), b = oracle::random_matrix(rng, 4, 2, -2, 2, 0.6);
    RationalMatrix ab = to_matrix(a, 4) * to_matrix(b, 2);
    CHECK(ab == to_matrix(oracle::multiply(a, b), 2));
    CHECK(to_matrix(a, 4).transpose().transpose() == to_matrix(a, 4));
  }

  TEST_CASE("homology of the boundary of a triangle") {
    // Vertices a, b, c; edges ab, bc, ca.
    ChainComplex c;
    c.dims = {3, 3};
    c.boundaries.emplace_back(0, 3);
    c.boundaries.push_back(RationalMatrix::from_dense({{-1, 0, 1}, {1, -1, 0}, {0, 1, -1}}));
    CHECK(c.shapes_consistent());
    CHECK_FALSE(c.first_d2_failure().has_value());
    CHECK(homology_dims(c) == std::vector<std::size_t>{1, 1});
    CHECK(euler_characteristic(c.dims) == euler_characteristic(homology_dims(c)));
  }

  TEST_CASE("d^2 failures are reported") {
    ChainComplex c;
    c.dims = {1, 1, 1};
    c.boundaries.emplace_back(0, 1);
    c.boundaries.push_back(RationalMatrix::from_dense({{1}}));
    c.boundaries.push_back(RationalMatrix::from_dense({{1}}));
    CHECK(c.first_d2_failure() == std::optional<std::size_t>{2});
    CHECK_THROWS_AS(homology_dims(c), std::domain_error);
  }

  TEST_CASE("Euler characteristic equals that of homology on random complexes") {
    std::mt19937 rng(19);
    for (int t = 0; t < 25; ++t) {
      // d1 * d2 = 0 by choosing d2 inside ker d1.
      std::size_t c0 = 1 + rng() % 4, c1 = 2 + rng() % 4;
      auto d1 = oracle::random_matrix(rng, c0, c1, -2, 2, 0.7);
      RationalMatrix m1 = to_matrix(d1, c1);
      RationalMatrix k = kernel_basis(m1);
      std::size_t c2 = 1 + rng() % 3;
      RationalMatrix m2 = k * to_matrix(oracle::random_matrix(rng, k.cols(), c2, -1, 1), c2);
      if (k.cols() == 0) m2 = RationalMatrix(c1, c2);
      ChainComplex c;
      c.dims = {c0, c1, c2};
      c.boundaries = {RationalMatrix(0, c0), m1, m2};
      REQUIRE_FALSE(c.first_d2_failure().has_value());
      auto h = homology_dims(c);
      CHECK(euler_characteristic(c.dims) == euler_characteristic(h));
      CHECK(h[0] == c0 - oracle::rank(d1));
    }
  }
}
