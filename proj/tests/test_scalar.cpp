#include <doctest.h>

#include "qp/generators.hpp"
#include "qp/linalg.hpp"
#include "qp/scalar.hpp"

using namespace qp;

TEST_CASE("Fp arithmetic") {
  FpModulus::Scope scope(7);
  CHECK(Fp(3) + Fp(5) == Fp(1));
  CHECK(Fp(-1) == Fp(6));
  CHECK(Fp(3) * Fp(3).inverse() == Fp(1));
  CHECK(Fp(2) / Fp(4) == Fp(4));
  CHECK_THROWS_AS(Fp(0).inverse(), std::domain_error);
  for (long long a = 1; a < 7; ++a) CHECK(Fp(a) * Fp(a).inverse() == Fp(1));
}

TEST_CASE("FpModulus scope nests and restores") {
  CHECK(FpModulus::get() == FpModulus::kDefault);
  {
    FpModulus::Scope outer(5);
    {
      FpModulus::Scope inner(3);
      CHECK(FpModulus::get() == 3);
    }
    CHECK(FpModulus::get() == 5);
  }
  CHECK(FpModulus::get() == FpModulus::kDefault);
  CHECK_THROWS_AS(FpModulus::Scope(9), std::invalid_argument);
}

TEST_CASE("FieldSpec::parse") {
  CHECK(FieldSpec::parse("q").kind == FieldSpec::Kind::Rational);
  CHECK(FieldSpec::parse("fp:101").prime == 101);
  CHECK(FieldSpec::parse("fp:101").to_string() == "fp:101");
  CHECK_THROWS_AS(FieldSpec::parse("fp:100"), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::parse("fp:"), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::parse("r"), std::invalid_argument);
}

TEST_CASE("rank of small matrices") {
  Matrix<Rational> m = zeros<Rational>(3, 3);
  CHECK(rank<Rational>(m) == 0);
  m(0, 0) = 1;
  m(1, 1) = 2;
  m(2, 0) = 3;
  m(2, 1) = 6;
  CHECK(rank<Rational>(m) == 2);
  CHECK(rank<Rational>(zeros<Rational>(0, 4)) == 0);

  // Full rank over Q, rank 1 mod 2.
  Matrix<Rational> q(2, 2);
  q << Rational(1), Rational(1), Rational(1), Rational(-1);
  CHECK(rank<Rational>(q) == 2);
  FpModulus::Scope scope(2);
  Matrix<Fp> f(2, 2);
  f << Fp(1), Fp(1), Fp(1), Fp(-1);
  CHECK(rank<Fp>(f) == 1);
}

TEST_CASE("rank agrees with rank-nullity via nullspace") {
  gen::Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    const Eigen::Index r = 1 + rng() % 6, c = 1 + rng() % 6;
    Matrix<Rational> m(r, c);
    for (Eigen::Index a = 0; a < r; ++a)
      for (Eigen::Index b = 0; b < c; ++b) m(a, b) = Rational(static_cast<long long>(rng() % 5) - 2);
    const auto ns = nullspace<Rational>(m);
    CHECK(rank<Rational>(m) + ns.cols() == c);
    const Matrix<Rational> prod = m * ns;
    for (Eigen::Index a = 0; a < prod.rows(); ++a)
      for (Eigen::Index b = 0; b < prod.cols(); ++b) CHECK(prod(a, b) == 0);
  }
}
