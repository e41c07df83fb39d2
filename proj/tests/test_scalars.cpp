#include "doctest.h"

#include "qd/cyclotomic.hpp"

#include <numeric>
#include <random>

using qd::CycScalar;
using qd::Rational;

TEST_CASE("cyclotomic polynomials multiply back to x^m - 1") {
  // prod_{d|m} Phi_d = x^m - 1 for every conductor the toolkit uses
  for (long m : {1L, 2L, 3L, 4L, 6L, 8L, 12L, 16L, 24L, 36L, 48L, 64L}) {
    std::vector<long long> prod = {1};
    for (long d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      const auto& phi = qd::cyc_table(d).cyclo;
      std::vector<long long> nxt(prod.size() + phi.size() - 1, 0);
      for (size_t i = 0; i < prod.size(); ++i)
        for (size_t j = 0; j < phi.size(); ++j) nxt[i + j] += prod[i] * phi[j];
      prod = nxt;
    }
    REQUIRE(prod.size() == static_cast<size_t>(m + 1));
    CHECK(prod[0] == -1);
    CHECK(prod[m] == 1);
    for (long k = 1; k < m; ++k) CHECK(prod[k] == 0);
  }
}

TEST_CASE("basic arithmetic identities") {
  // zeta_4^2 = -1
  CHECK(CycScalar::zeta(4, 1) * CycScalar::zeta(4, 1) == CycScalar(-1));
  // 1 + z3 + z3^2 = 0 gives (1 + z3)(-z3) = 1
  CycScalar one_plus_z3 = CycScalar(1) + CycScalar::zeta(3, 1);
  CHECK(one_plus_z3.inv() == -CycScalar::zeta(3, 1));
  CHECK(one_plus_z3 * (-CycScalar::zeta(3, 1)) == CycScalar(1));
  // zeta_6 lifted to conductor 12 equals -zeta_3^2
  CycScalar z6 = CycScalar::zeta(6, 1).lifted(12);
  CHECK(z6 == -CycScalar::zeta(3, 2));
  // roots of unity basics
  CHECK(qd::root_of_unity(2, 1) == CycScalar(-1));
  CHECK(qd::discrete_log(CycScalar::zeta(3, 2), 3) == 2);
  for (long m : {1L, 2L, 5L, 12L}) CHECK(qd::root_of_unity(m, 0) == CycScalar(1));
}

TEST_CASE("division and errors") {
  CHECK_THROWS_AS(CycScalar(1) / CycScalar(0), qd::ArithmeticError);
  CycScalar a = CycScalar::zeta(8, 3) + CycScalar(2);
  CHECK(a / a == CycScalar(1));
  CHECK((a * a.inv()) == CycScalar(1));
}

TEST_CASE("conjugation and field axioms on random elements") {
  std::mt19937 rng(7);
  auto rnd = [&](long m) {
    CycScalar x(0);
    int phi = qd::cyc_table(m).phi;
    for (int k = 0; k < phi; ++k) {
      long num = static_cast<long>(rng() % 7) - 3;
      long den = 1 + static_cast<long>(rng() % 3);
      x += CycScalar(Rational(num, den)) * CycScalar::zeta(m, k);
    }
    return x;
  };
  for (long m : {3L, 8L, 12L}) {
    for (int t = 0; t < 20; ++t) {
      CycScalar x = rnd(m), y = rnd(m), z = rnd(m);
      CHECK((x + y) * z == x * z + y * z);
      CHECK(x * y == y * x);
      CHECK((x * y) * z == x * (y * z));
      if (!x.is_zero()) CHECK(x * x.inv() == CycScalar(1));
      CHECK(x.conj().conj() == x);
      CHECK((x * y).conj() == x.conj() * y.conj());
    }
  }
}

TEST_CASE("conductor lifting is a ring embedding") {
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    long m = std::vector<long>{2, 3, 4, 6}[rng() % 4];
    long m2 = m * (1 + static_cast<long>(rng() % 3));
    CycScalar x(0), y(0);
    int phi = qd::cyc_table(m).phi;
    for (int k = 0; k < phi; ++k) {
      x += CycScalar(Rational(static_cast<long>(rng() % 5) - 2)) * CycScalar::zeta(m, k);
      y += CycScalar(Rational(static_cast<long>(rng() % 5) - 2)) * CycScalar::zeta(m, k);
    }
    CHECK((x + y).lifted(std::lcm(m, m2)) == x.lifted(std::lcm(m, m2)) + y.lifted(std::lcm(m, m2)));
    CHECK((x * y).lifted(std::lcm(m, m2)) == x.lifted(std::lcm(m, m2)) * y.lifted(std::lcm(m, m2)));
  }
}

TEST_CASE("text rendering round-trips exactly") {
  std::vector<CycScalar> vals = {
      CycScalar(0),
      CycScalar(Rational(-7, 3)),
      CycScalar::zeta(12, 5),
      CycScalar(Rational(1, 2)) + CycScalar(Rational(-3, 5)) * CycScalar::zeta(8, 3),
      CycScalar::zeta(3, 1) + CycScalar::zeta(3, 2),  // = -1, demotes to rational
  };
  for (const auto& v : vals) {
    CHECK(CycScalar::parse(v.str()) == v);
  }
}

TEST_CASE("rational demotion keeps representations canonical") {
  CycScalar v = CycScalar::zeta(3, 1) + CycScalar::zeta(3, 2);
  CHECK(v.is_rational());
  CHECK(v == CycScalar(-1));
  CHECK(CycScalar::zeta(6, 3) == CycScalar(-1));
  // powers
  CHECK(CycScalar::zeta(5, 1).pow(5) == CycScalar(1));
  CHECK(CycScalar::zeta(12, 1).pow(-1) == CycScalar::zeta(12, 11));
}
