#include "doctest.h"

#include "qd/zmod.hpp"

#include <numeric>
#include <random>
#include <set>
#include <vector>

using qd::MatZ;
using qd::VecZ;

namespace {

MatZ random_mat(std::mt19937& rng, int r, int c, long long M) {
  MatZ A(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) A(i, j) = static_cast<long long>(rng() % M);
  return A;
}

bool is_zero_mod(const MatZ& A, long long M) {
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      if (qd::mod_reduce(A(i, j), M) != 0) return false;
  return true;
}

MatZ mul_mod(const MatZ& A, const MatZ& B, long long M) {
  MatZ C = MatZ::Zero(A.rows(), B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int k = 0; k < A.cols(); ++k) {
      if (A(i, k) == 0) continue;
      for (int j = 0; j < B.cols(); ++j)
        C(i, j) = qd::mod_reduce(C(i, j) + A(i, k) * B(k, j), M);
    }
  return C;
}

}  // namespace

TEST_CASE("smith_mod: U A V = D with tracked inverses") {
  std::mt19937 rng(3);
  for (long long M : {2LL, 4LL, 6LL, 8LL, 12LL, 24LL}) {
    for (int t = 0; t < 25; ++t) {
      int r = 1 + static_cast<int>(rng() % 6), c = 1 + static_cast<int>(rng() % 6);
      MatZ A = random_mat(rng, r, c, M);
      auto s = qd::smith_mod(A, M);
      CHECK(is_zero_mod(mul_mod(mul_mod(s.U, A, M), s.V, M) - s.D, M));
      CHECK(is_zero_mod(mul_mod(s.U, s.Uinv, M) - MatZ::Identity(r, r), M));
      CHECK(is_zero_mod(mul_mod(s.V, s.Vinv, M) - MatZ::Identity(c, c), M));
      // diagonal, divisor chain
      for (int i = 0; i < s.D.rows(); ++i)
        for (int j = 0; j < s.D.cols(); ++j)
          if (i != j) CHECK(s.D(i, j) == 0);
      for (size_t i = 0; i + 1 < s.diag.size(); ++i)
        CHECK(s.diag[i + 1] % s.diag[i] == 0);
    }
  }
}

TEST_CASE("kernel_mod: generators span exactly the kernel") {
  std::mt19937 rng(5);
  for (long long M : {4LL, 6LL, 8LL, 12LL}) {
    for (int t = 0; t < 20; ++t) {
      int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
      MatZ A = random_mat(rng, r, c, M);
      MatZ K = qd::kernel_mod(A, M);
      CHECK(is_zero_mod(mul_mod(A, K, M), M));
      // brute-force kernel size vs span size (c small: enumerate M^c)
      long long count = 0;
      std::vector<long long> x(c, 0);
      while (true) {
        VecZ v(c);
        for (int i = 0; i < c; ++i) v(i) = x[i];
        if (is_zero_mod(mul_mod(A, v, M), M)) ++count;
        int i = 0;
        while (i < c && ++x[i] == M) x[i++] = 0;
        if (i == c) break;
      }
      // span of K columns
      std::set<std::vector<long long>> span;
      std::vector<long long> e(K.cols(), 0);
      while (true) {
        std::vector<long long> v(c, 0);
        for (int j = 0; j < K.cols(); ++j)
          for (int i = 0; i < c; ++i) v[i] = qd::mod_reduce(v[i] + e[j] * K(i, j), M);
        span.insert(v);
        int j = 0;
        while (j < K.cols() && ++e[j] == M) e[j++] = 0;
        if (j == K.cols() || K.cols() == 0) break;
      }
      CHECK(static_cast<long long>(span.size()) == count);
    }
  }
}

TEST_CASE("solve_mod finds solutions iff they exist") {
  std::mt19937 rng(9);
  for (long long M : {4LL, 8LL, 12LL}) {
    for (int t = 0; t < 30; ++t) {
      int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
      MatZ A = random_mat(rng, r, c, M);
      VecZ x0(c);
      for (int i = 0; i < c; ++i) x0(i) = static_cast<long long>(rng() % M);
      VecZ b = mul_mod(A, x0, M);
      VecZ x;
      REQUIRE(qd::solve_mod(A, b, M, x));
      CHECK(is_zero_mod(mul_mod(A, x, M) - b, M));
      // random rhs: if solve says yes, it must verify
      VecZ b2(r);
      for (int i = 0; i < r; ++i) b2(i) = static_cast<long long>(rng() % M);
      if (qd::solve_mod(A, b2, M, x)) CHECK(is_zero_mod(mul_mod(A, x, M) - b2, M));
    }
  }
}

TEST_CASE("RowSpace preserves row span") {
  std::mt19937 rng(13);
  long long M = 12;
  int c = 4;
  MatZ A = random_mat(rng, 30, c, M);
  qd::RowSpace rs(c, M);
  for (int i = 0; i < A.rows(); ++i) rs.add_row(A.row(i).transpose());
  MatZ R = rs.rows();
  CHECK(R.rows() <= c);
  // every original row solvable from R^T, and vice versa
  for (int i = 0; i < A.rows(); ++i) {
    VecZ x;
    CHECK(qd::solve_mod(R.transpose(), A.row(i).transpose(), M, x));
  }
  for (int i = 0; i < R.rows(); ++i) {
    VecZ x;
    CHECK(qd::solve_mod(A.transpose(), R.row(i).transpose(), M, x));
  }
}

TEST_CASE("abelian_quotient: orders, dlog, representatives") {
  long long M = 12;
  // Z = all of (Z/12)^2, B = span{(2,0)} -> quotient Z/2 x Z/12
  MatZ Z = MatZ::Identity(2, 2);
  MatZ B(2, 1);
  B << 2, 0;
  auto q = qd::abelian_quotient(2, Z, B, M);
  CHECK(q.order() == 24);
  long long prod = 1;
  for (auto f : q.factors) prod *= f;
  CHECK(prod == 24);
  // dlog of generators hits unit vectors
  for (int j = 0; j < q.gen_reps.cols(); ++j) {
    auto e = q.dlog(q.gen_reps.col(j));
    for (size_t i = 0; i < e.size(); ++i)
      CHECK(e[i] == (static_cast<int>(i) == j ? 1 : 0));
  }
  // element of B maps to zero
  auto e0 = q.dlog(B.col(0));
  for (auto v : e0) CHECK(v == 0);

  // trivial quotient
  auto q2 = qd::abelian_quotient(2, Z, Z, M);
  CHECK(q2.order() == 1);
}
