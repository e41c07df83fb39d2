#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace qd {

// Dense integer matrices with entries treated mod M (M <= ~2^30). All the
// cohomology linear algebra runs through these: kernels, solves and Smith
// forms over Z/M. Entries stay reduced to [0, M), so int64 never overflows.
using MatZ = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using VecZ = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

long long mod_reduce(long long a, long long M);

// Smith form over Z/M: U*A*V = D (diagonal, d_i | d_{i+1} as divisors of M),
// with U, V invertible mod M and their inverses tracked. Valid for any M >= 1
// because every elementary step is unimodular over Z before reduction
// (lattices of interest always contain M*Z^n).
struct SmithModResult {
  MatZ D, U, V, Uinv, Vinv;
  std::vector<long long> diag;  // gcd(d_i, M), one per min(rows,cols)
};

SmithModResult smith_mod(const MatZ& A, long long M);

// Basis (as columns) of {x : A x = 0 mod M}. The returned generators span the
// kernel as a Z/M-module; zero generators are dropped.
MatZ kernel_mod(const MatZ& A, long long M);

// One solution of A x = b mod M, or empty optional-like flag via bool.
bool solve_mod(const MatZ& A, const VecZ& b, long long M, VecZ& x_out);

// Row-space echelon accumulator: feeds rows one at a time, keeps at most
// `cols` reduced rows mod M. Used to crush very tall boundary matrices
// before the Smith step.
class RowSpace {
public:
  RowSpace(int cols, long long M) : cols_(cols), M_(M) {}
  void add_row(VecZ row);
  MatZ rows() const;
  long long modulus() const { return M_; }

private:
  int cols_;
  long long M_;
  std::vector<VecZ> rows_;
};

// Finite abelian group presented as a quotient of two mod-M lattices
// span(Z) / span(B), both containing M*Z^n. Provides invariant factors,
// representative vectors for each generator, and discrete logs.
struct AbelianQuotient {
  long long M = 1;
  int n = 0;                       // ambient dimension
  std::vector<long long> factors;  // invariant factors > 1
  MatZ gen_reps;                   // n x k, columns are representatives in span(Z)
  // internals for dlog
  MatZ zbasis;      // n x n, columns = triangular basis of span(Z) + M lattice
  MatZ dlog_mat;    // k x n transform: coords -> factor exponents
  std::vector<long long> all_factors;  // length n, including 1s

  long long order() const;
  // dlog of a vector v in span(Z): exponents e with v = sum e_i * gen_reps_i
  // modulo span(B). Throws if v is not in span(Z).
  std::vector<long long> dlog(const VecZ& v) const;
  bool contains(const VecZ& v) const;  // v in span(Z)?
};

// Z (n x zk) and B (n x bk) hold generators as columns; span(B) must be a
// subgroup of span(Z) mod M. The M*identity lattice is adjoined to both.
AbelianQuotient abelian_quotient(int n, const MatZ& Z, const MatZ& B, long long M);

}  // namespace qd
