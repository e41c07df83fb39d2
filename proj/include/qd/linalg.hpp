#pragma once

#include "qd/cyclotomic.hpp"

#include <Eigen/Core>

#include <optional>

namespace qd {

using MatC = Eigen::Matrix<CycScalar, Eigen::Dynamic, Eigen::Dynamic>;
using VecC = Eigen::Matrix<CycScalar, Eigen::Dynamic, 1>;

// Exact Gaussian elimination over the cyclotomic field. Pivoting is by first
// nonzero entry; there is no rounding anywhere, so no pivot strategy is
// needed beyond nonvanishing.

template <typename Mat>
int rref_in_place(Mat& A, std::vector<int>* pivots = nullptr) {
  int r = static_cast<int>(A.rows()), c = static_cast<int>(A.cols());
  int row = 0;
  for (int col = 0; col < c && row < r; ++col) {
    int piv = -1;
    for (int i = row; i < r; ++i)
      if (!A(i, col).is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    A.row(row).swap(A.row(piv));
    CycScalar inv = A(row, col).inv();
    for (int j = col; j < c; ++j) A(row, j) = A(row, j) * inv;
    for (int i = 0; i < r; ++i) {
      if (i == row) continue;
      CycScalar f = A(i, col);
      if (f.is_zero()) continue;
      for (int j = col; j < c; ++j) A(i, j) -= f * A(row, j);
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return row;  // rank
}

inline int rank_of(MatC A) { return rref_in_place(A); }

// kernel basis as columns
inline MatC kernel_basis(MatC A) {
  int c = static_cast<int>(A.cols());
  std::vector<int> pivots;
  rref_in_place(A, &pivots);
  std::vector<char> is_piv(c, 0);
  for (int p : pivots) is_piv[p] = 1;
  std::vector<int> free_cols;
  for (int j = 0; j < c; ++j)
    if (!is_piv[j]) free_cols.push_back(j);
  MatC K(c, static_cast<int>(free_cols.size()));
  K.setConstant(CycScalar(0));
  for (size_t t = 0; t < free_cols.size(); ++t) {
    K(free_cols[t], static_cast<int>(t)) = CycScalar(1);
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      K(pivots[pr], static_cast<int>(t)) = -A(static_cast<int>(pr), free_cols[t]);
  }
  return K;
}

// columns of A spanning its column space
inline MatC column_space(const MatC& A) {
  MatC T = A.transpose();
  std::vector<int> pivots;
  rref_in_place(T, &pivots);
  MatC B(A.rows(), static_cast<int>(pivots.size()));
  for (size_t j = 0; j < pivots.size(); ++j) B.col(static_cast<int>(j)) = A.col(pivots[j]);
  return B;
}

// solve A X = B exactly; nullopt if inconsistent (A need not be square)
inline std::optional<MatC> solve_exact(const MatC& A, const MatC& B) {
  int r = static_cast<int>(A.rows()), c = static_cast<int>(A.cols());
  MatC aug(r, c + B.cols());
  aug.leftCols(c) = A;
  aug.rightCols(B.cols()) = B;
  std::vector<int> pivots;
  int rank = rref_in_place(aug, &pivots);
  for (int p : pivots)
    if (p >= c) return std::nullopt;  // pivot in the rhs: inconsistent
  MatC X(c, B.cols());
  X.setConstant(CycScalar(0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < B.cols(); ++j) X(pivots[i], j) = aug(i, c + j);
  // verify (free variables set to zero must still solve)
  MatC chk = A * X - B;
  for (int i = 0; i < chk.rows(); ++i)
    for (int j = 0; j < chk.cols(); ++j)
      if (!chk(i, j).is_zero()) return std::nullopt;
  return X;
}

// incremental column-span: returns true when v was outside span(basis) and
// appends it; basis kept in echelon form internally via the companion matrix
struct SpanBuilder {
  MatC echelon;  // rows are reduced vectors
  std::vector<MatC> raw;

  explicit SpanBuilder(int dim) : echelon(0, dim) {}
  int dim() const { return static_cast<int>(echelon.cols()); }
  int size() const { return static_cast<int>(echelon.rows()); }
  bool add(const VecC& v);
};

inline bool SpanBuilder::add(const VecC& v) {
  VecC w = v;
  int d = dim();
  for (int i = 0; i < echelon.rows(); ++i) {
    int lead = -1;
    for (int j = 0; j < d; ++j)
      if (!echelon(i, j).is_zero()) { lead = j; break; }
    if (lead >= 0 && !w(lead).is_zero()) {
      CycScalar f = w(lead) / echelon(i, lead);
      for (int j = 0; j < d; ++j) w(j) -= f * echelon(i, j);
    }
  }
  bool nonzero = false;
  for (int j = 0; j < d && !nonzero; ++j) nonzero = !w(j).is_zero();
  if (!nonzero) return false;
  echelon.conservativeResize(echelon.rows() + 1, d);
  echelon.row(echelon.rows() - 1) = w.transpose();
  // keep rows ordered by leading index
  for (int i = static_cast<int>(echelon.rows()) - 1; i > 0; --i) {
    auto lead_of = [&](int row) {
      for (int j = 0; j < d; ++j)
        if (!echelon(row, j).is_zero()) return j;
      return d;
    };
    if (lead_of(i) < lead_of(i - 1)) echelon.row(i).swap(echelon.row(i - 1));
  }
  return true;
}

inline MatC kron(const MatC& A, const MatC& B) {
  MatC K(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      for (int k = 0; k < B.rows(); ++k)
        for (int l = 0; l < B.cols(); ++l)
          K(i * B.rows() + k, j * B.cols() + l) = A(i, j) * B(k, l);
  return K;
}

inline MatC identity_c(int n) {
  MatC I(n, n);
  I.setConstant(CycScalar(0));
  for (int i = 0; i < n; ++i) I(i, i) = CycScalar(1);
  return I;
}

inline bool mats_equal(const MatC& A, const MatC& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) return false;
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      if (!(A(i, j) == B(i, j))) return false;
  return true;
}

}  // namespace qd
