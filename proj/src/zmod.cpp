#include "qd/zmod.hpp"

#include <numeric>
#include <stdexcept>

namespace qd {

long long mod_reduce(long long a, long long M) {
  long long r = a % M;
  return r < 0 ? r + M : r;
}

namespace {

// extended gcd: g = a*x + b*y, g >= 0
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = (a < 0) ? -1 : 1;
    y = 0;
    return a < 0 ? -a : a;
  }
  long long x1, y1;
  long long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

long long inv_mod(long long a, long long M) {
  long long x, y;
  long long g = ext_gcd(mod_reduce(a, M), M, x, y);
  if (g != 1) throw std::runtime_error("zmod: element not invertible");
  return mod_reduce(x, M);
}


// Bezout data for the 2x2 unimodular clearing step. When a | b we return the
// plain elimination (x,y) = (1,0) so the pivot row/column is left untouched;
// otherwise the generic extended gcd strictly shrinks gcd(pivot, M).
long long bezout_step(long long a, long long b, long long& x, long long& y) {
  if (a != 0 && b % a == 0) {
    x = 1;
    y = 0;
    return a;
  }
  return ext_gcd(a, b, x, y);
}

// left-multiply rows (i,j) of A by [[p,q],[r,s]] mod M
void row_op2(MatZ& A, int i, int j, long long p, long long q, long long r, long long s,
             long long M) {
  for (int k = 0; k < A.cols(); ++k) {
    long long ai = A(i, k), aj = A(j, k);
    A(i, k) = mod_reduce(p % M * (ai % M) % M + q % M * (aj % M) % M, M);
    A(j, k) = mod_reduce(r % M * (ai % M) % M + s % M * (aj % M) % M, M);
  }
}

// right-multiply cols (i,j) of A by [[p,r],[q,s]] mod M (i.e. col_i' = p*col_i + q*col_j)
void col_op2(MatZ& A, int i, int j, long long p, long long q, long long r, long long s,
             long long M) {
  for (int k = 0; k < A.rows(); ++k) {
    long long ai = A(k, i), aj = A(k, j);
    A(k, i) = mod_reduce(p % M * (ai % M) % M + q % M * (aj % M) % M, M);
    A(k, j) = mod_reduce(r % M * (ai % M) % M + s % M * (aj % M) % M, M);
  }
}

// unit u mod M with d*u = gcd(d,M) mod M
long long scaling_unit(long long d, long long M) {
  d = mod_reduce(d, M);
  long long g = std::gcd(d == 0 ? M : d, M);
  if (g == M) return 1;  // d = 0 mod M
  long long dp = (d / g) % (M / g);
  long long u = inv_mod(dp, M / g);
  while (std::gcd(u, M) != 1) u += M / g;
  return mod_reduce(u, M);
}

}  // namespace

SmithModResult smith_mod(const MatZ& A, long long M) {
  const int r = static_cast<int>(A.rows());
  const int c = static_cast<int>(A.cols());
  SmithModResult out;
  out.D = A.unaryExpr([M](long long v) { return mod_reduce(v, M); });
  out.U = MatZ::Identity(r, r);
  out.Uinv = MatZ::Identity(r, r);
  out.V = MatZ::Identity(c, c);
  out.Vinv = MatZ::Identity(c, c);
  MatZ& D = out.D;

  const int steps = std::min(r, c);
  for (int k = 0; k < steps; ++k) {
    // pivot: entry with smallest gcd with M in the trailing block
    long long best = 0;
    int bi = -1, bj = -1;
    for (int i = k; i < r; ++i)
      for (int j = k; j < c; ++j) {
        if (D(i, j) == 0) continue;
        long long g = std::gcd(D(i, j), M);
        if (bi < 0 || g < best) { best = g; bi = i; bj = j; }
      }
    if (bi < 0) break;
    if (bi != k) {
      D.row(k).swap(D.row(bi));
      out.U.row(k).swap(out.U.row(bi));
      out.Uinv.col(k).swap(out.Uinv.col(bi));
    }
    if (bj != k) {
      D.col(k).swap(D.col(bj));
      out.V.col(k).swap(out.V.col(bj));
      out.Vinv.row(k).swap(out.Vinv.row(bj));
    }

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = k + 1; i < r; ++i) {
        if (D(i, k) == 0) continue;
        long long x, y;
        long long a = D(k, k), b = D(i, k);
        long long g = bezout_step(a, b, x, y);
        // [[x,y],[-b/g,a/g]] is unimodular over Z
        row_op2(D, k, i, x, y, -(b / g), a / g, M);
        row_op2(out.U, k, i, x, y, -(b / g), a / g, M);
        // inverse [[a/g,-y],[b/g,x]] applied on the right of Uinv
        col_op2(out.Uinv, k, i, a / g, b / g, -y, x, M);
        clean = false;
      }
      for (int j = k + 1; j < c; ++j) {
        if (D(k, j) == 0) continue;
        long long x, y;
        long long a = D(k, k), b = D(k, j);
        long long g = bezout_step(a, b, x, y);
        col_op2(D, k, j, x, y, -(b / g), a / g, M);
        col_op2(out.V, k, j, x, y, -(b / g), a / g, M);
        row_op2(out.Vinv, k, j, a / g, b / g, -y, x, M);
        clean = false;
      }
      if (clean) {
        // divisibility sweep: pivot must divide every trailing entry
        long long g = std::gcd(D(k, k), M);
        for (int i = k + 1; i < r && clean; ++i)
          for (int j = k + 1; j < c && clean; ++j)
            if (D(i, j) % g != 0) {
              // fold row i into row k and restart clearing
              row_op2(D, k, i, 1, 1, 0, 1, M);
              row_op2(out.U, k, i, 1, 1, 0, 1, M);
              col_op2(out.Uinv, k, i, 1, 0, -1, 1, M);
              clean = false;
            }
      }
    }
    // normalize pivot to gcd(d, M) by a unit row scaling
    long long u = scaling_unit(D(k, k), M);
    if (u != 1) {
      long long uin = inv_mod(u, M);
      for (int j = 0; j < c; ++j) D(k, j) = mod_reduce(D(k, j) * u, M);
      for (int j = 0; j < r; ++j) out.U(k, j) = mod_reduce(out.U(k, j) * u, M);
      for (int i = 0; i < r; ++i) out.Uinv(i, k) = mod_reduce(out.Uinv(i, k) * uin, M);
    }
    D(k, k) = std::gcd(D(k, k) == 0 ? M : D(k, k), M) % M;
  }

  out.diag.resize(steps);
  for (int k = 0; k < steps; ++k)
    out.diag[k] = std::gcd(D(k, k) == 0 ? M : D(k, k), M);
  return out;
}

MatZ kernel_mod(const MatZ& A, long long M) {
  auto s = smith_mod(A, M);
  const int c = static_cast<int>(A.cols());
  const int steps = static_cast<int>(s.diag.size());
  std::vector<VecZ> gens;
  for (int j = 0; j < c; ++j) {
    long long g = (j < steps) ? s.diag[j] : M;
    long long coef = M / g;
    if (coef % M == 0) continue;  // unit pivot: no kernel contribution
    VecZ x = s.V.col(j);
    for (int i = 0; i < c; ++i) x(i) = mod_reduce(x(i) * coef, M);
    if (x.isZero()) continue;
    gens.push_back(x);
  }
  MatZ K(c, static_cast<int>(gens.size()));
  for (size_t j = 0; j < gens.size(); ++j) K.col(static_cast<int>(j)) = gens[j];
  return K;
}

bool solve_mod(const MatZ& A, const VecZ& b, long long M, VecZ& x_out) {
  auto s = smith_mod(A, M);
  const int r = static_cast<int>(A.rows());
  const int c = static_cast<int>(A.cols());
  VecZ y(r);
  for (int i = 0; i < r; ++i) {
    long long acc = 0;
    for (int j = 0; j < r; ++j) acc = (acc + s.U(i, j) * mod_reduce(b(j), M)) % M;
    y(i) = mod_reduce(acc, M);
  }
  const int steps = static_cast<int>(s.diag.size());
  VecZ z = VecZ::Zero(c);
  for (int i = 0; i < r; ++i) {
    if (i >= steps) {
      if (y(i) != 0) return false;
      continue;
    }
    long long g = s.diag[i];  // D(i,i) normalized to gcd(d,M)
    if (g % M == 0 || g == M) {
      if (y(i) != 0) return false;
      continue;
    }
    if (y(i) % g != 0) return false;
    z(i) = y(i) / g;
  }
  x_out = VecZ::Zero(c);
  for (int i = 0; i < c; ++i) {
    long long acc = 0;
    for (int j = 0; j < c; ++j) acc = (acc + s.V(i, j) * z(j)) % M;
    x_out(i) = mod_reduce(acc, M);
  }
  return true;
}

void RowSpace::add_row(VecZ row) {
  for (int i = 0; i < cols_; ++i) row(i) = mod_reduce(row(i), M_);
  size_t idx = 0;
  while (true) {
    int q = -1;
    for (int i = 0; i < cols_; ++i)
      if (row(i) != 0) { q = i; break; }
    if (q < 0) return;
    // find stored row with pivot q (rows_ kept sorted by pivot)
    while (idx < rows_.size()) {
      int p = -1;
      for (int i = 0; i < cols_; ++i)
        if (rows_[idx](i) != 0) { p = i; break; }
      if (p >= q) break;
      ++idx;
    }
    int p = -1;
    if (idx < rows_.size())
      for (int i = 0; i < cols_; ++i)
        if (rows_[idx](i) != 0) { p = i; break; }
    if (idx == rows_.size() || p != q) {
      rows_.insert(rows_.begin() + idx, row);
      return;
    }
    // combine: stored gets gcd pivot, incoming row zeroed at q
    VecZ& st = rows_[idx];
    long long a = st(q), b = row(q), x, y;
    long long g = bezout_step(a, b, x, y);
    VecZ ns(cols_), nr(cols_);
    for (int i = 0; i < cols_; ++i) {
      long long si = st(i), ri = row(i);
      ns(i) = mod_reduce(x % M_ * (si % M_) % M_ + y % M_ * (ri % M_) % M_, M_);
      nr(i) = mod_reduce(-(b / g) % M_ * (si % M_) % M_ + (a / g) % M_ * (ri % M_) % M_, M_);
    }
    st = ns;
    row = nr;
  }
}

MatZ RowSpace::rows() const {
  MatZ R(static_cast<int>(rows_.size()), cols_);
  for (size_t i = 0; i < rows_.size(); ++i) R.row(static_cast<int>(i)) = rows_[i].transpose();
  return R;
}

namespace {

// lower-triangular basis of span(cols) + M*Z^n; pivots divide M
MatZ lattice_basis(int n, const MatZ& gens, long long M) {
  MatZ T = MatZ::Identity(n, n) * M;
  for (int col = 0; col < gens.cols(); ++col) {
    VecZ v = gens.col(col);
    for (int i = 0; i < n; ++i) v(i) = mod_reduce(v(i), M);
    for (int i = 0; i < n; ++i) {
      if (v(i) == 0) continue;
      long long a = T(i, i), b = v(i), x, y;
      long long g = bezout_step(a, b, x, y);
      VecZ tcol = T.col(i), vv = v;
      for (int k = 0; k < n; ++k) {
        T(k, i) = mod_reduce(x % M * (tcol(k) % M) % M + y % M * (vv(k) % M) % M, M);
        v(k) = mod_reduce((a / g) % M * (vv(k) % M) % M - (b / g) % M * (tcol(k) % M) % M, M);
      }
      T(i, i) = g;  // g | a | M, so g is the true pivot divisor
    }
  }
  return T;
}

// forward-substitute v against lower-triangular T; false if not in lattice
bool lattice_coords(const MatZ& T, VecZ v, long long M, VecZ& x) {
  int n = static_cast<int>(T.rows());
  x = VecZ::Zero(n);
  for (int i = 0; i < n; ++i) v(i) = mod_reduce(v(i), M);
  for (int i = 0; i < n; ++i) {
    long long piv = T(i, i);
    if (v(i) % piv != 0) return false;
    long long xi = v(i) / piv;
    x(i) = xi;
    if (xi != 0)
      for (int k = i; k < n; ++k) v(k) = mod_reduce(v(k) - xi * T(k, i), M);
  }
  return true;
}

}  // namespace

AbelianQuotient abelian_quotient(int n, const MatZ& Z, const MatZ& B, long long M) {
  AbelianQuotient q;
  q.M = M;
  q.n = n;
  q.zbasis = lattice_basis(n, Z, M);

  // relations: coordinates of B-columns and of M*e_i
  int bk = static_cast<int>(B.cols());
  MatZ R(n, bk + n);
  for (int j = 0; j < bk; ++j) {
    VecZ x;
    if (!lattice_coords(q.zbasis, B.col(j), M, x))
      throw std::runtime_error("abelian_quotient: B not contained in span(Z)");
    R.col(j) = x;
  }
  for (int i = 0; i < n; ++i) {
    // M*e_i is 0 mod M but carries nontrivial lattice coordinates; solve
    // T x = M*e_i exactly over Z via the triangular structure.
    VecZ x = VecZ::Zero(n), w = VecZ::Zero(n);
    w(i) = M;
    for (int r2 = 0; r2 < n; ++r2) {
      long long piv = q.zbasis(r2, r2);
      if (w(r2) % piv != 0) throw std::runtime_error("abelian_quotient: internal lattice error");
      long long xi = w(r2) / piv;
      x(r2) = mod_reduce(xi, M);
      if (xi != 0)
        for (int k = r2; k < n; ++k) w(k) -= xi * q.zbasis(k, r2);
    }
    R.col(bk + i) = x;
  }

  auto s = smith_mod(R, M);
  q.all_factors.assign(n, M);
  for (size_t i = 0; i < s.diag.size() && static_cast<int>(i) < n; ++i)
    q.all_factors[i] = s.diag[i];

  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (q.all_factors[i] > 1) keep.push_back(i);

  q.factors.clear();
  q.gen_reps.resize(n, static_cast<int>(keep.size()));
  q.dlog_mat.resize(static_cast<int>(keep.size()), n);
  for (size_t t = 0; t < keep.size(); ++t) {
    int i = keep[t];
    q.factors.push_back(q.all_factors[i]);
    // representative: T * (Uinv e_i)
    VecZ xc = s.Uinv.col(i);
    VecZ v = VecZ::Zero(n);
    for (int r2 = 0; r2 < n; ++r2) {
      long long acc = 0;
      for (int k = 0; k < n; ++k) acc = (acc + q.zbasis(r2, k) * xc(k)) % M;
      v(r2) = mod_reduce(acc, M);
    }
    q.gen_reps.col(static_cast<int>(t)) = v;
    q.dlog_mat.row(static_cast<int>(t)) = s.U.row(i);
  }
  return q;
}

long long AbelianQuotient::order() const {
  long long o = 1;
  for (long long f : factors) o *= f;
  return o;
}

bool AbelianQuotient::contains(const VecZ& v) const {
  VecZ x;
  return lattice_coords(zbasis, v, M, x);
}

std::vector<long long> AbelianQuotient::dlog(const VecZ& v) const {
  VecZ x;
  if (!lattice_coords(zbasis, v, M, x))
    throw std::runtime_error("AbelianQuotient::dlog: vector not in span(Z)");
  std::vector<long long> e(factors.size());
  for (size_t t = 0; t < factors.size(); ++t) {
    long long acc = 0;
    for (int k = 0; k < n; ++k) acc = (acc + dlog_mat(static_cast<int>(t), k) * x(k)) % M;
    e[t] = mod_reduce(acc, factors[t]);
  }
  return e;
}

}  // namespace qd
