#include "qd/chars.hpp"

#include "qd/zmod.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace qd {

namespace {

long long pow_mod(long long b, long long e, long long q) {
  long long r = 1;
  b %= q;
  while (e) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return r;
}

long long inv_modq(long long a, long long q) { return pow_mod(mod_reduce(a, q), q - 2, q); }

bool is_prime(long long q) {
  if (q < 2) return false;
  for (long long d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

// smallest prime q = 1 mod e with q*q > 4*|G| (so integer lifts are unique)
long long dixon_prime(long e, long n) {
  for (long long q = e + 1;; q += e) {
    if (!is_prime(q)) continue;
    if (4 * n < q * q) return q;
  }
}

long long order_mod(long long g, long long q) {
  long long x = g % q, k = 1;
  while (x != 1) {
    x = x * g % q;
    ++k;
  }
  return k;
}

// element of multiplicative order e in F_q (q = 1 mod e)
long long root_of_order(long e, long long q) {
  for (long long g = 2; g < q; ++g) {
    if (order_mod(g, q) == q - 1) return pow_mod(g, (q - 1) / e, q);
  }
  throw ArithmeticError("dixon: no primitive root found");
}

// A x = b over F_q (q prime); A square invertible assumed by callers
MatZ fq_solve(const MatZ& A, const MatZ& B, long long q) {
  int n = static_cast<int>(A.rows());
  MatZ M(n, n + B.cols());
  M.leftCols(n) = A;
  M.rightCols(B.cols()) = B;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (mod_reduce(M(i, col), q) != 0) { piv = i; break; }
    if (piv < 0) throw ArithmeticError("fq_solve: singular system");
    M.row(row).swap(M.row(piv));
    long long inv = inv_modq(M(row, col), q);
    for (int j = 0; j < M.cols(); ++j) M(row, j) = mod_reduce(M(row, j) * inv, q);
    for (int i = 0; i < n; ++i) {
      if (i == row) continue;
      long long f = mod_reduce(M(i, col), q);
      if (f)
        for (int j = 0; j < M.cols(); ++j)
          M(i, j) = mod_reduce(M(i, j) - f * M(row, j), q);
    }
    ++row;
  }
  if (row != n) throw ArithmeticError("fq_solve: singular system");
  return M.rightCols(B.cols());
}

// kernel basis over F_q as columns
MatZ fq_kernel(MatZ A, long long q) {
  int r = static_cast<int>(A.rows()), c = static_cast<int>(A.cols());
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < c && row < r; ++col) {
    int piv = -1;
    for (int i = row; i < r; ++i)
      if (mod_reduce(A(i, col), q) != 0) { piv = i; break; }
    if (piv < 0) continue;
    A.row(row).swap(A.row(piv));
    long long inv = inv_modq(A(row, col), q);
    for (int j = 0; j < c; ++j) A(row, j) = mod_reduce(A(row, j) * inv, q);
    for (int i = 0; i < r; ++i) {
      if (i == row) continue;
      long long f = mod_reduce(A(i, col), q);
      if (f)
        for (int j = 0; j < c; ++j) A(i, j) = mod_reduce(A(i, j) - f * A(row, j), q);
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<char> is_pivot(c, 0);
  for (int pc : pivot_col) is_pivot[pc] = 1;
  std::vector<int> free_cols;
  for (int j = 0; j < c; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  MatZ K = MatZ::Zero(c, static_cast<int>(free_cols.size()));
  for (size_t t = 0; t < free_cols.size(); ++t) {
    int fc = free_cols[t];
    K(fc, static_cast<int>(t)) = 1;
    for (size_t pr = 0; pr < pivot_col.size(); ++pr)
      K(pivot_col[pr], static_cast<int>(t)) = mod_reduce(-A(static_cast<int>(pr), fc), q);
  }
  return K;
}

void canonical_sort(CharData& d) {
  std::vector<int> idx(d.irr.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (d.degrees[a] != d.degrees[b]) return d.degrees[a] < d.degrees[b];
    for (size_t k = 0; k < d.irr[a].vals.size(); ++k) {
      int c = CycScalar::compare(d.irr[a].vals[k], d.irr[b].vals[k]);
      if (c != 0) return c < 0;
    }
    return false;
  });
  std::vector<ClassFunction> irr;
  std::vector<long> deg;
  for (int i : idx) {
    irr.push_back(std::move(d.irr[i]));
    deg.push_back(d.degrees[i]);
  }
  d.irr = std::move(irr);
  d.degrees = std::move(deg);
}

void verify_table(const CharData& d) {
  int r = d.num_classes();
  if (static_cast<int>(d.irr.size()) != r)
    throw ArithmeticError("character table: wrong irreducible count");
  long sum = 0;
  for (long dg : d.degrees) sum += dg * dg;
  if (sum != d.G.n) throw ArithmeticError("character table: degree sum mismatch");
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      CycScalar ip(0);
      for (int k = 0; k < r; ++k)
        ip += CycScalar(static_cast<long>(d.cd.classes[k].size())) * d.irr[a].vals[k] *
              d.irr[b].vals[k].conj();
      ip = ip / CycScalar(static_cast<long>(d.G.n));
      if (!(ip == CycScalar(a == b ? 1 : 0)))
        throw ArithmeticError("character table: row orthogonality failed");
    }
  // column orthogonality
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) {
      CycScalar ip(0);
      for (int a = 0; a < r; ++a) ip += d.irr[a].vals[j] * d.irr[a].vals[k].conj();
      CycScalar want =
          j == k ? CycScalar(static_cast<long>(d.G.n / d.cd.classes[j].size())) : CycScalar(0);
      if (!(ip == want)) throw ArithmeticError("character table: column orthogonality failed");
    }
}

}  // namespace

CharData character_data(const FiniteGroup& G) {
  CharData d;
  d.G = G;
  d.cd = conjugacy_data(d.G);
  int r = d.num_classes();

  if (d.G.is_abelian()) {
    AbelianDual dual = abelian_dual(d.G);
    for (int chi = 0; chi < dual.size(); ++chi) {
      ClassFunction f;
      for (int k = 0; k < r; ++k) f.vals.push_back(dual.eval(chi, d.cd.reps[k]));
      d.irr.push_back(std::move(f));
      d.degrees.push_back(1);
    }
    canonical_sort(d);
    verify_table(d);
    return d;
  }

  long e = d.G.exponent();
  long long q = dixon_prime(e, d.G.n);
  long long theta = root_of_order(e, q);

  // class multiplication matrices: (M_i)_{jk} = a_ijk = #{(x,y) in C_i x C_j :
  // xy = rep_k}. With w_j = |C_j| chi(g_j)/chi(1) we get M_i w = omega_i w.
  std::vector<MatZ> M(r, MatZ::Zero(r, r));
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k)
      for (int x : d.cd.classes[i]) {
        int y = d.G.mul(d.G.inv[x], d.cd.reps[k]);
        M[i](d.cd.class_of[y], k) += 1;
      }

  // split F_q^r into common eigenspaces
  std::vector<MatZ> spaces;  // bases as columns
  spaces.push_back(MatZ::Identity(r, r));
  for (int i = 1; i < r; ++i) {
    std::vector<MatZ> next;
    for (auto& B : spaces) {
      if (B.cols() == 1) { next.push_back(B); continue; }
      // restriction A: M_i B = B A
      MatZ MiB(r, B.cols());
      for (int cidx = 0; cidx < B.cols(); ++cidx)
        for (int rr = 0; rr < r; ++rr) {
          long long acc = 0;
          for (int k = 0; k < r; ++k) acc = (acc + M[i](rr, k) * B(k, cidx)) % q;
          MiB(rr, cidx) = acc;
        }
      // solve B A = MiB: reduce the augmented [B | MiB]; B has full column
      // rank, and MiB lies in the column space because the subspace is
      // M_i-invariant
      int dcols = static_cast<int>(B.cols());
      MatZ Aug(r, 2 * dcols);
      Aug.leftCols(dcols) = B;
      Aug.rightCols(dcols) = MiB;
      int arow = 0;
      for (int col = 0; col < dcols; ++col) {
        int piv = -1;
        for (int i2 = arow; i2 < r; ++i2)
          if (mod_reduce(Aug(i2, col), q) != 0) { piv = i2; break; }
        if (piv < 0) throw ArithmeticError("dixon: basis not full rank");
        Aug.row(arow).swap(Aug.row(piv));
        long long inv = inv_modq(Aug(arow, col), q);
        for (int j = 0; j < Aug.cols(); ++j) Aug(arow, j) = mod_reduce(Aug(arow, j) * inv, q);
        for (int i2 = 0; i2 < r; ++i2) {
          if (i2 == arow) continue;
          long long fct = mod_reduce(Aug(i2, col), q);
          if (fct)
            for (int j = 0; j < Aug.cols(); ++j)
              Aug(i2, j) = mod_reduce(Aug(i2, j) - fct * Aug(arow, j), q);
        }
        ++arow;
      }
      for (int i2 = dcols; i2 < r; ++i2)
        for (int j = dcols; j < 2 * dcols; ++j)
          if (mod_reduce(Aug(i2, j), q) != 0)
            throw ArithmeticError("dixon: subspace not invariant");
      MatZ A = Aug.block(0, dcols, dcols, dcols);
      // eigen-split A over F_q
      bool split_any = false;
      for (long long lam = 0; lam < q; ++lam) {
        MatZ Ashift = A;
        for (int t = 0; t < A.rows(); ++t) Ashift(t, t) = mod_reduce(A(t, t) - lam, q);
        MatZ K = fq_kernel(Ashift, q);
        if (K.cols() == 0) continue;
        if (K.cols() == A.rows()) break;  // single eigenvalue: no split
        split_any = true;
        MatZ newB(r, K.cols());
        for (int cidx = 0; cidx < K.cols(); ++cidx)
          for (int rr = 0; rr < r; ++rr) {
            long long acc = 0;
            for (int k = 0; k < B.cols(); ++k) acc = (acc + B(rr, k) * K(k, cidx)) % q;
            newB(rr, cidx) = acc;
          }
        next.push_back(newB);
      }
      if (!split_any) next.push_back(B);
    }
    spaces = std::move(next);
    bool done = true;
    for (auto& B : spaces) done = done && B.cols() == 1;
    if (done) break;
  }
  if (static_cast<int>(spaces.size()) != r)
    throw ArithmeticError("dixon: eigenspace splitting incomplete");

  // inverse-class permutation
  std::vector<int> invclass(r);
  for (int j = 0; j < r; ++j) invclass[j] = d.cd.class_of[d.G.inv[d.cd.reps[j]]];
  // power-class map rep_j^k
  std::vector<std::vector<int>> powclass(r, std::vector<int>(e));
  for (int j = 0; j < r; ++j) {
    int x = d.G.id;
    for (long k = 0; k < e; ++k) {
      powclass[j][k] = d.cd.class_of[x];
      x = d.G.mul(x, d.cd.reps[j]);
    }
  }

  for (auto& B : spaces) {
    // normalize so omega at the identity class is 1
    int idclass = d.cd.class_of[d.G.id];
    std::vector<long long> w(r);
    long long w0 = mod_reduce(B(idclass, 0), q);
    if (w0 == 0) throw ArithmeticError("dixon: degenerate eigenvector");
    long long s = inv_modq(w0, q);
    for (int j = 0; j < r; ++j) w[j] = mod_reduce(B(j, 0) * s, q);
    // degree from sum omega_j omega_{j'} / |C_j|
    long long t = 0;
    for (int j = 0; j < r; ++j)
      t = (t + w[j] * w[invclass[j]] % q * inv_modq(static_cast<long long>(d.cd.classes[j].size()), q)) % q;
    long long dsq = mod_reduce(static_cast<long long>(d.G.n) * inv_modq(t, q), q);
    long deg = -1;
    for (long cand = 1; cand * cand <= d.G.n; ++cand)
      if (mod_reduce(cand * cand, q) == dsq) { deg = cand; break; }
    if (deg < 0) throw ArithmeticError("dixon: no degree matches");
    // character values mod q
    std::vector<long long> cq(r);
    for (int j = 0; j < r; ++j)
      cq[j] = mod_reduce(w[j] * deg % q * inv_modq(static_cast<long long>(d.cd.classes[j].size()), q), q);
    // lift to Q(zeta_e): chi(g_j) = sum_l c_l zeta^l with
    // c_l = (1/e) sum_k chi_q(g_j^k) theta^{-kl}
    ClassFunction f;
    long long einv = inv_modq(e, q);
    for (int j = 0; j < r; ++j) {
      CycScalar val(0);
      for (long l = 0; l < e; ++l) {
        long long acc = 0;
        for (long k = 0; k < e; ++k) {
          long long th = pow_mod(theta, mod_reduce(-static_cast<long long>(k) * l, q - 1), q);
          acc = (acc + cq[powclass[j][k]] * th) % q;
        }
        long long cl = mod_reduce(acc * einv, q);
        if (cl > d.G.n)
          throw ArithmeticError("dixon: lift coefficient out of range");
        if (cl) val += CycScalar(static_cast<long>(cl)) * CycScalar::zeta(e, l);
      }
      f.vals.push_back(val);
    }
    d.irr.push_back(std::move(f));
    d.degrees.push_back(deg);
  }
  canonical_sort(d);
  verify_table(d);
  return d;
}

CycScalar inner_product(const CharData& d, const ClassFunction& a, const ClassFunction& b) {
  CycScalar ip(0);
  for (int k = 0; k < d.num_classes(); ++k)
    ip += CycScalar(static_cast<long>(d.cd.classes[k].size())) * a.vals[k] * b.vals[k].conj();
  return ip / CycScalar(static_cast<long>(d.G.n));
}

ClassFunction restrict_to(const CharData& gd, const ClassFunction& chi, const CharData& hd,
                          const std::vector<int>& embed) {
  ClassFunction f;
  for (int k = 0; k < hd.num_classes(); ++k)
    f.vals.push_back(chi.vals[gd.cd.class_of[embed[hd.cd.reps[k]]]]);
  return f;
}

ClassFunction induce_from(const CharData& gd, const CharData& hd, const std::vector<int>& embed,
                          const ClassFunction& chi) {
  // Ind(chi)(g) = (1/|H|) sum_{t : t^-1 g t in H} chi(t^-1 g t)
  std::vector<int> g_to_h(gd.G.n, -1);
  for (int h = 0; h < hd.G.n; ++h) g_to_h[embed[h]] = h;
  ClassFunction f;
  for (int k = 0; k < gd.num_classes(); ++k) {
    int g = gd.cd.reps[k];
    CycScalar acc(0);
    for (int t = 0; t < gd.G.n; ++t) {
      int x = gd.G.conj_inv(t, g);
      if (g_to_h[x] >= 0) acc += chi.vals[hd.cd.class_of[g_to_h[x]]];
    }
    f.vals.push_back(acc / CycScalar(static_cast<long>(hd.G.n)));
  }
  return f;
}

std::vector<long> decompose(const CharData& gd, const ClassFunction& chi) {
  std::vector<long> mults;
  for (size_t i = 0; i < gd.irr.size(); ++i) {
    CycScalar m = inner_product(gd, chi, gd.irr[i]);
    if (!m.is_rational() || !m.rat().is_integer() || m.rat().sign() < 0)
      throw ArithmeticError("decompose: not a character");
    mults.push_back(static_cast<long>(m.rat().num().get_si()));
  }
  return mults;
}

int char_by_values(const CharData& d, long degree,
                   const std::vector<std::pair<int, CycScalar>>& constraints) {
  int found = -1;
  for (size_t i = 0; i < d.irr.size(); ++i) {
    if (d.degrees[i] != degree) continue;
    bool ok = true;
    for (auto& [g, v] : constraints) ok = ok && d.value(static_cast<int>(i), g) == v;
    if (ok) {
      if (found >= 0) throw ArithmeticError("char_by_values: ambiguous constraints");
      found = static_cast<int>(i);
    }
  }
  if (found < 0) throw ArithmeticError("char_by_values: no match");
  return found;
}

// ---- Clifford --------------------------------------------------------------

CliffordDecomp clifford_decomposition(const CharData& gd, int chi, const Subgroup& N) {
  if (!is_normal(gd.G, N) || !is_abelian_subgroup(gd.G, N))
    throw GroupError("clifford_decomposition: N must be normal abelian");
  CliffordDecomp out;
  auto [ng, nembed] = subgroup_as_group(gd.G, N);
  out.Ngrp = std::move(ng);
  out.nembed = nembed;
  out.ndual = abelian_dual(out.Ngrp);
  auto [qg, qproj] = quotient_group(gd.G, N);
  out.Q = std::move(qg);
  out.qproj = qproj;

  std::vector<int> g_to_n(gd.G.n, -1);
  for (int i = 0; i < out.Ngrp.n; ++i) g_to_n[out.nembed[i]] = i;

  // multiplicities <chi|_N, chi_i>
  long nn = out.Ngrp.n;
  for (int ci = 0; ci < out.ndual.size(); ++ci) {
    CycScalar acc(0);
    for (int i = 0; i < out.Ngrp.n; ++i)
      acc += gd.value(chi, out.nembed[i]) * out.ndual.eval(ci, i).conj();
    acc = acc / CycScalar(nn);
    if (acc.is_zero()) continue;
    if (!acc.is_rational() || !acc.rat().is_integer() || acc.rat().sign() < 0)
      throw ArithmeticError("clifford: non-integral multiplicity");
    long m = static_cast<long>(acc.rat().num().get_si());
    if (out.e == 0) out.e = m;
    if (m != out.e) throw ArithmeticError("clifford: multiplicities not constant on orbit");
    out.orbit.push_back(ci);
  }
  // orbit closure and inertia groups
  auto conj_char = [&](int ci, int t) {
    // (t . chi_i)(n) = chi_i(t^-1 n t)
    std::vector<CycScalar> vals(out.Ngrp.n);
    for (int i = 0; i < out.Ngrp.n; ++i)
      vals[i] = out.ndual.eval(ci, g_to_n[gd.G.conj_inv(t, out.nembed[i])]);
    // find matching dual character
    for (int cj = 0; cj < out.ndual.size(); ++cj) {
      bool eq = true;
      for (int i = 0; i < out.Ngrp.n && eq; ++i) eq = out.ndual.eval(cj, i) == vals[i];
      if (eq) return cj;
    }
    throw ArithmeticError("clifford: conjugated character not found");
  };
  std::set<int> orb(out.orbit.begin(), out.orbit.end());
  for (int ci : out.orbit)
    for (int t = 0; t < gd.G.n; ++t)
      if (!orb.count(conj_char(ci, t)))
        throw ArithmeticError("clifford: restriction support not a single orbit");
  // t = [Q : I_i] must match orbit size; dim chi = e * t
  if (static_cast<long>(out.orbit.size()) * out.e !=
      static_cast<long>(gd.degrees[chi]))
    throw ArithmeticError("clifford: e * t != dim");
  for (int ci : out.orbit) {
    std::set<int> stab;
    for (int t = 0; t < gd.G.n; ++t)
      if (conj_char(ci, t) == ci) stab.insert(out.qproj[t]);
    Subgroup I;
    I.elems.assign(stab.begin(), stab.end());
    out.inertia.push_back(I);
  }
  return out;
}

ClassFunction isotypic_character(const CharData& gd, int chi, const CliffordDecomp& cliff,
                                 int chi_i, int n_i, const CharData& centd,
                                 const std::vector<int>& cent_embed) {
  // sanity: chi_i in the orbit
  if (std::find(cliff.orbit.begin(), cliff.orbit.end(), chi_i) == cliff.orbit.end())
    throw ArithmeticError("isotypic_character: chi_i not in the Clifford orbit");
  std::vector<int> g_to_n(gd.G.n, -1);
  for (int i = 0; i < cliff.Ngrp.n; ++i) g_to_n[cliff.nembed[i]] = i;
  std::vector<int> g_to_c(gd.G.n, -1);
  for (int i = 0; i < centd.G.n; ++i) g_to_c[cent_embed[i]] = i;
  if (g_to_c[n_i] < 0) throw GroupError("isotypic_character: centralizer does not match n_i");

  // N inside the centralizer
  Subgroup Nc;
  for (int i = 0; i < cliff.Ngrp.n; ++i) {
    if (g_to_c[cliff.nembed[i]] < 0)
      throw GroupError("isotypic_character: N not inside Cent(n_i)");
    Nc.elems.push_back(g_to_c[cliff.nembed[i]]);
  }
  std::sort(Nc.elems.begin(), Nc.elems.end());
  auto comps = semidirect_complements(centd.G, Nc);
  if (comps.empty()) throw GroupError("isotypic_character: Cent(n_i) is not split over N");
  const Subgroup& comp = comps.front();

  // T_i(x) = (1/|N|) sum_n chi_i(n)^-1 chi(x n), x a complement element;
  // rho(x n) = T_i(x)
  auto T = [&](int x_parent) {
    CycScalar acc(0);
    for (int i = 0; i < cliff.Ngrp.n; ++i) {
      CycScalar c = cliff.ndual.eval(chi_i, i);
      acc += c.conj() * gd.value(chi, gd.G.mul(x_parent, cliff.nembed[i]));
    }
    return acc / CycScalar(static_cast<long>(cliff.Ngrp.n));
  };
  ClassFunction rho;
  for (int k = 0; k < centd.num_classes(); ++k) {
    int c = centd.cd.reps[k];
    // unique factorization c = x * n with x in comp, n in Nc
    int x_found = -1;
    for (int x : comp.elems) {
      int n = centd.G.mul(centd.G.inv[x], c);
      if (Nc.contains(n)) { x_found = x; break; }
    }
    if (x_found < 0) throw GroupError("isotypic_character: complement factorization failed");
    rho.vals.push_back(T(cent_embed[x_found]));
  }
  // postcondition: rho is a character of degree e with non-negative integral
  // decomposition
  auto mults = decompose(centd, rho);
  long deg = 0;
  for (size_t i = 0; i < mults.size(); ++i) deg += mults[i] * centd.degrees[i];
  if (deg != cliff.e) throw ArithmeticError("isotypic_character: degree != e");
  return rho;
}

}  // namespace qd
