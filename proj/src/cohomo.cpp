#include "qd/cohomo.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace qd {

CocycleG trivial_cocycle(const FiniteGroup& G, long M) {
  return CocycleG{M, Eigen::MatrixXi::Zero(G.n, G.n)};
}

bool is_cocycle(const FiniteGroup& G, const CocycleG& beta) {
  long M = beta.M;
  for (int g = 0; g < G.n; ++g)
    if (beta.tab(G.id, g) % M != 0 || beta.tab(g, G.id) % M != 0) return false;
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b)
      for (int c = 0; c < G.n; ++c) {
        long lhs = beta.tab(a, b) + beta.tab(G.mul(a, b), c);
        long rhs = beta.tab(b, c) + beta.tab(a, G.mul(b, c));
        if ((lhs - rhs) % M != 0) return false;
      }
  return true;
}

CocycleG cocycle_mul(const CocycleG& a, const CocycleG& b) {
  long M = std::lcm(a.M, b.M);
  CocycleG r;
  r.M = M;
  r.tab = (a.tab * static_cast<int>(M / a.M) + b.tab * static_cast<int>(M / b.M));
  for (int i = 0; i < r.tab.rows(); ++i)
    for (int j = 0; j < r.tab.cols(); ++j) r.tab(i, j) = static_cast<int>(mod_reduce(r.tab(i, j), M));
  return r;
}

CocycleG cocycle_inv(const CocycleG& a) {
  CocycleG r;
  r.M = a.M;
  r.tab = a.tab;
  for (int i = 0; i < r.tab.rows(); ++i)
    for (int j = 0; j < r.tab.cols(); ++j)
      r.tab(i, j) = static_cast<int>(mod_reduce(-a.tab(i, j), a.M));
  return r;
}

CocycleG twist_by_coboundary(const FiniteGroup& G, const CocycleG& beta,
                             const std::vector<long long>& eta) {
  CocycleG r = beta;
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b) {
      long long d = eta[a] + eta[b] - eta[G.mul(a, b)];
      r.tab(a, b) = static_cast<int>(mod_reduce(r.tab(a, b) + d, beta.M));
    }
  return r;
}

bool is_invariant(const FiniteGroup& G, const CocycleG& beta) {
  for (int t = 0; t < G.n; ++t)
    for (int g = 0; g < G.n; ++g)
      for (int h = 0; h < G.n; ++h)
        if ((beta.tab(g, h) - beta.tab(G.conj_inv(t, g), G.conj_inv(t, h))) % beta.M != 0)
          return false;
  return true;
}

bool is_distinguished(const FiniteGroup& G, const ConjData& cd, const CocycleG& beta) {
  for (size_t k = 0; k < cd.classes.size(); ++k) {
    int x = cd.reps[k];
    for (int g : cd.centralizers[k].elems)
      if ((beta.tab(g, x) - beta.tab(x, g)) % beta.M != 0) return false;
  }
  return true;
}

// ---- H2 pipeline ------------------------------------------------------------

namespace {

struct CochainIndex {
  int n;                       // group order
  std::vector<int> nontriv;    // non-identity elements
  std::vector<int> pos;        // element -> position in nontriv, id -> -1
  int dim() const { return static_cast<int>(nontriv.size() * nontriv.size()); }
  int idx(int a, int b) const { return pos[a] * static_cast<int>(nontriv.size()) + pos[b]; }
};

CochainIndex cochain_index(const FiniteGroup& G) {
  CochainIndex ci;
  ci.n = G.n;
  ci.pos.assign(G.n, -1);
  for (int g = 0; g < G.n; ++g)
    if (g != G.id) {
      ci.pos[g] = static_cast<int>(ci.nontriv.size());
      ci.nontriv.push_back(g);
    }
  return ci;
}

// d2 row for the triple (a,b,c) as sparse pairs (cochain index, coefficient)
std::vector<std::pair<int, int>> d2_row(const FiniteGroup& G, const CochainIndex& ci, int a,
                                        int b, int c) {
  std::map<int, int> acc;
  auto add = [&](int x, int y, int coef) {
    if (x == G.id || y == G.id) return;  // normalized cochains vanish there
    acc[ci.idx(x, y)] += coef;
  };
  add(b, c, 1);
  add(G.mul(a, b), c, -1);
  add(a, G.mul(b, c), 1);
  add(a, b, -1);
  std::vector<std::pair<int, int>> out;
  for (auto [k, v] : acc)
    if (v != 0) out.push_back({k, v});
  return out;
}

// characters G -> Z/M through the abelianization, as exponent tables; one per
// invariant-factor generator of G_ab
std::vector<std::vector<long long>> character_exponents(const FiniteGroup& G, long M) {
  auto [abg, proj] = abelianization(G);
  AbelianStructure st = abelian_structure(abg);
  std::vector<std::vector<long long>> out;
  for (size_t i = 0; i < st.factors.size(); ++i) {
    std::vector<long long> c(G.n);
    for (int g = 0; g < G.n; ++g)
      c[g] = st.dlog[proj[g]][i] * (M / st.factors[i]) % M;
    out.push_back(std::move(c));
  }
  return out;
}

VecZ carry_vec(const FiniteGroup& G, const CochainIndex& ci, const std::vector<long long>& c,
               long M) {
  VecZ v = VecZ::Zero(ci.dim());
  for (int a : ci.nontriv)
    for (int b : ci.nontriv) {
      long long lift = c[a] + c[b] - c[G.mul(a, b)];
      if (lift % M != 0) throw ArithmeticError("carry: character lift not congruent");
      v(ci.idx(a, b)) = mod_reduce(lift / M, M);
    }
  return v;
}

}  // namespace

VecZ H2Group::to_vec(const CocycleG& beta) const {
  CochainIndex ci;
  ci.n = n;
  ci.nontriv = nontriv;
  ci.pos.assign(n, -1);
  for (size_t i = 0; i < nontriv.size(); ++i) ci.pos[nontriv[i]] = static_cast<int>(i);
  VecZ v = VecZ::Zero(ci.dim());
  for (int a : nontriv)
    for (int b : nontriv) v(ci.idx(a, b)) = mod_reduce(beta.tab(a, b) * (M / beta.M), M);
  return v;
}

CocycleG H2Group::from_vec(const VecZ& v) const {
  CocycleG beta;
  beta.M = M;
  beta.tab = Eigen::MatrixXi::Zero(n, n);
  int k = static_cast<int>(nontriv.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      beta.tab(nontriv[i], nontriv[j]) = static_cast<int>(mod_reduce(v(i * k + j), M));
  return beta;
}

std::vector<long long> H2Group::dlog(const CocycleG& beta) const {
  return quot.dlog(to_vec(beta));
}

CocycleG H2Group::rep_of(const std::vector<long long>& exps) const {
  VecZ v = VecZ::Zero(quot.n);
  for (size_t i = 0; i < exps.size(); ++i) {
    for (int r = 0; r < quot.n; ++r)
      v(r) = mod_reduce(v(r) + exps[i] * quot.gen_reps(r, static_cast<int>(i)), M);
  }
  return from_vec(v);
}

std::vector<std::vector<long long>> H2Group::all_classes() const {
  std::vector<std::vector<long long>> out;
  std::vector<long long> e(quot.factors.size(), 0);
  while (true) {
    out.push_back(e);
    size_t i = 0;
    while (i < e.size() && ++e[i] == quot.factors[i]) e[i++] = 0;
    if (i == e.size() || e.empty()) break;
  }
  return out;
}

H2Group h2_group(const FiniteGroup& G, int bound) {
  if (G.n > bound) throw BoundExceeded("h2_group: order exceeds bound");
  long M = G.n;
  H2Group out;
  out.M = M;
  out.n = G.n;
  CochainIndex ci = cochain_index(G);
  out.nontriv = ci.nontriv;
  int dim = ci.dim();

  if (G.n == 1) {
    out.quot = abelian_quotient(1, MatZ::Zero(1, 0), MatZ::Zero(1, 0), 1);
    return out;
  }

  // Z^2 = kernel of d2 mod M; crush the (n-1)^3 constraint rows first
  RowSpace rs(dim, M);
  for (int a : ci.nontriv)
    for (int b : ci.nontriv)
      for (int c : ci.nontriv) {
        auto row = d2_row(G, ci, a, b, c);
        if (row.empty()) continue;
        VecZ v = VecZ::Zero(dim);
        for (auto [k, coef] : row) v(k) = mod_reduce(coef, M);
        rs.add_row(std::move(v));
      }
  MatZ R = rs.rows();
  MatZ K = kernel_mod(R, M);

  // B^2 generators: d1 of the delta cochains, plus the carry cocycles
  int nn = static_cast<int>(ci.nontriv.size());
  std::vector<VecZ> bgens;
  for (int t = 0; t < nn; ++t) {
    int a0 = ci.nontriv[t];
    VecZ v = VecZ::Zero(dim);
    for (int a : ci.nontriv)
      for (int b : ci.nontriv) {
        long long d = (a == a0 ? 1 : 0) + (b == a0 ? 1 : 0) -
                      (G.mul(a, b) == a0 ? 1 : 0);
        v(ci.idx(a, b)) = mod_reduce(d, M);
      }
    bgens.push_back(v);
  }
  for (auto& c : character_exponents(G, M)) bgens.push_back(carry_vec(G, ci, c, M));
  MatZ B(dim, static_cast<int>(bgens.size()));
  for (size_t j = 0; j < bgens.size(); ++j) B.col(static_cast<int>(j)) = bgens[j];

  out.quot = abelian_quotient(dim, K, B, M);
  for (int j = 0; j < out.quot.gen_reps.cols(); ++j) {
    CocycleG rep = out.from_vec(out.quot.gen_reps.col(j));
    if (!is_cocycle(G, rep)) throw ArithmeticError("h2_group: representative not a cocycle");
    out.reps.push_back(std::move(rep));
  }
  return out;
}

std::vector<std::vector<long long>> distinguished_invariant_classes(const FiniteGroup& G,
                                                                    const H2Group& h2) {
  ConjData cd = conjugacy_data(G);
  std::vector<std::vector<long long>> out;
  for (const auto& cls : h2.all_classes()) {
    CocycleG beta = h2.rep_of(cls);
    if (!is_distinguished(G, cd, beta)) continue;
    // search eta with beta * d(eta) conjugation invariant:
    // d(eta)(g,h) - d(eta)(g^t,h^t) = beta(g^t,h^t) - beta(g,h)
    int vars = G.n;  // eta on all elements; eta(id) pinned to 0 by an equation
    std::vector<VecZ> rows;
    std::vector<long long> rhs;
    auto deta_coeffs = [&](int g, int h, VecZ& row, long long sign) {
      row(g) += sign;
      row(h) += sign;
      row(G.mul(g, h)) -= sign;
    };
    for (int t = 0; t < G.n; ++t)
      for (int g = 0; g < G.n; ++g)
        for (int h = 0; h < G.n; ++h) {
          int gt = G.conj_inv(t, g), ht = G.conj_inv(t, h);
          VecZ row = VecZ::Zero(vars);
          deta_coeffs(g, h, row, 1);
          deta_coeffs(gt, ht, row, -1);
          long long b = mod_reduce(beta.tab(gt, ht) - beta.tab(g, h), h2.M);
          bool nonzero = b != 0;
          for (int i = 0; i < vars && !nonzero; ++i) nonzero = row(i) != 0;
          if (!nonzero) continue;
          rows.push_back(row);
          rhs.push_back(b);
        }
    bool solvable = true;
    if (!rows.empty()) {
      // crush the |G|^3 equations down to an equivalent small system
      RowSpace rsp(vars + 1, h2.M);
      for (size_t i = 0; i < rows.size(); ++i) {
        VecZ aug(vars + 1);
        aug.head(vars) = rows[i];
        aug(vars) = rhs[i];
        rsp.add_row(std::move(aug));
      }
      MatZ Red = rsp.rows();
      MatZ A = Red.leftCols(vars);
      VecZ b = Red.col(vars);
      VecZ x;
      solvable = solve_mod(A, b, h2.M, x);
      if (solvable) {
        std::vector<long long> eta(G.n);
        for (int i = 0; i < G.n; ++i) eta[i] = x(i) - x(G.id);
        CocycleG tw = twist_by_coboundary(G, beta, eta);
        if (!is_invariant(G, tw))
          throw ArithmeticError("distinguished_invariant: solver witness not invariant");
      }
    }
    if (solvable) out.push_back(cls);
  }
  return out;
}

// ---- abelian dictionary -----------------------------------------------------

BilForm alt_form_from_class(const FiniteGroup& A, const CocycleG& beta) {
  BilForm f;
  f.e = beta.M;
  f.E = Eigen::MatrixXi::Zero(A.n, A.n);
  for (int g = 0; g < A.n; ++g)
    for (int h = 0; h < A.n; ++h)
      f.E(g, h) = static_cast<int>(mod_reduce(beta.tab(h, g) - beta.tab(g, h), beta.M));
  return f;
}

CocycleG cocycle_from_alt_form(const FiniteGroup& A, const AbelianStructure& st,
                               const BilForm& b) {
  long M = b.e;
  // alternating sanity
  for (int g = 0; g < A.n; ++g) {
    if (mod_reduce(b.E(g, g), M) != 0)
      throw ArithmeticError("cocycle_from_alt_form: form not alternating");
    for (int h = 0; h < A.n; ++h)
      if (mod_reduce(b.E(g, h) + b.E(h, g), M) != 0)
        throw ArithmeticError("cocycle_from_alt_form: form not antisymmetric");
  }
  // basis entries must have order dividing gcd of the generator orders
  for (size_t i = 0; i < st.gens.size(); ++i)
    for (size_t j = 0; j < st.gens.size(); ++j) {
      long g = std::gcd(st.factors[i], st.factors[j]);
      if (mod_reduce(static_cast<long long>(b.E(st.gens[i], st.gens[j])) * g, M) != 0)
        throw ArithmeticError("cocycle_from_alt_form: entry order exceeds gcd of factors");
    }
  CocycleG beta;
  beta.M = M;
  beta.tab = Eigen::MatrixXi::Zero(A.n, A.n);
  for (int x = 0; x < A.n; ++x)
    for (int y = 0; y < A.n; ++y) {
      long long acc = 0;
      for (size_t i = 0; i < st.gens.size(); ++i)
        for (size_t j = i + 1; j < st.gens.size(); ++j)
          acc += st.dlog[x][i] * st.dlog[y][j] % M * b.E(st.gens[j], st.gens[i]);
      beta.tab(x, y) = static_cast<int>(mod_reduce(acc, M));
    }
  if (!is_cocycle(A, beta)) throw ArithmeticError("cocycle_from_alt_form: output not a cocycle");
  return beta;
}

bool is_nondegenerate_form(const FiniteGroup& A, const BilForm& b) {
  for (int g = 0; g < A.n; ++g) {
    if (g == A.id) continue;
    bool radical = true;
    for (int h = 0; h < A.n && radical; ++h) radical = mod_reduce(b.E(g, h), b.e) == 0;
    if (radical) return false;
  }
  return true;
}

bool is_nondegenerate(const FiniteGroup& A, const CocycleG& mu) {
  return is_nondegenerate_form(A, alt_form_from_class(A, mu));
}

// ---- invariant classes on N --------------------------------------------------

InvariantClasses g_invariant_classes_on(const FiniteGroup& G, const Subgroup& N) {
  if (!is_normal(G, N) || !is_abelian_subgroup(G, N))
    throw GroupError("g_invariant_classes_on: N must be normal abelian");
  InvariantClasses out;
  auto [ng, nembed] = subgroup_as_group(G, N);
  out.Ngrp = std::move(ng);
  out.nembed = nembed;
  out.h2 = h2_group(out.Ngrp);
  std::vector<int> g_to_n(G.n, -1);
  for (int i = 0; i < out.Ngrp.n; ++i) g_to_n[out.nembed[i]] = i;

  for (const auto& cls : out.h2.all_classes()) {
    CocycleG beta = out.h2.rep_of(cls);
    bool fixed = true;
    for (int t = 0; t < G.n && fixed; ++t) {
      CocycleG tb = beta;
      for (int a = 0; a < out.Ngrp.n; ++a)
        for (int b = 0; b < out.Ngrp.n; ++b) {
          int at = g_to_n[G.conj_inv(t, out.nembed[a])];
          int bt = g_to_n[G.conj_inv(t, out.nembed[b])];
          tb.tab(a, b) = beta.tab(at, bt);
        }
      fixed = out.h2.dlog(tb) == cls;
    }
    if (fixed) {
      out.fixed.push_back(cls);
      out.reps.push_back(beta);
    }
  }
  return out;
}

// ---- exhaustive oracle -------------------------------------------------------

namespace {

using Packed = std::array<unsigned long long, 4>;

Packed pack_table(const std::vector<int>& t, long M) {
  Packed p{0, 0, 0, 0};
  int bits = 1;
  while ((1L << bits) < M) ++bits;
  int pos = 0;
  for (int v : t) {
    if (pos % 64 + bits > 64) pos += 64 - pos % 64;  // keep each value in one word
    p[pos / 64] |= static_cast<unsigned long long>(v) << (pos % 64);
    pos += bits;
  }
  return p;
}

}  // namespace

long long h2_order_oracle(const FiniteGroup& G) {
  long M = G.n;
  if (G.n == 1) return 1;
  CochainIndex ci = cochain_index(G);
  int dim = ci.dim();
  int nn = static_cast<int>(ci.nontriv.size());

  // aggregated constraints with trigger = max involved entry
  struct Cons {
    std::vector<std::pair<int, int>> terms;  // (entry, coeff)
    int trigger;
  };
  std::vector<std::vector<Cons>> by_trigger(dim);
  for (int a : ci.nontriv)
    for (int b : ci.nontriv)
      for (int c : ci.nontriv) {
        auto row = d2_row(G, ci, a, b, c);
        if (row.empty()) continue;
        Cons cons;
        cons.terms = row;
        cons.trigger = 0;
        for (auto [k, coef] : row) cons.trigger = std::max(cons.trigger, k);
        by_trigger[cons.trigger].push_back(std::move(cons));
      }

  long long z2_count = 0;
  double literal_cost = 1;
  for (int i = 0; i < dim && literal_cost <= (1 << 22); ++i) literal_cost *= M;
  if (literal_cost <= (1 << 22)) {
    // literal enumeration of every normalized table
    std::vector<int> t(dim, 0);
    while (true) {
      bool ok = true;
      for (int e = 0; e < dim && ok; ++e)
        for (const auto& c : by_trigger[e]) {
          long long acc = 0;
          for (auto [k, coef] : c.terms) acc += static_cast<long long>(coef) * t[k];
          if (mod_reduce(acc, M) != 0) { ok = false; break; }
        }
      if (ok) ++z2_count;
      int i = 0;
      while (i < dim && ++t[i] == M) t[i++] = 0;
      if (i == dim) break;
    }
  } else {
    // Exhaustive backtracking walk over the table entries. Entries are
    // ordered greedily: as soon as some constraint has exactly one unplaced
    // entry, that entry is placed as forced (solved from the constraint);
    // otherwise a free entry is placed. Constraints completing at a position
    // become consistency checks there, so contradictions surface immediately.
    std::vector<Cons> all;
    for (auto& v : by_trigger)
      for (auto& c : v) all.push_back(c);
    int nc = static_cast<int>(all.size());
    std::vector<int> unplaced(nc);
    std::vector<std::vector<int>> cons_of_entry(dim);
    for (int c = 0; c < nc; ++c) {
      unplaced[c] = static_cast<int>(all[c].terms.size());
      for (auto [k, coef] : all[c].terms) cons_of_entry[k].push_back(c);
    }
    std::vector<int> order;          // position -> entry
    std::vector<char> placed(dim, 0);
    std::vector<char> is_free(dim, 0);          // per position
    std::vector<int> det_of(dim, -1);           // per position: determiner constraint
    std::vector<std::vector<int>> checks(dim);  // per position: checker constraints
    std::vector<char> cons_used(nc, 0);
    auto place = [&](int e, int det) {
      int pos = static_cast<int>(order.size());
      order.push_back(e);
      placed[e] = 1;
      is_free[pos] = det < 0;
      det_of[pos] = det;
      if (det >= 0) cons_used[det] = 1;
      for (int c : cons_of_entry[e]) {
        if (--unplaced[c] == 0 && !cons_used[c]) {
          checks[pos].push_back(c);
          cons_used[c] = 1;
        }
      }
    };
    while (static_cast<int>(order.size()) < dim) {
      int forced_entry = -1, forced_det = -1;
      for (int c = 0; c < nc && forced_entry < 0; ++c) {
        if (unplaced[c] != 1) continue;
        for (auto [k, coef] : all[c].terms)
          if (!placed[k]) { forced_entry = k; forced_det = c; break; }
      }
      if (forced_entry >= 0) {
        place(forced_entry, forced_det);
        continue;
      }
      // stuck: place the free entry that pins down the most constraints
      int best = -1, best_score = -1;
      for (int e2 = 0; e2 < dim; ++e2) {
        if (placed[e2]) continue;
        int score = 0;
        for (int c : cons_of_entry[e2])
          if (unplaced[c] == 2) ++score;
        if (score > best_score) { best_score = score; best = e2; }
      }
      place(best, -1);
    }
    // flatten for the walk
    struct Term { int e; int coef; };
    std::vector<Term> flat;
    std::vector<int> det_begin(dim, -1), det_end(dim, -1);
    std::vector<int> chk_begin(dim), chk_end(dim);
    for (int pos = 0; pos < dim; ++pos) {
      if (det_of[pos] >= 0) {
        det_begin[pos] = static_cast<int>(flat.size());
        for (auto [k, coef] : all[det_of[pos]].terms) flat.push_back({k, coef});
        det_end[pos] = static_cast<int>(flat.size());
      }
      chk_begin[pos] = static_cast<int>(flat.size());
      for (int c : checks[pos]) {
        flat.push_back({-1, static_cast<int>(all[c].terms.size())});  // header
        for (auto [k, coef] : all[c].terms) flat.push_back({k, coef});
      }
      chk_end[pos] = static_cast<int>(flat.size());
    }
    std::vector<int> val(dim, 0), trial(dim, -1);
    int pos = 0;
    bool forward = true;
    while (pos >= 0) {
      if (pos == dim) {
        ++z2_count;
        forward = false;
        --pos;
        continue;
      }
      int e = order[pos];
      if (is_free[pos]) {
        if (forward) trial[pos] = -1;
        if (++trial[pos] >= M) {
          forward = false;
          --pos;
          continue;
        }
        val[e] = trial[pos];
        forward = true;
        ++pos;
        continue;
      }
      if (!forward) {
        --pos;
        continue;
      }
      // forced: solve the determiner for this entry, then run the checks
      long long rest = 0;
      int coef_e = 0;
      for (int i = det_begin[pos]; i < det_end[pos]; ++i) {
        if (flat[i].e == e) coef_e = flat[i].coef;
        else rest += static_cast<long long>(flat[i].coef) * val[flat[i].e];
      }
      val[e] = static_cast<int>(mod_reduce(coef_e == 1 ? -rest : rest, M));
      bool ok = true;
      for (int i = chk_begin[pos]; i < chk_end[pos] && ok;) {
        int nt = flat[i].coef;
        long long acc = 0;
        for (int j = i + 1; j <= i + nt; ++j)
          acc += static_cast<long long>(flat[j].coef) * val[flat[j].e];
        if (mod_reduce(acc, M) != 0) ok = false;
        i += nt + 1;
      }
      if (!ok) {
        forward = false;
        --pos;
        continue;
      }
      ++pos;
    }
  }

  // coboundary set: all d(eta), eta normalized on nontrivial elements
  std::set<Packed> bset;
  {
    std::vector<long long> eta(G.n, 0);
    std::vector<int> digits(nn, 0);
    while (true) {
      for (int i = 0; i < nn; ++i) eta[ci.nontriv[i]] = digits[i];
      std::vector<int> t(dim);
      for (int a : ci.nontriv)
        for (int b : ci.nontriv)
          t[ci.idx(a, b)] =
              static_cast<int>(mod_reduce(eta[a] + eta[b] - eta[G.mul(a, b)], M));
      bset.insert(pack_table(t, M));
      int i = 0;
      while (i < nn && ++digits[i] == M) digits[i++] = 0;
      if (i == nn) break;
    }
  }
  // carry translates: close coset representatives under adding carries
  std::vector<std::vector<int>> carries;
  for (auto& c : character_exponents(G, M)) {
    VecZ v = carry_vec(G, ci, c, M);
    std::vector<int> t(dim);
    for (int i = 0; i < dim; ++i) t[i] = static_cast<int>(v(i));
    carries.push_back(t);
  }
  auto in_span_of_b = [&](const std::vector<int>& t) { return bset.count(pack_table(t, M)) > 0; };
  std::vector<std::vector<int>> coset_reps{std::vector<int>(dim, 0)};
  size_t frontier = 0;
  while (frontier < coset_reps.size()) {
    auto cur = coset_reps[frontier++];
    for (const auto& c : carries) {
      std::vector<int> nxt(dim);
      for (int i = 0; i < dim; ++i) nxt[i] = static_cast<int>(mod_reduce(cur[i] + c[i], M));
      bool known = false;
      for (const auto& rep : coset_reps) {
        std::vector<int> diff(dim);
        for (int i = 0; i < dim; ++i) diff[i] = static_cast<int>(mod_reduce(nxt[i] - rep[i], M));
        if (in_span_of_b(diff)) { known = true; break; }
      }
      if (!known) coset_reps.push_back(nxt);
    }
  }
  long long span = static_cast<long long>(bset.size()) * static_cast<long long>(coset_reps.size());
  if (z2_count % span != 0)
    throw ArithmeticError("oracle: cocycle count not divisible by coboundary span");
  return z2_count / span;
}

}  // namespace qd
