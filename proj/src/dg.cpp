#include "qd/dg.hpp"

#include <functional>
#include <sstream>

namespace qd {

void DGElem::add(int x, int y, const CycScalar& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(x, y);
  auto it = t.find(key);
  if (it == t.end()) {
    t.emplace(key, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

bool DGElem::operator==(const DGElem& o) const {
  if (t.size() != o.t.size()) return false;
  for (const auto& [k, v] : t) {
    auto it = o.t.find(k);
    if (it == o.t.end() || !(it->second == v)) return false;
  }
  return true;
}

DGElem dg_basis(int x, int y) {
  DGElem e;
  e.add(x, y, CycScalar(1));
  return e;
}

DGElem dg_unit(const FiniteGroup& G) {
  DGElem e;
  for (int x = 0; x < G.n; ++x) e.add(x, G.id, CycScalar(1));
  return e;
}

namespace {
// (e_x x y)(e_x' x y') = [x = y x' y^-1] e_x x y y'
DGElem basis_product(const FiniteGroup& G, int x, int y, int x2, int y2) {
  DGElem r;
  if (x == G.conj(y, x2)) r.add(x, G.mul(y, y2), CycScalar(1));
  return r;
}
}  // namespace

DGElem dg_mul(const FiniteGroup& G, const DGElem& a, const DGElem& b) {
  DGElem r;
  for (const auto& [ka, va] : a.t)
    for (const auto& [kb, vb] : b.t) {
      if (ka.first != G.conj(ka.second, kb.first)) continue;
      r.add(ka.first, G.mul(ka.second, kb.second), va * vb);
    }
  return r;
}

DGElem dg_scale(const DGElem& a, const CycScalar& c) {
  DGElem r;
  for (const auto& [k, v] : a.t) r.add(k.first, k.second, v * c);
  return r;
}

DGElem dg_add(const DGElem& a, const DGElem& b) {
  DGElem r = a;
  for (const auto& [k, v] : b.t) r.add(k.first, k.second, v);
  return r;
}

std::pair<std::pair<int, int>, CycScalar> dg_antipode_basis(const FiniteGroup& G, int x, int y) {
  int yi = G.inv[y];
  return {{G.conj(yi, G.inv[x]), yi}, CycScalar(1)};
}

HopfReport verify_hopf_axioms_with(
    const FiniteGroup& G,
    const std::function<DGElem(const FiniteGroup&, int, int, int, int)>& product) {
  HopfReport rep;
  auto fail = [&](const std::string& w) {
    rep.ok = false;
    rep.witness = w;
    return rep;
  };
  // associativity on basis triples (products are sparse; compose pairwise)
  for (int x = 0; x < G.n && rep.ok; ++x)
    for (int y = 0; y < G.n && rep.ok; ++y)
      for (int x2 = 0; x2 < G.n && rep.ok; ++x2)
        for (int y2 = 0; y2 < G.n && rep.ok; ++y2) {
          DGElem ab = product(G, x, y, x2, y2);
          for (int x3 = 0; x3 < G.n && rep.ok; ++x3)
            for (int y3 = 0; y3 < G.n && rep.ok; ++y3) {
              DGElem lhs;
              for (auto& [k, v] : ab.t) {
                DGElem p = product(G, k.first, k.second, x3, y3);
                lhs = dg_add(lhs, dg_scale(p, v));
              }
              DGElem bc = product(G, x2, y2, x3, y3);
              DGElem rhs;
              for (auto& [k, v] : bc.t) {
                DGElem p = product(G, x, y, k.first, k.second);
                rhs = dg_add(rhs, dg_scale(p, v));
              }
              if (!(lhs == rhs)) {
                std::ostringstream os;
                os << "associativity fails at (" << x << "," << y << "),(" << x2 << "," << y2
                   << "),(" << x3 << "," << y3 << ")";
                return fail(os.str());
              }
            }
        }
  // unit
  DGElem unit = dg_unit(G);
  for (int x = 0; x < G.n; ++x)
    for (int y = 0; y < G.n; ++y) {
      DGElem l, r;
      for (auto& [k, v] : unit.t) {
        l = dg_add(l, dg_scale(product(G, k.first, k.second, x, y), v));
        r = dg_add(r, dg_scale(product(G, x, y, k.first, k.second), v));
      }
      if (!(l == dg_basis(x, y)) || !(r == dg_basis(x, y))) return fail("unit axiom fails");
    }
  // Delta is an algebra map: Delta(ab) = Delta(a)Delta(b) on basis pairs
  // Delta(e_x x y) = sum_{x1 x2 = x} (e_x1 x y)(x)(e_x2 x y)
  auto coprod = [&](int x, int y) {
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> terms;
    for (int x1 = 0; x1 < G.n; ++x1)
      terms.push_back({{x1, y}, {G.mul(G.inv[x1], x), y}});
    return terms;
  };
  for (int x = 0; x < G.n && rep.ok; ++x)
    for (int y = 0; y < G.n && rep.ok; ++y)
      for (int x2 = 0; x2 < G.n && rep.ok; ++x2)
        for (int y2 = 0; y2 < G.n && rep.ok; ++y2) {
          // lhs: coproducts of each term of the product
          std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, CycScalar> lhs, rhs;
          DGElem ab = product(G, x, y, x2, y2);
          for (auto& [k, v] : ab.t)
            for (auto& tt : coprod(k.first, k.second)) {
              auto& slot = lhs[tt];
              slot += v;
              if (slot.is_zero()) lhs.erase(tt);
            }
          for (auto& t1 : coprod(x, y))
            for (auto& t2 : coprod(x2, y2)) {
              DGElem p1 = product(G, t1.first.first, t1.first.second, t2.first.first,
                                  t2.first.second);
              DGElem p2 = product(G, t1.second.first, t1.second.second, t2.second.first,
                                  t2.second.second);
              for (auto& [ka, va] : p1.t)
                for (auto& [kb, vb] : p2.t) {
                  auto key = std::make_pair(ka, kb);
                  auto& slot = rhs[key];
                  slot += va * vb;
                  if (slot.is_zero()) rhs.erase(key);
                }
            }
          if (!(lhs == rhs)) {
            std::ostringstream os;
            os << "bialgebra compatibility fails at (" << x << "," << y << "),(" << x2 << ","
               << y2 << ")";
            return fail(os.str());
          }
        }
  // counit: (eps (x) id) Delta = id = (id (x) eps) Delta
  for (int x = 0; x < G.n; ++x)
    for (int y = 0; y < G.n; ++y) {
      DGElem left, right;
      for (auto& tt : coprod(x, y)) {
        if (tt.first.first == G.id) left.add(tt.second.first, tt.second.second, CycScalar(1));
        if (tt.second.first == G.id) right.add(tt.first.first, tt.first.second, CycScalar(1));
      }
      if (!(left == dg_basis(x, y)) || !(right == dg_basis(x, y)))
        return fail("counit axiom fails");
    }
  // antipode: m(S (x) id)Delta(e_x x y) = eps(e_x x y) 1
  for (int x = 0; x < G.n && rep.ok; ++x)
    for (int y = 0; y < G.n && rep.ok; ++y) {
      DGElem acc;
      for (auto& tt : coprod(x, y)) {
        auto [sk, sv] = dg_antipode_basis(G, tt.first.first, tt.first.second);
        DGElem p = product(G, sk.first, sk.second, tt.second.first, tt.second.second);
        acc = dg_add(acc, dg_scale(p, sv));
      }
      DGElem want = (x == G.id) ? dg_unit(G) : DGElem{};
      if (!(acc == want)) {
        std::ostringstream os;
        os << "antipode axiom fails at (" << x << "," << y << ")";
        return fail(os.str());
      }
    }
  return rep;
}

HopfReport verify_hopf_axioms(const FiniteGroup& G) {
  return verify_hopf_axioms_with(G, basis_product);
}

// ---- modules -----------------------------------------------------------------

int DGCtx::simple_index(const SimpleLabel& s) const {
  for (int i = 0; i < num_simples(); ++i)
    if (simples[i] == s) return i;
  throw GroupError("DGCtx::simple_index: unknown label");
}

long DGCtx::dim_of(const SimpleLabel& s) const {
  return static_cast<long>(cd.classes[s.cls].size()) * cent[s.cls].degrees[s.chi];
}

int DGCtx::coset_index(int cls, int x) const {
  const auto& reps = cosets[cls];
  const auto& C = cent_embed[cls];
  for (size_t i = 0; i < reps.size(); ++i) {
    // x in reps[i] * Cent?
    int s = reps[i];
    int y = G.mul(G.inv[s], x);
    for (int c : C)
      if (c == y) return static_cast<int>(i);
  }
  throw GroupError("DGCtx::coset_index: element not found");
}

std::vector<MatC> exact_irrep(const CharData& cdat, int chi) {
  const FiniteGroup& C = cdat.G;
  long d = cdat.degrees[chi];
  std::vector<MatC> out(C.n);
  if (d == 1) {
    for (int c = 0; c < C.n; ++c) {
      MatC m(1, 1);
      m(0, 0) = cdat.value(chi, c);
      out[c] = m;
    }
    return out;
  }
  // regular representation and the chi-isotypic projector
  auto reg = [&](int c) {
    MatC m(C.n, C.n);
    m.setConstant(CycScalar(0));
    for (int x = 0; x < C.n; ++x) m(C.mul(c, x), x) = CycScalar(1);
    return m;
  };
  MatC P(C.n, C.n);
  P.setConstant(CycScalar(0));
  CycScalar scale = CycScalar(d) / CycScalar(static_cast<long>(C.n));
  for (int c = 0; c < C.n; ++c) {
    CycScalar coef = cdat.value(chi, C.inv[c]) * scale;
    if (coef.is_zero()) continue;
    for (int x = 0; x < C.n; ++x) P(C.mul(c, x), x) += coef;
  }
  MatC W = column_space(P);
  if (W.cols() != d * d) throw ArithmeticError("exact_irrep: isotypic dimension mismatch");
  // restriction of the regular action to W
  std::vector<MatC> A(C.n);
  for (int c = 0; c < C.n; ++c) {
    auto X = solve_exact(W, reg(c) * W);
    if (!X) throw ArithmeticError("exact_irrep: isotypic space not invariant");
    A[c] = *X;
  }
  // cut one copy: eigenvector of some A_h for an eigenvalue of multiplicity 1
  // in the irreducible generates a single copy
  for (int h = 0; h < C.n; ++h) {
    if (h == C.id) continue;
    long m = C.order_of(h);
    for (long k = 0; k < m; ++k) {
      CycScalar lam = CycScalar::zeta(m, k);
      MatC shift = A[h];
      for (int i = 0; i < shift.rows(); ++i) shift(i, i) -= lam;
      MatC K = kernel_basis(shift);
      for (int vcol = 0; vcol < K.cols(); ++vcol) {
        // cyclic span of v under all A_c
        SpanBuilder span(static_cast<int>(A[h].rows()));
        std::vector<VecC> frontier;
        VecC v = K.col(vcol);
        span.add(v);
        frontier.push_back(v);
        while (!frontier.empty() && span.size() <= d) {
          VecC cur = frontier.back();
          frontier.pop_back();
          for (int c = 0; c < C.n; ++c) {
            VecC nx = A[c] * cur;
            if (span.add(nx)) frontier.push_back(nx);
          }
        }
        if (span.size() != d) continue;
        MatC U = span.echelon.transpose();  // columns span the copy
        std::vector<MatC> rho(C.n);
        bool good = true;
        for (int c = 0; c < C.n && good; ++c) {
          auto X = solve_exact(U, A[c] * U);
          if (!X) { good = false; break; }
          rho[c] = *X;
          CycScalar tr(0);
          for (int i = 0; i < d; ++i) tr += rho[c](i, i);
          good = tr == cdat.value(chi, c);
        }
        if (good) return rho;
      }
    }
  }
  throw ArithmeticError("exact_irrep: no single-copy vector found");
}

DGCtx build_dg_ctx(const FiniteGroup& G) {
  DGCtx ctx;
  ctx.G = G;
  ctx.cd = conjugacy_data(ctx.G);
  ctx.gchars = character_data(ctx.G);
  int r = static_cast<int>(ctx.cd.classes.size());
  for (int k = 0; k < r; ++k) {
    auto [cg, embed] = subgroup_as_group(ctx.G, ctx.cd.centralizers[k]);
    ctx.cent.push_back(character_data(cg));
    ctx.cent_embed.push_back(embed);
    // coset reps: least element of each coset of the centralizer, ordered
    std::vector<int> reps;
    std::vector<char> seen(ctx.G.n, 0);
    for (int x = 0; x < ctx.G.n; ++x) {
      if (seen[x]) continue;
      reps.push_back(x);
      for (int c : ctx.cd.centralizers[k].elems) seen[ctx.G.mul(x, c)] = 1;
    }
    ctx.cosets.push_back(reps);
  }
  for (int k = 0; k < r; ++k)
    for (size_t chi = 0; chi < ctx.cent[k].irr.size(); ++chi)
      ctx.simples.push_back(SimpleLabel{k, static_cast<int>(chi)});
  for (const auto& s : ctx.simples) ctx.modules.push_back(realize_simple(ctx, s));
  // sum of squared dimensions = |G|^2
  long total = 0;
  for (const auto& s : ctx.simples) total += ctx.dim_of(s) * ctx.dim_of(s);
  if (total != static_cast<long>(G.n) * G.n)
    throw ArithmeticError("build_dg_ctx: sum of dim^2 != |G|^2");
  return ctx;
}

DGModule realize_simple(const DGCtx& ctx, const SimpleLabel& s) {
  const FiniteGroup& G = ctx.G;
  const CharData& cdat = ctx.cent[s.cls];
  const auto& embed = ctx.cent_embed[s.cls];
  const auto& reps = ctx.cosets[s.cls];
  int g = ctx.cd.reps[s.cls];
  long d = cdat.degrees[s.chi];
  int nc = static_cast<int>(reps.size());
  std::vector<MatC> irrep = exact_irrep(cdat, s.chi);
  std::vector<int> g_to_c(G.n, -1);
  for (int i = 0; i < cdat.G.n; ++i) g_to_c[embed[i]] = i;

  DGModule M;
  M.dim = static_cast<int>(nc * d);
  M.grade.resize(M.dim);
  for (int i = 0; i < nc; ++i) {
    int gamma = G.conj(reps[i], g);
    for (long k = 0; k < d; ++k) M.grade[i * d + k] = gamma;
  }
  M.act.assign(G.n, MatC());
  for (int t = 0; t < G.n; ++t) {
    MatC m(M.dim, M.dim);
    m.setConstant(CycScalar(0));
    for (int i = 0; i < nc; ++i) {
      int x = G.mul(t, reps[i]);
      int j = ctx.coset_index(s.cls, x);
      int c = g_to_c[G.mul(G.inv[reps[j]], x)];
      if (c < 0) throw GroupError("realize_simple: coset arithmetic failed");
      for (long a = 0; a < d; ++a)
        for (long b = 0; b < d; ++b) m(j * d + a, i * d + b) = irrep[c](a, b);
    }
    M.act[t] = std::move(m);
  }
  return M;
}

DGModule tensor_module(const DGCtx& ctx, const DGModule& A, const DGModule& B) {
  DGModule M;
  M.dim = A.dim * B.dim;
  M.grade.resize(M.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < B.dim; ++j)
      M.grade[i * B.dim + j] = ctx.G.mul(A.grade[i], B.grade[j]);
  M.act.assign(ctx.G.n, MatC());
  for (int t = 0; t < ctx.G.n; ++t) M.act[t] = kron(A.act[t], B.act[t]);
  return M;
}

MatC act_basis(const DGModule& M, int h, int t) {
  MatC m = M.act[t];
  for (int i = 0; i < M.dim; ++i)
    if (M.grade[i] != h)
      for (int j = 0; j < M.dim; ++j) m(i, j) = CycScalar(0);
  return m;
}

MatC act_basis_tensor(const FiniteGroup& G, const DGModule& A, const DGModule& B, int h, int t) {
  MatC m(A.dim * B.dim, A.dim * B.dim);
  m.setConstant(CycScalar(0));
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < B.dim; ++j) {
      if (G.mul(A.grade[i], B.grade[j]) != h) continue;
      for (int i2 = 0; i2 < A.dim; ++i2)
        for (int j2 = 0; j2 < B.dim; ++j2)
          m(i * B.dim + j, i2 * B.dim + j2) = A.act[t](i, i2) * B.act[t](j, j2);
    }
  return m;
}

MatC braiding_matrix(const FiniteGroup& G, const DGModule& A, const DGModule& B) {
  (void)G;
  MatC c(B.dim * A.dim, A.dim * B.dim);
  c.setConstant(CycScalar(0));
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < B.dim; ++j) {
      int gamma = A.grade[i];
      for (int j2 = 0; j2 < B.dim; ++j2) {
        const CycScalar& v = B.act[gamma](j2, j);
        if (!v.is_zero()) c(j2 * A.dim + i, i * B.dim + j) = v;
      }
    }
  return c;
}

bool check_module_axioms(const DGCtx& ctx, const DGModule& M) {
  const FiniteGroup& G = ctx.G;
  // act is a representation of the group part
  for (int t = 0; t < G.n; ++t)
    for (int u = 0; u < G.n; ++u)
      if (!mats_equal(M.act[t] * M.act[u], M.act[G.mul(t, u)])) return false;
  if (!mats_equal(M.act[G.id], identity_c(M.dim))) return false;
  // grading covariance: act[t] maps degree gamma to t gamma t^-1
  for (int t = 0; t < G.n; ++t)
    for (int j = 0; j < M.dim; ++j)
      for (int i = 0; i < M.dim; ++i)
        if (!M.act[t](i, j).is_zero() && M.grade[i] != G.conj(t, M.grade[j])) return false;
  return true;
}

bool check_braiding_naturality(const DGCtx& ctx, const DGModule& A, const DGModule& B) {
  const FiniteGroup& G = ctx.G;
  // quasitriangularity makes c a module map: c . rho_{A(x)B} = rho_{B(x)A} . c
  MatC c = braiding_matrix(G, A, B);
  for (int h = 0; h < G.n; ++h)
    for (int t = 0; t < G.n; ++t) {
      MatC lhs = c * act_basis_tensor(G, A, B, h, t);
      MatC rhs = act_basis_tensor(G, B, A, h, t) * c;
      if (!mats_equal(lhs, rhs)) return false;
    }
  return true;
}

bool check_hexagons(const DGCtx& ctx, const DGModule& A, const DGModule& B, const DGModule& C) {
  const FiniteGroup& G = ctx.G;
  DGModule BC = tensor_module(ctx, B, C);
  DGModule AB = tensor_module(ctx, A, B);
  // c_{A, B(x)C} = (id_B (x) c_{A,C}) (c_{A,B} (x) id_C)
  MatC lhs1 = braiding_matrix(G, A, BC);
  MatC rhs1 = kron(identity_c(B.dim), braiding_matrix(G, A, C)) *
              kron(braiding_matrix(G, A, B), identity_c(C.dim));
  if (!mats_equal(lhs1, rhs1)) return false;
  // c_{A(x)B, C} = (c_{A,C} (x) id_B) (id_A (x) c_{B,C})
  MatC lhs2 = braiding_matrix(G, AB, C);
  MatC rhs2 = kron(braiding_matrix(G, A, C), identity_c(B.dim)) *
              kron(identity_c(A.dim), braiding_matrix(G, B, C));
  return mats_equal(lhs2, rhs2);
}

}  // namespace qd
