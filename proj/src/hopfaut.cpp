#include "qd/hopfaut.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace qd {

bool HopfAutQuad::operator<(const HopfAutQuad& o) const {
  if (uhat != o.uhat) return uhat < o.uhat;
  if (v != o.v) return v < o.v;
  if (amap != o.amap) return amap < o.amap;
  for (int i = 0; i < bexp.rows(); ++i)
    for (int j = 0; j < bexp.cols(); ++j)
      if (bexp(i, j) != o.bexp(i, j)) return bexp(i, j) < o.bexp(i, j);
  return false;
}

HopfAutCtx hopfaut_ctx(const FiniteGroup& G) {
  HopfAutCtx ctx;
  ctx.G = G;
  ctx.cd = conjugacy_data(ctx.G);
  auto [zg, zembed] = subgroup_as_group(ctx.G, ctx.cd.center);
  ctx.zgroup = std::move(zg);
  ctx.zembed = zembed;
  ctx.g_to_z.assign(G.n, -1);
  for (int i = 0; i < ctx.zgroup.n; ++i) ctx.g_to_z[ctx.zembed[i]] = i;
  ctx.zdual = abelian_dual(ctx.zgroup);
  ctx.e = ctx.G.exponent();
  return ctx;
}

MatC a_coeff_matrix(const HopfAutCtx& ctx, const HopfAutQuad& q) {
  int zn = ctx.zgroup.n;
  MatC aw(zn, zn);
  aw.setConstant(CycScalar(0));
  CycScalar inv_zn = CycScalar(1) / CycScalar(static_cast<long>(zn));
  for (int chi = 0; chi < ctx.zdual.size(); ++chi) {
    int w = q.amap[chi];
    for (int x = 0; x < zn; ++x) aw(x, w) += ctx.zdual.eval(chi, x).conj() * inv_zn;
  }
  return aw;
}

namespace {

struct QuadApplier {
  const HopfAutCtx& ctx;
  const HopfAutQuad& q;
  MatC aw;

  QuadApplier(const HopfAutCtx& c, const HopfAutQuad& qq) : ctx(c), q(qq), aw(a_coeff_matrix(c, qq)) {}

  DGElem basis(int x, int g) const {
    const FiniteGroup& G = ctx.G;
    DGElem out;
    int vg = q.v[g];
    for (int y = 0; y < G.n; ++y) {
      int z = G.mul(G.inv[q.uhat[y]], x);
      int zi = ctx.g_to_z[z];
      if (zi < 0) continue;
      CycScalar bval = CycScalar::zeta(q.e, q.bexp(g, y));
      for (int w = 0; w < ctx.zgroup.n; ++w) {
        const CycScalar& c = aw(zi, w);
        if (c.is_zero()) continue;
        out.add(y, G.mul(ctx.zembed[w], vg), bval * c);
      }
    }
    return out;
  }

  DGElem apply(const DGElem& el) const {
    DGElem out;
    for (const auto& [k, vcoef] : el.t) {
      DGElem img = basis(k.first, k.second);
      out = dg_add(out, dg_scale(img, vcoef));
    }
    return out;
  }
};

}  // namespace

DGElem apply_quad_basis(const HopfAutCtx& ctx, const HopfAutQuad& q, int x, int g) {
  return QuadApplier(ctx, q).basis(x, g);
}

DGElem apply_quad(const HopfAutCtx& ctx, const HopfAutQuad& q, const DGElem& el) {
  return QuadApplier(ctx, q).apply(el);
}

QuadCheck verify_quad(const HopfAutCtx& ctx, const HopfAutQuad& q) {
  const FiniteGroup& G = ctx.G;
  QuadCheck rep;
  auto fail = [&](const std::string& w) {
    rep.ok = false;
    rep.witness = w;
    return rep;
  };
  QuadApplier A(ctx, q);
  std::vector<std::vector<DGElem>> img(G.n, std::vector<DGElem>(G.n));
  for (int x = 0; x < G.n; ++x)
    for (int g = 0; g < G.n; ++g) img[x][g] = A.basis(x, g);

  // unit
  DGElem one;
  for (int x = 0; x < G.n; ++x) one = dg_add(one, img[x][G.id]);
  if (!(one == dg_unit(G))) return fail("phi(1) != 1");

  // algebra map on generator pairs: (e_x x 1) * basis and (1 x g) * basis
  for (int x = 0; x < G.n; ++x)
    for (int y = 0; y < G.n; ++y)
      for (int h = 0; h < G.n; ++h) {
        DGElem lhs = (x == y) ? img[x][h] : DGElem{};
        DGElem rhs = dg_mul(G, img[x][G.id], img[y][h]);
        if (!(lhs == rhs)) return fail("algebra map fails on (e_x x 1) pair");
      }
  std::vector<DGElem> phi_g(G.n);
  for (int g = 0; g < G.n; ++g)
    for (int x = 0; x < G.n; ++x) phi_g[g] = dg_add(phi_g[g], img[x][g]);
  for (int g = 0; g < G.n; ++g)
    for (int y = 0; y < G.n; ++y)
      for (int h = 0; h < G.n; ++h) {
        DGElem lhs = img[G.conj(g, y)][G.mul(g, h)];
        DGElem rhs = dg_mul(G, phi_g[g], img[y][h]);
        if (!(lhs == rhs)) return fail("algebra map fails on (1 x g) pair");
      }

  // coalgebra map on all basis elements
  using Tensor = std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, CycScalar>;
  auto tadd = [](Tensor& t, std::pair<int, int> a, std::pair<int, int> b, const CycScalar& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(a, b);
    auto it = t.find(key);
    if (it == t.end()) t.emplace(key, c);
    else {
      it->second += c;
      if (it->second.is_zero()) t.erase(it);
    }
  };
  for (int x = 0; x < G.n; ++x)
    for (int g = 0; g < G.n; ++g) {
      Tensor lhs, rhs;
      for (const auto& [k, c] : img[x][g].t)
        for (int c1 = 0; c1 < G.n; ++c1)
          tadd(lhs, {c1, k.second}, {G.mul(G.inv[c1], k.first), k.second}, c);
      for (int x1 = 0; x1 < G.n; ++x1) {
        int x2 = G.mul(G.inv[x1], x);
        for (const auto& [ka, va] : img[x1][g].t)
          for (const auto& [kb, vb] : img[x2][g].t) tadd(rhs, ka, kb, va * vb);
      }
      if (!(lhs == rhs)) {
        std::ostringstream os;
        os << "coalgebra map fails at (" << x << "," << g << ")";
        return fail(os.str());
      }
    }

  // bijectivity
  int N = G.n * G.n;
  MatC m(N, N);
  m.setConstant(CycScalar(0));
  for (int x = 0; x < G.n; ++x)
    for (int g = 0; g < G.n; ++g)
      for (const auto& [k, c] : img[x][g].t)
        m(k.first * G.n + k.second, x * G.n + g) = c;
  if (rank_of(m) != N) return fail("not bijective");
  return rep;
}

HopfAutQuad identity_quad(const HopfAutCtx& ctx) {
  HopfAutQuad q;
  q.uhat.resize(ctx.G.n);
  std::iota(q.uhat.begin(), q.uhat.end(), 0);
  q.v = q.uhat;
  q.e = ctx.e;
  q.bexp = Eigen::MatrixXi::Zero(ctx.G.n, ctx.G.n);
  q.amap.assign(ctx.zdual.size(), ctx.zgroup.id);
  return q;
}

HopfAutQuad recognize_quad(const HopfAutCtx& ctx,
                           const std::function<DGElem(int, int)>& image) {
  const FiniteGroup& G = ctx.G;
  int zn = ctx.zgroup.n;
  HopfAutQuad q;
  q.e = ctx.e;
  q.uhat.assign(G.n, -1);
  q.v.assign(G.n, -1);
  q.bexp = Eigen::MatrixXi::Zero(G.n, G.n);

  std::vector<DGElem> col(G.n);  // images of e_x x 1
  for (int x = 0; x < G.n; ++x) col[x] = image(x, G.id);
  // uhat(y): unique x with sum_w coeff(e_y x w) = 1
  for (int y = 0; y < G.n; ++y) {
    int found = -1;
    for (int x = 0; x < G.n; ++x) {
      CycScalar s(0);
      for (const auto& [k, c] : col[x].t)
        if (k.first == y) s += c;
      if (s.is_zero()) continue;
      if (!(s == CycScalar(1)) || found >= 0)
        throw GroupError("recognize_quad: u-component not dual of a homomorphism");
      found = x;
    }
    if (found < 0) throw GroupError("recognize_quad: u-component not total");
    q.uhat[y] = found;
  }
  // aw from images of e_z x 1 at row id
  MatC aw(zn, zn);
  aw.setConstant(CycScalar(0));
  for (int zi = 0; zi < zn; ++zi)
    for (const auto& [k, c] : col[ctx.zembed[zi]].t)
      if (k.first == G.id) {
        int wi = ctx.g_to_z[k.second];
        if (wi < 0) throw GroupError("recognize_quad: a-component not central");
        aw(zi, wi) = c;
      }
  // amap(chi) = sum_z chi(z) a(e_z), must be a single group element
  q.amap.assign(ctx.zdual.size(), -1);
  for (int chi = 0; chi < ctx.zdual.size(); ++chi) {
    int found = -1;
    for (int w = 0; w < zn; ++w) {
      CycScalar s(0);
      for (int z = 0; z < zn; ++z) s += ctx.zdual.eval(chi, z) * aw(z, w);
      if (s.is_zero()) continue;
      if (!(s == CycScalar(1)) || found >= 0)
        throw GroupError("recognize_quad: a-component not a dual homomorphism");
      found = w;
    }
    if (found < 0) throw GroupError("recognize_quad: a-component not total");
    q.amap[chi] = found;
  }
  // v(g), b(g): phi(1 x g) = sum_y b(g)(y) e_y x v(g)
  for (int g = 0; g < G.n; ++g) {
    DGElem acc;
    for (int x = 0; x < G.n; ++x) acc = dg_add(acc, image(x, g));
    int vg = -1;
    std::vector<char> seen(G.n, 0);
    for (const auto& [k, c] : acc.t) {
      if (vg < 0) vg = k.second;
      if (k.second != vg) throw GroupError("recognize_quad: v-component not well-defined");
      seen[k.first] = 1;
      q.bexp(g, k.first) = static_cast<int>(discrete_log(c, q.e));
    }
    for (int y = 0; y < G.n; ++y)
      if (!seen[y]) throw GroupError("recognize_quad: b-component vanishes somewhere");
    q.v[g] = vg;
  }
  return q;
}

HopfAutQuad compose_quads(const HopfAutCtx& ctx, const HopfAutQuad& q1, const HopfAutQuad& q2) {
  QuadApplier A1(ctx, q1), A2(ctx, q2);
  auto composed = [&](int x, int g) { return A1.apply(A2.basis(x, g)); };
  HopfAutQuad q = recognize_quad(ctx, composed);
  // hard postcondition: the quadruple reproduces the composite on every basis
  QuadApplier A(ctx, q);
  for (int x = 0; x < ctx.G.n; ++x)
    for (int g = 0; g < ctx.G.n; ++g)
      if (!(A.basis(x, g) == composed(x, g)))
        throw GroupError("compose_quads: composite escaped quadruple form");
  return q;
}

HopfAutQuad inverse_quad(const HopfAutCtx& ctx, const HopfAutQuad& q) {
  const FiniteGroup& G = ctx.G;
  int N = G.n * G.n;
  QuadApplier A(ctx, q);
  MatC m(N, N);
  m.setConstant(CycScalar(0));
  for (int x = 0; x < G.n; ++x)
    for (int g = 0; g < G.n; ++g)
      for (const auto& [k, c] : A.basis(x, g).t)
        m(k.first * G.n + k.second, x * G.n + g) = c;
  auto inv = solve_exact(m, identity_c(N));
  if (!inv) throw GroupError("inverse_quad: map not invertible");
  auto image = [&](int x, int g) {
    DGElem out;
    for (int r = 0; r < N; ++r) {
      const CycScalar& c = (*inv)(r, x * G.n + g);
      if (!c.is_zero()) out.add(r / G.n, r % G.n, c);
    }
    return out;
  };
  return recognize_quad(ctx, image);
}

HopfAutQuad dagger_quad(const HopfAutCtx& ctx, const HopfAutQuad& q) {
  HopfAutQuad d;
  d.e = q.e;
  d.uhat = q.v;
  d.v = q.uhat;
  d.bexp = q.bexp.transpose();
  d.amap.assign(ctx.zdual.size(), -1);
  for (int chi = 0; chi < ctx.zdual.size(); ++chi) {
    // a*(chi) = z with rho(z) = chi(a(rho)) for all rho
    int found = -1;
    for (int z = 0; z < ctx.zgroup.n; ++z) {
      bool ok = true;
      for (int rho = 0; rho < ctx.zdual.size() && ok; ++rho)
        ok = ctx.zdual.eval(rho, z) == ctx.zdual.eval(chi, q.amap[rho]);
      if (ok) { found = z; break; }
    }
    if (found < 0) throw GroupError("dagger_quad: dual of a not found");
    d.amap[chi] = found;
  }
  return d;
}

// ---- generator families --------------------------------------------------------

HopfAutQuad make_V(const HopfAutCtx& ctx, const GroupHom& v) {
  if (!v.is_bijective() || !verify_hom(v)) throw GroupError("make_V: not an automorphism");
  HopfAutQuad q = identity_quad(ctx);
  q.v = v.img;
  q.uhat = inverse_aut(v).img;
  return q;
}

HopfAutQuad make_Vc(const HopfAutCtx& ctx, const GroupHom& w) {
  if (!w.is_bijective() || !verify_hom(w)) throw GroupError("make_Vc: not an automorphism");
  for (int g = 0; g < ctx.G.n; ++g)
    if (ctx.g_to_z[ctx.G.mul(w.img[g], ctx.G.inv[g])] < 0)
      throw GroupError("make_Vc: automorphism not central");
  HopfAutQuad q = identity_quad(ctx);
  q.uhat = inverse_aut(w).img;
  return q;
}

HopfAutQuad make_B(const HopfAutCtx& ctx, const BilForm& b) {
  HopfAutQuad q = identity_quad(ctx);
  if (ctx.e % b.e != 0) throw GroupError("make_B: form exponent incompatible");
  int scale = static_cast<int>(ctx.e / b.e);
  q.bexp = b.E * scale;
  for (int i = 0; i < q.bexp.rows(); ++i)
    for (int j = 0; j < q.bexp.cols(); ++j)
      q.bexp(i, j) = static_cast<int>(mod_reduce(q.bexp(i, j), ctx.e));
  return q;
}

HopfAutQuad make_E(const HopfAutCtx& ctx, const std::vector<int>& amap) {
  if (static_cast<int>(amap.size()) != ctx.zdual.size())
    throw GroupError("make_E: wrong a-map size");
  for (int c1 = 0; c1 < ctx.zdual.size(); ++c1)
    for (int c2 = 0; c2 < ctx.zdual.size(); ++c2)
      if (amap[ctx.zdual.mul_chars(c1, c2)] != ctx.zgroup.mul(amap[c1], amap[c2]))
        throw GroupError("make_E: a is not a homomorphism");
  HopfAutQuad q = identity_quad(ctx);
  q.amap = amap;
  return q;
}

// ---- reflections ----------------------------------------------------------------

Reflection make_reflection_data(const FiniteGroup& G, const Subgroup& H, const Subgroup& C,
                                const std::vector<int>& delta, const std::vector<int>& nu) {
  Reflection r;
  r.H = H;
  r.C = C;
  auto [cg, cembed] = subgroup_as_group(G, C);
  r.cgroup = std::move(cg);
  r.cembed = cembed;
  r.cdual = abelian_dual(r.cgroup);
  r.delta = delta;
  r.nu = nu;
  // delta must be a group isomorphism C -> dual(C)
  std::vector<char> seen(r.cdual.size(), 0);
  for (int a = 0; a < r.cgroup.n; ++a) {
    if (seen[delta[a]]) throw GroupError("reflection: delta not injective");
    seen[delta[a]] = 1;
    for (int b = 0; b < r.cgroup.n; ++b)
      if (r.cdual.mul_chars(delta[a], delta[b]) != delta[r.cgroup.mul(a, b)])
        throw GroupError("reflection: delta not a homomorphism");
  }
  // nu must be a nilpotent endomorphism (some power is the trivial map)
  GroupHom nuh{&r.cgroup, &r.cgroup, nu};
  if (!verify_hom(nuh)) throw GroupError("reflection: nu not a homomorphism");
  std::vector<int> pw = nu;
  bool nilpotent = false;
  for (int k = 0; k <= r.cgroup.n; ++k) {
    bool trivial = true;
    for (int c = 0; c < r.cgroup.n; ++c) trivial = trivial && pw[c] == r.cgroup.id;
    if (trivial) { nilpotent = true; break; }
    std::vector<int> nx(r.cgroup.n);
    for (int c = 0; c < r.cgroup.n; ++c) nx[c] = nu[pw[c]];
    pw = nx;
  }
  if (!nilpotent) throw GroupError("reflection: nu not nilpotent");
  return r;
}

Reflection standard_reflection(const FiniteGroup& G, const Subgroup& H, const Subgroup& C) {
  auto [cg, cembed] = subgroup_as_group(G, C);
  AbelianDual cd = abelian_dual(cg);
  // delta(c) = character with exponents dlog(c); symmetric by construction
  std::vector<int> delta(cg.n);
  for (int c = 0; c < cg.n; ++c) {
    DualCharacter ch;
    ch.exps = cd.st.dlog[c];
    delta[c] = cd.char_index(ch);
  }
  std::vector<int> nu(cg.n, cg.id);
  return make_reflection_data(G, H, C, delta, nu);
}

namespace {

// H x C decomposition tables
struct FactorTables {
  std::vector<int> hpart, cpart;  // G element -> element of H resp. C (as G elements)
};

FactorTables factor_tables(const FiniteGroup& G, const Subgroup& H, const Subgroup& C) {
  FactorTables t;
  t.hpart.assign(G.n, -1);
  t.cpart.assign(G.n, -1);
  for (int h : H.elems)
    for (int c : C.elems) {
      int g = G.mul(h, c);
      if (t.hpart[g] >= 0) throw GroupError("reflection: H x C not a direct factorization");
      t.hpart[g] = h;
      t.cpart[g] = c;
    }
  for (int g = 0; g < G.n; ++g)
    if (t.hpart[g] < 0) throw GroupError("reflection: H C does not cover G");
  return t;
}

}  // namespace

HopfAutQuad make_reflection(const HopfAutCtx& ctx, const Reflection& r) {
  const FiniteGroup& G = ctx.G;
  FactorTables ft = factor_tables(G, r.H, r.C);
  std::vector<int> g_to_c(G.n, -1);
  for (int i = 0; i < r.cgroup.n; ++i) g_to_c[r.cembed[i]] = i;

  HopfAutQuad q;
  q.e = ctx.e;
  // u = p_H^*: uhat(y) = y_H
  q.uhat.resize(G.n);
  for (int y = 0; y < G.n; ++y) q.uhat[y] = ft.hpart[y];
  // v(g) = g_H * nu(g_C)
  q.v.resize(G.n);
  for (int g = 0; g < G.n; ++g)
    q.v[g] = G.mul(ft.hpart[g], r.cembed[r.nu[g_to_c[ft.cpart[g]]]]);
  // b(g)(y) = delta(g_C)(y_C)
  q.bexp = Eigen::MatrixXi::Zero(G.n, G.n);
  for (int g = 0; g < G.n; ++g) {
    int dc = r.delta[g_to_c[ft.cpart[g]]];
    for (int y = 0; y < G.n; ++y) {
      CycScalar val = r.cdual.eval(dc, g_to_c[ft.cpart[y]]);
      q.bexp(g, y) = static_cast<int>(discrete_log(val, ctx.e));
    }
  }
  // a(chi) = delta^-1(chi|_C), as an element of the center (C is central)
  std::vector<int> delta_inv(r.cdual.size(), -1);
  for (int c = 0; c < r.cgroup.n; ++c) delta_inv[r.delta[c]] = c;
  q.amap.resize(ctx.zdual.size());
  for (int chi = 0; chi < ctx.zdual.size(); ++chi) {
    // restrict chi to C: find the C-dual character with matching values
    int found = -1;
    for (int cc = 0; cc < r.cdual.size() && found < 0; ++cc) {
      bool eq = true;
      for (int c = 0; c < r.cgroup.n && eq; ++c) {
        int zi = ctx.g_to_z[r.cembed[c]];
        if (zi < 0) throw GroupError("make_reflection: C not central");
        eq = ctx.zdual.eval(chi, zi) == r.cdual.eval(cc, c);
      }
      if (eq) found = cc;
    }
    if (found < 0) throw GroupError("make_reflection: restriction not found");
    int celem = r.cembed[delta_inv[found]];
    q.amap[chi] = ctx.g_to_z[celem];
  }
  // the quadruple must reproduce the direct formula
  QuadApplier A(ctx, q);
  for (int x = 0; x < G.n; ++x)
    for (int g = 0; g < G.n; ++g)
      if (!(A.basis(x, g) == reflection_direct_image(ctx, r, x, g)))
        throw GroupError("make_reflection: quadruple does not match the direct formula");
  return q;
}

DGElem reflection_direct_image(const HopfAutCtx& ctx, const Reflection& r, int x, int g) {
  const FiniteGroup& G = ctx.G;
  FactorTables ft = factor_tables(G, r.H, r.C);
  std::vector<int> g_to_c(G.n, -1);
  for (int i = 0; i < r.cgroup.n; ++i) g_to_c[r.cembed[i]] = i;
  int xH = ft.hpart[x], xC = g_to_c[ft.cpart[x]];
  int gH = ft.hpart[g], gC = g_to_c[ft.cpart[g]];
  DGElem out;
  CycScalar invc = CycScalar(1) / CycScalar(static_cast<long>(r.cgroup.n));
  // (1/|C|) sum_{c, chi} delta(gC)(c) chi(xC)^-1 e_{xH c} x gH delta^-1(chi) nu(gC)
  std::vector<int> delta_inv(r.cdual.size(), -1);
  for (int c = 0; c < r.cgroup.n; ++c) delta_inv[r.delta[c]] = c;
  for (int c = 0; c < r.cgroup.n; ++c) {
    CycScalar dval = r.cdual.eval(r.delta[gC], c);
    for (int chi = 0; chi < r.cdual.size(); ++chi) {
      CycScalar coef = dval * r.cdual.eval(chi, xC).conj() * invc;
      int target_e = G.mul(xH, r.cembed[c]);
      int target_g = G.mul(gH, G.mul(r.cembed[delta_inv[chi]], r.cembed[r.nu[gC]]));
      out.add(target_e, target_g, coef);
    }
  }
  return out;
}

std::vector<Reflection> all_reflections(const FiniteGroup& G) {
  std::vector<Reflection> out;
  for (const auto& [H, C] : direct_factorizations(G)) {
    auto [cg, cembed] = subgroup_as_group(G, C);
    AbelianDual cd = abelian_dual(cg);
    // all isomorphisms C -> dual(C): assign generator images, order-preserving
    size_t k = cd.st.factors.size();
    std::vector<std::vector<int>> cands(k);
    for (size_t i = 0; i < k; ++i)
      for (int chi = 0; chi < cd.size(); ++chi) {
        // order of chi must equal the generator order
        long ord = 1;
        for (size_t j = 0; j < k; ++j) {
          long ej = cd.chars[chi].exps[j];
          long fj = cd.st.factors[j];
          ord = std::lcm(ord, fj / std::gcd(fj, ej == 0 ? fj : ej));
        }
        if (ord == cd.st.factors[i]) cands[i].push_back(chi);
      }
    std::vector<size_t> idx(k, 0);
    while (true) {
      // build the hom from generator images and keep it when bijective
      std::vector<int> delta(cg.n, -1);
      for (int c = 0; c < cg.n; ++c) {
        DualCharacter ch;
        ch.exps.assign(k, 0);
        for (size_t i = 0; i < k; ++i) {
          const auto& gi = cd.chars[cands[i][idx[i]]].exps;
          for (size_t j = 0; j < k; ++j)
            ch.exps[j] = (ch.exps[j] + cd.st.dlog[c][i] * gi[j]) % cd.st.factors[j];
        }
        delta[c] = cd.char_index(ch);
      }
      std::vector<char> seen(cd.size(), 0);
      bool bij = true;
      for (int c = 0; c < cg.n && bij; ++c) {
        if (seen[delta[c]]) bij = false;
        seen[delta[c]] = 1;
      }
      if (bij) {
        std::vector<int> nu(cg.n, cg.id);
        out.push_back(make_reflection_data(G, H, C, delta, nu));
      }
      if (k == 0) break;
      size_t i = 0;
      while (i < k && ++idx[i] == cands[i].size()) idx[i++] = 0;
      if (i == k) break;
    }
  }
  return out;
}

// ---- enumeration -----------------------------------------------------------------

std::vector<HopfAutQuad> enumerate_aut_hopf(const HopfAutCtx& ctx, int bound) {
  const FiniteGroup& G = ctx.G;
  if (G.n > bound) throw BoundExceeded("enumerate_aut_hopf: order exceeds bound");
  std::vector<GroupHom> ends = all_homs(G, G);
  HomAltData had = hom_and_alternating(G);
  std::vector<HopfAutQuad> out;
  for (const auto& ue : ends)
    for (const auto& ve : ends)
      for (const auto& b : had.B_homs)
        for (const auto& am : had.E_homs) {
          HopfAutQuad q;
          q.e = ctx.e;
          q.uhat = ue.img;
          q.v = ve.img;
          q.bexp = Eigen::MatrixXi::Zero(G.n, G.n);
          int scale = static_cast<int>(ctx.e / b.e);
          for (int i = 0; i < G.n; ++i)
            for (int j = 0; j < G.n; ++j)
              q.bexp(i, j) = static_cast<int>(mod_reduce(static_cast<long long>(b.E(i, j)) * scale, ctx.e));
          q.amap = am;
          if (verify_quad(ctx, q).ok) out.push_back(std::move(q));
        }
  return out;
}

// ---- elementary abelian coordinates ------------------------------------------------

bool is_elementary_abelian(const FiniteGroup& G) {
  if (!G.is_abelian()) return false;
  long e = G.exponent();
  if (G.n == 1) return true;
  for (long d = 2; d * d <= e; ++d)
    if (e % d == 0) return e == d;  // exponent must be prime
  return true;
}

FpCoords fp_coords(const FiniteGroup& G) {
  if (!is_elementary_abelian(G) || G.n == 1)
    throw GroupError("fp_coords: group not elementary abelian");
  FpCoords fc;
  fc.st = abelian_structure(G);
  fc.p = fc.st.factors[0];
  fc.n = static_cast<int>(fc.st.factors.size());
  return fc;
}

MatZ quad_to_fpmatrix(const HopfAutCtx& ctx, const FpCoords& fc, const HopfAutQuad& q) {
  int n = fc.n;
  long p = fc.p;
  if (ctx.e != p) throw GroupError("quad_to_fpmatrix: exponent is not the prime");
  MatZ M = MatZ::Zero(2 * n, 2 * n);
  // top-left: Uhat^T, Uhat column j = dlog(uhat(gen_j))
  for (int j = 0; j < n; ++j) {
    const auto& d = fc.st.dlog[q.uhat[fc.st.gens[j]]];
    for (int i = 0; i < n; ++i) M(j, i) = d[i] % p;
  }
  // top-right: B with b(g)(h) = zeta_p^{(dlog h)^T B (dlog g)},
  // so B(i,j) = bexp(gen_j, gen_i)
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      M(i, n + j) = mod_reduce(q.bexp(fc.st.gens[j], fc.st.gens[i]), p);
  // bottom-left: A with a(chi_{e_j}) = element of dlog A e_j
  for (int j = 0; j < n; ++j) {
    DualCharacter ch;
    ch.exps.assign(n, 0);
    ch.exps[j] = 1;
    int chi = ctx.zdual.char_index(ch);
    int elem = ctx.zembed[q.amap[chi]];
    const auto& d = fc.st.dlog[elem];
    for (int i = 0; i < n; ++i) M(n + i, j) = d[i] % p;
  }
  // bottom-right: V
  for (int j = 0; j < n; ++j) {
    const auto& d = fc.st.dlog[q.v[fc.st.gens[j]]];
    for (int i = 0; i < n; ++i) M(n + i, n + j) = d[i] % p;
  }
  return M;
}

HopfAutQuad fpmatrix_to_quad(const HopfAutCtx& ctx, const FpCoords& fc, const MatZ& M) {
  const FiniteGroup& G = ctx.G;
  int n = fc.n;
  long p = fc.p;
  auto elem_of = [&](const std::vector<long long>& d) {
    int x = G.id;
    for (int i = 0; i < n; ++i) x = G.mul(x, G.power(fc.st.gens[i], d[i]));
    return x;
  };
  HopfAutQuad q;
  q.e = ctx.e;
  q.uhat.resize(G.n);
  q.v.resize(G.n);
  q.bexp = Eigen::MatrixXi::Zero(G.n, G.n);
  for (int g = 0; g < G.n; ++g) {
    const auto& x = fc.st.dlog[g];
    std::vector<long long> du(n, 0), dv(n, 0), bcoord(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        du[i] = (du[i] + M(j, i) * x[j]) % p;  // Uhat = (top-left)^T
        dv[i] = (dv[i] + M(n + i, n + j) * x[j]) % p;
        bcoord[i] = (bcoord[i] + M(i, n + j) * x[j]) % p;
      }
    q.uhat[g] = elem_of(du);
    q.v[g] = elem_of(dv);
    // b(g) = chi_{bcoord}: b(g)(h) = zeta_p^{bcoord . dlog h}
    for (int h = 0; h < G.n; ++h) {
      long acc = 0;
      for (int i = 0; i < n; ++i) acc = (acc + bcoord[i] * fc.st.dlog[h][i]) % p;
      q.bexp(g, h) = static_cast<int>(acc * (ctx.e / p) % ctx.e);
    }
  }
  q.amap.resize(ctx.zdual.size());
  for (int chi = 0; chi < ctx.zdual.size(); ++chi) {
    const auto& y = ctx.zdual.chars[chi].exps;
    std::vector<long long> d(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i] = (d[i] + M(n + i, j) * y[j]) % p;
    q.amap[chi] = ctx.g_to_z[elem_of(d)];
  }
  return q;
}

// ---- factorization -----------------------------------------------------------------

namespace {

MatZ fp_identity(int n) { return MatZ::Identity(n, n); }

MatZ fp_mul(const MatZ& A, const MatZ& B, long p) {
  MatZ C = MatZ::Zero(A.rows(), B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int k = 0; k < A.cols(); ++k) {
      if (A(i, k) == 0) continue;
      for (int j = 0; j < B.cols(); ++j)
        C(i, j) = mod_reduce(C(i, j) + A(i, k) * B(k, j), p);
    }
  return C;
}

long inv_mod_p(long a, long p) {
  long x = a % p, r = 1;
  for (long e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
  }
  return r;
}

MatZ fp_inverse(MatZ A, long p) {
  int n = static_cast<int>(A.rows());
  MatZ I = fp_identity(n);
  for (int col = 0, row = 0; col < n; ++col) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (mod_reduce(A(i, col), p) != 0) { piv = i; break; }
    if (piv < 0) throw GroupError("fp_inverse: singular");
    A.row(row).swap(A.row(piv));
    I.row(row).swap(I.row(piv));
    long inv = inv_mod_p(mod_reduce(A(row, col), p), p);
    for (int j = 0; j < n; ++j) {
      A(row, j) = mod_reduce(A(row, j) * inv, p);
      I(row, j) = mod_reduce(I(row, j) * inv, p);
    }
    for (int i = 0; i < n; ++i) {
      if (i == row) continue;
      long f = mod_reduce(A(i, col), p);
      if (!f) continue;
      for (int j = 0; j < n; ++j) {
        A(i, j) = mod_reduce(A(i, j) - f * A(row, j), p);
        I(i, j) = mod_reduce(I(i, j) - f * I(row, j), p);
      }
    }
    ++row;
  }
  return I;
}

int fp_rank(MatZ A, long p) {
  int r = 0;
  int rows = static_cast<int>(A.rows()), cols = static_cast<int>(A.cols());
  for (int col = 0; col < cols && r < rows; ++col) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (mod_reduce(A(i, col), p) != 0) { piv = i; break; }
    if (piv < 0) continue;
    A.row(r).swap(A.row(piv));
    long inv = inv_mod_p(mod_reduce(A(r, col), p), p);
    for (int j = 0; j < cols; ++j) A(r, j) = mod_reduce(A(r, j) * inv, p);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      long f = mod_reduce(A(i, col), p);
      if (f)
        for (int j = 0; j < cols; ++j) A(i, j) = mod_reduce(A(i, j) - f * A(r, j), p);
    }
    ++r;
  }
  return r;
}

// U * X * L = diag(I_r, 0): rank normal form with transforms
void fp_rank_normal(const MatZ& X, long p, MatZ& U, MatZ& L, int& rank) {
  int n = static_cast<int>(X.rows());
  MatZ A = X;
  U = fp_identity(n);
  L = fp_identity(n);
  int r = 0;
  for (int col = 0; col < n && r < n; ++col) {
    // find any nonzero entry in the remaining block
    int pi = -1, pj = -1;
    for (int i = r; i < n && pi < 0; ++i)
      for (int j = r; j < n; ++j)
        if (mod_reduce(A(i, j), p) != 0) { pi = i; pj = j; break; }
    if (pi < 0) break;
    A.row(r).swap(A.row(pi));
    U.row(r).swap(U.row(pi));
    A.col(r).swap(A.col(pj));
    L.col(r).swap(L.col(pj));
    long inv = inv_mod_p(mod_reduce(A(r, r), p), p);
    for (int j = 0; j < n; ++j) A(r, j) = mod_reduce(A(r, j) * inv, p);
    for (int j = 0; j < n; ++j) U(r, j) = mod_reduce(U(r, j) * inv, p);
    for (int i = 0; i < n; ++i) {
      if (i == r) continue;
      long f = mod_reduce(A(i, r), p);
      if (f) {
        for (int j = 0; j < n; ++j) {
          A(i, j) = mod_reduce(A(i, j) - f * A(r, j), p);
          U(i, j) = mod_reduce(U(i, j) - f * U(r, j), p);
        }
      }
    }
    for (int j = 0; j < n; ++j) {
      if (j == r) continue;
      long f = mod_reduce(A(r, j), p);
      if (f) {
        for (int i = 0; i < n; ++i) {
          A(i, j) = mod_reduce(A(i, j) - f * A(i, r), p);
          L(i, j) = mod_reduce(L(i, j) - f * L(i, r), p);
        }
      }
    }
    ++r;
  }
  rank = r;
}

MatZ reflection_matrix_fp(int n, int d) {
  MatZ R = MatZ::Zero(2 * n, 2 * n);
  for (int i = 0; i < n - d; ++i) {
    R(i, i) = 1;
    R(n + i, n + i) = 1;
  }
  for (int i = n - d; i < n; ++i) {
    R(i, n + i) = 1;
    R(n + i, i) = 1;
  }
  return R;
}

}  // namespace

HopfFactorization factor_aut_hopf(const HopfAutCtx& ctx, const HopfAutQuad& q) {
  const FiniteGroup& G = ctx.G;
  HopfFactorization out;
  if (is_elementary_abelian(G) && G.n > 1) {
    FpCoords fc = fp_coords(G);
    long p = fc.p;
    int n = fc.n;
    MatZ M = quad_to_fpmatrix(ctx, fc, q);
    // block Bruhat: M = Upper * r_d * Lower with d = n - rank(V block)
    MatZ M11 = M.block(0, 0, n, n), M12 = M.block(0, n, n, n);
    MatZ M21 = M.block(n, 0, n, n), M22 = M.block(n, n, n, n);
    MatZ U2, L2;
    int rank;
    fp_rank_normal(M22, p, U2, L2, rank);
    int d = n - rank;
    // accumulated transforms: Uops * M * Lops
    MatZ Uops = fp_identity(2 * n), Lops = fp_identity(2 * n);
    auto lmul = [&](const MatZ& T) {
      Uops = fp_mul(T, Uops, p);
      M = fp_mul(T, M, p);
    };
    auto rmul = [&](const MatZ& T) {
      Lops = fp_mul(Lops, T, p);
      M = fp_mul(M, T, p);
    };
    {
      MatZ T = fp_identity(2 * n);
      T.block(n, n, n, n) = U2;
      lmul(T);
      MatZ S = fp_identity(2 * n);
      S.block(n, n, n, n) = L2;
      rmul(S);
    }
    // clear the first r columns of M12 using X * Ibar
    {
      MatZ T = fp_identity(2 * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < rank; ++j) T(i, n + j) = mod_reduce(-M(i, n + j), p);
      lmul(T);
    }
    // clear the first r rows of M21 using Ibar * Y
    {
      MatZ S = fp_identity(2 * n);
      for (int i = 0; i < rank; ++i)
        for (int j = 0; j < n; ++j) S(n + i, j) = mod_reduce(-M(n + i, j), p);
      rmul(S);
    }
    // bring the bottom-left d x n block to [0 | I_d] via a right diag(L1, I)
    if (d > 0) {
      MatZ Abot(d, n);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) Abot(i, j) = M(n + rank + i, j);
      if (fp_rank(Abot, p) != d)
        throw TheoremViolation("factor_aut_hopf: residual block rank too small");
      // find L1 with Abot * L1 = [0 | I_d]
      // solve: take pivots; construct via rank normal form on Abot
      MatZ UU, LL;
      int rk;
      // pad Abot to square for the helper
      MatZ sq = MatZ::Zero(n, n);
      sq.block(0, 0, d, n) = Abot;
      fp_rank_normal(sq, p, UU, LL, rk);
      // sq * LL has leading d x d identity after UU-normalization; we need
      // column ops only: Abot * L1 = UU^-1-part... simpler: build L1 directly:
      // columns of L1 = solutions of Abot x = e_i plus a kernel basis
      MatZ L1(n, n);
      {
        // right inverse: Abot (d x n) full rank: solve Abot X = I_d
        // via row reduction of [Abot | I]
        MatZ Aug(d, n + d);
        Aug.block(0, 0, d, n) = Abot;
        for (int i = 0; i < d; ++i) Aug(i, n + i) = 1;
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < n && row < d; ++col) {
          int piv = -1;
          for (int i = row; i < d; ++i)
            if (mod_reduce(Aug(i, col), p) != 0) { piv = i; break; }
          if (piv < 0) continue;
          Aug.row(row).swap(Aug.row(piv));
          long inv = inv_mod_p(mod_reduce(Aug(row, col), p), p);
          for (int j = 0; j < Aug.cols(); ++j) Aug(row, j) = mod_reduce(Aug(row, j) * inv, p);
          for (int i = 0; i < d; ++i) {
            if (i == row) continue;
            long f = mod_reduce(Aug(i, col), p);
            if (f)
              for (int j = 0; j < Aug.cols(); ++j)
                Aug(i, j) = mod_reduce(Aug(i, j) - f * Aug(row, j), p);
          }
          pivots.push_back(col);
          ++row;
        }
        MatZ X = MatZ::Zero(n, d);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) X(pivots[i], j) = Aug(i, n + j);
        // kernel basis of Abot
        std::vector<char> is_piv(n, 0);
        for (int pc : pivots) is_piv[pc] = 1;
        MatZ K = MatZ::Zero(n, n - d);
        int kc = 0;
        for (int j = 0; j < n; ++j) {
          if (is_piv[j]) continue;
          K(j, kc) = 1;
          for (int i = 0; i < d; ++i) K(pivots[i], kc) = mod_reduce(-Aug(i, j), p);
          ++kc;
        }
        // L1 = [kernel | right-inverse]: Abot * L1 = [0 | I_d]
        L1.block(0, 0, n, n - d) = K;
        L1.block(0, n - d, n, d) = X;
      }
      if (fp_rank(L1, p) != n) throw TheoremViolation("factor_aut_hopf: L1 singular");
      MatZ S = fp_identity(2 * n);
      S.block(0, 0, n, n) = L1;
      rmul(S);
      // and the top-right d columns of M12 to [0; I_d] via a left diag(U1, I)
      MatZ Bcols(n, d);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) Bcols(i, j) = M(i, n + rank + j);
      // find U1 with U1 * Bcols = [0; I_d]
      MatZ BT = Bcols.transpose();
      MatZ Aug(d, n + d);
      Aug.block(0, 0, d, n) = BT;
      for (int i = 0; i < d; ++i) Aug(i, n + i) = 1;
      std::vector<int> pivots;
      int row = 0;
      for (int col = 0; col < n && row < d; ++col) {
        int piv = -1;
        for (int i = row; i < d; ++i)
          if (mod_reduce(Aug(i, col), p) != 0) { piv = i; break; }
        if (piv < 0) continue;
        Aug.row(row).swap(Aug.row(piv));
        long inv = inv_mod_p(mod_reduce(Aug(row, col), p), p);
        for (int j = 0; j < Aug.cols(); ++j) Aug(row, j) = mod_reduce(Aug(row, j) * inv, p);
        for (int i = 0; i < d; ++i) {
          if (i == row) continue;
          long f = mod_reduce(Aug(i, col), p);
          if (f)
            for (int j = 0; j < Aug.cols(); ++j)
              Aug(i, j) = mod_reduce(Aug(i, j) - f * Aug(row, j), p);
        }
        pivots.push_back(col);
        ++row;
      }
      if (static_cast<int>(pivots.size()) != d)
        throw TheoremViolation("factor_aut_hopf: B block rank too small");
      MatZ XT = MatZ::Zero(n, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) XT(pivots[i], j) = Aug(i, n + j);
      std::vector<char> is_piv(n, 0);
      for (int pc : pivots) is_piv[pc] = 1;
      MatZ KT = MatZ::Zero(n, n - d);
      int kc = 0;
      for (int j = 0; j < n; ++j) {
        if (is_piv[j]) continue;
        KT(j, kc) = 1;
        for (int i = 0; i < d; ++i) KT(pivots[i], kc) = mod_reduce(-Aug(i, j), p);
        ++kc;
      }
      MatZ U1T(n, n);
      U1T.block(0, 0, n, n - d) = KT;
      U1T.block(0, n - d, n, d) = XT;
      MatZ U1 = U1T.transpose();
      MatZ T = fp_identity(2 * n);
      T.block(0, 0, n, n) = U1;
      lmul(T);
    }
    // now M * r_d must be upper block triangular
    MatZ Rd = reflection_matrix_fp(n, d);
    MatZ T = fp_mul(M, Rd, p);
    for (int i = n; i < 2 * n; ++i)
      for (int j = 0; j < n; ++j)
        if (T(i, j) != 0) throw TheoremViolation("factor_aut_hopf: residual not upper");
    MatZ upper = fp_mul(fp_inverse(Uops, p), T, p);
    MatZ lower = fp_inverse(Lops, p);
    // sanity: upper invertible blocks
    // decompose upper = Vc . V . B and lower = Vc . V . E
    auto hom_from = [&](const MatZ& A) {
      GroupHom h;
      h.src = h.dst = &ctx.G;
      h.img.resize(G.n);
      for (int g = 0; g < G.n; ++g) {
        std::vector<long long> dd(n, 0);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) dd[i] = (dd[i] + A(i, j) * fc.st.dlog[g][j]) % p;
        int x = G.id;
        for (int i = 0; i < n; ++i) x = G.mul(x, G.power(fc.st.gens[i], dd[i]));
        h.img[g] = x;
      }
      return h;
    };
    auto split_triangular = [&](const MatZ& mat, bool upper_side) {
      // mat = [[D1 C],[0 D2]] or [[D1 0],[C D2]]
      MatZ D1 = mat.block(0, 0, n, n), D2 = mat.block(n, n, n, n);
      MatZ C = upper_side ? MatZ(mat.block(0, n, n, n)) : MatZ(mat.block(n, 0, n, n));
      std::vector<HopfAutQuad> word;
      // diag(D1, D2) = Vc(w) . V(v) with v = D2, w^-T = D1 D2^T
      MatZ vmat = D2;
      MatZ wmT = fp_mul(D1, D2.transpose(), p);
      MatZ wmat = fp_inverse(wmT.transpose(), p);
      word.push_back(make_Vc(ctx, hom_from(wmat)));
      word.push_back(make_V(ctx, hom_from(vmat)));
      if (upper_side) {
        MatZ Bp = fp_mul(fp_inverse(D1, p), C, p);
        BilForm f;
        f.e = p;
        f.E = Eigen::MatrixXi::Zero(G.n, G.n);
        for (int g = 0; g < G.n; ++g)
          for (int h = 0; h < G.n; ++h) {
            long acc = 0;
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j)
                acc = (acc + fc.st.dlog[h][i] * Bp(i, j) % p * fc.st.dlog[g][j]) % p;
            f.E(g, h) = static_cast<int>(acc);
          }
        word.push_back(make_B(ctx, f));
      } else {
        MatZ Ap = fp_mul(fp_inverse(D2, p), C, p);
        std::vector<int> amap(ctx.zdual.size());
        for (int chi = 0; chi < ctx.zdual.size(); ++chi) {
          const auto& y = ctx.zdual.chars[chi].exps;
          std::vector<long long> dd(n, 0);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dd[i] = (dd[i] + Ap(i, j) * y[j]) % p;
          int x = G.id;
          for (int i = 0; i < n; ++i) x = G.mul(x, G.power(fc.st.gens[i], dd[i]));
          amap[chi] = ctx.g_to_z[x];
        }
        word.push_back(make_E(ctx, amap));
      }
      return word;
    };
    out.left = split_triangular(upper, true);
    out.right = split_triangular(lower, false);
    // reflection on the last d basis generators
    std::vector<int> hg, cg2;
    for (int i = 0; i < n - d; ++i) hg.push_back(fc.st.gens[i]);
    for (int i = n - d; i < n; ++i) cg2.push_back(fc.st.gens[i]);
    Subgroup H = subgroup_closure(G, hg), C = subgroup_closure(G, cg2);
    out.refl = standard_reflection(G, H, C);
    out.refl_quad = make_reflection(ctx, out.refl);
    // verify: product of factors equals q
    HopfAutQuad acc2 = identity_quad(ctx);
    for (const auto& w : out.left) acc2 = compose_quads(ctx, acc2, w);
    acc2 = compose_quads(ctx, acc2, out.refl_quad);
    for (const auto& w : out.right) acc2 = compose_quads(ctx, acc2, w);
    if (!(acc2 == q)) throw TheoremViolation("factor_aut_hopf: factors do not multiply back");
    return out;
  }

  // generic path: meet in the middle over enumerated subgroup products
  AutData ad = automorphism_data(G);
  HomAltData had = hom_and_alternating(G);
  auto closure_with_words = [&](const std::vector<HopfAutQuad>& gens) {
    std::map<HopfAutQuad, std::vector<HopfAutQuad>> words;
    HopfAutQuad idq = identity_quad(ctx);
    words[idq] = {};
    std::vector<HopfAutQuad> frontier{idq};
    while (!frontier.empty()) {
      std::vector<HopfAutQuad> next;
      for (const auto& cur : frontier)
        for (const auto& g : gens) {
          HopfAutQuad c = compose_quads(ctx, cur, g);
          if (words.count(c)) continue;
          auto w = words[cur];
          w.push_back(g);
          words[c] = w;
          next.push_back(c);
        }
      frontier = std::move(next);
    }
    return words;
  };
  std::vector<HopfAutQuad> left_gens, right_gens;
  for (const auto& a : ad.auts) left_gens.push_back(make_V(ctx, a));
  for (const auto& a : ad.central_auts) left_gens.push_back(make_Vc(ctx, a));
  right_gens = left_gens;
  for (const auto& b : had.B_homs) {
    HopfAutQuad qb = make_B(ctx, b);
    if (verify_quad(ctx, qb).ok) left_gens.push_back(qb);
  }
  for (const auto& am : had.E_homs) {
    HopfAutQuad qe = make_E(ctx, am);
    if (verify_quad(ctx, qe).ok) right_gens.push_back(qe);
  }
  auto left_words = closure_with_words(left_gens);
  auto right_words = closure_with_words(right_gens);
  for (const auto& r : all_reflections(G)) {
    HopfAutQuad rq = make_reflection(ctx, r);
    HopfAutQuad rq_inv = inverse_quad(ctx, rq);
    for (const auto& [l, lword] : left_words) {
      // q = l . rq . rest  =>  rest = rq^-1 . l^-1 . q
      HopfAutQuad rest =
          compose_quads(ctx, rq_inv, compose_quads(ctx, inverse_quad(ctx, l), q));
      auto it = right_words.find(rest);
      if (it != right_words.end()) {
        out.left = lword;
        out.refl = r;
        out.refl_quad = rq;
        out.right = it->second;
        return out;
      }
    }
  }
  throw TheoremViolation("factor_aut_hopf: no factorization found");
}

}  // namespace qd
