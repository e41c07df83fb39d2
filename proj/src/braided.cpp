#include "qd/braided.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace qd {

namespace {

int tab_idx(int n, int g, int x) { return g * n + x; }

// sparse list of the nonzero entries of a sigma table
struct SigmaTerm {
  int g, t, h, d;
  CycScalar val;
};

std::vector<SigmaTerm> sigma_terms(const FiniteGroup& G, const MatC& tab) {
  std::vector<SigmaTerm> out;
  for (int g = 0; g < G.n; ++g)
    for (int t = 0; t < G.n; ++t)
      for (int h = 0; h < G.n; ++h)
        for (int d = 0; d < G.n; ++d) {
          const CycScalar& v = tab(tab_idx(G.n, g, t), tab_idx(G.n, h, d));
          if (!v.is_zero()) out.push_back({g, t, h, d, v});
        }
  return out;
}

}  // namespace

LazyCocycle trivial_sigma(const FiniteGroup& G) {
  LazyCocycle s;
  s.n = G.n;
  s.tab = MatC(G.n * G.n, G.n * G.n);
  s.tab.setConstant(CycScalar(0));
  for (int g = 0; g < G.n; ++g)
    for (int h = 0; h < G.n; ++h)
      s.tab(tab_idx(G.n, g, G.id), tab_idx(G.n, h, G.id)) = CycScalar(1);
  s.inv_tab = s.tab;
  return s;
}

MatC convolve_sigma(const FiniteGroup& G, const MatC& a, const MatC& b) {
  int n = G.n;
  MatC r(n * n, n * n);
  r.setConstant(CycScalar(0));
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < n; ++x)
      for (int h = 0; h < n; ++h)
        for (int y = 0; y < n; ++y) {
          CycScalar acc(0);
          for (int t = 0; t < n; ++t) {
            int xt = G.mul(x, G.inv[t]);
            for (int s = 0; s < n; ++s) {
              int ys = G.mul(y, G.inv[s]);
              const CycScalar& va = a(tab_idx(n, g, xt), tab_idx(n, h, ys));
              if (va.is_zero()) continue;
              const CycScalar& vb =
                  b(tab_idx(n, G.conj_inv(xt, g), t), tab_idx(n, G.conj_inv(ys, h), s));
              if (vb.is_zero()) continue;
              acc += va * vb;
            }
          }
          r(tab_idx(n, g, x), tab_idx(n, h, y)) = acc;
        }
  return r;
}

CocycleReport check_cocycle_conditions(const FiniteGroup& G, const MatC& tab) {
  CocycleReport rep;
  int n = G.n;
  auto fail = [&](const std::string& w) {
    rep.ok = false;
    rep.witness = w;
    return rep;
  };
  // normalization: sigma(1, b) = eps(b) = sigma(b, 1) with 1 = sum_y (1 x e_y)
  for (int h = 0; h < n; ++h)
    for (int z = 0; z < n; ++z) {
      CycScalar l(0), r(0);
      for (int y = 0; y < n; ++y) {
        l += tab(tab_idx(n, G.id, y), tab_idx(n, h, z));
        r += tab(tab_idx(n, h, z), tab_idx(n, G.id, y));
      }
      CycScalar want(z == G.id ? 1 : 0);
      if (!(l == want) || !(r == want)) {
        std::ostringstream os;
        os << "normalization fails at (" << h << "," << z << ")";
        return fail(os.str());
      }
    }
  // laziness: sigma(a1,b1) a2 b2 = a1 b1 sigma(a2,b2) on basis pairs
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < n; ++x)
      for (int h = 0; h < n; ++h)
        for (int y = 0; y < n; ++y)
          for (int t = 0; t < n; ++t) {
            int xt = G.mul(x, G.inv[t]), yt = G.mul(y, G.inv[t]);
            CycScalar lhs = tab(tab_idx(n, g, xt), tab_idx(n, h, yt));
            // lhs sits at basis (g^{xt} h^{yt} x e_t); rhs at (gh x e_t)
            CycScalar rhs = tab(tab_idx(n, G.conj_inv(t, g), G.mul(G.inv[t], x)),
                                tab_idx(n, G.conj_inv(t, h), G.mul(G.inv[t], y)));
            int lhs_base = G.mul(G.conj_inv(xt, g), G.conj_inv(yt, h));
            int rhs_base = G.mul(g, h);
            // compare coefficients of each output basis element
            if (lhs_base == rhs_base) {
              if (!(lhs == rhs)) {
                std::ostringstream os;
                os << "laziness fails at ((" << g << "," << x << "),(" << h << "," << y
                   << ")) slot t=" << t;
                return fail(os.str());
              }
            } else {
              if (!lhs.is_zero() || !rhs.is_zero()) {
                std::ostringstream os;
                os << "laziness fails (support) at ((" << g << "," << x << "),(" << h << ","
                   << y << ")) slot t=" << t;
                return fail(os.str());
              }
            }
          }
  // 2-cocycle identity on basis triples
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < n; ++x)
      for (int h = 0; h < n; ++h)
        for (int y = 0; y < n; ++y)
          for (int l = 0; l < n; ++l)
            for (int z = 0; z < n; ++z) {
              CycScalar lhs(0), rhs(0);
              for (int t = 0; t < n; ++t) {
                int xt = G.mul(x, G.inv[t]), yt = G.mul(y, G.inv[t]);
                const CycScalar& v1 = tab(tab_idx(n, g, xt), tab_idx(n, h, yt));
                if (!v1.is_zero()) {
                  int base = G.mul(G.conj_inv(xt, g), G.conj_inv(yt, h));
                  lhs += v1 * tab(tab_idx(n, base, t), tab_idx(n, l, z));
                }
                int ys = G.mul(y, G.inv[t]), zs = G.mul(z, G.inv[t]);
                const CycScalar& v2 = tab(tab_idx(n, h, ys), tab_idx(n, l, zs));
                if (!v2.is_zero()) {
                  int base = G.mul(G.conj_inv(ys, h), G.conj_inv(zs, l));
                  rhs += v2 * tab(tab_idx(n, g, x), tab_idx(n, base, t));
                }
              }
              if (!(lhs == rhs)) {
                std::ostringstream os;
                os << "cocycle identity fails at ((" << g << "," << x << "),(" << h << "," << y
                   << "),(" << l << "," << z << "))";
                return fail(os.str());
              }
            }
  return rep;
}

MatC sigma_inverse(const FiniteGroup& G, const MatC& tab) {
  int n = G.n;
  if (G.is_abelian()) {
    // Fourier over both k^G legs: sigma-hat((a,chi),(b,rho)) is a group
    // cocycle on A x A-hat; convolution is pointwise there
    AbelianDual dual = abelian_dual(G);
    MatC hat(n * n, n * n), inv_hat(n * n, n * n);
    hat.setConstant(CycScalar(0));
    for (int a = 0; a < n; ++a)
      for (int chi = 0; chi < n; ++chi)
        for (int b = 0; b < n; ++b)
          for (int rho = 0; rho < n; ++rho) {
            CycScalar acc(0);
            for (int x = 0; x < n; ++x) {
              CycScalar cx = dual.eval(chi, x);
              for (int y = 0; y < n; ++y) {
                const CycScalar& v = tab(tab_idx(n, a, x), tab_idx(n, b, y));
                if (!v.is_zero()) acc += cx * dual.eval(rho, y) * v;
              }
            }
            hat(tab_idx(n, a, chi), tab_idx(n, b, rho)) = acc;
          }
    inv_hat = hat;
    for (int i = 0; i < n * n; ++i)
      for (int j = 0; j < n * n; ++j) inv_hat(i, j) = hat(i, j).inv();
    // inverse Fourier
    MatC out(n * n, n * n);
    out.setConstant(CycScalar(0));
    CycScalar scale = CycScalar(Rational(1, static_cast<long>(n) * n));
    for (int a = 0; a < n; ++a)
      for (int x = 0; x < n; ++x)
        for (int b = 0; b < n; ++b)
          for (int y = 0; y < n; ++y) {
            CycScalar acc(0);
            for (int chi = 0; chi < n; ++chi) {
              CycScalar cx = dual.eval(chi, x).conj();
              for (int rho = 0; rho < n; ++rho)
                acc += cx * dual.eval(rho, y).conj() * inv_hat(tab_idx(n, a, chi), tab_idx(n, b, rho));
            }
            out(tab_idx(n, a, x), tab_idx(n, b, y)) = acc * scale;
          }
    return out;
  }
  // block solve per pair of conjugacy classes
  ConjData cd = conjugacy_data(G);
  MatC out(n * n, n * n);
  out.setConstant(CycScalar(0));
  int nc = static_cast<int>(cd.classes.size());
  for (int ci = 0; ci < nc; ++ci)
    for (int cj = 0; cj < nc; ++cj) {
      const auto& Ci = cd.classes[ci];
      const auto& Cj = cd.classes[cj];
      // unknowns tau(g' x e_t, h' x e_s), g' in Ci, h' in Cj
      int u = static_cast<int>(Ci.size() * Cj.size()) * n * n;
      auto uidx = [&](int gi, int t, int hj, int s) {
        return ((gi * static_cast<int>(Cj.size()) + hj) * n + t) * n + s;
      };
      MatC A(u, u);
      A.setConstant(CycScalar(0));
      VecC rhs(u);
      for (int i = 0; i < u; ++i) rhs(i) = CycScalar(0);
      // equations: sum_{t,s} sigma(g x e_{x t^-1}, h x e_{y s^-1})
      //            tau(g^{x t^-1} x e_t, h^{y s^-1} x e_s) = eps eps
      for (size_t gi = 0; gi < Ci.size(); ++gi)
        for (int x = 0; x < n; ++x)
          for (size_t hj = 0; hj < Cj.size(); ++hj)
            for (int y = 0; y < n; ++y) {
              int row = uidx(static_cast<int>(gi), x, static_cast<int>(hj), y);
              int g = Ci[gi], h = Cj[hj];
              for (int t = 0; t < n; ++t) {
                int xt = G.mul(x, G.inv[t]);
                int gp = G.conj_inv(xt, g);
                int gpi = -1;
                for (size_t k = 0; k < Ci.size(); ++k)
                  if (Ci[k] == gp) gpi = static_cast<int>(k);
                for (int s = 0; s < n; ++s) {
                  int ys = G.mul(y, G.inv[s]);
                  const CycScalar& v = tab(tab_idx(n, g, xt), tab_idx(n, h, ys));
                  if (v.is_zero()) continue;
                  int hp = G.conj_inv(ys, h);
                  int hpj = -1;
                  for (size_t k = 0; k < Cj.size(); ++k)
                    if (Cj[k] == hp) hpj = static_cast<int>(k);
                  A(row, uidx(gpi, t, hpj, s)) += v;
                }
              }
              if (x == G.id && y == G.id) rhs(row) = CycScalar(1);
            }
      auto X = solve_exact(A, rhs);
      if (!X) throw ArithmeticError("sigma_inverse: cocycle not convolution invertible");
      for (size_t gi = 0; gi < Ci.size(); ++gi)
        for (int t = 0; t < n; ++t)
          for (size_t hj = 0; hj < Cj.size(); ++hj)
            for (int s = 0; s < n; ++s)
              out(tab_idx(n, Ci[gi], t), tab_idx(n, Cj[hj], s)) =
                  (*X)(uidx(static_cast<int>(gi), t, static_cast<int>(hj), s), 0);
    }
  return out;
}

LazyCocycle validate_cocycle(const FiniteGroup& G, const MatC& tab) {
  CocycleReport rep = check_cocycle_conditions(G, tab);
  if (!rep.ok) throw ArithmeticError("validate_cocycle: " + rep.witness);
  LazyCocycle s;
  s.n = G.n;
  s.tab = tab;
  s.inv_tab = sigma_inverse(G, tab);
  // conv(sigma, sigma^-1) = eps x eps
  MatC conv = convolve_sigma(G, s.tab, s.inv_tab);
  if (!mats_equal(conv, trivial_sigma(G).tab))
    throw ArithmeticError("validate_cocycle: inverse verification failed");
  return s;
}

// ---- embeddings -----------------------------------------------------------------

LazyCocycle embed_beta(const FiniteGroup& G, const CocycleG& beta) {
  if (!is_cocycle(G, beta)) throw ArithmeticError("embed_beta: not a cocycle");
  if (!is_invariant(G, beta)) throw ArithmeticError("embed_beta: cocycle not invariant");
  int n = G.n;
  LazyCocycle s;
  s.n = n;
  s.tab = MatC(n * n, n * n);
  s.tab.setConstant(CycScalar(0));
  s.inv_tab = s.tab;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      s.tab(tab_idx(n, g, G.id), tab_idx(n, h, G.id)) = beta.val(g, h);
      s.inv_tab(tab_idx(n, g, G.id), tab_idx(n, h, G.id)) = beta.val(g, h).inv();
    }
  CocycleReport rep = check_cocycle_conditions(G, s.tab);
  if (!rep.ok) throw ArithmeticError("embed_beta: " + rep.witness);
  return s;
}

LazyCocycle embed_alpha(const FiniteGroup& G, const HopfAutCtx& ctx,
                        const CocycleG& alpha_on_zhat) {
  int n = G.n;
  int zn = ctx.zgroup.n;
  LazyCocycle s;
  s.n = n;
  s.tab = MatC(n * n, n * n);
  s.tab.setConstant(CycScalar(0));
  s.inv_tab = s.tab;
  CycScalar scale = CycScalar(Rational(1, static_cast<long>(zn) * zn));
  CocycleG alpha_inv = cocycle_inv(alpha_on_zhat);
  for (int xi = 0; xi < zn; ++xi)
    for (int yi = 0; yi < zn; ++yi) {
      CycScalar acc(0), acc_inv(0);
      for (int chi = 0; chi < zn; ++chi)
        for (int rho = 0; rho < zn; ++rho) {
          CycScalar coef = ctx.zdual.eval(chi, xi).conj() * ctx.zdual.eval(rho, yi).conj();
          acc += coef * alpha_on_zhat.val(chi, rho);
          acc_inv += coef * alpha_inv.val(chi, rho);
        }
      int x = ctx.zembed[xi], y = ctx.zembed[yi];
      for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
          s.tab(tab_idx(n, g, x), tab_idx(n, h, y)) = acc * scale;
          s.inv_tab(tab_idx(n, g, x), tab_idx(n, h, y)) = acc_inv * scale;
        }
    }
  CocycleReport rep = check_cocycle_conditions(G, s.tab);
  if (!rep.ok) throw ArithmeticError("embed_alpha: " + rep.witness);
  MatC conv = convolve_sigma(G, s.tab, s.inv_tab);
  if (!mats_equal(conv, trivial_sigma(G).tab))
    throw ArithmeticError("embed_alpha: inverse verification failed");
  return s;
}

LazyCocycle embed_lambda(const FiniteGroup& G, const std::vector<int>& ell) {
  // ell must be a homomorphism into the center
  ConjData cd = conjugacy_data(G);
  for (int g = 0; g < G.n; ++g) {
    if (!cd.center.contains(ell[g])) throw ArithmeticError("embed_lambda: image not central");
    for (int h = 0; h < G.n; ++h)
      if (ell[G.mul(g, h)] != G.mul(ell[g], ell[h]))
        throw ArithmeticError("embed_lambda: not a homomorphism");
  }
  int n = G.n;
  LazyCocycle s;
  s.n = n;
  s.tab = MatC(n * n, n * n);
  s.tab.setConstant(CycScalar(0));
  s.inv_tab = s.tab;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      s.tab(tab_idx(n, g, G.id), tab_idx(n, h, ell[g])) = CycScalar(1);
      s.inv_tab(tab_idx(n, g, G.id), tab_idx(n, h, G.inv[ell[g]])) = CycScalar(1);
    }
  CocycleReport rep = check_cocycle_conditions(G, s.tab);
  if (!rep.ok) throw ArithmeticError("embed_lambda: " + rep.witness);
  MatC conv = convolve_sigma(G, s.tab, s.inv_tab);
  if (!mats_equal(conv, trivial_sigma(G).tab))
    throw ArithmeticError("embed_lambda: inverse verification failed");
  return s;
}

SigmaParts extract_parts(const FiniteGroup& G, const LazyCocycle& sigma, long m) {
  int n = G.n;
  SigmaParts out;
  out.beta.M = m;
  out.beta.tab = Eigen::MatrixXi::Zero(n, n);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      CycScalar acc(0);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) acc += sigma.val(g, x, h, y);
      out.beta.tab(g, h) = static_cast<int>(discrete_log(acc, m));
    }
  // alpha on the linear characters of G
  CharData chars = character_data(G);
  std::vector<int> lin;
  for (size_t i = 0; i < chars.irr.size(); ++i)
    if (chars.degrees[i] == 1) lin.push_back(static_cast<int>(i));
  int L = static_cast<int>(lin.size());
  out.alpha = MatC(L, L);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) {
      CycScalar acc(0);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          const CycScalar& v = sigma.val(G.id, x, G.id, y);
          if (!v.is_zero()) acc += chars.value(lin[a], x) * chars.value(lin[b], y) * v;
        }
      out.alpha(a, b) = acc;
    }
  // lambda(g, e_x) = sum_{y, x1 x2 = x, z} sigma^-1(g x e_y, 1 x e_{x1})
  //                  sigma(1 x e_{x2}, g^y x e_z)
  out.lambda = MatC(n, n);
  out.lambda.setConstant(CycScalar(0));
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < n; ++x) {
      CycScalar acc(0);
      for (int y = 0; y < n; ++y)
        for (int x1 = 0; x1 < n; ++x1) {
          const CycScalar& vinv = sigma.inv_tab(tab_idx(n, g, y), tab_idx(n, G.id, x1));
          if (vinv.is_zero()) continue;
          int x2 = G.mul(G.inv[x1], x);
          int gy = G.conj_inv(y, g);
          for (int z = 0; z < n; ++z) {
            const CycScalar& v = sigma.val(G.id, x2, gy, z);
            if (!v.is_zero()) acc += vinv * v;
          }
        }
      out.lambda(g, x) = acc;
    }
  return out;
}

// ---- context and checks -----------------------------------------------------------

BraidedCtx braided_ctx(const FiniteGroup& G) {
  BraidedCtx ctx;
  ctx.G = G;
  ctx.dg = build_dg_ctx(ctx.G);
  ctx.hc = hopfaut_ctx(ctx.G);
  ctx.m = std::lcm(static_cast<long>(G.n), G.exponent());
  return ctx;
}

NecessaryReport necessary_conditions(const BraidedCtx& ctx, const HopfAutQuad& phi,
                                     const LazyCocycle& sigma) {
  const FiniteGroup& G = ctx.G;
  NecessaryReport rep;
  SigmaParts parts = extract_parts(G, sigma, ctx.m);
  // (h1) beta(g, g^-1 h g) = beta(h, g) b(h)(v(g))
  for (int g = 0; g < G.n && rep.h1; ++g)
    for (int h = 0; h < G.n && rep.h1; ++h) {
      CycScalar lhs = parts.beta.val(g, G.conj_inv(g, h));
      CycScalar rhs = parts.beta.val(h, g) * CycScalar::zeta(phi.e, phi.bexp(h, phi.v[g]));
      if (!(lhs == rhs)) {
        rep.h1 = false;
        rep.witness = "h1 fails at (" + std::to_string(g) + "," + std::to_string(h) + ")";
      }
    }
  // (h2) alpha(rho, chi) = alpha(chi, rho) u(chi)(a(rho)) over linear characters
  CharData chars = character_data(G);
  std::vector<int> lin;
  for (size_t i = 0; i < chars.irr.size(); ++i)
    if (chars.degrees[i] == 1) lin.push_back(static_cast<int>(i));
  auto a_of_char = [&](int chi_lin) {
    // restrict the linear character to the center, find its zdual index
    int found = -1;
    for (int c = 0; c < ctx.hc.zdual.size() && found < 0; ++c) {
      bool eq = true;
      for (int z = 0; z < ctx.hc.zgroup.n && eq; ++z)
        eq = ctx.hc.zdual.eval(c, z) == chars.value(chi_lin, ctx.hc.zembed[z]);
      if (eq) found = c;
    }
    if (found < 0) throw ArithmeticError("necessary_conditions: central restriction missing");
    return ctx.hc.zembed[phi.amap[found]];
  };
  for (int a = 0; a < static_cast<int>(lin.size()) && rep.h2; ++a)
    for (int b = 0; b < static_cast<int>(lin.size()) && rep.h2; ++b) {
      CycScalar lhs = parts.alpha(a, b);
      // u(chi)(x) = chi(uhat(x))
      CycScalar rhs = parts.alpha(b, a) * chars.value(lin[b], phi.uhat[a_of_char(lin[a])]);
      if (!(lhs == rhs)) {
        rep.h2 = false;
        rep.witness = "h2 fails at linear characters (" + std::to_string(a) + "," +
                      std::to_string(b) + ")";
      }
    }
  // (h3) lambda(h, chi) = b(h)(a(chi))
  for (int h = 0; h < G.n && rep.h3; ++h)
    for (size_t c = 0; c < lin.size() && rep.h3; ++c) {
      CycScalar lhs(0);
      for (int x = 0; x < G.n; ++x) lhs += chars.value(lin[c], x) * parts.lambda(h, x);
      CycScalar rhs = CycScalar::zeta(phi.e, phi.bexp(h, a_of_char(lin[c])));
      if (!(lhs == rhs)) {
        rep.h3 = false;
        rep.witness = "h3 fails at (" + std::to_string(h) + ", chi_" + std::to_string(c) + ")";
      }
    }
  // (h4) rho(g) = u(rho)(v(g)) b(g)(a(rho))
  for (size_t c = 0; c < lin.size() && rep.h4; ++c)
    for (int g = 0; g < G.n && rep.h4; ++g) {
      CycScalar lhs = chars.value(lin[c], g);
      CycScalar rhs = chars.value(lin[c], phi.uhat[phi.v[g]]) *
                      CycScalar::zeta(phi.e, phi.bexp(g, a_of_char(lin[c])));
      if (!(lhs == rhs)) {
        rep.h4 = false;
        rep.witness = "h4 fails at (chi_" + std::to_string(c) + "," + std::to_string(g) + ")";
      }
    }
  return rep;
}

MasterReport master_check(const BraidedCtx& ctx, const HopfAutQuad& phi,
                          const LazyCocycle& sigma) {
  const FiniteGroup& G = ctx.G;
  int n = G.n;
  MasterReport rep;
  MatC aw = a_coeff_matrix(ctx.hc, phi);
  int zn = ctx.hc.zgroup.n;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int d = 0; d < n; ++d)
        for (int t = 0; t < n; ++t) {
          // lhs: sigma(g x e_t, h^g x e_{g^-1 d})
          CycScalar lhs = sigma.val(g, t, G.conj_inv(g, h), G.mul(G.inv[g], d));
          // rhs: sum over w, x in Z with d = d' uhat(w) uhat(v(g^t))
          CycScalar rhs(0);
          int uvgt = phi.uhat[phi.v[G.conj_inv(t, g)]];
          for (int wi = 0; wi < zn; ++wi) {
            int w = ctx.hc.zembed[wi];
            int dp = G.mul(d, G.inv[G.mul(phi.uhat[w], uvgt)]);
            CycScalar bval = CycScalar::zeta(phi.e, phi.bexp(h, G.mul(phi.v[g], w)));
            CycScalar inner(0);
            for (int xi = 0; xi < zn; ++xi) {
              const CycScalar& ax = aw(xi, wi);
              if (ax.is_zero()) continue;
              inner += ax * sigma.val(h, dp, g, G.mul(t, G.inv[ctx.hc.zembed[xi]]));
            }
            rhs += inner * bval;
          }
          if (!(lhs == rhs)) {
            std::ostringstream os;
            os << "master equation fails at (g,h,d,t)=(" << g << "," << h << "," << d << ","
               << t << ")";
            rep.ok = false;
            rep.witness = os.str();
            return rep;
          }
        }
  return rep;
}

MatC j_matrix(const BraidedCtx& ctx, const LazyCocycle& sigma, const DGModule& A,
              const DGModule& B) {
  const FiniteGroup& G = ctx.G;
  MatC J(A.dim * B.dim, A.dim * B.dim);
  J.setConstant(CycScalar(0));
  for (const auto& term : sigma_terms(G, sigma.tab)) {
    MatC ma = act_basis(A, term.g, term.t);
    MatC mb = act_basis(B, term.h, term.d);
    for (int i = 0; i < A.dim; ++i)
      for (int i2 = 0; i2 < A.dim; ++i2) {
        if (ma(i, i2).is_zero()) continue;
        CycScalar c = term.val * ma(i, i2);
        for (int j = 0; j < B.dim; ++j)
          for (int j2 = 0; j2 < B.dim; ++j2) {
            if (mb(j, j2).is_zero()) continue;
            J(i * B.dim + j, i2 * B.dim + j2) += c * mb(j, j2);
          }
      }
  }
  return J;
}

bool hexagon_check(const BraidedCtx& ctx, const HopfAutQuad& phi, const LazyCocycle& sigma) {
  const FiniteGroup& G = ctx.G;
  HopfAutQuad phid = dagger_quad(ctx.hc, phi);
  // precompute dagger images of (e_k x 1) and (1 x k)
  std::vector<DGElem> dag_ek(G.n), dag_k(G.n);
  for (int k = 0; k < G.n; ++k) {
    dag_ek[k] = apply_quad_basis(ctx.hc, phid, k, G.id);
    DGElem acc;
    for (int x = 0; x < G.n; ++x) acc = dg_add(acc, apply_quad_basis(ctx.hc, phid, x, k));
    dag_k[k] = acc;
  }
  auto terms = sigma_terms(G, sigma.tab);
  auto mod_mat = [&](const DGModule& M, const DGElem& el) {
    MatC m(M.dim, M.dim);
    m.setConstant(CycScalar(0));
    for (const auto& [key, c] : el.t) m += act_basis(M, key.first, key.second) * c;
    return m;
  };
  for (int ia = 0; ia < ctx.dg.num_simples(); ++ia)
    for (int ib = 0; ib < ctx.dg.num_simples(); ++ib) {
      const DGModule& A = ctx.dg.modules[ia];
      const DGModule& B = ctx.dg.modules[ib];
      MatC lhs = braiding_matrix(G, A, B) * j_matrix(ctx, sigma, A, B);
      // rhs: W . tau with W = sum_k sum_terms val mat_B((e_g x t) phid(1 x k))
      //                               (x) mat_A((e_h x d) phid(e_k x 1))
      MatC W(B.dim * A.dim, B.dim * A.dim);
      W.setConstant(CycScalar(0));
      for (int k = 0; k < G.n; ++k) {
        for (const auto& term : terms) {
          DGElem left = dg_mul(G, dg_basis(term.g, term.t), dag_k[k]);
          if (left.t.empty()) continue;
          DGElem right = dg_mul(G, dg_basis(term.h, term.d), dag_ek[k]);
          if (right.t.empty()) continue;
          MatC mb = mod_mat(B, left);
          MatC ma = mod_mat(A, right);
          for (int j = 0; j < B.dim; ++j)
            for (int j2 = 0; j2 < B.dim; ++j2) {
              if (mb(j, j2).is_zero()) continue;
              CycScalar c = term.val * mb(j, j2);
              for (int i = 0; i < A.dim; ++i)
                for (int i2 = 0; i2 < A.dim; ++i2) {
                  if (ma(i, i2).is_zero()) continue;
                  W(j * A.dim + i, j2 * A.dim + i2) += c * ma(i, i2);
                }
            }
        }
      }
      MatC tau(B.dim * A.dim, A.dim * B.dim);
      tau.setConstant(CycScalar(0));
      for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < B.dim; ++j) tau(j * A.dim + i, i * B.dim + j) = CycScalar(1);
      MatC rhs = W * tau;
      if (!mats_equal(lhs, rhs)) return false;
    }
  return true;
}

std::vector<int> functor_on_simples(const BraidedCtx& ctx, const HopfAutQuad& phi) {
  const FiniteGroup& G = ctx.G;
  const DGCtx& dg = ctx.dg;
  std::vector<int> out(dg.num_simples(), -1);
  for (int si = 0; si < dg.num_simples(); ++si) {
    const SimpleLabel& s = dg.simples[si];
    int g = dg.cd.reps[s.cls];
    const CharData& cdat = dg.cent[s.cls];
    long deg = cdat.degrees[s.chi];
    // central character rho' of rho
    int rho_central = -1;
    for (int c = 0; c < ctx.hc.zdual.size() && rho_central < 0; ++c) {
      bool eq = true;
      for (int z = 0; z < ctx.hc.zgroup.n && eq; ++z) {
        int zi = -1;
        for (int i = 0; i < cdat.G.n; ++i)
          if (dg.cent_embed[s.cls][i] == ctx.hc.zembed[z]) zi = i;
        if (zi < 0) throw ArithmeticError("functor_on_simples: center not in centralizer");
        eq = cdat.value(s.chi, zi) == ctx.hc.zdual.eval(c, z) * CycScalar(deg);
      }
      if (eq) rho_central = c;
    }
    if (rho_central < 0)
      throw ArithmeticError("functor_on_simples: central character not found");
    int gp = G.mul(ctx.hc.zembed[phi.amap[rho_central]], phi.v[g]);
    int cls2 = dg.cd.class_of[gp];
    int r2 = dg.cd.reps[cls2];
    int tconj = -1;
    for (int t = 0; t < G.n && tconj < 0; ++t)
      if (G.conj(t, gp) == r2) tconj = t;
    // new character on Cent(r2): c -> rho(uhat(t^-1 c t)) b(g)(t^-1 c t)
    const CharData& cdat2 = dg.cent[cls2];
    const auto& embed2 = dg.cent_embed[cls2];
    std::vector<int> c_to_idx(G.n, -1);
    for (int i = 0; i < cdat.G.n; ++i) c_to_idx[dg.cent_embed[s.cls][i]] = i;
    std::vector<CycScalar> vals;
    for (int k = 0; k < cdat2.num_classes(); ++k) {
      int c = embed2[cdat2.cd.reps[k]];
      int ct = G.conj_inv(tconj, c);
      int uc = phi.uhat[ct];
      if (c_to_idx[uc] < 0)
        throw ArithmeticError("functor_on_simples: transported element leaves centralizer");
      vals.push_back(cdat.value(s.chi, c_to_idx[uc]) * CycScalar::zeta(phi.e, phi.bexp(g, ct)));
    }
    int chi2 = -1;
    for (size_t i = 0; i < cdat2.irr.size(); ++i) {
      bool eq = true;
      for (int k = 0; k < cdat2.num_classes() && eq; ++k) eq = cdat2.irr[i].vals[k] == vals[k];
      if (eq) chi2 = static_cast<int>(i);
    }
    if (chi2 < 0) throw ArithmeticError("functor_on_simples: image character not irreducible");
    out[si] = dg.simple_index(SimpleLabel{cls2, chi2});
    if (dg.dim_of(dg.simples[si]) != dg.dim_of(dg.simples[out[si]]))
      throw ArithmeticError("functor_on_simples: dimension not preserved");
  }
  std::vector<char> seen(out.size(), 0);
  for (int v : out) {
    if (v < 0 || seen[v]) throw ArithmeticError("functor_on_simples: not a bijection");
    seen[v] = 1;
  }
  return out;
}

// ---- pair constructors ---------------------------------------------------------

LazyPair make_pair_V(const BraidedCtx& ctx, const GroupHom& v) {
  LazyPair p{make_V(ctx.hc, v), trivial_sigma(ctx.G), false};
  MasterReport r = master_check(ctx, p.phi, p.sigma);
  if (!r.ok) throw TheoremViolation("make_pair_V: " + r.witness);
  p.braided_checked = true;
  return p;
}

LazyPair make_pair_B(const BraidedCtx& ctx, const BilForm& b_alt) {
  const FiniteGroup& G = ctx.G;
  // push the alternating form to the abelianization, build its cocycle, pull back
  auto [abg, proj] = abelianization(G);
  AbelianStructure st = abelian_structure(abg);
  BilForm fab;
  fab.e = b_alt.e;
  fab.E = Eigen::MatrixXi::Zero(abg.n, abg.n);
  std::vector<int> pre(abg.n, -1);
  for (int g = 0; g < G.n; ++g)
    if (pre[proj[g]] < 0) pre[proj[g]] = g;
  for (int a = 0; a < abg.n; ++a)
    for (int b = 0; b < abg.n; ++b) fab.E(a, b) = b_alt.E(pre[a], pre[b]);
  // well-defined on the quotient
  for (int g = 0; g < G.n; ++g)
    for (int h = 0; h < G.n; ++h)
      if (mod_reduce(b_alt.E(g, h) - fab.E(proj[g], proj[h]), fab.e) != 0)
        throw ArithmeticError("make_pair_B: form does not factor through G_ab");
  CocycleG beta_ab = cocycle_from_alt_form(abg, st, fab);
  CocycleG beta;
  beta.M = beta_ab.M;
  beta.tab = Eigen::MatrixXi::Zero(G.n, G.n);
  for (int g = 0; g < G.n; ++g)
    for (int h = 0; h < G.n; ++h) beta.tab(g, h) = beta_ab.tab(proj[g], proj[h]);
  LazyPair p{make_B(ctx.hc, b_alt), embed_beta(G, beta), false};
  MasterReport r = master_check(ctx, p.phi, p.sigma);
  if (!r.ok) throw TheoremViolation("make_pair_B: " + r.witness);
  p.braided_checked = true;
  return p;
}

LazyPair make_pair_E(const BraidedCtx& ctx, const std::vector<int>& a_alt) {
  // form on the dual of the center: f(chi, rho) = chi(a(rho))
  const AbelianDual& zd = ctx.hc.zdual;
  int zn = ctx.hc.zgroup.n;
  // the dual as a group
  Eigen::MatrixXi mul(zn, zn);
  for (int a = 0; a < zn; ++a)
    for (int b = 0; b < zn; ++b) mul(a, b) = zd.mul_chars(a, b);
  FiniteGroup zhat = FiniteGroup::from_table(std::move(mul), "Zhat");
  AbelianStructure st = abelian_structure(zhat);
  long ze = zd.exponent;
  BilForm f;
  f.e = ze;
  f.E = Eigen::MatrixXi::Zero(zn, zn);
  for (int chi = 0; chi < zn; ++chi)
    for (int rho = 0; rho < zn; ++rho)
      f.E(chi, rho) = static_cast<int>(discrete_log(zd.eval(chi, a_alt[rho]), ze));
  CocycleG alpha = cocycle_from_alt_form(zhat, st, f);
  LazyPair p{make_E(ctx.hc, a_alt), embed_alpha(ctx.G, ctx.hc, alpha), false};
  MasterReport r = master_check(ctx, p.phi, p.sigma);
  if (!r.ok) throw TheoremViolation("make_pair_E: " + r.witness);
  p.braided_checked = true;
  return p;
}

LazyPair make_pair_R(const BraidedCtx& ctx, const Reflection& r_in) {
  const FiniteGroup& G = ctx.G;
  Reflection r = r_in;
  // normalize delta: the pairing delta(c)(c') must be symmetric; correct by an
  // automorphism of C when possible
  auto symmetric = [&](const std::vector<int>& delta) {
    for (int c = 0; c < r.cgroup.n; ++c)
      for (int c2 = 0; c2 < r.cgroup.n; ++c2)
        if (!(r.cdual.eval(delta[c], c2) == r.cdual.eval(delta[c2], c))) return false;
    return true;
  };
  if (!symmetric(r.delta)) {
    bool fixed = false;
    AutData ad = automorphism_data(r.cgroup);
    for (const auto& a : ad.auts) {
      std::vector<int> delta2(r.cgroup.n);
      for (int c = 0; c < r.cgroup.n; ++c) delta2[c] = r.delta[a.img[c]];
      if (symmetric(delta2)) {
        r.delta = delta2;
        fixed = true;
        break;
      }
    }
    if (!fixed) throw ArithmeticError("make_pair_R: delta not normalizable");
  }
  // lambda from the projection onto C
  std::vector<int> ell(G.n);
  {
    std::vector<int> cpart(G.n, -1);
    for (int h : r.H.elems)
      for (int c : r.C.elems) {
        int g = G.mul(h, c);
        if (cpart[g] >= 0) throw GroupError("make_pair_R: not a direct factorization");
        cpart[g] = c;
      }
    for (int g = 0; g < G.n; ++g) ell[g] = cpart[g];
  }
  LazyPair p{make_reflection(ctx.hc, r), embed_lambda(G, ell), false};
  MasterReport mr = master_check(ctx, p.phi, p.sigma);
  if (!mr.ok) throw TheoremViolation("make_pair_R: " + mr.witness);
  p.braided_checked = true;
  return p;
}

// ---- composition -----------------------------------------------------------------

namespace {

// componentwise application of psi to both tensor legs of sigma
MatC transport_sigma(const BraidedCtx& ctx, const MatC& tab, const HopfAutQuad& psi) {
  const FiniteGroup& G = ctx.G;
  int n = G.n;
  std::vector<DGElem> images(n * n);
  for (int g = 0; g < n; ++g)
    for (int t = 0; t < n; ++t) images[tab_idx(n, g, t)] = apply_quad_basis(ctx.hc, psi, g, t);
  MatC out(n * n, n * n);
  out.setConstant(CycScalar(0));
  for (int g = 0; g < n; ++g)
    for (int t = 0; t < n; ++t)
      for (int h = 0; h < n; ++h)
        for (int d = 0; d < n; ++d) {
          const CycScalar& v = tab(tab_idx(n, g, t), tab_idx(n, h, d));
          if (v.is_zero()) continue;
          for (const auto& [k1, c1] : images[tab_idx(n, g, t)].t)
            for (const auto& [k2, c2] : images[tab_idx(n, h, d)].t)
              out(tab_idx(n, k1.first, k1.second), tab_idx(n, k2.first, k2.second)) +=
                  v * c1 * c2;
        }
  return out;
}

}  // namespace

LazyPair compose_pairs(const BraidedCtx& ctx, const LazyPair& p1, const LazyPair& p2,
                       bool deep_verify) {
  const FiniteGroup& G = ctx.G;
  LazyPair out;
  out.phi = compose_quads(ctx.hc, p1.phi, p2.phi);
  HopfAutQuad psi = dagger_quad(ctx.hc, p2.phi);
  MatC t1 = transport_sigma(ctx, p1.sigma.tab, psi);
  MatC t1inv = transport_sigma(ctx, p1.sigma.inv_tab, psi);
  out.sigma.n = G.n;
  out.sigma.tab = convolve_sigma(G, p2.sigma.tab, t1);
  out.sigma.inv_tab = convolve_sigma(G, t1inv, p2.sigma.inv_tab);
  // functor-level homomorphism check (always)
  auto f1 = functor_on_simples(ctx, p1.phi);
  auto f2 = functor_on_simples(ctx, p2.phi);
  auto f12 = functor_on_simples(ctx, out.phi);
  for (size_t i = 0; i < f12.size(); ++i)
    if (f12[i] != f1[f2[i]])
      throw TheoremViolation("compose_pairs: functor maps do not compose");
  if (deep_verify) {
    CocycleReport rep = check_cocycle_conditions(G, out.sigma.tab);
    if (!rep.ok) throw TheoremViolation("compose_pairs: composite cocycle invalid: " + rep.witness);
    MatC conv = convolve_sigma(G, out.sigma.tab, out.sigma.inv_tab);
    if (!mats_equal(conv, trivial_sigma(G).tab))
      throw TheoremViolation("compose_pairs: composite inverse wrong");
    // monoidal matrices on all simple pairs
    for (int ia = 0; ia < ctx.dg.num_simples(); ++ia)
      for (int ib = 0; ib < ctx.dg.num_simples(); ++ib) {
        const DGModule& A = ctx.dg.modules[ia];
        const DGModule& B = ctx.dg.modules[ib];
        MatC j12 = j_matrix(ctx, out.sigma, A, B);
        MatC j2 = j_matrix(ctx, p2.sigma, A, B);
        // J1 on the phi2-twisted modules equals the legwise transported sigma1
        LazyCocycle t1c;
        t1c.n = G.n;
        t1c.tab = t1;
        t1c.inv_tab = t1inv;
        MatC j1t = j_matrix(ctx, t1c, A, B);
        if (!mats_equal(j12, j2 * j1t))
          throw TheoremViolation("compose_pairs: monoidal structures do not compose");
      }
  }
  out.braided_checked = false;
  return out;
}

LazyPair inverse_pair(const BraidedCtx& ctx, const LazyPair& p) {
  const FiniteGroup& G = ctx.G;
  LazyPair out;
  out.phi = inverse_quad(ctx.hc, p.phi);
  HopfAutQuad psi = dagger_quad(ctx.hc, out.phi);
  out.sigma.n = G.n;
  out.sigma.tab = transport_sigma(ctx, p.sigma.inv_tab, psi);
  out.sigma.inv_tab = transport_sigma(ctx, p.sigma.tab, psi);
  LazyPair check = compose_pairs(ctx, p, out);
  if (!mats_equal(check.sigma.tab, trivial_sigma(G).tab))
    throw TheoremViolation("inverse_pair: left inverse fails");
  LazyPair check2 = compose_pairs(ctx, out, p);
  if (!mats_equal(check2.sigma.tab, trivial_sigma(G).tab))
    throw TheoremViolation("inverse_pair: right inverse fails");
  return out;
}

// ---- equivalence ------------------------------------------------------------------

namespace {

// is phi the inner automorphism by some group element (= inner by a group-like)?
bool phi_is_inner(const BraidedCtx& ctx, const HopfAutQuad& phi) {
  const FiniteGroup& G = ctx.G;
  for (int g = 0; g < G.n; ++g) {
    GroupHom conj_g;
    conj_g.src = conj_g.dst = &ctx.G;
    conj_g.img.resize(G.n);
    for (int x = 0; x < G.n; ++x) conj_g.img[x] = G.conj(g, x);
    if (make_V(ctx.hc, conj_g) == phi) return true;
  }
  return false;
}

// exponent-space coboundary membership for abelian groups: sigma-hat must be
// d(eta-hat) on the group A x A-hat
EquivalenceResult abelian_coboundary_test(const BraidedCtx& ctx, const MatC& tab) {
  const FiniteGroup& G = ctx.G;
  int n = G.n;
  EquivalenceResult res;
  AbelianDual dual = abelian_dual(G);
  long m = ctx.m;
  // Fourier transform and discrete logs
  MatZ ex(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int chi = 0; chi < n; ++chi)
      for (int b = 0; b < n; ++b)
        for (int rho = 0; rho < n; ++rho) {
          CycScalar acc(0);
          for (int x = 0; x < n; ++x) {
            CycScalar cx = dual.eval(chi, x);
            for (int y = 0; y < n; ++y) {
              const CycScalar& v = tab(tab_idx(n, a, x), tab_idx(n, b, y));
              if (!v.is_zero()) acc += cx * dual.eval(rho, y) * v;
            }
          }
          if (!is_root_of_unity(acc, m)) {
            res.decided = false;
            res.note = "sigma-hat value outside mu_m";
            return res;
          }
          ex(tab_idx(n, a, chi), tab_idx(n, b, rho)) = discrete_log(acc, m);
        }
  // group law on A x A-hat: (a, chi)(b, rho) = (ab, chi rho)
  int N = n * n;
  auto gmul = [&](int u, int v) {
    int a = u / n, chi = u % n, b = v / n, rho = v % n;
    return tab_idx(n, G.mul(a, b), dual.mul_chars(chi, rho));
  };
  // solve eta(u) + eta(v) - eta(uv) = ex(u,v) mod m
  RowSpace rs(N + 1, m);
  for (int u = 0; u < N; ++u)
    for (int v = 0; v < N; ++v) {
      VecZ row = VecZ::Zero(N + 1);
      row(u) += 1;
      row(v) += 1;
      row(gmul(u, v)) -= 1;
      row(N) = ex(u, v);
      rs.add_row(std::move(row));
    }
  MatZ R = rs.rows();
  MatZ A = R.leftCols(N);
  VecZ b = R.col(N);
  VecZ x;
  res.equivalent = solve_mod(A, b, m, x);
  return res;
}

}  // namespace

EquivalenceResult pair_equivalence(const BraidedCtx& ctx, const LazyPair& p1,
                                   const LazyPair& p2) {
  const FiniteGroup& G = ctx.G;
  EquivalenceResult res;
  LazyPair q = compose_pairs(ctx, inverse_pair(ctx, p1), p2);
  if (!phi_is_inner(ctx, q.phi)) {
    res.equivalent = false;
    return res;
  }
  // sigma part must be a lazy coboundary
  if (mats_equal(q.sigma.tab, trivial_sigma(G).tab)) {
    res.equivalent = true;
    return res;
  }
  if (G.is_abelian()) return abelian_coboundary_test(ctx, q.sigma.tab);

  // non-abelian: structured witnesses
  // (1) beta-type support: sigma = embed_beta(d mu) for a class function mu
  bool beta_support = true;
  for (int g = 0; g < G.n && beta_support; ++g)
    for (int x = 0; x < G.n && beta_support; ++x)
      for (int h = 0; h < G.n && beta_support; ++h)
        for (int y = 0; y < G.n && beta_support; ++y)
          if ((x != G.id || y != G.id) && !q.sigma.val(g, x, h, y).is_zero())
            beta_support = false;
  if (beta_support) {
    long m = ctx.m;
    ConjData cd = conjugacy_data(G);
    int nc = static_cast<int>(cd.classes.size());
    // beta(g,h) = mu(g) + mu(h) - mu(gh) with mu constant on classes
    RowSpace rs(nc + 1, m);
    bool roots = true;
    for (int g = 0; g < G.n && roots; ++g)
      for (int h = 0; h < G.n && roots; ++h) {
        const CycScalar& v = q.sigma.val(g, G.id, h, G.id);
        if (!is_root_of_unity(v, m)) { roots = false; break; }
        VecZ row = VecZ::Zero(nc + 1);
        row(cd.class_of[g]) += 1;
        row(cd.class_of[h]) += 1;
        row(cd.class_of[G.mul(g, h)]) -= 1;
        row(nc) = discrete_log(v, m);
        rs.add_row(std::move(row));
      }
    if (!roots) {
      res.decided = false;
      res.note = "beta part not root valued";
      return res;
    }
    MatZ R = rs.rows();
    VecZ x;
    bool solvable = solve_mod(MatZ(R.leftCols(nc)), VecZ(R.col(nc)), m, x);
    if (solvable) {
      // verify the witness exactly
      std::vector<long long> mu(G.n);
      for (int g = 0; g < G.n; ++g) mu[g] = x(cd.class_of[g]) - x(cd.class_of[G.id]);
      bool exact = true;
      for (int g = 0; g < G.n && exact; ++g)
        for (int h = 0; h < G.n && exact; ++h)
          exact = q.sigma.val(g, G.id, h, G.id) ==
                  CycScalar::zeta(m, mod_reduce(mu[g] + mu[h] - mu[G.mul(g, h)], m));
      res.equivalent = exact;
      if (!exact) {
        res.decided = false;
        res.note = "mu witness verification failed";
      }
      return res;
    }
    res.equivalent = false;
    return res;
  }
  // (2) alpha-type support on the center: symmetric lazy central cocycles are
  // coboundaries; check the support and symmetry
  bool alpha_support = true;
  for (int g = 0; g < G.n && alpha_support; ++g)
    for (int x = 0; x < G.n && alpha_support; ++x)
      for (int h = 0; h < G.n && alpha_support; ++h)
        for (int y = 0; y < G.n && alpha_support; ++y) {
          const CycScalar& v = q.sigma.val(g, x, h, y);
          if (v.is_zero()) continue;
          if (ctx.hc.g_to_z[x] < 0 || ctx.hc.g_to_z[y] < 0) alpha_support = false;
        }
  if (alpha_support) {
    bool sym = true;
    for (int x = 0; x < G.n && sym; ++x)
      for (int y = 0; y < G.n && sym; ++y)
        sym = q.sigma.val(G.id, x, G.id, y) == q.sigma.val(G.id, y, G.id, x);
    if (sym) {
      res.equivalent = true;
      res.note = "symmetric central cocycle";
      return res;
    }
    res.equivalent = false;
    return res;
  }
  res.decided = false;
  res.note = "coboundary membership undecided for this support";
  return res;
}

// ---- generation --------------------------------------------------------------------

namespace {

std::vector<LazyPair> standard_generators(const BraidedCtx& ctx) {
  const FiniteGroup& G = ctx.G;
  std::vector<LazyPair> gens;
  AutData ad = automorphism_data(G);
  for (const auto& a : ad.auts) gens.push_back(make_pair_V(ctx, a));
  HomAltData had = hom_and_alternating(G);
  for (const auto& b : had.B_alt) gens.push_back(make_pair_B(ctx, b));
  for (const auto& am : had.E_alt) gens.push_back(make_pair_E(ctx, am));
  for (const auto& r : all_reflections(G)) {
    try {
      gens.push_back(make_pair_R(ctx, r));
    } catch (const ArithmeticError&) {
      // deltas that cannot be normalized contribute no braided pair
    }
  }
  return gens;
}

// canonical key at tilde level for abelian groups: (phi data, commutator form
// of sigma-hat on A x A-hat)
std::vector<long long> abelian_pair_key(const BraidedCtx& ctx, const LazyPair& p) {
  const FiniteGroup& G = ctx.G;
  int n = G.n;
  AbelianDual dual = abelian_dual(G);
  std::vector<long long> key;
  for (int v : p.phi.uhat) key.push_back(v);
  for (int v : p.phi.v) key.push_back(v);
  for (int v : p.phi.amap) key.push_back(v);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) key.push_back(mod_reduce(p.phi.bexp(i, j), p.phi.e));
  // commutator form of sigma-hat
  long m = ctx.m;
  for (int u = 0; u < n * n; ++u)
    for (int v = 0; v < n * n; ++v) {
      int a = u / n, chi = u % n, b = v / n, rho = v % n;
      CycScalar shat_uv(0), shat_vu(0);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          const CycScalar& w1 = p.sigma.val(a, x, b, y);
          if (!w1.is_zero()) shat_uv += dual.eval(chi, x) * dual.eval(rho, y) * w1;
          const CycScalar& w2 = p.sigma.val(b, x, a, y);
          if (!w2.is_zero()) shat_vu += dual.eval(rho, x) * dual.eval(chi, y) * w2;
        }
      key.push_back(discrete_log(shat_uv / shat_vu, m));
    }
  return key;
}

}  // namespace

GeneratedGroup generate_lazy_group(const BraidedCtx& ctx, long closure_bound) {
  const FiniteGroup& G = ctx.G;
  GeneratedGroup out;
  out.generators = standard_generators(ctx);
  if (G.is_abelian()) {
    std::map<std::vector<long long>, int> index;
    LazyPair idp = make_pair_V(ctx, identity_hom(G));
    index[abelian_pair_key(ctx, idp)] = 0;
    out.elements.push_back(idp);
    out.words.push_back({});
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int ei : frontier)
        for (size_t gi = 0; gi < out.generators.size(); ++gi) {
          LazyPair c = compose_pairs(ctx, out.elements[ei], out.generators[gi]);
          auto key = abelian_pair_key(ctx, c);
          if (index.count(key)) continue;
          if (static_cast<long>(out.elements.size()) >= closure_bound)
            throw BoundExceeded("generate_lazy_group: closure bound exceeded");
          index[key] = static_cast<int>(out.elements.size());
          auto w = out.words[ei];
          w.push_back(static_cast<int>(gi));
          out.elements.push_back(c);
          out.words.push_back(std::move(w));
          next.push_back(index[key]);
        }
      frontier = std::move(next);
    }
    return out;
  }
  // non-abelian: pairwise equivalence (fixture groups are tiny here)
  LazyPair idp = make_pair_V(ctx, identity_hom(G));
  out.elements.push_back(idp);
  out.words.push_back({});
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int ei : frontier)
      for (size_t gi = 0; gi < out.generators.size(); ++gi) {
        LazyPair c = compose_pairs(ctx, out.elements[ei], out.generators[gi]);
        bool known = false;
        for (const auto& e : out.elements) {
          EquivalenceResult er = pair_equivalence(ctx, e, c);
          if (!er.decided)
            throw TheoremViolation("generate_lazy_group: equivalence undecided: " + er.note);
          if (er.equivalent) { known = true; break; }
        }
        if (known) continue;
        if (static_cast<long>(out.elements.size()) >= closure_bound)
          throw BoundExceeded("generate_lazy_group: closure bound exceeded");
        auto w = out.words[ei];
        w.push_back(static_cast<int>(gi));
        out.elements.push_back(c);
        out.words.push_back(std::move(w));
        next.push_back(static_cast<int>(out.elements.size()) - 1);
      }
    frontier = std::move(next);
  }
  return out;
}

// ---- decomposition -------------------------------------------------------------------

PairDecomposition decompose_pair(const BraidedCtx& ctx, const LazyPair& p) {
  const FiniteGroup& G = ctx.G;
  PairDecomposition out;
  if (!is_elementary_abelian(G))
    throw BoundExceeded(
        "decompose_pair: two-sided decomposition implemented for elementary abelian groups");
  FpCoords fc = fp_coords(G);
  long pr = fc.p;
  int n = fc.n;
  MatZ M = quad_to_fpmatrix(ctx.hc, fc, p.phi);
  auto mul = [&](const MatZ& A, const MatZ& B) {
    MatZ C = MatZ::Zero(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
      for (int k = 0; k < 2 * n; ++k) {
        if (A(i, k) == 0) continue;
        for (int j = 0; j < 2 * n; ++j) C(i, j) = mod_reduce(C(i, j) + A(i, k) * B(k, j), pr);
      }
    return C;
  };
  // enumerate the coset pieces at matrix level: left/right in V.B resp. V.E,
  // reflections r_d for d = 0..n; this is exactly the double coset shape of
  // the decomposition theorem
  AutData ad = automorphism_data(G);
  HomAltData had = hom_and_alternating(G);
  struct Piece {
    MatZ mat;
    GroupHom v;
    const BilForm* b = nullptr;          // left pieces
    const std::vector<int>* am = nullptr;  // right pieces
  };
  std::vector<Piece> lefts, rights;
  for (const auto& a : ad.auts) {
    HopfAutQuad qv = make_V(ctx.hc, a);
    MatZ mv = quad_to_fpmatrix(ctx.hc, fc, qv);
    for (const auto& b : had.B_alt) {
      HopfAutQuad qb = make_B(ctx.hc, b);
      Piece pc{mul(mv, quad_to_fpmatrix(ctx.hc, fc, qb)), a, &b, nullptr};
      lefts.push_back(pc);
    }
    for (const auto& am : had.E_alt) {
      HopfAutQuad qe = make_E(ctx.hc, am);
      Piece pc{mul(mv, quad_to_fpmatrix(ctx.hc, fc, qe)), a, nullptr, &am};
      rights.push_back(pc);
    }
  }
  for (int d = 0; d <= n; ++d) {
    std::vector<int> hg, cg;
    for (int i = 0; i < n - d; ++i) hg.push_back(fc.st.gens[i]);
    for (int i = n - d; i < n; ++i) cg.push_back(fc.st.gens[i]);
    Reflection r = standard_reflection(G, subgroup_closure(G, hg), subgroup_closure(G, cg));
    MatZ mr = quad_to_fpmatrix(ctx.hc, fc, make_reflection(ctx.hc, r));
    for (const auto& l : lefts) {
      MatZ lm = mul(l.mat, mr);
      for (const auto& rgt : rights) {
        if (mul(lm, rgt.mat) != M) continue;
        out.vb = {make_pair_V(ctx, l.v), make_pair_B(ctx, *l.b)};
        out.refl = make_pair_R(ctx, r);
        out.refl_rank = d;
        out.ve = {make_pair_V(ctx, rgt.v), make_pair_E(ctx, *rgt.am)};
        // residual = (vb refl ve)^-1 . p
        LazyPair acc = out.vb[0];
        for (size_t i = 1; i < out.vb.size(); ++i) acc = compose_pairs(ctx, acc, out.vb[i]);
        acc = compose_pairs(ctx, acc, out.refl);
        for (const auto& w : out.ve) acc = compose_pairs(ctx, acc, w);
        out.residual = compose_pairs(ctx, inverse_pair(ctx, acc), p);
        if (!(out.residual.phi == identity_quad(ctx.hc)))
          throw TheoremViolation("decompose_pair: residual automorphism nontrivial");
        MasterReport mr2 = master_check(ctx, out.residual.phi, out.residual.sigma);
        if (!mr2.ok) throw TheoremViolation("decompose_pair: residual not braided");
        LazyPair idp = make_pair_V(ctx, identity_hom(G));
        EquivalenceResult er = pair_equivalence(ctx, idp, out.residual);
        if (!er.decided || !er.equivalent)
          throw TheoremViolation("decompose_pair: residual not a lazy coboundary");
        return out;
      }
    }
  }
  throw TheoremViolation("decompose_pair: no coset decomposition found");
}

}  // namespace qd
