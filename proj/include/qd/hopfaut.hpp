#pragma once

#include "qd/dg.hpp"
#include "qd/zmod.hpp"

namespace qd {

struct TheoremViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hopf automorphism of DG as the Keilberg quadruple (u, b, a, v):
//   phi(e_x x g) = sum_{x1 x2 = x} u(e_x1) b(g)  x  a(e_x2) v(g)
// u = (uhat)^* for a group endomorphism uhat; b factors through G_ab with
// values b(g)(h) = zeta_e^{bexp(g,h)}; a is supported on the center and
// stored as a map on the dual characters of Z(G); v is an endomorphism.
struct HopfAutQuad {
  std::vector<int> uhat;
  long e = 1;
  Eigen::MatrixXi bexp;
  std::vector<int> amap;  // zdual character index -> element of zgroup
  std::vector<int> v;

  bool operator==(const HopfAutQuad& o) const {
    return uhat == o.uhat && bexp == o.bexp && amap == o.amap && v == o.v;
  }
  bool operator<(const HopfAutQuad& o) const;
};

// per-group context: center data and scratch for quadruple algebra
struct HopfAutCtx {
  FiniteGroup G;
  ConjData cd;
  FiniteGroup zgroup;
  std::vector<int> zembed;
  std::vector<int> g_to_z;  // -1 outside the center
  AbelianDual zdual;
  long e = 1;  // exp(G)
};

HopfAutCtx hopfaut_ctx(const FiniteGroup& G);

// coefficients e_w(a(e_x)) for x, w in the center (indices in zgroup)
MatC a_coeff_matrix(const HopfAutCtx& ctx, const HopfAutQuad& q);

DGElem apply_quad_basis(const HopfAutCtx& ctx, const HopfAutQuad& q, int x, int g);
DGElem apply_quad(const HopfAutCtx& ctx, const HopfAutQuad& q, const DGElem& el);

struct QuadCheck {
  bool ok = true;
  std::string witness;
};
// algebra map + coalgebra map + unit + bijectivity, checked structurally on
// basis elements/generator pairs
QuadCheck verify_quad(const HopfAutCtx& ctx, const HopfAutQuad& q);

HopfAutQuad identity_quad(const HopfAutCtx& ctx);
// recognize the quadruple of a linear map given by basis images; throws
// GroupError when the map is not of quadruple form
HopfAutQuad recognize_quad(const HopfAutCtx& ctx,
                           const std::function<DGElem(int, int)>& image);
// composite q1 . q2 (apply q2 first); verified against the composed maps
HopfAutQuad compose_quads(const HopfAutCtx& ctx, const HopfAutQuad& q1, const HopfAutQuad& q2);
HopfAutQuad inverse_quad(const HopfAutCtx& ctx, const HopfAutQuad& q);
// the flip (u b; a v) -> (v* b*; a* u*); involutive anti-automorphism
HopfAutQuad dagger_quad(const HopfAutCtx& ctx, const HopfAutQuad& q);

// ---- generator families ------------------------------------------------------

HopfAutQuad make_V(const HopfAutCtx& ctx, const GroupHom& v);
HopfAutQuad make_Vc(const HopfAutCtx& ctx, const GroupHom& w);  // e_g x h -> e_{w(g)} x h
HopfAutQuad make_B(const HopfAutCtx& ctx, const BilForm& b);
HopfAutQuad make_E(const HopfAutCtx& ctx, const std::vector<int>& amap);

struct Reflection {
  Subgroup H, C;
  FiniteGroup cgroup;
  std::vector<int> cembed;
  AbelianDual cdual;
  std::vector<int> delta;  // C index -> dual character index (iso)
  std::vector<int> nu;     // endomorphism of cgroup, trivial for plain reflections
};

// delta as an iso onto the dual; nu nilpotent (some power trivial);
// delta normalized when the pairing delta(c)(c') is symmetric
Reflection make_reflection_data(const FiniteGroup& G, const Subgroup& H, const Subgroup& C,
                                const std::vector<int>& delta, const std::vector<int>& nu);
// canonical symmetric delta from the invariant-factor basis
Reflection standard_reflection(const FiniteGroup& G, const Subgroup& H, const Subgroup& C);
HopfAutQuad make_reflection(const HopfAutCtx& ctx, const Reflection& r);
// the direct linear formula (f_H, f_C) x (h, c) -> (f_H, delta(c)) x (h, delta^-1(f_C) nu(c)),
// for cross-checking the quadruple construction
DGElem reflection_direct_image(const HopfAutCtx& ctx, const Reflection& r, int x, int g);

// all plain reflections (every (H,C) factorization, every delta, nu = 0)
std::vector<Reflection> all_reflections(const FiniteGroup& G);

// ---- enumeration and factorization -------------------------------------------

std::vector<HopfAutQuad> enumerate_aut_hopf(const HopfAutCtx& ctx, int bound = 16);

struct HopfFactorization {
  std::vector<HopfAutQuad> left;   // word in V, V_c, B
  Reflection refl;
  HopfAutQuad refl_quad;
  std::vector<HopfAutQuad> right;  // word in V, V_c, E
};

// elementary abelian fast path via block-pivoted F_p elimination; otherwise
// meet-in-the-middle over enumerated subgroup products
HopfFactorization factor_aut_hopf(const HopfAutCtx& ctx, const HopfAutQuad& q);

// ---- elementary abelian coordinates -------------------------------------------

struct FpCoords {
  long p = 2;
  int n = 1;  // rank
  AbelianStructure st;
};

bool is_elementary_abelian(const FiniteGroup& G);
FpCoords fp_coords(const FiniteGroup& G);
// 2n x 2n matrix over F_p of the quadruple on (chi-coords ; g-coords)
MatZ quad_to_fpmatrix(const HopfAutCtx& ctx, const FpCoords& fc, const HopfAutQuad& q);
HopfAutQuad fpmatrix_to_quad(const HopfAutCtx& ctx, const FpCoords& fc, const MatZ& M);

}  // namespace qd
