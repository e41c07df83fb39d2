#pragma once

#include "qd/cohomo.hpp"
#include "qd/hopfaut.hpp"

namespace qd {

// Lazy 2-cocycle sigma on DG*, stored as the full table on basis pairs
// sigma(g x e_x, h x e_y) at index (g*n+x, h*n+y). The convolution inverse is
// cached after validation.
struct LazyCocycle {
  int n = 1;  // group order
  MatC tab;
  MatC inv_tab;

  const CycScalar& val(int g, int x, int h, int y) const { return tab(g * n + x, h * n + y); }
};

struct CocycleReport {
  bool ok = true;
  std::string witness;
};

LazyCocycle trivial_sigma(const FiniteGroup& G);
// checks normalization, the convolution 2-cocycle identity and laziness;
// computes the convolution inverse (throws on non-invertible input)
LazyCocycle validate_cocycle(const FiniteGroup& G, const MatC& tab);
CocycleReport check_cocycle_conditions(const FiniteGroup& G, const MatC& tab);

MatC convolve_sigma(const FiniteGroup& G, const MatC& a, const MatC& b);
MatC sigma_inverse(const FiniteGroup& G, const MatC& tab);

// the three embedding subgroups of Z^2_L(DG*)
LazyCocycle embed_beta(const FiniteGroup& G, const CocycleG& beta);   // beta invariant
// alpha: 2-cocycle on the dual of Z(G), pulled back through the center
LazyCocycle embed_alpha(const FiniteGroup& G, const HopfAutCtx& ctx, const CocycleG& alpha_on_zhat);
// lambda from a homomorphism ell: G -> Z(G)
LazyCocycle embed_lambda(const FiniteGroup& G, const std::vector<int>& ell);

struct SigmaParts {
  CocycleG beta;      // on G, exponents mod m
  MatC alpha;         // on Ghat_ab x Ghat_ab (indices of the abelianization dual)
  MatC lambda;        // lambda(g, e_x) table, n x n
};
SigmaParts extract_parts(const FiniteGroup& G, const LazyCocycle& sigma, long m);

// ---- pairs ------------------------------------------------------------------

struct LazyPair {
  HopfAutQuad phi;
  LazyCocycle sigma;
  bool braided_checked = false;
};

struct BraidedCtx {
  FiniteGroup G;
  DGCtx dg;
  HopfAutCtx hc;
  long m = 1;  // exponent-space modulus (lcm of |G| and exp(G))
};

BraidedCtx braided_ctx(const FiniteGroup& G);

struct NecessaryReport {
  bool h1 = true, h2 = true, h3 = true, h4 = true;
  std::string witness;
  bool all() const { return h1 && h2 && h3 && h4; }
};
NecessaryReport necessary_conditions(const BraidedCtx& ctx, const HopfAutQuad& phi,
                                     const LazyCocycle& sigma);

struct MasterReport {
  bool ok = true;
  std::string witness;
};
MasterReport master_check(const BraidedCtx& ctx, const HopfAutQuad& phi,
                          const LazyCocycle& sigma);

// braided-functor square on every ordered pair of simple modules
bool hexagon_check(const BraidedCtx& ctx, const HopfAutQuad& phi, const LazyCocycle& sigma);

// object map on simple labels (bijective, dimension-preserving)
std::vector<int> functor_on_simples(const BraidedCtx& ctx, const HopfAutQuad& phi);

// monoidal structure matrix J^sigma on A (x) B (legs act through the modules)
MatC j_matrix(const BraidedCtx& ctx, const LazyCocycle& sigma, const DGModule& A,
              const DGModule& B);

// ---- generator families -------------------------------------------------------

LazyPair make_pair_V(const BraidedCtx& ctx, const GroupHom& v);
LazyPair make_pair_B(const BraidedCtx& ctx, const BilForm& b_alt);
LazyPair make_pair_E(const BraidedCtx& ctx, const std::vector<int>& a_alt);
LazyPair make_pair_R(const BraidedCtx& ctx, const Reflection& r);

// semidirect composition; the sigma of p1 is transported through phi2 legwise
// (convention fixed by the homomorphism postcondition); the functor map of the
// composite is always verified against the composition of functor maps
LazyPair compose_pairs(const BraidedCtx& ctx, const LazyPair& p1, const LazyPair& p2,
                       bool deep_verify = false);
LazyPair inverse_pair(const BraidedCtx& ctx, const LazyPair& p);

// tilde-level equivalence: p1^-1 p2 = (inner by a group-like, lazy coboundary)
struct EquivalenceResult {
  bool equivalent = false;
  bool decided = true;  // false: membership undecided (diagnostic)
  std::string note;
};
EquivalenceResult pair_equivalence(const BraidedCtx& ctx, const LazyPair& p1, const LazyPair& p2);

// ---- generation and decomposition ----------------------------------------------

struct GeneratedGroup {
  std::vector<LazyPair> elements;            // class representatives
  std::vector<std::vector<int>> words;       // generator indices per element
  std::vector<LazyPair> generators;
  long long order() const { return static_cast<long long>(elements.size()); }
};

GeneratedGroup generate_lazy_group(const BraidedCtx& ctx, long closure_bound = 100000);

struct PairDecomposition {
  std::vector<LazyPair> vb;     // word of V/B pairs (left)
  LazyPair refl;                // reflection pair
  int refl_rank = 0;            // dim of the reflected factor C
  std::vector<LazyPair> ve;     // word of V/E pairs (right)
  LazyPair residual;            // (id, sigma'), declared trivial-up-to-B
};

PairDecomposition decompose_pair(const BraidedCtx& ctx, const LazyPair& p);

}  // namespace qd
