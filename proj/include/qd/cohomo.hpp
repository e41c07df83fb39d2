#pragma once

#include "qd/groups.hpp"
#include "qd/zmod.hpp"

namespace qd {

// Normalized 2-cocycle on G with values in mu_M, stored as an exponent table
// (value beta(a,b) = zeta_M^tab(a,b), rows/cols over all of G, identity rows
// and columns zero).
struct CocycleG {
  long M = 1;
  Eigen::MatrixXi tab;

  CycScalar val(int a, int b) const { return CycScalar::zeta(M, tab(a, b)); }
};

CocycleG trivial_cocycle(const FiniteGroup& G, long M);
bool is_cocycle(const FiniteGroup& G, const CocycleG& beta);  // normalized + identity
CocycleG cocycle_mul(const CocycleG& a, const CocycleG& b);
CocycleG cocycle_inv(const CocycleG& a);
// beta * d(eta) for eta given by exponents on G (eta(id) = 0)
CocycleG twist_by_coboundary(const FiniteGroup& G, const CocycleG& beta,
                             const std::vector<long long>& eta);

// beta(g,h) = beta(g^t, h^t) for all t
bool is_invariant(const FiniteGroup& G, const CocycleG& beta);
// every conjugacy class beta-regular: beta(g,x) = beta(x,g) for g in Cent(x)
bool is_distinguished(const FiniteGroup& G, const ConjData& cd, const CocycleG& beta);

// ---- H^2(G, k^x) via Z/M with the carry quotient ---------------------------

struct H2Group {
  long M = 1;
  int n = 1;                    // group order
  std::vector<int> nontriv;     // non-identity elements, index order of the table
  AbelianQuotient quot;         // classes of Z^2 / (B^2 + carries)
  std::vector<CocycleG> reps;   // representative per invariant-factor generator

  long long order() const { return quot.order(); }
  const std::vector<long long>& factors() const { return quot.factors; }
  std::vector<long long> dlog(const CocycleG& beta) const;
  CocycleG rep_of(const std::vector<long long>& exps) const;
  // all class tuples, odometer order (order() assumed small)
  std::vector<std::vector<long long>> all_classes() const;

  VecZ to_vec(const CocycleG& beta) const;
  CocycleG from_vec(const VecZ& v) const;
};

// default bound 32; 24 needed for S4
H2Group h2_group(const FiniteGroup& G, int bound = 32);

// classes that are distinguished and admit a conjugation-invariant
// representative (the invariant representative is searched as a linear system
// in coboundary exponents)
std::vector<std::vector<long long>> distinguished_invariant_classes(const FiniteGroup& G,
                                                                    const H2Group& h2);

// ---- abelian dictionary: classes <-> alternating forms ---------------------

// commutator form b(g,h) = beta(h,g)/beta(g,h) as exponents mod M
BilForm alt_form_from_class(const FiniteGroup& A, const CocycleG& beta);
// beta(sum x_i a_i, sum y_j a_j) = prod_{i<j} b(a_j,a_i)^{x_i y_j}
CocycleG cocycle_from_alt_form(const FiniteGroup& A, const AbelianStructure& st,
                               const BilForm& b);
bool is_nondegenerate_form(const FiniteGroup& A, const BilForm& b);
bool is_nondegenerate(const FiniteGroup& A, const CocycleG& mu);

// ---- G-invariant classes on a normal abelian subgroup ----------------------

struct InvariantClasses {
  FiniteGroup Ngrp;
  std::vector<int> nembed;
  H2Group h2;                                  // of Ngrp
  std::vector<std::vector<long long>> fixed;   // dlog tuples fixed by G
  std::vector<CocycleG> reps;                  // representatives, aligned
};

InvariantClasses g_invariant_classes_on(const FiniteGroup& G, const Subgroup& N);

// ---- exhaustive oracle (criterion: every group of order <= 8) --------------

// |H^2(G, k^x)| by enumeration of normalized Z/M-valued cocycles modulo
// coboundaries and carries. Literal table enumeration when M^((n-1)^2) is
// small; otherwise an exhaustive constraint-propagating walk that visits
// exactly the cocycle set. No linear algebra on either path.
long long h2_order_oracle(const FiniteGroup& G);

}  // namespace qd
