#pragma once

#include "qd/groups.hpp"

namespace qd {

// class function: one value per conjugacy class, aligned with ConjData.reps
struct ClassFunction {
  std::vector<CycScalar> vals;
};

// Exact character data of one group. Owns its copy of the group so the
// bundle can be passed around and cached without lifetime games.
struct CharData {
  FiniteGroup G;
  ConjData cd;
  std::vector<ClassFunction> irr;  // canonical order: degree, then value tuple
  std::vector<long> degrees;

  const CycScalar& value(int chi, int g) const { return irr[chi].vals[cd.class_of[g]]; }
  int num_classes() const { return static_cast<int>(cd.classes.size()); }
};

// Dixon-Schneider over F_q with exact cyclotomic lift for non-abelian groups;
// dual-character construction for abelian ones. Verifies orthogonality and
// degree sums before returning.
CharData character_data(const FiniteGroup& G);

CycScalar inner_product(const CharData& d, const ClassFunction& a, const ClassFunction& b);

// H given as a standalone group plus its embedding into G (new index -> G element)
ClassFunction restrict_to(const CharData& gd, const ClassFunction& chi, const CharData& hd,
                          const std::vector<int>& embed);
ClassFunction induce_from(const CharData& gd, const CharData& hd, const std::vector<int>& embed,
                          const ClassFunction& chi);

// decomposition into gd.irr; throws if chi is not a genuine character
std::vector<long> decompose(const CharData& gd, const ClassFunction& chi);

// locate an irreducible by degree and values at given elements
int char_by_values(const CharData& d, long degree,
                   const std::vector<std::pair<int, CycScalar>>& constraints);

// ---- Clifford theory -------------------------------------------------------

struct CliffordDecomp {
  FiniteGroup Ngrp;           // N as a standalone group
  std::vector<int> nembed;    // N index -> G element
  AbelianDual ndual;
  FiniteGroup Q;              // G/N
  std::vector<int> qproj;     // G element -> Q index
  long e = 0;                 // common multiplicity
  std::vector<int> orbit;     // dual-character indices of N, conjugation orbit
  std::vector<Subgroup> inertia;  // subgroups of Q, aligned with orbit
};

CliffordDecomp clifford_decomposition(const CharData& gd, int chi, const Subgroup& N);

// rho on Cent(n_i) = N x| I_i: trivial on N, trace of the chi_i-isotypic
// component on complement representatives. chi_i indexes cliff.ndual; n_i is
// the G element delta^{-1}(chi_i). centd must be character data of the
// centralizer subgroup of n_i with its embedding into G.
ClassFunction isotypic_character(const CharData& gd, int chi, const CliffordDecomp& cliff,
                                 int chi_i, int n_i, const CharData& centd,
                                 const std::vector<int>& cent_embed);

}  // namespace qd
