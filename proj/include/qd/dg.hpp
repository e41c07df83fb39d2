#pragma once

#include "qd/chars.hpp"
#include "qd/linalg.hpp"

#include <map>

namespace qd {

// sparse element of DG in the basis {e_x x y}
struct DGElem {
  std::map<std::pair<int, int>, CycScalar> t;

  void add(int x, int y, const CycScalar& c);
  bool operator==(const DGElem& o) const;
};

DGElem dg_basis(int x, int y);
DGElem dg_unit(const FiniteGroup& G);
DGElem dg_mul(const FiniteGroup& G, const DGElem& a, const DGElem& b);
DGElem dg_scale(const DGElem& a, const CycScalar& c);
DGElem dg_add(const DGElem& a, const DGElem& b);
// S(e_x x y) = e_{y^-1 x^-1 y} x y^-1
std::pair<std::pair<int, int>, CycScalar> dg_antipode_basis(const FiniteGroup& G, int x, int y);

struct HopfReport {
  bool ok = true;
  std::string witness;
};

// checks bialgebra compatibility, counit and antipode axioms on all basis
// elements/pairs; `corrupt` (optional) perturbs the product for negative
// controls
HopfReport verify_hopf_axioms(const FiniteGroup& G);
HopfReport verify_hopf_axioms_with(
    const FiniteGroup& G,
    const std::function<DGElem(const FiniteGroup&, int, int, int, int)>& basis_product);

// ---- simple modules ---------------------------------------------------------

struct SimpleLabel {
  int cls = 0;  // conjugacy class index
  int chi = 0;  // irreducible of the centralizer of the class rep
  bool operator==(const SimpleLabel& o) const { return cls == o.cls && chi == o.chi; }
  bool operator<(const SimpleLabel& o) const {
    return cls != o.cls ? cls < o.cls : chi < o.chi;
  }
};

// realized module: G-graded space with an action of the group part; the
// action of e_h x t is (project to degree h) after act[t]
struct DGModule {
  int dim = 0;
  std::vector<int> grade;
  std::vector<MatC> act;  // one per group element
};

struct DGCtx {
  FiniteGroup G;
  ConjData cd;
  CharData gchars;                          // character data of G itself
  std::vector<CharData> cent;               // per class: centralizer character data
  std::vector<std::vector<int>> cent_embed; // per class: centralizer -> G elements
  std::vector<std::vector<int>> cosets;     // per class: coset reps s_i (least element)
  std::vector<int> coset_of;                // per class flattened: see coset_index
  std::vector<SimpleLabel> simples;
  std::vector<DGModule> modules;            // aligned with simples

  int num_simples() const { return static_cast<int>(simples.size()); }
  int simple_index(const SimpleLabel& s) const;
  long dim_of(const SimpleLabel& s) const;
  // index of the coset (class cls) containing element x
  int coset_index(int cls, int x) const;
};

DGCtx build_dg_ctx(const FiniteGroup& G);

// exact matrices of an irreducible of C affording chi (isotypic projection of
// the regular representation, cut to one copy by eigenspace splitting)
std::vector<MatC> exact_irrep(const CharData& cdat, int chi);

DGModule realize_simple(const DGCtx& ctx, const SimpleLabel& s);
DGModule tensor_module(const DGCtx& ctx, const DGModule& A, const DGModule& B);

// action matrix of the basis element e_h x t
MatC act_basis(const DGModule& M, int h, int t);
// action of e_h x t on A (x) B without materializing the tensor module
MatC act_basis_tensor(const FiniteGroup& G, const DGModule& A, const DGModule& B, int h, int t);

// braiding c_{A,B}: A (x) B -> B (x) A, c(m (x) n) = grade(m).n (x) m
MatC braiding_matrix(const FiniteGroup& G, const DGModule& A, const DGModule& B);

bool check_module_axioms(const DGCtx& ctx, const DGModule& M);
bool check_braiding_naturality(const DGCtx& ctx, const DGModule& A, const DGModule& B);
bool check_hexagons(const DGCtx& ctx, const DGModule& A, const DGModule& B, const DGModule& C);

}  // namespace qd
