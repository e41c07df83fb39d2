#pragma once

#include "qd/cyclotomic.hpp"

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qd {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BoundExceeded : GroupError {
  using GroupError::GroupError;
};

// Hard cap: elements are dense indices with a full Cayley table, and
// everything downstream assumes O(1) multiplication. Larger groups are
// rejected rather than supported sparsely.
inline constexpr int kMaxGroupOrder = 64;

class FiniteGroup {
public:
  int n = 1;
  Eigen::MatrixXi mul;    // mul(a,b) = a*b
  std::vector<int> inv;
  int id = 0;
  std::string name;
  // one-line images when the group was built from permutations (else empty)
  std::vector<std::vector<int>> perms;

  int op(int a, int b) const { return mul(a, b); }
  int conj(int t, int g) const { return mul(mul(t, g), inv[t]); }       // ^t g
  int conj_inv(int t, int g) const { return mul(mul(inv[t], g), t); }   // g^t
  int power(int g, long e) const;
  int order_of(int g) const;
  long exponent() const;
  bool is_abelian() const;
  bool commute(int a, int b) const { return mul(a, b) == mul(b, a); }

  // Validates associativity (full scan), identity, inverses; throws on
  // failure or when the order exceeds kMaxGroupOrder.
  static FiniteGroup from_table(Eigen::MatrixXi mul, std::string name);
};

// sorted element list, closed under product and inverse
struct Subgroup {
  std::vector<int> elems;
  int order() const { return static_cast<int>(elems.size()); }
  bool contains(int g) const;
  bool operator==(const Subgroup& o) const { return elems == o.elems; }
  bool operator<(const Subgroup& o) const;
};

struct GroupHom {
  const FiniteGroup* src = nullptr;
  const FiniteGroup* dst = nullptr;
  std::vector<int> img;

  int operator()(int g) const { return img[g]; }
  bool is_bijective() const;
};

bool verify_hom(const GroupHom& f);  // multiplicative on all pairs
GroupHom compose(const GroupHom& f, const GroupHom& g);  // f after g
GroupHom identity_hom(const FiniteGroup& G);
GroupHom inverse_aut(const GroupHom& f);

// ---- constructions -------------------------------------------------------

struct GroupSpec {
  // kind: named | cayley | perm_gens | direct | semidirect | extraspecial
  std::string kind;
  std::string name;                       // named
  Eigen::MatrixXi table;                  // cayley
  int degree = 0;                         // perm_gens
  std::vector<std::vector<int>> gens;     // perm_gens, one-line images
  std::vector<GroupSpec> parts;           // direct (2), semidirect (N, Q)
  // semidirect action: per element q of Q, an automorphism of N as an image
  // table of length |N|
  std::vector<std::vector<int>> action;
  int p = 0, half_rank = 0;               // extraspecial p_+^{1+2n}
};

FiniteGroup build_group(const GroupSpec& spec);
FiniteGroup named_group(const std::string& name);
FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group(int n);
FiniteGroup dihedral_group(int m);  // order 2m
FiniteGroup quaternion_group();
FiniteGroup elementary_abelian(int p, int k);
FiniteGroup extraspecial_plus(int p, int nhalf);  // p_+^{1+2n}, order p^(2n+1)
FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B);
FiniteGroup semidirect_product(const FiniteGroup& N, const FiniteGroup& Q,
                               const std::vector<std::vector<int>>& action);
FiniteGroup group_from_perm_gens(int degree, const std::vector<std::vector<int>>& gens,
                                 const std::string& name);

std::vector<int> perm_parse_cycles(int degree, const std::string& s);
std::string perm_cycle_string(const std::vector<int>& p);

// ---- conjugation data ----------------------------------------------------

struct ConjData {
  std::vector<std::vector<int>> classes;  // sorted by least element
  std::vector<int> reps;                  // least element of each class
  std::vector<int> class_of;              // element -> class index
  std::vector<Subgroup> centralizers;     // of reps
  Subgroup center;
};

ConjData conjugacy_data(const FiniteGroup& G);
Subgroup centralizer(const FiniteGroup& G, int g);

// ---- subgroup machinery ----------------------------------------------------

Subgroup subgroup_closure(const FiniteGroup& G, std::vector<int> gens);
Subgroup whole_group(const FiniteGroup& G);
Subgroup trivial_subgroup(const FiniteGroup& G);
std::vector<Subgroup> all_subgroups(const FiniteGroup& G);
bool is_normal(const FiniteGroup& G, const Subgroup& H);
bool is_abelian_subgroup(const FiniteGroup& G, const Subgroup& H);
Subgroup commutator_subgroup(const FiniteGroup& G);

// quotient G/N; second value is the projection as an image table
// (index in G -> index in G/N); coset reps canonical by least element
std::pair<FiniteGroup, std::vector<int>> quotient_group(const FiniteGroup& G, const Subgroup& N);
std::pair<FiniteGroup, std::vector<int>> abelianization(const FiniteGroup& G);

// subgroup H as a standalone group; second value maps new index -> parent element
std::pair<FiniteGroup, std::vector<int>> subgroup_as_group(const FiniteGroup& G,
                                                           const Subgroup& H);

std::vector<Subgroup> normal_abelian_subgroups(const FiniteGroup& G);
std::vector<Subgroup> semidirect_complements(const FiniteGroup& G, const Subgroup& N);
std::vector<std::pair<Subgroup, Subgroup>> direct_factorizations(const FiniteGroup& G);

// ---- automorphisms ----------------------------------------------------------

struct AutData {
  std::vector<GroupHom> auts;
  std::vector<GroupHom> inners;
  std::vector<GroupHom> outer_reps;   // one per Inn-coset
  std::vector<GroupHom> central_auts; // w with w(g)g^-1 central
};

AutData automorphism_data(const FiniteGroup& G, int bound = kMaxGroupOrder);
std::vector<int> minimal_generating_set(const FiniteGroup& G);
std::vector<GroupHom> all_homs(const FiniteGroup& A, const FiniteGroup& B, long cap = 2000000);
std::optional<GroupHom> find_isomorphism(const FiniteGroup& A, const FiniteGroup& B);
bool isomorphic(const FiniteGroup& A, const FiniteGroup& B);

// ---- abelian structure and duals -------------------------------------------

struct AbelianStructure {
  std::vector<long> factors;            // invariant factors m1 | m2 | ...
  std::vector<int> gens;                // generator elements, aligned with factors
  std::vector<std::vector<long>> dlog;  // element -> exponent vector over gens
};

AbelianStructure abelian_structure(const FiniteGroup& A);

// characters over the invariant-factor basis; chars[i] is the exponent vector
struct DualCharacter {
  std::vector<long> exps;
};

struct AbelianDual {
  AbelianStructure st;
  std::vector<DualCharacter> chars;  // all |A| characters, odometer order
  long exponent = 1;                 // lcm of factors

  int size() const { return static_cast<int>(chars.size()); }
  CycScalar eval(int chi, int elem) const;
  int mul_chars(int chi1, int chi2) const;
  int inv_char(int chi) const;
  int char_index(const DualCharacter& c) const;
  // character as a function of the PARENT group element (via dlog)
};

AbelianDual abelian_dual(const FiniteGroup& A);

// ---- Hom spaces and alternating subgroups ----------------------------------

// A homomorphism between abelian groups A -> B, stored as images of the
// invariant-factor generators of A.
struct AbHom {
  std::vector<int> gen_images;  // elements of B
};

std::vector<AbHom> all_abhoms(const AbelianStructure& A, const FiniteGroup& Bgrp,
                              const AbelianStructure& B, long cap = 2000000);

// b : G_ab -> dual(G_ab) as a full exponent matrix E over zeta_e, e = exp(G):
// value b(g)(h) = zeta_e^{E(g,h)}. Bilinear in both slots.
struct BilForm {
  long e = 1;  // root order
  Eigen::MatrixXi E;
  CycScalar val(int g, int h) const { return CycScalar::zeta(e, E(g, h)); }
};

struct HomAltData {
  // forms on G pulled back from G_ab paired with dual(G_ab)
  std::vector<BilForm> B_homs;  // all of Hom(G_ab, dual G_ab), as forms on G
  std::vector<BilForm> B_alt;
  // homs dual(Z(G)) -> Z(G): per dual character of Z(G), an element of Z(G);
  // stored with the ambient-element labels of Z(G)
  std::vector<std::vector<int>> E_homs;
  std::vector<std::vector<int>> E_alt;
};

// bound caps the hom-space sizes that get fully enumerated
HomAltData hom_and_alternating(const FiniteGroup& G, long cap = 2000000);

// Alternating homs A -> dual(A) enumerated via basis form entries (does not
// materialize the full hom space; used for large elementary abelian centers).
std::vector<BilForm> alternating_forms(const FiniteGroup& A, const AbelianStructure& st);

}  // namespace qd
