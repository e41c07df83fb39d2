#include "doctest.h"

#include "qd/chars.hpp"

#include <algorithm>
#include <numeric>

using namespace qd;

namespace {

int elem(const FiniteGroup& G, const std::string& cycles) {
  auto p = perm_parse_cycles(static_cast<int>(G.perms[0].size()), cycles);
  for (int x = 0; x < G.n; ++x)
    if (G.perms[x] == p) return x;
  throw std::runtime_error("element not found: " + cycles);
}

}  // namespace

TEST_CASE("character tables of the fixture groups") {
  FiniteGroup S3 = named_group("S3");
  CharData d3 = character_data(S3);
  CHECK(d3.degrees == std::vector<long>{1, 1, 2});

  FiniteGroup S4 = named_group("S4");
  CharData d4 = character_data(S4);
  CHECK(d4.degrees == std::vector<long>{1, 1, 2, 3, 3});

  FiniteGroup Z2 = named_group("Z2");
  CharData dz = character_data(Z2);
  CHECK(dz.degrees == std::vector<long>{1, 1});

  CharData dd4 = character_data(named_group("D4"));
  CHECK(dd4.degrees == std::vector<long>{1, 1, 1, 1, 2});
  CharData dq8 = character_data(named_group("Q8"));
  CHECK(dq8.degrees == std::vector<long>{1, 1, 1, 1, 2});
}

TEST_CASE("Frobenius reciprocity and inner products") {
  FiniteGroup S4 = named_group("S4");
  CharData gd = character_data(S4);
  // <chi, chi> = 1 for every irreducible
  for (size_t i = 0; i < gd.irr.size(); ++i)
    CHECK(inner_product(gd, gd.irr[i], gd.irr[i]) == CycScalar(1));

  // subgroup: centralizer of (12)(34), iso D4
  int g = elem(S4, "(12)(34)");
  Subgroup cent = centralizer(S4, g);
  auto [cg, embed] = subgroup_as_group(S4, cent);
  CharData hd = character_data(cg);
  for (size_t a = 0; a < gd.irr.size(); ++a)
    for (size_t b = 0; b < hd.irr.size(); ++b) {
      CycScalar lhs = inner_product(hd, restrict_to(gd, gd.irr[a], hd, embed), hd.irr[b]);
      CycScalar rhs = inner_product(gd, gd.irr[a], induce_from(gd, hd, embed, hd.irr[b]));
      CHECK(lhs == rhs);
    }

  // restrict(triv, H) = triv
  int triv = char_by_values(gd, 1, {{elem(S4, "(12)"), CycScalar(1)}});
  ClassFunction triv_res = restrict_to(gd, gd.irr[triv], hd, embed);
  for (auto& v : triv_res.vals) CHECK(v == CycScalar(1));

  // S3 as well, smaller
  FiniteGroup S3 = named_group("S3");
  CharData d3 = character_data(S3);
  Subgroup A3 = commutator_subgroup(S3);
  auto [a3g, a3e] = subgroup_as_group(S3, A3);
  CharData da3 = character_data(a3g);
  for (size_t a = 0; a < d3.irr.size(); ++a)
    for (size_t b = 0; b < da3.irr.size(); ++b)
      CHECK(inner_product(da3, restrict_to(d3, d3.irr[a], da3, a3e), da3.irr[b]) ==
            inner_product(d3, d3.irr[a], induce_from(d3, da3, a3e, da3.irr[b])));
}

TEST_CASE("S4 fixture characters and the induction constraint") {
  FiniteGroup S4 = named_group("S4");
  CharData gd = character_data(S4);
  int t12 = elem(S4, "(12)");
  // ref3: degree 3 with value 1 on transpositions; ref3 x sgn: value -1
  int ref3 = char_by_values(gd, 3, {{t12, CycScalar(1)}});
  int ref3sgn = char_by_values(gd, 3, {{t12, CycScalar(-1)}});
  int sgn = char_by_values(gd, 1, {{t12, CycScalar(-1)}});
  CHECK(ref3 != ref3sgn);
  // ref3 x sgn as a pointwise product
  for (int k = 0; k < gd.num_classes(); ++k)
    CHECK(gd.irr[ref3sgn].vals[k] == gd.irr[ref3].vals[k] * gd.irr[sgn].vals[k]);

  // Cent((12)(34)) = <(12),(13)(24)> iso D4; the (++) style labels
  int g = elem(S4, "(12)(34)");
  Subgroup cent = centralizer(S4, g);
  auto [cg, embed] = subgroup_as_group(S4, cent);
  CharData hd = character_data(cg);
  std::vector<int> c_to_g(cg.n);
  for (int i = 0; i < cg.n; ++i) c_to_g[i] = embed[i];
  int gen1 = -1, gen2 = -1;  // (12), (13)(24) inside the centralizer group
  for (int i = 0; i < cg.n; ++i) {
    if (embed[i] == elem(S4, "(12)")) gen1 = i;
    if (embed[i] == elem(S4, "(13)(24)")) gen2 = i;
  }
  REQUIRE(gen1 >= 0);
  REQUIRE(gen2 >= 0);
  auto label = [&](int s1, int s2) {
    return char_by_values(hd, 1,
                          {{gen1, CycScalar(s1)}, {gen2, CycScalar(s2)}});
  };
  // section 6.6: Ind_{Cent}((--)) = ref3 x sgn and Ind_{Cent}((+-)) = ref3,
  // both irreducible
  {
    ClassFunction ind_mm = induce_from(gd, hd, embed, hd.irr[label(-1, -1)]);
    CHECK(inner_product(gd, ind_mm, gd.irr[ref3sgn]) == CycScalar(1));
    CHECK(inner_product(gd, ind_mm, ind_mm) == CycScalar(1));
    ClassFunction ind_pm = induce_from(gd, hd, embed, hd.irr[label(1, -1)]);
    CHECK(inner_product(gd, ind_pm, gd.irr[ref3]) == CycScalar(1));
  }
}

TEST_CASE("Clifford decomposition fixtures") {
  // S3, chi = ref, N = A3: e = 1, orbit {zeta, zeta^2}, trivial inertia
  FiniteGroup S3 = named_group("S3");
  CharData d3 = character_data(S3);
  Subgroup A3 = commutator_subgroup(S3);
  int ref = -1;
  for (size_t i = 0; i < d3.irr.size(); ++i)
    if (d3.degrees[i] == 2) ref = static_cast<int>(i);
  auto cl = clifford_decomposition(d3, ref, A3);
  CHECK(cl.e == 1);
  CHECK(cl.orbit.size() == 2);
  for (auto& I : cl.inertia) CHECK(I.order() == 1);

  // S4, chi = ref3, N = Klein: orbit = the three nontrivial characters, e = 1
  FiniteGroup S4 = named_group("S4");
  CharData d4 = character_data(S4);
  Subgroup klein;
  for (auto& N : normal_abelian_subgroups(S4))
    if (N.order() == 4) klein = N;
  int t12 = elem(S4, "(12)");
  int ref3 = char_by_values(d4, 3, {{t12, CycScalar(1)}});
  int ref3sgn = char_by_values(d4, 3, {{t12, CycScalar(-1)}});
  auto cl4 = clifford_decomposition(d4, ref3, klein);
  CHECK(cl4.e == 1);
  CHECK(cl4.orbit.size() == 3);
  for (int ci : cl4.orbit) {
    bool trivial = true;
    for (int i = 0; i < cl4.Ngrp.n && trivial; ++i)
      trivial = cl4.ndual.eval(ci, i) == CycScalar(1);
    CHECK(!trivial);
  }
  auto cl4b = clifford_decomposition(d4, ref3sgn, klein);
  CHECK(cl4b.orbit == cl4.orbit);

  // chi with N in the kernel: e = dim, orbit = {triv}
  int ref2 = char_by_values(d4, 2, {});
  auto cl2 = clifford_decomposition(d4, ref2, klein);
  CHECK(cl2.e == 2);
  CHECK(cl2.orbit.size() == 1);
  CHECK(cl2.orbit[0] == cl2.ndual.char_index(DualCharacter{{0, 0}}));
}

TEST_CASE("isotypic characters reproduce the worked reflections") {
  // S4: r(O_1^{ref3}) = O_{(12)(34)}^{(++)} and ref3xsgn -> (-+), where the
  // G-invariant delta on the Klein group is the hyperbolic pairing
  FiniteGroup S4 = named_group("S4");
  CharData d4 = character_data(S4);
  Subgroup klein;
  for (auto& N : normal_abelian_subgroups(S4))
    if (N.order() == 4) klein = N;
  int t12 = elem(S4, "(12)");
  int ref3 = char_by_values(d4, 3, {{t12, CycScalar(1)}});
  int ref3sgn = char_by_values(d4, 3, {{t12, CycScalar(-1)}});
  auto cl = clifford_decomposition(d4, ref3, klein);

  // delta: invariant iso N -> dual(N): delta(n)(m) = (-1)^{hyperbolic(n,m)};
  // build it by searching the dual characters for invariance
  // delta(n^q)(m^q) = delta(n)(m)
  // represent delta as: N element index (in Ngrp) -> dual char index
  auto invariant_deltas = [&]() {
    std::vector<std::vector<int>> out;
    // all isos Ngrp -> dual: try assignments generator-wise (small: 4!)
    std::vector<int> perm(cl.Ngrp.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      // must send identity to trivial char and be a group iso
      bool ok = true;
      for (int a = 0; a < cl.Ngrp.n && ok; ++a)
        for (int b = 0; b < cl.Ngrp.n && ok; ++b) {
          int ab = cl.Ngrp.mul(a, b);
          ok = cl.ndual.mul_chars(perm[a], perm[b]) == perm[ab];
        }
      if (!ok) continue;
      // invariance under conjugation by all of G
      std::vector<int> g_to_n(S4.n, -1);
      for (int i = 0; i < cl.Ngrp.n; ++i) g_to_n[cl.nembed[i]] = i;
      bool inv = true;
      for (int t = 0; t < S4.n && inv; ++t)
        for (int a = 0; a < cl.Ngrp.n && inv; ++a)
          for (int b = 0; b < cl.Ngrp.n && inv; ++b) {
            int aq = g_to_n[S4.conj_inv(t, cl.nembed[a])];
            int bq = g_to_n[S4.conj_inv(t, cl.nembed[b])];
            inv = cl.ndual.eval(perm[aq], bq) == cl.ndual.eval(perm[a], b);
          }
      if (inv) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }();
  REQUIRE(invariant_deltas.size() == 1);
  auto& delta = invariant_deltas[0];

  // n_i = delta^-1(chi_i) for the orbit representative whose centralizer we use
  int n12q34 = elem(S4, "(12)(34)");
  std::vector<int> g_to_n(S4.n, -1);
  for (int i = 0; i < cl.Ngrp.n; ++i) g_to_n[cl.nembed[i]] = i;
  int chi_i = delta[g_to_n[n12q34]];
  REQUIRE(std::find(cl.orbit.begin(), cl.orbit.end(), chi_i) != cl.orbit.end());

  Subgroup cent = centralizer(S4, n12q34);
  auto [cg, embed] = subgroup_as_group(S4, cent);
  CharData centd = character_data(cg);
  int gen1 = -1, gen2 = -1;
  for (int i = 0; i < cg.n; ++i) {
    if (embed[i] == elem(S4, "(12)")) gen1 = i;
    if (embed[i] == elem(S4, "(13)(24)")) gen2 = i;
  }
  ClassFunction rho = isotypic_character(d4, ref3, cl, chi_i, n12q34, centd, embed);
  // rho = (++): +1 on both generators
  CHECK(rho.vals[centd.cd.class_of[gen1]] == CycScalar(1));
  CHECK(rho.vals[centd.cd.class_of[gen2]] == CycScalar(1));

  auto cls = clifford_decomposition(d4, ref3sgn, klein);
  ClassFunction rho2 = isotypic_character(d4, ref3sgn, cls, chi_i, n12q34, centd, embed);
  // rho2 = (-+)
  CHECK(rho2.vals[centd.cd.class_of[gen1]] == CycScalar(-1));
  CHECK(rho2.vals[centd.cd.class_of[gen2]] == CycScalar(1));

  // S3: r(O_1^{ref}) = O_{(123)}^{1}
  FiniteGroup S3 = named_group("S3");
  CharData d3 = character_data(S3);
  Subgroup A3 = commutator_subgroup(S3);
  int refc = -1;
  for (size_t i = 0; i < d3.irr.size(); ++i)
    if (d3.degrees[i] == 2) refc = static_cast<int>(i);
  auto cl3 = clifford_decomposition(d3, refc, A3);
  int n123 = elem(S3, "(123)");
  std::vector<int> g_to_n3(S3.n, -1);
  for (int i = 0; i < cl3.Ngrp.n; ++i) g_to_n3[cl3.nembed[i]] = i;
  // any delta with delta((123)) in the orbit; use the first orbit char
  int chi3 = cl3.orbit[0];
  Subgroup cent3 = centralizer(S3, n123);
  auto [c3g, emb3] = subgroup_as_group(S3, cent3);
  CharData cent3d = character_data(c3g);
  ClassFunction rho3 = isotypic_character(d3, refc, cl3, chi3, n123, cent3d, emb3);
  for (auto& v : rho3.vals) CHECK(v == CycScalar(1));  // trivial character

  // Clifford correspondence: inducing the chi_i-twist of rho recovers chi
  ClassFunction corr;
  for (int k = 0; k < cent3d.num_classes(); ++k) {
    int c = cent3d.cd.reps[k];
    // Cent((123)) = A3 = N here, so the twist is chi_i itself
    corr.vals.push_back(rho3.vals[k] * cl3.ndual.eval(chi3, g_to_n3[emb3[c]]));
  }
  ClassFunction back = induce_from(d3, cent3d, emb3, corr);
  CycScalar m = inner_product(d3, back, d3.irr[refc]);
  CHECK(!m.is_zero());
}
