#include "doctest.h"

#include "qd/hopfaut.hpp"

#include <random>
#include <set>

using namespace qd;

TEST_CASE("identity, apply, compose") {
  FiniteGroup K4 = named_group("Z2^2");
  HopfAutCtx ctx = hopfaut_ctx(K4);
  HopfAutQuad id = identity_quad(ctx);
  for (int x = 0; x < 4; ++x)
    for (int g = 0; g < 4; ++g) CHECK(apply_quad_basis(ctx, id, x, g) == dg_basis(x, g));
  CHECK(verify_quad(ctx, id).ok);

  // v-type compose: V(v) V(v') = V(v v')
  AutData ad = automorphism_data(K4);
  for (size_t i = 0; i < ad.auts.size(); ++i)
    for (size_t j = 0; j < ad.auts.size(); ++j) {
      HopfAutQuad q1 = make_V(ctx, ad.auts[i]);
      HopfAutQuad q2 = make_V(ctx, ad.auts[j]);
      HopfAutQuad q12 = compose_quads(ctx, q1, q2);
      CHECK(q12 == make_V(ctx, compose(ad.auts[i], ad.auts[j])));
    }

  // b-type . a-type equals direct linear composite (verified inside compose)
  FiniteGroup Z2 = named_group("Z2");
  HopfAutCtx c2 = hopfaut_ctx(Z2);
  HomAltData had = hom_and_alternating(Z2);
  for (const auto& b : had.B_homs)
    for (const auto& am : had.E_homs) {
      HopfAutQuad qb = make_B(c2, b);
      HopfAutQuad qa = make_E(c2, am);
      HopfAutQuad q = compose_quads(c2, qb, qa);
      {
        // spot check: apply matches composed applications
        for (int x = 0; x < 2; ++x)
          for (int g = 0; g < 2; ++g) {
            DGElem lhs = apply_quad_basis(c2, q, x, g);
            DGElem rhs = apply_quad(c2, qb, apply_quad_basis(c2, qa, x, g));
            CHECK(lhs == rhs);
          }
      }
    }
}

TEST_CASE("generator families verify and have the right sizes") {
  FiniteGroup D4 = named_group("D4");
  HopfAutCtx ctx = hopfaut_ctx(D4);
  HomAltData had = hom_and_alternating(D4);
  CHECK(had.B_homs.size() == 16);  // Hom(Z2^2, Z2^2-hat)
  CHECK(had.E_homs.size() == 2);   // Hom(Z2-hat, Z2)
  for (const auto& b : had.B_homs) CHECK(verify_quad(ctx, make_B(ctx, b)).ok);
  for (const auto& am : had.E_homs) CHECK(verify_quad(ctx, make_E(ctx, am)).ok);
  AutData ad = automorphism_data(D4);
  for (const auto& a : ad.auts) CHECK(verify_quad(ctx, make_V(ctx, a)).ok);
  for (const auto& w : ad.central_auts) CHECK(verify_quad(ctx, make_Vc(ctx, w)).ok);
  // make_V(id) is the identity quadruple
  CHECK(make_V(ctx, identity_hom(D4)) == identity_quad(ctx));
}

TEST_CASE("dagger is an involutive anti-automorphism") {
  FiniteGroup K4 = named_group("Z2^2");
  HopfAutCtx ctx = hopfaut_ctx(K4);
  CHECK(dagger_quad(ctx, identity_quad(ctx)) == identity_quad(ctx));
  // sample from the four families and their composites
  std::vector<HopfAutQuad> pool;
  AutData ad = automorphism_data(K4);
  HomAltData had = hom_and_alternating(K4);
  for (const auto& a : ad.auts) pool.push_back(make_V(ctx, a));
  for (const auto& b : had.B_homs) pool.push_back(make_B(ctx, b));
  for (const auto& am : had.E_homs) pool.push_back(make_E(ctx, am));
  std::mt19937 rng(5);
  std::vector<HopfAutQuad> sample;
  for (int t = 0; t < 12; ++t) {
    HopfAutQuad q = pool[rng() % pool.size()];
    q = compose_quads(ctx, q, pool[rng() % pool.size()]);
    sample.push_back(q);
  }
  for (const auto& q : sample) {
    CHECK(dagger_quad(ctx, dagger_quad(ctx, q)) == q);
    CHECK(verify_quad(ctx, dagger_quad(ctx, q)).ok);
  }
  for (size_t i = 0; i + 1 < sample.size(); i += 2) {
    const auto& q1 = sample[i];
    const auto& q2 = sample[i + 1];
    CHECK(dagger_quad(ctx, compose_quads(ctx, q1, q2)) ==
          compose_quads(ctx, dagger_quad(ctx, q2), dagger_quad(ctx, q1)));
  }
}

TEST_CASE("reflections") {
  // Z2 full reflection: order 2, basis swap behavior
  FiniteGroup Z2 = named_group("Z2");
  HopfAutCtx c2 = hopfaut_ctx(Z2);
  Reflection r2 = standard_reflection(Z2, trivial_subgroup(Z2), whole_group(Z2));
  HopfAutQuad q2 = make_reflection(c2, r2);
  CHECK(verify_quad(c2, q2).ok);
  CHECK(compose_quads(c2, q2, q2) == identity_quad(c2));

  // all plain reflections of Z2^2 are involutions
  FiniteGroup K4 = named_group("Z2^2");
  HopfAutCtx c4 = hopfaut_ctx(K4);
  auto refls = all_reflections(K4);
  int nontrivial = 0;
  for (const auto& r : refls) {
    HopfAutQuad q = make_reflection(c4, r);
    CHECK(verify_quad(c4, q).ok);
    CHECK(compose_quads(c4, q, q) == identity_quad(c4));
    if (r.C.order() > 1) ++nontrivial;
  }
  CHECK(nontrivial > 0);

  // S3 has no nontrivial reflections (no direct factors)
  FiniteGroup S3 = named_group("S3");
  auto rs3 = all_reflections(S3);
  for (const auto& r : rs3) CHECK(r.C.order() == 1);

  // D4 likewise
  auto rd4 = all_reflections(named_group("D4"));
  for (const auto& r : rd4) CHECK(r.C.order() == 1);
}

TEST_CASE("enumeration matches GL_2(F_p) for p = 2, 3") {
  FiniteGroup Z2 = named_group("Z2");
  HopfAutCtx c2 = hopfaut_ctx(Z2);
  auto all2 = enumerate_aut_hopf(c2);
  CHECK(all2.size() == 6);  // |GL_2(F_2)|

  FiniteGroup Z3 = named_group("Z3");
  HopfAutCtx c3 = hopfaut_ctx(Z3);
  auto all3 = enumerate_aut_hopf(c3);
  CHECK(all3.size() == 48);  // |GL_2(F_3)| = (9-1)(9-3)

  // group law closure: compose two random elements, must be in the list
  std::mt19937 rng(11);
  std::set<HopfAutQuad> set3(all3.begin(), all3.end());
  for (int t = 0; t < 10; ++t) {
    const auto& a = all3[rng() % all3.size()];
    const auto& b = all3[rng() % all3.size()];
    CHECK(set3.count(compose_quads(c3, a, b)) == 1);
    CHECK(set3.count(inverse_quad(c3, a)) == 1);
  }
}

TEST_CASE("fp matrix dictionary round trips") {
  FiniteGroup K4 = named_group("Z2^2");
  HopfAutCtx ctx = hopfaut_ctx(K4);
  FpCoords fc = fp_coords(K4);
  std::vector<HopfAutQuad> pool;
  AutData ad = automorphism_data(K4);
  HomAltData had = hom_and_alternating(K4);
  for (const auto& a : ad.auts) pool.push_back(make_V(ctx, a));
  for (const auto& b : had.B_homs) pool.push_back(make_B(ctx, b));
  for (const auto& am : had.E_homs) pool.push_back(make_E(ctx, am));
  for (const auto& r : all_reflections(K4)) pool.push_back(make_reflection(ctx, r));
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    HopfAutQuad q = compose_quads(ctx, pool[rng() % pool.size()], pool[rng() % pool.size()]);
    MatZ M = quad_to_fpmatrix(ctx, fc, q);
    CHECK(fpmatrix_to_quad(ctx, fc, M) == q);
  }
  // multiplicativity of the dictionary
  for (int t = 0; t < 10; ++t) {
    const auto& a = pool[rng() % pool.size()];
    const auto& b = pool[rng() % pool.size()];
    MatZ Ma = quad_to_fpmatrix(ctx, fc, a), Mb = quad_to_fpmatrix(ctx, fc, b);
    MatZ Mab = quad_to_fpmatrix(ctx, fc, compose_quads(ctx, a, b));
    MatZ prod = MatZ::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) prod(i, j) = (prod(i, j) + Ma(i, k) * Mb(k, j)) % 2;
    CHECK(prod == Mab);
  }
}

TEST_CASE("factorization round trips") {
  // elementary abelian fast path: random words in generators of D(Z2^2)
  FiniteGroup K4 = named_group("Z2^2");
  HopfAutCtx ctx = hopfaut_ctx(K4);
  std::vector<HopfAutQuad> pool;
  AutData ad = automorphism_data(K4);
  HomAltData had = hom_and_alternating(K4);
  for (const auto& a : ad.auts) pool.push_back(make_V(ctx, a));
  for (const auto& b : had.B_homs) pool.push_back(make_B(ctx, b));
  for (const auto& am : had.E_homs) pool.push_back(make_E(ctx, am));
  for (const auto& r : all_reflections(K4)) pool.push_back(make_reflection(ctx, r));
  std::mt19937 rng(17);
  for (int t = 0; t < 25; ++t) {
    HopfAutQuad q = identity_quad(ctx);
    int len = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < len; ++i) q = compose_quads(ctx, q, pool[rng() % pool.size()]);
    // factor_aut_hopf verifies the product internally; reaching here means pass
    HopfFactorization f = factor_aut_hopf(ctx, q);
    CHECK(f.refl.C.order() >= 1);
  }
  // identity factors with the trivial reflection
  HopfFactorization fid = factor_aut_hopf(ctx, identity_quad(ctx));
  CHECK(fid.refl.C.order() == 1);

  // the full reflection of Z2^2 lies in the C = Z2^2 coset
  Reflection rfull = standard_reflection(K4, trivial_subgroup(K4), whole_group(K4));
  HopfAutQuad qfull = make_reflection(ctx, rfull);
  HopfFactorization ff = factor_aut_hopf(ctx, qfull);
  CHECK(ff.refl.C.order() == 4);

  // generic path on a non-abelian group: factor a V-element of S3
  FiniteGroup S3 = named_group("S3");
  HopfAutCtx c3 = hopfaut_ctx(S3);
  AutData ad3 = automorphism_data(S3);
  HopfAutQuad qv = make_V(c3, ad3.auts[3]);
  HopfFactorization f3 = factor_aut_hopf(c3, qv);
  CHECK(f3.refl.C.order() == 1);
}
