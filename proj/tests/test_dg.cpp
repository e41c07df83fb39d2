#include "doctest.h"

#include "qd/dg.hpp"

using namespace qd;

TEST_CASE("DG structure constants") {
  FiniteGroup S3 = named_group("S3");
  // (e_x x y)(e_x' x y') = delta_{x, y x' y^-1} e_x x y y'
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y)
      for (int x2 = 0; x2 < 6; ++x2)
        for (int y2 = 0; y2 < 6; ++y2) {
          DGElem p = dg_mul(S3, dg_basis(x, y), dg_basis(x2, y2));
          if (x == S3.conj(y, x2)) {
            CHECK(p == dg_basis(x, S3.mul(y, y2)));
          } else {
            CHECK(p.t.empty());
          }
        }
  // antipode formula
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      auto [k, v] = dg_antipode_basis(S3, x, y);
      CHECK(k.first == S3.conj(S3.inv[y], S3.inv[x]));
      CHECK(k.second == S3.inv[y]);
      CHECK(v == CycScalar(1));
    }
}

TEST_CASE("Hopf axioms pass for fixture groups, fail for corrupted product") {
  for (const char* name : {"Z2", "Z3", "Z2^2", "S3", "D4"}) {
    FiniteGroup G = named_group(name);
    HopfReport rep = verify_hopf_axioms(G);
    CHECK(rep.ok);
  }
  // negative control: perturb the product
  FiniteGroup Z2 = named_group("Z2");
  auto corrupted = [](const FiniteGroup& G, int x, int y, int x2, int y2) {
    DGElem r;
    if (x == G.conj(y, x2)) r.add(x, G.mul(y, y2), CycScalar(1));
    if (x == 1 && y == 1 && x2 == 1 && y2 == 1) {
      r = DGElem{};
      r.add(0, 0, CycScalar(1));  // wrong target
    }
    return r;
  };
  HopfReport bad = verify_hopf_axioms_with(Z2, corrupted);
  CHECK(!bad.ok);
  CHECK(!bad.witness.empty());
}

TEST_CASE("simple modules: counts, dimensions, axioms") {
  // Z2: 4 one-dimensional simples
  FiniteGroup Z2 = named_group("Z2");
  DGCtx c2 = build_dg_ctx(Z2);
  CHECK(c2.num_simples() == 4);
  for (const auto& m : c2.modules) CHECK(m.dim == 1);

  // S3: 8 simples, 3 over class 1, 2 over the transposition class, 3 over the
  // 3-cycle class; sum of dim^2 = 36
  FiniteGroup S3 = named_group("S3");
  DGCtx c3 = build_dg_ctx(S3);
  CHECK(c3.num_simples() == 8);
  long total = 0;
  std::map<int, int> per_class;
  for (const auto& s : c3.simples) {
    per_class[s.cls]++;
    total += c3.dim_of(s) * c3.dim_of(s);
  }
  CHECK(total == 36);
  // class 0 = identity class
  CHECK(per_class[c3.cd.class_of[S3.id]] == 3);

  for (const auto& m : c3.modules) CHECK(check_module_axioms(c3, m));

  // O_1^chi: e_h x 1 acts as delta_{h,1} id
  for (int i = 0; i < c3.num_simples(); ++i) {
    if (c3.simples[i].cls != c3.cd.class_of[S3.id]) continue;
    const DGModule& m = c3.modules[i];
    for (int h = 0; h < S3.n; ++h) {
      MatC a = act_basis(m, h, S3.id);
      if (h == S3.id) CHECK(mats_equal(a, identity_c(m.dim)));
      else {
        bool zero = true;
        for (int r = 0; r < a.rows(); ++r)
          for (int cidx = 0; cidx < a.cols(); ++cidx) zero = zero && a(r, cidx).is_zero();
        CHECK(zero);
      }
    }
  }

  // D4 as well (2-dimensional centralizer irreducibles appear)
  FiniteGroup D4 = named_group("D4");
  DGCtx cd4 = build_dg_ctx(D4);
  long total4 = 0;
  for (const auto& s : cd4.simples) total4 += cd4.dim_of(s) * cd4.dim_of(s);
  CHECK(total4 == 64);
  for (const auto& m : cd4.modules) CHECK(check_module_axioms(cd4, m));
}

TEST_CASE("unit acts as identity on tensors too") {
  FiniteGroup S3 = named_group("S3");
  DGCtx ctx = build_dg_ctx(S3);
  const DGModule& A = ctx.modules[ctx.num_simples() - 1];
  const DGModule& B = ctx.modules[2];
  DGModule T = tensor_module(ctx, A, B);
  CHECK(check_module_axioms(ctx, T));
  // unit = sum_h e_h x id acts as identity: sum over act_basis
  MatC acc(T.dim, T.dim);
  acc.setConstant(CycScalar(0));
  for (int h = 0; h < S3.n; ++h) acc += act_basis(T, h, S3.id);
  CHECK(mats_equal(acc, identity_c(T.dim)));
}

TEST_CASE("braiding: transposition on electric pairs, hexagons, naturality") {
  // electric simples O_1^chi braid by plain transposition
  FiniteGroup S3 = named_group("S3");
  DGCtx ctx = build_dg_ctx(S3);
  int id_cls = ctx.cd.class_of[S3.id];
  std::vector<int> electric;
  for (int i = 0; i < ctx.num_simples(); ++i)
    if (ctx.simples[i].cls == id_cls) electric.push_back(i);
  for (int a : electric)
    for (int b : electric) {
      const DGModule& A = ctx.modules[a];
      const DGModule& B = ctx.modules[b];
      MatC c = braiding_matrix(S3, A, B);
      // plain transposition tau(m x n) = n x m
      MatC tau(B.dim * A.dim, A.dim * B.dim);
      tau.setConstant(CycScalar(0));
      for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < B.dim; ++j) tau(j * A.dim + i, i * B.dim + j) = CycScalar(1);
      CHECK(mats_equal(c, tau));
    }

  // hexagons on all triples of simples of Z3
  FiniteGroup Z3 = named_group("Z3");
  DGCtx c3 = build_dg_ctx(Z3);
  for (int a = 0; a < c3.num_simples(); ++a)
    for (int b = 0; b < c3.num_simples(); ++b)
      for (int c = 0; c < c3.num_simples(); ++c)
        CHECK(check_hexagons(c3, c3.modules[a], c3.modules[b], c3.modules[c]));

  // naturality (R-matrix intertwiner) on all pairs of S3 simples
  for (int a = 0; a < ctx.num_simples(); ++a)
    for (int b = 0; b < ctx.num_simples(); ++b)
      CHECK(check_braiding_naturality(ctx, ctx.modules[a], ctx.modules[b]));

  // braiding invertibility: matrix has full rank
  for (int a = 0; a < ctx.num_simples(); ++a)
    for (int b = 0; b < ctx.num_simples(); ++b) {
      MatC c = braiding_matrix(S3, ctx.modules[a], ctx.modules[b]);
      CHECK(rank_of(c) == c.rows());
    }

  // hexagons on a few S3 triples including higher-dimensional simples
  CHECK(check_hexagons(ctx, ctx.modules[3], ctx.modules[5], ctx.modules[7]));
  CHECK(check_hexagons(ctx, ctx.modules[7], ctx.modules[3], ctx.modules[2]));
}
