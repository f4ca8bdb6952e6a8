#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "affcoh/poly_module.hpp"

#include <random>

using namespace affcoh;

namespace {

std::mt19937 rng(911250);

rational rnd_q() {
  rational v((int)(rng() % 7) - 3, (int)(rng() % 3) + 1);
  v.canonicalize();
  return v;
}

svec rnd_vec(int n) {
  svec v;
  for (int i = 0; i < n; ++i) {
    rational q = rnd_q();
    if (sgn(q) != 0) v.set(i, q);
  }
  return v;
}

sym_multi_map rnd_sym(int arity, int n, int m) {
  sym_multi_map t{arity, n, m, {}};
  for (const auto& mu : index_multisets(n, arity))
    for (int b = 0; b < m; ++b) t.add(mu, b, rnd_q());
  return t;
}

poly_map rnd_poly(int k, int n, int m) {
  poly_map p = make_poly(k, n, m);
  for (int i = 0; i <= k; ++i) p.comp[i] = rnd_sym(i, n, m);
  return p;
}

lie_ptr solv2() {
  std::map<std::pair<int, int>, svec> t;
  t[{0, 1}] = svec_unit(1); /* [h,x] = x */
  return make_algebra({"h", "x"}, t);
}

sparse_matrix mat1(int v) {
  sparse_matrix m(1, 1);
  if (v != 0) m.set(0, 0, rational(v));
  return m;
}

representation weight_one(const lie_ptr& l) {
  return make_rep(l, 1, {mat1(1), mat1(0)}, {"v"});
}

affine_rep line_rep(const representation& r, int scale) {
  svec g1;
  if (scale != 0) g1.set(0, rational(scale));
  return from_pair(r, {svec{}, g1});
}

} // namespace

TEST_CASE("multiset indexing") {
  for (int n : {1, 2, 3})
    for (int p = 0; p <= 4; ++p) {
      auto ms = index_multisets(n, p);
      CHECK((long)ms.size() == count_multisets(n, p));
      for (int r = 0; r < (int)ms.size(); ++r) {
        CHECK(std::is_sorted(ms[r].begin(), ms[r].end()));
        CHECK(multiset_rank(n, ms[r]) == r);
        if (r > 0) CHECK(ms[r - 1] < ms[r]);
      }
    }
  CHECK(count_multisets(2, 3) == 4);
  CHECK(count_multisets(3, 2) == 6);
}

TEST_CASE("a symmetric map is determined by its diagonal values") {
  int n = 2, m = 2, arity = 3;
  auto ms = index_multisets(n, arity);
  int cols = (int)ms.size() * m;
  /* diagonal evaluations on a small grid as linear conditions on the map */
  std::vector<svec> grid;
  for (int u0 = 0; u0 <= 3; ++u0)
    for (int u1 = 0; u1 <= 3; ++u1) {
      svec u;
      if (u0) u.set(0, rational(u0));
      if (u1) u.set(1, rational(u1));
      grid.push_back(u);
    }
  sparse_matrix sys((int)grid.size() * m, cols);
  for (int g = 0; g < (int)grid.size(); ++g)
    for (int r = 0; r < (int)ms.size(); ++r) {
      sym_multi_map e{arity, n, m, {}};
      e.coords.emplace(std::make_pair(ms[r], 0), rational(1));
      svec val = diag_eval(e, grid[g]); /* same weight for every target */
      rational c = val.at(0);
      if (sgn(c) == 0) continue;
      for (int b = 0; b < m; ++b) sys.set(g * m + b, r * m + b, c);
    }
  CHECK(kernel_basis(sys).empty());

  sym_multi_map t = rnd_sym(arity, n, m);
  svec rhs;
  for (int g = 0; g < (int)grid.size(); ++g) {
    svec val = diag_eval(t, grid[g]);
    for (const auto& [b, v] : val.e) rhs.set(g * m + b, v);
  }
  auto rec = solve(sys, rhs);
  REQUIRE(rec.has_value());
  CHECK(*rec == sym_coords(t));
  CHECK(sym_from_coords(n, m, arity, *rec) == t);
}

TEST_CASE("evaluation of polynomial maps") {
  int n = 2, m = 2;
  poly_map c0 = make_poly(0, n, m);
  c0.comp[0].add({}, 1, rational(7));
  for (int s = 0; s < 5; ++s) CHECK(eval(c0, rnd_vec(n)) == svec{{{1, rational(7)}}});

  poly_map lin = make_poly(1, n, m);
  for (int i = 0; i < n; ++i) lin.comp[1].add({i}, i, rational(1));
  for (int s = 0; s < 5; ++s) {
    svec u = rnd_vec(n);
    CHECK(eval(lin, u) == u);
  }

  sym_multi_map q = rnd_sym(2, n, m);
  poly_map p2 = tau_section(q);
  for (int s = 0; s < 5; ++s) {
    svec u = rnd_vec(n);
    svec half = diag_eval(q, u);
    half.scale(rational(1, 2));
    CHECK(eval(p2, u) == half);
  }

  /* eval against the defining sum of scaled diagonal values */
  poly_map p = rnd_poly(3, n, m);
  for (int s = 0; s < 6; ++s) {
    svec u = rnd_vec(n);
    svec want;
    rational f(1);
    for (int i = 0; i <= 3; ++i) {
      if (i > 1) f /= i;
      want.add_scaled(diag_eval(p.comp[i], u), f);
    }
    CHECK(eval(p, u) == want);
  }
}

TEST_CASE("rebasing a polynomial map") {
  int n = 2, m = 2;
  poly_map p = rnd_poly(3, n, m);
  CHECK(rebase(p, svec{}) == p);

  poly_map p1 = rnd_poly(1, n, m);
  svec w = rnd_vec(n);
  poly_map q = rebase(p1, w);
  CHECK(q.comp[1] == p1.comp[1]);
  CHECK(q.comp[0] == p1.comp[0] + plug_first(p1.comp[1], w));

  svec back;
  back.add_scaled(w, rational(-1));
  CHECK(rebase(rebase(p, w), back) == p);

  for (int s = 0; s < 10; ++s) {
    svec u = rnd_vec(n);
    svec wu = w;
    wu.add_scaled(u, rational(1));
    CHECK(eval(rebase(p, w), u) == eval(p, wu));
  }
}

TEST_CASE("the action on polynomial maps") {
  auto l = solv2();
  auto r = weight_one(l);
  auto a = line_rep(r, 1);

  /* representation property is validated inside make_rep */
  representation pr2 = poly_rep(a, r, 2);
  CHECK(pr2.module_dim == 3);

  auto st = sl2_standard();
  svec v0 = rnd_vec(2);
  auto ast = from_pair(st, {st.action[0].apply(v0), st.action[1].apply(v0),
                            st.action[2].apply(v0)});
  representation pst = poly_rep(ast, st, 2);
  CHECK(pst.module_dim == 2 + 4 + 6);

  /* matrix form matches the direct formula */
  for (int s = 0; s < 4; ++s) {
    poly_map p = rnd_poly(2, 2, 2);
    for (int x = 0; x < 3; ++x)
      CHECK(poly_coords(act(ast, st, x, p)) == pst.action[x].apply(poly_coords(p)));
  }

  /* degree zero is the coefficient module itself */
  representation p0 = poly_rep(ast, st, 0);
  for (int x = 0; x < 3; ++x) CHECK(p0.action[x] == st.action[x]);

  /* acting on a section drops a plugged copy into the next component down */
  sym_multi_map t = rnd_sym(2, 2, 2);
  for (int x = 0; x < 3; ++x) {
    poly_map xt = act(ast, st, x, tau_section(t));
    CHECK(xt.comp[2] == sym_act(st, st, x, t));
    CHECK(xt.comp[1] == rational(-1) * plug_first(t, ast.gamma[x]));
    CHECK(xt.comp[0].zero());
  }

  /* base-point independence of the action */
  svec shift = rnd_vec(2);
  auto moved = from_pair(st, rebase(ast, shift));
  for (int s = 0; s < 3; ++s) {
    poly_map p = rnd_poly(2, 2, 2);
    for (int x = 0; x < 3; ++x)
      CHECK(rebase(act(ast, st, x, p), shift) == act(moved, st, x, rebase(p, shift)));
  }
}

TEST_CASE("filtration sequence and the symbol") {
  auto st = sl2_standard();
  svec v0 = rnd_vec(2);
  auto ast = from_pair(st, {st.action[0].apply(v0), st.action[1].apply(v0),
                            st.action[2].apply(v0)});
  auto tw = filtration_ses(ast, st, 2, 1);
  CHECK(tw.sub.module_dim == 6);
  CHECK(tw.total.module_dim == 12);
  CHECK(tw.quot.module_dim == 6);

  for (int s = 0; s < 4; ++s) {
    poly_map p = rnd_poly(2, 2, 2);
    for (int x = 0; x < 3; ++x)
      CHECK(symbol(act(ast, st, x, p), 2) == sym_act(st, st, x, symbol(p, 2)));
  }

  /* symbol of a lower-degree polynomial vanishes; tau splits the symbol */
  poly_map low = rnd_poly(1, 2, 2);
  CHECK(symbol(low, 2).zero());
  sym_multi_map t = rnd_sym(2, 2, 2);
  CHECK(symbol(tau_section(t), 2) == t);
  sym_multi_map t2 = rnd_sym(2, 2, 2);
  CHECK(tau_section(t) + tau_section(t2) == tau_section(t + t2));
  poly_map p = rnd_poly(2, 2, 2);
  poly_map defect = p - tau_section(symbol(p, 2));
  CHECK(defect.comp[2].zero());

  CHECK_THROWS_AS(filtration_ses(ast, st, 0, 1), error);
}

TEST_CASE("obstruction cocycle of the filtration") {
  auto l = solv2();
  auto r = weight_one(l);
  auto a = line_rep(r, 1);

  auto d = alpha_cocycle(a, r, 1);
  CHECK(coboundary(d.cplx, d.alpha).coords.zero());

  /* at degree one the value on t is the constant -t(x at the origin) */
  sym_multi_map t = rnd_sym(1, 1, 1);
  for (int x = 0; x < 2; ++x) {
    sparse_matrix hx = hom_matrix(d.sym, d.poly, eval_cochain(d.cplx, d.alpha, {x}));
    svec got = hx.apply(sym_coords(t));
    CHECK(got == poly_coords(tau_section(rational(-1) * plug_first(t, a.gamma[x]))));
  }

  /* a linear representation has no obstruction at all */
  auto lin = from_pair(r, {svec{}, svec{}});
  CHECK(alpha_cocycle(lin, r, 1).alpha.coords.zero());

  /* the class tracks exactly the class of the base cocycle */
  auto a2 = from_pair(r, rebase(a, rnd_vec(1)));
  auto d2 = alpha_cocycle(a2, r, 1);
  cochain diff = d.alpha;
  diff.coords.add_scaled(d2.alpha.coords, rational(-1));
  CHECK(is_coboundary(d.cplx, diff).has_value());

  auto d0 = alpha_cocycle(lin, r, 1);
  cochain gap = d.alpha;
  gap.coords.add_scaled(d0.alpha.coords, rational(-1));
  CHECK(!is_coboundary(d.cplx, gap).has_value());

  /* with no first cohomology every obstruction class collapses to zero */
  auto st = sl2_standard();
  svec v0 = rnd_vec(2);
  auto ast = from_pair(st, {st.action[0].apply(v0), st.action[1].apply(v0),
                            st.action[2].apply(v0)});
  auto dst = alpha_cocycle(ast, st, 1);
  auto dlin = alpha_cocycle(from_pair(st, {svec{}, svec{}, svec{}}), st, 1);
  cochain sgap = dst.alpha;
  sgap.coords.add_scaled(dlin.alpha.coords, rational(-1));
  CHECK(is_coboundary(dst.cplx, sgap).has_value());
}

TEST_CASE("connecting map") {
  auto l = solv2();
  auto r = weight_one(l);
  auto a = line_rep(r, 1);
  auto tw = filtration_ses(a, r, 1, 2);

  /* an invariant endomorphism connects to the class of the base cocycle */
  cochain tid{0, svec_unit(0)};
  cochain chi = connecting(tw, tid);
  CHECK(chi.degree == 1);
  CHECK(eval_cochain(tw.sub_cplx, chi, {0}).zero());
  svec minus_one;
  minus_one.set(0, rational(-1));
  CHECK(eval_cochain(tw.sub_cplx, chi, {1}) == minus_one);
  CHECK(coboundary(tw.sub_cplx, chi).coords.zero());
  CHECK(!is_coboundary(tw.sub_cplx, chi).has_value());
  CHECK(connecting_via_lift(tw, tid) == chi);

  /* one degree up: the class of the quotient complex lands in degree two */
  cochain t1 = cochain_from_values(tw.quot_cplx, 1, [&](const std::vector<int>& tup) {
    return tup[0] == 0 ? svec_unit(0) : svec{};
  });
  CHECK(coboundary(tw.quot_cplx, t1).coords.zero());
  cochain chi1 = connecting(tw, t1);
  CHECK(chi1.degree == 2);
  CHECK(eval_cochain(tw.sub_cplx, chi1, {0, 1}) == svec_unit(0));
  CHECK(!is_coboundary(tw.sub_cplx, chi1).has_value());
  CHECK(connecting_via_lift(tw, t1) == chi1);

  /* frozen dimensions for this tower; the long sequence forces them */
  CHECK(cohomology(tw.quot_cplx, 0).dimension == 1);
  CHECK(cohomology(tw.quot_cplx, 1).dimension == 1);
  CHECK(cohomology(tw.quot_cplx, 2).dimension == 0);
  CHECK(cohomology(tw.sub_cplx, 0).dimension == 0);
  CHECK(cohomology(tw.sub_cplx, 1).dimension == 1);
  CHECK(cohomology(tw.sub_cplx, 2).dimension == 1);
  CHECK(cohomology(tw.total_cplx, 0).dimension == 0);
  CHECK(cohomology(tw.total_cplx, 1).dimension == 0);
  CHECK(cohomology(tw.total_cplx, 2).dimension == 0);

  /* the connecting image of a boundary is a boundary */
  auto st = sl2_standard();
  svec v0 = rnd_vec(2);
  auto ast = from_pair(st, {st.action[0].apply(v0), st.action[1].apply(v0),
                            st.action[2].apply(v0)});
  auto tws = filtration_ses(ast, st, 1, 2);
  cochain s0{0, rnd_vec(tws.quot.module_dim)};
  cochain tb = coboundary(tws.quot_cplx, s0);
  cochain chib = connecting(tws, tb);
  CHECK(connecting_via_lift(tws, tb) == chib);
  CHECK(coboundary(tws.sub_cplx, chib).coords.zero());
  CHECK(is_coboundary(tws.sub_cplx, chib).has_value());

  /* non-cocycles are rejected */
  cochain junk = cochain_from_values(tws.quot_cplx, 1, [&](const std::vector<int>& tup) {
    return tup[0] == 0 ? svec_unit(1) : svec{};
  });
  CHECK(!coboundary(tws.quot_cplx, junk).coords.zero());
  CHECK_THROWS_AS(connecting(tws, junk), error);
}

TEST_CASE("pullback along equivariant affine maps") {
  auto l = solv2();
  auto r = weight_one(l);
  auto b = line_rep(r, 1);

  /* identity changes nothing */
  poly_map q = rnd_poly(2, 1, 1);
  CHECK(pullback(affine_identity(1), b, b, q) == q);

  /* translation by v intertwines the shifted copy with the original */
  svec v3 = svec_unit(0);
  v3.scale(rational(3));
  auto a = from_pair(r, [&] {
    auto g = b.gamma;
    for (int i = 0; i < 2; ++i) g[i].add_scaled(r.action[i].apply(v3), rational(1));
    return g;
  }());
  affine_map f{sparse_matrix::identity(1), v3};
  REQUIRE(is_intertwining(f, a, b));
  CHECK(pullback(f, a, b, q) == rebase(q, v3));
  poly_map q1 = rnd_poly(1, 1, 1);
  CHECK(pullback(f, a, b, q1).comp[0].at({}, 0) ==
        q1.comp[0].at({}, 0) + plug_first(q1.comp[1], v3).at({}, 0));

  /* a genuine linear part: the scalar intertwiner between scaled cocycles */
  auto b5 = line_rep(r, 5);
  auto g5 = equivalent(b, b5);
  REQUIRE(g5.has_value());
  for (int s = 0; s < 4; ++s) {
    poly_map qq = rnd_poly(2, 1, 1);
    for (int x = 0; x < 2; ++x)
      CHECK(act(b, r, x, pullback(*g5, b, b5, qq)) ==
            pullback(*g5, b, b5, act(b5, r, x, qq)));
  }

  /* non-equivariant maps are rejected */
  affine_map dbl{sparse_matrix::from_triplets(1, 1, {{0, 0, rational(2)}}), svec{}};
  CHECK_THROWS_AS(pullback(dbl, b, b, q), error);
}

TEST_CASE("serialization shape") {
  poly_map p = make_poly(1, 2, 1);
  p.comp[0].add({}, 0, rational(1, 2));
  p.comp[1].add({0}, 0, rational(-3));
  CHECK(poly_map_json(p) ==
        "{\"k\":1,\"components\":["
        "{\"arity\":0,\"entries\":[[[],0,\"1/2\"]]},"
        "{\"arity\":1,\"entries\":[[[0],0,\"-3/1\"]]}]}");
}
