#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "affcoh/tensor_fields.hpp"

#include <random>
#include <set>

using namespace affcoh;

namespace {

std::mt19937 rng(20260822);

rational rnd_q() {
  rational v((int)(rng() % 7) - 3, (int)(rng() % 3) + 1);
  v.canonicalize();
  return v;
}

poly rnd_poly(int m, int dmax) {
  poly p(m);
  for (auto& a : expos_upto(m, dmax))
    if (rng() % 3 == 0) p.add(a, rnd_q());
  return p;
}

vfield rnd_vf(int m, int dmax) {
  vfield x(m);
  for (int i = 0; i < m; ++i) x.add(i, rnd_poly(m, dmax));
  return x;
}

oneform rnd_of(int m, int dmax) {
  oneform a(m);
  for (int i = 0; i < m; ++i) a.add(i, rnd_poly(m, dmax));
  return a;
}

s12 rnd_s12(int m, int dmax) {
  s12 s(m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) s.add(k, i, j, rnd_poly(m, dmax));
  return s;
}

contra rnd_contra(int m, int p, int dmax) {
  contra q(m, p);
  for (auto& key : multisets(m, p)) q.add(key, rnd_poly(m, dmax));
  return q;
}

std::vector<vfield> mono_fields(int m, int dmax) {
  std::vector<vfield> out;
  for (int i = 0; i < m; ++i)
    for (auto& a : expos_upto(m, dmax)) out.push_back(v_mono(m, i, a));
  return out;
}

} // namespace

TEST_CASE("polynomial arithmetic") {
  poly a = p_var(2, 0) + p_var(2, 1);
  poly b = p_var(2, 0) - p_var(2, 1);
  poly prod = a * b;
  poly expect = p_mono(2, {2, 0}) - p_mono(2, {0, 2});
  CHECK(prod == expect);
  CHECK(prod.degree() == 2);
  CHECK(diff(prod, 0) == rational(2) * p_var(2, 0));
  CHECK(diff(prod, 1) == rational(-2) * p_var(2, 1));
  CHECK(poly(2).zero());
  CHECK(poly(2).degree() == -1);
  CHECK(poly_str(p_mono(2, {2, 1}, rational(-1, 2))) == "-1/2*x1^2*x2");
  CHECK_THROWS_AS(p_var(2, 0) + p_var(3, 0), error);
}

TEST_CASE("vector field brackets") {
  int m = 2;
  auto d1 = coord_field(m, 0);
  auto x1d1 = v_mono(m, 0, {1, 0});
  CHECK(bracket(d1, x1d1) == d1);
  CHECK(bracket(d1, coord_field(m, 1)).zero());
  auto x1d2 = v_mono(m, 1, {1, 0});
  auto x2d1 = v_mono(m, 0, {0, 1});
  CHECK(bracket(x1d2, x2d1) == v_mono(m, 0, {1, 0}) - v_mono(m, 1, {0, 1}));

  /* Jacobi on all monomial triples of degree <= 3 */
  auto fs = mono_fields(m, 3);
  bool ok = true;
  for (int i = 0; i < (int)fs.size() && ok; ++i)
    for (int j = i + 1; j < (int)fs.size() && ok; ++j)
      for (int k = j + 1; k < (int)fs.size() && ok; ++k) {
        vfield s = bracket(bracket(fs[i], fs[j]), fs[k]) +
                   bracket(bracket(fs[j], fs[k]), fs[i]) +
                   bracket(bracket(fs[k], fs[i]), fs[j]);
        ok = s.zero();
      }
  CHECK(ok);
}

TEST_CASE("Lie derivative of symmetric tensors") {
  int m = 2;
  s12 c(m);
  c.add(0, 0, 1, p_const(m, rational(5)));
  CHECK(lie(coord_field(m, 0), c).zero());

  /* Euler eigenvalue on a degree-d sector is d+1 */
  auto e = euler_field(m);
  for (auto& [k, i, j, a] : s12_keys(m, 0, 3)) {
    s12 s(m);
    s.add(k, i, j, p_mono(m, a));
    CHECK(lie(e, s) == rational(expo_deg(a) + 1) * s);
  }

  /* alpha.1 is equivariant */
  for (int t = 0; t < 50; ++t) {
    auto x = rnd_vf(m, 3);
    auto a = rnd_of(m, 3);
    CHECK(lie(x, alpha1(a)) == alpha1(lie(x, a)));
  }

  /* representation law on tensors, forms, contravariant fields */
  for (int t = 0; t < 25; ++t) {
    auto x = rnd_vf(m, 2);
    auto y = rnd_vf(m, 2);
    auto br = bracket(x, y);
    auto s = rnd_s12(m, 2);
    CHECK(lie(br, s) == lie(x, lie(y, s)) - lie(y, lie(x, s)));
    auto a = rnd_of(m, 2);
    CHECK(lie(br, a) == lie(x, lie(y, a)) - lie(y, lie(x, a)));
    auto q = rnd_contra(m, 2, 2);
    CHECK(lie(br, q) == lie(x, lie(y, q)) - lie(y, lie(x, q)));
  }
}

TEST_CASE("trace, its section, and the projection") {
  /* explicit m = 2 case: alpha = x2 dx1 */
  oneform a2(2);
  a2.add(0, p_var(2, 1));
  CHECK(trace(alpha1(a2)) == rational(3) * a2);

  for (int m : {2, 3}) {
    for (int i = 0; i < m; ++i)
      for (auto& al : expos_upto(m, 4)) {
        oneform a(m);
        a.add(i, p_mono(m, al));
        CHECK(trace(alpha1(a)) == rational(m + 1) * a);
        CHECK(pr(alpha1(a)).zero());
      }
    for (auto& [k, i, j, al] : s12_keys(m, 0, 4)) {
      s12 s(m);
      s.add(k, i, j, p_mono(m, al));
      s12 p = pr(s);
      CHECK(trace(p).zero());
      CHECK(pr(p) == p);
      CHECK(p + rational(1, m + 1) * alpha1(trace(s)) == s);
    }
  }

  /* S = dx1 (x) dx1 (x) d1, m = 2 */
  s12 s(2);
  s.add(0, 0, 0, p_const(2, rational(1)));
  oneform dx1(2);
  dx1.add(0, p_const(2, rational(1)));
  CHECK(trace(s) == dx1);
  CHECK(pr(s) == s - rational(1, 3) * alpha1(dx1));
}

TEST_CASE("Lie derivative of a connection") {
  int m = 2;
  connection flat(m);

  /* flat case reduces to second partials */
  for (int t = 0; t < 20; ++t) {
    auto x = rnd_vf(m, 3);
    s12 l = lie_conn(x, flat);
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
          CHECK(l.at(k, i, j) == diff(diff(x.at(k), i), j));
  }

  /* agreement with the bracket formula on coordinate fields */
  for (int t = 0; t < 10; ++t) {
    connection n(m);
    n.gamma = rnd_s12(m, 2);
    auto x = rnd_vf(m, 3);
    s12 l = lie_conn(x, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        auto di = coord_field(m, i);
        auto dj = coord_field(m, j);
        vfield lhs(m);
        for (int k = 0; k < m; ++k) lhs.add(k, l.at(k, i, j));
        vfield rhs = bracket(x, cov(n, di, dj)) - cov(n, bracket(x, di), dj) -
                     cov(n, di, bracket(x, dj));
        CHECK(lhs == rhs);
      }
  }

  /* x1 E moves the flat connection by dx1.1 */
  auto x1e = p_var(m, 0) * euler_field(m);
  oneform dx1(m);
  dx1.add(0, p_const(m, rational(1)));
  CHECK(lie_conn(x1e, flat) == alpha1(dx1));
  CHECK(lpr(x1e, flat).zero());

  /* affine fields fix it */
  CHECK(lie_conn(coord_field(m, 1) + v_mono(m, 0, {0, 1}), flat).zero());
}

TEST_CASE("cocycle identities for connections and divergence") {
  int m = 2;
  auto fs = mono_fields(m, 4);
  connection n(m), n2(m);
  n.gamma = rnd_s12(m, 3);
  n2.gamma = rnd_s12(m, 3);

  bool cocycle = true, rebase = true, divcocycle = true;
  for (int i = 0; i < (int)fs.size(); ++i) {
    for (int j = i + 1; j < (int)fs.size(); ++j) {
      auto& x = fs[i];
      auto& y = fs[j];
      s12 c = lie(x, lie_conn(y, n)) - lie(y, lie_conn(x, n)) -
              lie_conn(bracket(x, y), n);
      cocycle = cocycle && c.zero();
      poly d = apply(x, divergence(y)) - apply(y, divergence(x)) -
               divergence(bracket(x, y));
      divcocycle = divcocycle && d.zero();
    }
    s12 r = lie_conn(fs[i], n2) - lie_conn(fs[i], n) -
            lie(fs[i], n2.gamma - n.gamma);
    rebase = rebase && r.zero();
  }
  CHECK(cocycle);
  CHECK(divcocycle);
  CHECK(rebase);

  /* divergence values on the scaling fields */
  CHECK(divergence(euler_field(m)) == p_const(m, rational(m)));
  for (int a = 0; a < m; ++a)
    CHECK(divergence(p_var(m, a) * euler_field(m)) ==
          rational(m + 1) * p_var(m, a));
}

TEST_CASE("kappa on the projective algebra") {
  CHECK(kappa(rational(0), rational(0), rnd_vf(2, 3), rnd_vf(2, 3)).zero());
  for (int t = 0; t < 10; ++t) {
    auto x = rnd_vf(2, 3);
    auto y = rnd_vf(2, 3);
    CHECK(kappa(rational(2), rational(3), x, y) ==
          rational(-1) * kappa(rational(2), rational(3), y, x));
  }
  for (int m : {2, 3}) {
    auto sl = sl_projective(m);
    connection flat(m);
    rational a(3, 2);
    bool ok = true;
    for (int i = 0; i < (int)sl.gen.size() && ok; ++i)
      for (int j = i + 1; j < (int)sl.gen.size() && ok; ++j) {
        auto& x = sl.gen[i];
        auto& y = sl.gen[j];
        s12 expect = (a * rational(m + 1)) *
                     (divergence(x) * lie_conn(y, flat) -
                      divergence(y) * lie_conn(x, flat));
        ok = kappa(a, rational(0), x, y) == expect &&
             kappa(a, rational(7), x, y) == expect;
      }
    CHECK(ok);
  }
}

TEST_CASE("contractions of contravariant fields") {
  int m = 2;
  for (int t = 0; t < 20; ++t) {
    auto a = rnd_of(m, 2);
    auto p = rnd_contra(m, 2, 2);
    contra c = contract0(alpha1(a), p);
    contra expect(m, 1);
    for (int k = 0; k < m; ++k) {
      poly s(m);
      for (int i = 0; i < m; ++i) s = s + rational(2) * a.at(i) * p.at({i, k});
      expect.add({k}, s);
    }
    CHECK(c == expect);
  }
  CHECK(contract0(s12(m), rnd_contra(m, 2, 2)).zero());

  for (int t = 0; t < 30; ++t) {
    auto x = rnd_vf(m, 2);
    auto s = rnd_s12(m, 2);
    auto p = rnd_contra(m, 2, 2);
    CHECK(lie(x, contract0(s, p)) ==
          contract0(lie(x, s), p) + contract0(s, lie(x, p)));
  }

  contra cst(m, 2);
  cst.add({0, 1}, p_const(m, rational(4)));
  CHECK(d_flat(cst).zero());
  contra p11(m, 2);
  p11.add({0, 0}, p_var(m, 0));
  contra expect(m, 1);
  expect.add({0}, p_const(m, rational(1)));
  CHECK(d_flat(p11) == expect);
}

TEST_CASE("operator line relating the contractions") {
  for (int m : {2, 3}) {
    connection flat(m);
    incremental_rref rr(3);
    for (int i = 0; i < m; ++i)
      for (auto& al : expos(m, 2)) {
        vfield x = v_mono(m, i, al);
        for (auto& key : multisets(m, 2))
          for (auto& pe : expos_upto(m, m == 2 ? 3 : 2)) {
            contra p(m, 2);
            p.add(key, p_mono(m, pe));
            contra ca = contract0(lie_conn(x, flat), p);
            contra cb = contract0(ltr(x, flat), p);
            contra cc = lie(x, d_flat(p)) - d_flat(lie(x, p));
            for (int k = 0; k < m; ++k) {
              std::set<expo> es;
              poly pa = ca.at({k}), pb = cb.at({k}), pc = cc.at({k});
              for (auto& [e, v] : pa.c) es.insert(e);
              for (auto& [e, v] : pb.c) es.insert(e);
              for (auto& [e, v] : pc.c) es.insert(e);
              for (auto& e : es) {
                svec r;
                r.set(0, pa.at(e));
                r.set(1, pb.at(e));
                r.set(2, -pc.at(e));
                rr.add_row(r);
              }
            }
          }
      }
    CHECK(rr.rank() == 2);
    auto kb = rr.kernel_basis();
    REQUIRE((int)kb.size() == 1);
    svec expect;
    expect.set(0, rational(1));
    expect.set(1, rational(1, 2));
    expect.set(2, rational(1));
    CHECK(kb[0] == expect);
  }
}

TEST_CASE("projective realization") {
  for (int m : {2, 3}) {
    auto sl = sl_projective(m);
    CHECK(sl.alg->dim == (m + 1) * (m + 1) - 1);
    int lo = 0, mid = 0, hi = 0;
    for (long w : sl.weights) {
      if (w == -1) ++lo;
      if (w == 0) ++mid;
      if (w == 1) ++hi;
    }
    CHECK(lo == m);
    CHECK(mid == m * m);
    CHECK(hi == m);
    /* ad(E) acts diagonally on the generating fields */
    for (int i = 0; i < (int)sl.gen.size(); ++i)
      CHECK(bracket(sl.gen[sl.h_index], sl.gen[i]) ==
            rational(sl.weights[i]) * sl.gen[i]);
  }

  /* structure constants against a hand computation, m = 2:
   * [d1, x1 E] = 2 E - x2 d2 in the chosen basis */
  auto sl = sl_projective(2);
  CHECK(sl.alg->labels ==
        std::vector<std::string>{"d1", "d2", "E", "x2d1", "x1d2", "x2d2",
                                 "x1E", "x2E"});
  svec expect;
  expect.set(2, rational(2));
  expect.set(5, rational(-1));
  CHECK(sl.alg->bracket(0, 6) == expect);

  /* table matches field brackets on random coordinate pairs */
  std::mt19937 g(7);
  for (int t = 0; t < 10; ++t) {
    svec a = svec_unit((int)(g() % 8));
    a.add_scaled(svec_unit((int)(g() % 8)), rational(2));
    svec b = svec_unit((int)(g() % 8));
    vfield fa(2), fb(2);
    for (auto& [i, v] : a.e) fa = fa + v * sl.gen[i];
    for (auto& [i, v] : b.e) fb = fb + v * sl.gen[i];
    svec c = sl.alg->bracket_vec(a, b);
    vfield fc(2);
    for (auto& [i, v] : c.e) fc = fc + v * sl.gen[i];
    CHECK(bracket(fa, fb) == fc);
  }
}

TEST_CASE("graded tensor sectors") {
  auto md = s12_graded_module(2, 0, 5);
  CHECK(md.rep.module_dim == 90);
  std::map<long, int> cnt;
  for (long w : md.rep.module_weights) cnt[w]++;
  CHECK(cnt == std::map<long, int>{{1, 6}, {2, 12}, {3, 18}, {4, 24}, {5, 30}});
  for (int b : {0, 17, 89}) {
    svec v = md.rep.act(md.rep.h_index, svec_unit(b));
    svec e = svec_unit(b);
    e.scale(rational(md.rep.module_weights[b]));
    CHECK(v == e);
  }
  for (int t = 0; t < 10; ++t) {
    s12 s = rnd_s12(2, 4);
    CHECK(md.from_coords(md.to_coords(s)) == s);
  }
  s12 deep(2);
  deep.add(0, 0, 0, p_mono(2, {5, 0}));
  CHECK_THROWS_AS(md.to_coords(deep), error);

  auto tf = s12_graded_module(2, 0, 5, true);
  CHECK(tf.rep.module_dim == 60);
  std::map<long, int> cnt2;
  for (long w : tf.rep.module_weights) cnt2[w]++;
  CHECK(cnt2 == std::map<long, int>{{1, 4}, {2, 8}, {3, 12}, {4, 16}, {5, 20}});
  for (int t = 0; t < 10; ++t) {
    s12 s = pr(rnd_s12(2, 4));
    CHECK(tf.from_coords(tf.to_coords(s)) == s);
  }
  oneform a(2);
  a.add(0, p_var(2, 1));
  CHECK_THROWS_AS(tf.to_coords(alpha1(a)), error);

  CHECK_THROWS_AS(s12_graded_module(2, 3, 2), error);
}

TEST_CASE("projective equivalence of connections") {
  int m = 2;
  connection flat(m);
  CHECK(proj_equivalent(flat, flat));
  connection moved(m);
  oneform a = rnd_of(m, 2);
  moved.gamma = alpha1(a);
  CHECK(proj_equivalent(flat, moved));
  CHECK(rational(1, m + 1) * trace(moved.gamma - flat.gamma) == a);
  connection off(m);
  off.gamma.add(0, 1, 1, p_const(m, rational(1))); /* trace-free direction */
  CHECK(trace(off.gamma).zero());
  CHECK_FALSE(proj_equivalent(flat, off));
  connection both(m);
  both.gamma = alpha1(a) + off.gamma;
  CHECK_FALSE(proj_equivalent(flat, both));
}
