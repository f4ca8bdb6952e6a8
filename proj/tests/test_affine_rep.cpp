#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "affcoh/affine_rep.hpp"

#include <random>

using namespace affcoh;

namespace {

std::mt19937 rng(472881);

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

std::vector<svec> rnd_samples(int n, int count) {
  std::vector<svec> s;
  for (int i = 0; i < count; ++i) s.push_back(rnd_vec(n));
  return s;
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

/* 1-dim module over solv2 with h acting by 1; no invariants, H^1 is a line */
representation weight_one(const lie_ptr& l) {
  return make_rep(l, 1, {mat1(1), mat1(0)}, {"v"});
}

/* base cocycle spanning H^1 of weight_one: h -> 0, x -> 1 */
std::vector<svec> line_cocycle(const rational& scale) {
  svec g1;
  if (sgn(scale) != 0) g1.set(0, scale);
  return {svec{}, g1};
}

std::vector<svec> coboundary_of(const representation& r, const svec& v) {
  std::vector<svec> g;
  for (int i = 0; i < r.alg->dim; ++i) g.push_back(r.action[i].apply(v));
  return g;
}

/* two commuting copies of solv2 */
lie_ptr solv2_pair() {
  std::map<std::pair<int, int>, svec> t;
  t[{0, 1}] = svec_unit(1); /* [h1,x1] = x1 */
  t[{2, 3}] = svec_unit(3); /* [h2,x2] = x2 */
  return make_algebra({"h1", "x1", "h2", "x2"}, t);
}

} // namespace

TEST_CASE("construction and the affine axiom") {
  auto st = sl2_standard();
  auto lin = from_pair(st, {svec{}, svec{}, svec{}});
  CHECK(check_affine_axiom(lin, rnd_samples(2, 10)).empty());

  svec v = rnd_vec(2);
  auto shifted = from_pair(st, coboundary_of(st, v));
  CHECK(check_affine_axiom(shifted, rnd_samples(2, 10)).empty());

  /* e -> e1, f -> 0, h -> 0 is not closed at (e,f) */
  CHECK_THROWS_AS(from_pair(st, {svec_unit(0), svec{}, svec{}}), error);
  affine_rep bad{st, {svec_unit(0), svec{}, svec{}}};
  auto report = check_affine_axiom(bad, {svec{}});
  REQUIRE(!report.empty());
  CHECK(report[0].find("(e,f)") != std::string::npos);

  CHECK_THROWS_AS(from_pair(st, {svec{}, svec{}}), error);
  CHECK_THROWS_AS(from_pair(st, {svec_unit(5), svec{}, svec{}}), error);
}

TEST_CASE("rebasing moves the base cocycle by a coboundary") {
  auto l = solv2();
  auto r = weight_one(l);
  auto a = from_pair(r, line_cocycle(rational(1)));
  svec pt = rnd_vec(1);
  auto moved = rebase(a, pt);
  for (int i = 0; i < l->dim; ++i) {
    svec d = moved[i];
    d.add_scaled(a.gamma[i], rational(-1));
    CHECK(d == r.action[i].apply(pt));
  }
  CHECK_NOTHROW(from_pair(r, moved));

  auto c = full_complex(r, 1);
  cochain diff = cochain_from_values(c, 1, [&](const std::vector<int>& t) {
    svec d = moved[t[0]];
    d.add_scaled(a.gamma[t[0]], rational(-1));
    return d;
  });
  auto prim = is_coboundary(c, diff);
  REQUIRE(prim.has_value());
  /* the module has no invariants, so the primitive is the point itself */
  CHECK(eval_cochain(c, *prim, {}) == pt);
}

TEST_CASE("intertwining maps and their composition") {
  auto l = solv2();
  auto r = weight_one(l);
  auto base = line_cocycle(rational(1));
  auto b = from_pair(r, base);

  svec v3 = svec_unit(0);
  v3.scale(rational(3));
  auto a = from_pair(r, [&] {
    auto g = base;
    auto d = coboundary_of(r, v3);
    for (int i = 0; i < 2; ++i) g[i].add_scaled(d[i], rational(1));
    return g;
  }());
  affine_map f{sparse_matrix::identity(1), v3};
  CHECK(is_intertwining(f, a, b));

  affine_map zero{sparse_matrix(1, 1), svec{}};
  CHECK(!is_intertwining(zero, a, b));

  svec w2 = svec_unit(0);
  w2.scale(rational(-2));
  auto c2 = from_pair(r, [&] {
    auto g = base;
    auto d = coboundary_of(r, w2);
    for (int i = 0; i < 2; ++i) g[i].add_scaled(d[i], rational(1));
    return g;
  }());
  svec t2 = svec_unit(0);
  t2.scale(rational(2));
  affine_map g{sparse_matrix::identity(1), t2};
  CHECK(is_intertwining(g, b, c2));
  CHECK(is_intertwining(compose(g, f), a, c2));

  CHECK_THROWS_AS(is_intertwining(affine_map{sparse_matrix(2, 1), svec{}}, a, b), error);
}

TEST_CASE("equivalence finds a map or certifies there is none") {
  auto l = solv2();
  auto r = weight_one(l);
  auto a = from_pair(r, line_cocycle(rational(1)));

  auto self = equivalent(a, a);
  REQUIRE(self.has_value());
  CHECK(self->linear == sparse_matrix::identity(1));
  CHECK(self->translation.zero());

  /* scaling the cocycle is an equivalence through the scalar intertwiner */
  auto b = from_pair(r, line_cocycle(rational(5)));
  auto f = equivalent(a, b);
  REQUIRE(f.has_value());
  CHECK(is_intertwining(*f, a, b));
  CHECK(rank(f->linear) == 1);
  CHECK(f->linear.at(0, 0) == rational(5));

  /* a nonzero class is never equivalent to the linear model */
  auto zero = from_pair(r, {svec{}, svec{}});
  CHECK(!equivalent(a, zero).has_value());
  CHECK(!equivalent(zero, a).has_value());

  /* a rebased scaled copy is equivalent again */
  auto c2 = from_pair(r, rebase(b, rnd_vec(1)));
  auto g = equivalent(a, c2);
  REQUIRE(g.has_value());
  CHECK(is_intertwining(*g, a, c2));
  CHECK(rank(g->linear) == g->linear.n_rows);

  /* different dimensions cannot be bijectively equivalent */
  auto sum = direct_sum(a, from_pair(trivial_rep(l, 1), {svec{}, svec{}}));
  CHECK(!equivalent(sum, a).has_value());
}

TEST_CASE("direct sums of affine representations") {
  auto l = solv2();
  auto r = weight_one(l);
  auto a = from_pair(r, line_cocycle(rational(1)));
  auto b = from_pair(r, line_cocycle(rational(-2)));
  auto s = direct_sum(a, b);
  CHECK(s.dim() == 2);
  CHECK(s.gamma[1].at(0) == rational(1));
  CHECK(s.gamma[1].at(1) == rational(-2));
  CHECK(check_affine_axiom(s, rnd_samples(2, 10)).empty());
  CHECK_NOTHROW(from_pair(s.model, s.gamma));

  /* summing with an empty factor changes nothing */
  auto padded = direct_sum(a, from_pair(trivial_rep(l, 0), {svec{}, svec{}}));
  CHECK(padded.dim() == a.dim());
  auto f = equivalent(padded, a);
  REQUIRE(f.has_value());
  CHECK(is_intertwining(*f, padded, a));
}

TEST_CASE("canonical affine action on a cohomology class") {
  auto l = solv2();
  auto r = weight_one(l);
  auto g = line_cocycle(rational(1));
  auto canon = canonical_on_class(r, g);
  CHECK(check_affine_axiom(canon, rnd_samples(1, 10)).empty());
  auto f = equivalent(canon, from_pair(r, g));
  REQUIRE(f.has_value());
  CHECK(f->linear == sparse_matrix::identity(1));

  /* a module with invariants has no unique class coordinates */
  CHECK_THROWS_AS(canonical_on_class(trivial_rep(l, 1), {svec{}, svec{}}), error);
}

TEST_CASE("orbit counting for diagonal families") {
  /* independently scaled axes: four orbits */
  sparse_matrix d1(2, 2), d2(2, 2);
  d1.set(0, 0, rational(1));
  d2.set(1, 1, rational(1));
  auto o = diagonal_orbit_count({d1, d2}, 2);
  CHECK(o.s == 2);
  CHECK(o.classes == 4);
  REQUIRE(o.directions.size() == 2);
  CHECK(o.directions[0] == svec_unit(0));
  CHECK(o.directions[1] == svec_unit(1));

  CHECK(diagonal_orbit_count({}, 0).classes == 1);
  CHECK(diagonal_orbit_count({sparse_matrix::identity(1)}, 1).classes == 2);

  /* scalars on a plane leave a two-dimensional direction: not supported */
  CHECK_THROWS_AS(diagonal_orbit_count({sparse_matrix::identity(2)}, 2), error);

  /* one matrix with distinct eigenvalues splits the plane, but a single
   * eigenvalue row cannot scale the two lines independently */
  sparse_matrix d3(2, 2);
  d3.set(0, 0, rational(2));
  d3.set(1, 1, rational(3));
  CHECK_THROWS_AS(diagonal_orbit_count({d3}, 2), error);

  /* rotation-like map has no rational eigenvalues */
  sparse_matrix rot(2, 2);
  rot.set(0, 1, rational(-1));
  rot.set(1, 0, rational(1));
  CHECK_THROWS_AS(diagonal_orbit_count({rot}, 2), error);
}

TEST_CASE("classification of affine representations") {
  /* a semisimple model has one class: everything is linearizable */
  auto cls0 = classify_affine_reps(sl2_standard());
  CHECK(cls0.h1_dim == 0);
  CHECK(cls0.s == 0);
  CHECK(cls0.classes == 1);
  REQUIRE(cls0.representatives.size() == 1);
  CHECK(cls0.representatives[0].coords.zero());

  /* one line of classes, scalars as invariant maps: zero and nonzero */
  auto l = solv2();
  auto cls1 = classify_affine_reps(weight_one(l));
  CHECK(cls1.h1_dim == 1);
  CHECK(cls1.s == 1);
  CHECK(cls1.classes == 2);
  REQUIRE(cls1.invariant_maps.size() == 1);
  REQUIRE(cls1.representatives.size() == 2);
  CHECK(cls1.representatives[0].coords.zero());
  CHECK(!cls1.representatives[1].coords.zero());
  CHECK_NOTHROW(from_pair(weight_one(l), [&] {
    std::vector<svec> g;
    for (int i = 0; i < l->dim; ++i)
      g.push_back(eval_cochain(cls1.cplx, cls1.representatives[1], {i}));
    return g;
  }()));

  /* two independent lines over commuting factors: four classes */
  auto l4 = solv2_pair();
  auto va = make_rep(l4, 2,
                     {sparse_matrix::from_triplets(2, 2, {{0, 0, rational(1)}}),
                      sparse_matrix(2, 2),
                      sparse_matrix::from_triplets(2, 2, {{1, 1, rational(1)}}),
                      sparse_matrix(2, 2)},
                     {"u", "w"});
  auto cls2 = classify_affine_reps(va);
  CHECK(cls2.h1_dim == 2);
  CHECK(cls2.s == 2);
  CHECK(cls2.classes == 4);
  REQUIRE(cls2.representatives.size() == 4);
  auto h1 = cohomology(cls2.cplx, 1);
  std::vector<svec> seen;
  for (const auto& rep : cls2.representatives) {
    svec lam = class_coordinates(cls2.cplx, h1.representatives, rep);
    for (const auto& prev : seen) CHECK(!(prev == lam));
    seen.push_back(lam);
  }

  /* two identical lines: every matrix intertwines, so no diagonal family */
  auto vtwin = make_rep(l, 2,
                        {sparse_matrix::identity(2), sparse_matrix(2, 2)},
                        {"u", "w"});
  CHECK_THROWS_WITH_AS(classify_affine_reps(vtwin),
                       doctest::Contains("not implemented"), error);

  /* invariants in the module are rejected up front */
  CHECK_THROWS_AS(classify_affine_reps(trivial_rep(l, 1)), error);
}
