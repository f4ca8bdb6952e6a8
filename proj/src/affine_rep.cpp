#include "affcoh/affine_rep.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace affcoh {

namespace {

svec gamma_at(const affine_rep& a, const svec& x) {
  svec out;
  for (const auto& [k, v] : x.e) out.add_scaled(a.gamma[k], v);
  return out;
}

bool invertible(const sparse_matrix& f, exec ex) {
  if (f.n_rows != f.n_cols) return false;
  return rank(f, ex) == f.n_cols;
}

} // namespace

affine_map affine_identity(int n) { return {sparse_matrix::identity(n), svec{}}; }

affine_map compose(const affine_map& g, const affine_map& f) {
  affine_map out;
  out.linear = g.linear.mul(f.linear);
  out.translation = g.linear.apply(f.translation);
  out.translation.add_scaled(g.translation, rational(1));
  return out;
}

affine_rep from_pair(const representation& rho, std::vector<svec> gamma0) {
  if ((int)gamma0.size() != rho.alg->dim) throw error("from_pair: shape mismatch");
  for (const auto& g : gamma0)
    if (!g.zero() && g.e.back().first >= rho.module_dim)
      throw error("from_pair: shape mismatch");
  affine_rep a{rho, std::move(gamma0)};
  const auto& l = *rho.alg;
  for (int i = 0; i < l.dim; ++i)
    for (int j = i + 1; j < l.dim; ++j) {
      svec lhs = rho.action[i].apply(a.gamma[j]);
      lhs.add_scaled(rho.action[j].apply(a.gamma[i]), rational(-1));
      lhs.add_scaled(gamma_at(a, l.bracket(i, j)), rational(-1));
      if (!lhs.zero())
        throw error("from_pair: base cochain is not closed at (" + l.labels[i] + "," +
                    l.labels[j] + ")");
    }
  return a;
}

std::vector<std::string> check_affine_axiom(const affine_rep& a,
                                            const std::vector<svec>& samples) {
  std::vector<std::string> bad;
  const auto& l = *a.model.alg;
  for (int s = 0; s < (int)samples.size(); ++s)
    for (int i = 0; i < l.dim; ++i)
      for (int j = i + 1; j < l.dim; ++j) {
        svec yp = a.gamma[j]; /* y.a */
        yp.add_scaled(a.model.action[j].apply(samples[s]), rational(1));
        svec lhs = a.model.action[i].apply(yp);
        svec xp = a.gamma[i]; /* x.a */
        xp.add_scaled(a.model.action[i].apply(samples[s]), rational(1));
        lhs.add_scaled(a.model.action[j].apply(xp), rational(-1));
        svec br = l.bracket(i, j);
        lhs.add_scaled(gamma_at(a, br), rational(-1));
        lhs.add_scaled(a.model.act_vec(br, samples[s]), rational(-1));
        if (!lhs.zero())
          bad.push_back("affine axiom fails on (" + l.labels[i] + "," + l.labels[j] +
                        ") at sample " + std::to_string(s));
      }
  return bad;
}

std::vector<svec> rebase(const affine_rep& a, const svec& point) {
  std::vector<svec> g = a.gamma;
  for (int i = 0; i < (int)g.size(); ++i)
    g[i].add_scaled(a.model.action[i].apply(point), rational(1));
  return g;
}

bool is_intertwining(const affine_map& f, const affine_rep& a, const affine_rep& b) {
  if (a.model.alg != b.model.alg) throw error("is_intertwining: different algebras");
  if (f.linear.n_rows != b.dim() || f.linear.n_cols != a.dim())
    throw error("is_intertwining: shape mismatch");
  if (!f.translation.zero() && f.translation.e.back().first >= b.dim())
    throw error("is_intertwining: shape mismatch");
  const auto& l = *a.model.alg;
  bool alg_ok = true;
  for (int i = 0; i < l.dim && alg_ok; ++i) {
    if (!(b.model.action[i].mul(f.linear) == f.linear.mul(a.model.action[i])))
      alg_ok = false;
    svec lhs = b.gamma[i];
    lhs.add_scaled(b.model.action[i].apply(f.translation), rational(1));
    lhs.add_scaled(f.linear.apply(a.gamma[i]), rational(-1));
    if (!lhs.zero()) alg_ok = false;
  }
  /* cross-check pointwise on the origin and the unit points */
  bool pt_ok = true;
  for (int s = -1; s < a.dim() && pt_ok; ++s) {
    svec pt;
    if (s >= 0) pt = svec_unit(s);
    svec fp = f.linear.apply(pt);
    fp.add_scaled(f.translation, rational(1));
    for (int i = 0; i < l.dim && pt_ok; ++i) {
      svec lhs = b.gamma[i];
      lhs.add_scaled(b.model.action[i].apply(fp), rational(1));
      svec xa = a.gamma[i];
      xa.add_scaled(a.model.action[i].apply(pt), rational(1));
      lhs.add_scaled(f.linear.apply(xa), rational(-1));
      pt_ok = lhs.zero();
    }
  }
  if (alg_ok != pt_ok) throw error("internal: intertwining criteria disagree");
  return alg_ok;
}

std::optional<affine_map> equivalent(const affine_rep& a, const affine_rep& b, exec ex) {
  if (a.model.alg != b.model.alg) throw error("equivalent: different algebras");
  if (a.dim() != b.dim()) return std::nullopt;
  int n = a.dim();
  const auto& l = *a.model.alg;

  /* same linear model: try the identity with a translation solve first */
  bool same_model = true;
  for (int i = 0; i < l.dim && same_model; ++i)
    same_model = a.model.action[i] == b.model.action[i];
  if (same_model) {
    sparse_matrix m(l.dim * n, n);
    svec rhs;
    for (int i = 0; i < l.dim; ++i) {
      for (int q = 0; q < n; ++q)
        for (const auto& [p, v] : b.model.action[i].row[q].e) m.set(i * n + q, p, v);
      svec d = a.gamma[i];
      d.add_scaled(b.gamma[i], rational(-1));
      for (const auto& [q, v] : d.e) rhs.set(i * n + q, v);
    }
    if (auto t = solve(m, rhs, ex)) {
      affine_map f{sparse_matrix::identity(n), *t};
      if (is_intertwining(f, a, b)) return f;
    }
  }

  auto inv = invariants(hom_module(a.model, b.model), ex);
  int r = (int)inv.size();
  std::vector<sparse_matrix> tm;
  tm.reserve(r);
  for (const auto& t : inv) tm.push_back(hom_matrix(a.model, b.model, t));

  /* unknowns (c, v): sum_k c_k T_k gamma_a(x) - rho_b(x) v = gamma_b(x) */
  sparse_matrix m(l.dim * n, r + n);
  svec rhs;
  for (int i = 0; i < l.dim; ++i) {
    for (int k = 0; k < r; ++k) {
      svec u = tm[k].apply(a.gamma[i]);
      for (const auto& [q, v] : u.e) m.set(i * n + q, k, v);
    }
    for (int q = 0; q < n; ++q)
      for (const auto& [p, v] : b.model.action[i].row[q].e) m.set(i * n + q, r + p, -v);
    for (const auto& [q, v] : b.gamma[i].e) rhs.set(i * n + q, v);
  }
  auto x0 = solve(m, rhs, ex);
  if (!x0) return std::nullopt; /* no intertwiner matches the classes at all */
  auto ker = kernel_basis(m, ex);

  std::vector<int> cdirs; /* kernel directions that actually move the linear part */
  for (int j = 0; j < (int)ker.size(); ++j)
    if (!ker[j].zero() && ker[j].e.front().first < r) cdirs.push_back(j);

  auto build = [&](const svec& x) {
    affine_map f{sparse_matrix(n, n), svec{}};
    for (const auto& [i, v] : x.e) {
      if (i < r)
        f.linear = f.linear.add_scaled(tm[i], v);
      else
        f.translation.set(i - r, v);
    }
    return f;
  };
  auto accept = [&](const svec& x) -> std::optional<affine_map> {
    affine_map f = build(x);
    if (!invertible(f.linear, ex)) return std::nullopt;
    if (!is_intertwining(f, a, b)) throw error("internal: candidate fails to intertwine");
    return f;
  };

  if (auto f = accept(*x0)) return f;
  for (int j : cdirs)
    for (int sg : {1, -1}) {
      svec x = *x0;
      x.add_scaled(ker[j], rational(sg));
      if (auto f = accept(x)) return f;
    }
  for (int ja = 0; ja < (int)cdirs.size(); ++ja)
    for (int jb = ja + 1; jb < (int)cdirs.size(); ++jb) {
      svec x = *x0;
      x.add_scaled(ker[cdirs[ja]], rational(1));
      x.add_scaled(ker[cdirs[jb]], rational(1));
      if (auto f = accept(x)) return f;
    }
  std::mt19937_64 rng(987654321u + (unsigned)n);
  for (int trial = 0; trial < 48; ++trial) {
    svec x = *x0;
    for (int j : cdirs) {
      long t = (long)(rng() % 2000003u) - 1000001;
      if (t != 0) x.add_scaled(ker[j], rational(t));
    }
    if (auto f = accept(x)) return f;
  }

  int sigma = (int)cdirs.size();
  if (sigma == 0) return std::nullopt; /* linear part is pinned and singular */
  if (sigma <= 2) {
    /* det along the family has degree at most n in each direction, so a full
     * (n+1)^sigma grid with every point singular proves there is no unit */
    std::vector<long> t(sigma, 0);
    while (true) {
      svec x = *x0;
      for (int j = 0; j < sigma; ++j)
        if (t[j] != 0) x.add_scaled(ker[cdirs[j]], rational(t[j]));
      if (auto f = accept(x)) return f;
      int j = 0;
      while (j < sigma && t[j] == n) t[j++] = 0;
      if (j == sigma) break;
      ++t[j];
    }
    return std::nullopt;
  }
  throw error("equivalent: search inconclusive");
}

affine_rep direct_sum(const affine_rep& a, const affine_rep& b) {
  representation m = direct_sum(a.model, b.model);
  std::vector<svec> g(a.model.alg->dim);
  for (int i = 0; i < (int)g.size(); ++i) {
    g[i] = a.gamma[i];
    for (const auto& [q, v] : b.gamma[i].e) g[i].set(a.dim() + q, v);
  }
  return affine_rep{std::move(m), std::move(g)};
}

affine_rep canonical_on_class(const representation& rho, std::vector<svec> gamma) {
  if (!invariants(rho).empty())
    throw error("canonical_on_class: module has invariants, class coordinates are not unique");
  /* v -> gamma + dv identifies the class with the module, and on those
   * coordinates the action at v is gamma(x) + rho(x) v */
  return from_pair(rho, std::move(gamma));
}

/* ---- orbit classification ---- */

namespace {

using dmat = std::vector<std::vector<rational>>;

dmat dmat_mul(const dmat& a, const dmat& b) {
  int w = (int)a.size();
  dmat c(w, std::vector<rational>(w, rational(0)));
  for (int i = 0; i < w; ++i)
    for (int k = 0; k < w; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (int j = 0; j < w; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

/* Faddeev-LeVerrier; returns c[0..w] with c[w] = 1 */
std::vector<rational> char_poly(const dmat& r) {
  int w = (int)r.size();
  std::vector<rational> c(w + 1, rational(0));
  c[w] = 1;
  dmat acc(w, std::vector<rational>(w, rational(0)));
  for (int k = 1; k <= w; ++k) {
    for (int i = 0; i < w; ++i) acc[i][i] += c[w - k + 1];
    acc = dmat_mul(r, acc);
    rational tr(0);
    for (int i = 0; i < w; ++i) tr += acc[i][i];
    c[w - k] = -tr / k;
  }
  return c;
}

std::vector<long> small_divisors(long a) {
  std::vector<long> d;
  for (long i = 1; i * i <= a; ++i)
    if (a % i == 0) {
      d.push_back(i);
      if (i != a / i) d.push_back(a / i);
    }
  return d;
}

/* distinct rational roots; anything irrational is simply not reported */
std::vector<rational> rational_roots(const std::vector<rational>& c) {
  mpz_class den(1);
  for (const auto& v : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  std::vector<mpz_class> ic;
  for (const auto& v : c) {
    rational s = v * rational(den);
    ic.push_back(s.get_num());
  }
  int lo = 0;
  while (lo < (int)ic.size() && ic[lo] == 0) ++lo;
  std::set<rational> roots;
  if (lo > 0) roots.insert(rational(0));
  mpz_class g(0);
  for (int i = lo; i < (int)ic.size(); ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ic[i].get_mpz_t());
  if (g != 0)
    for (int i = lo; i < (int)ic.size(); ++i) ic[i] /= g;
  mpz_class a0 = abs(ic[lo]);
  mpz_class an = abs(ic.back());
  if (!a0.fits_slong_p() || !an.fits_slong_p() || a0 > 1000000000 || an > 1000000000)
    throw error("classification not implemented for this case");
  for (long p : small_divisors(a0.get_si()))
    for (long q : small_divisors(an.get_si()))
      for (int sg : {1, -1}) {
        rational cand(sg * p, q);
        cand.canonicalize();
        rational val(0);
        for (int i = (int)c.size() - 1; i >= 0; --i) val = val * cand + c[i];
        if (sgn(val) == 0) roots.insert(cand);
      }
  return {roots.begin(), roots.end()};
}

} // namespace

diag_orbits diagonal_orbit_count(const std::vector<sparse_matrix>& induced, int h, exec ex) {
  diag_orbits out;
  if (h == 0) return out;
  if (h > 30) throw error("classification not implemented for this case");
  for (const auto& m : induced)
    if (m.n_rows != h || m.n_cols != h)
      throw error("diagonal_orbit_count: shape mismatch");

  /* joint eigenspace refinement; subspaces kept as reduced echelon rows */
  std::vector<std::vector<svec>> parts;
  {
    std::vector<svec> full;
    for (int i = 0; i < h; ++i) full.push_back(svec_unit(i));
    parts.push_back(std::move(full));
  }
  for (const auto& mt : induced) {
    std::vector<std::vector<svec>> next;
    for (const auto& basis : parts) {
      int w = (int)basis.size();
      if (w == 1) {
        svec y = mt.apply(basis[0]);
        svec chk = basis[0];
        chk.scale(y.at(basis[0].e.front().first));
        if (!(y == chk)) throw error("classification not implemented for this case");
        next.push_back(basis);
        continue;
      }
      std::vector<int> piv(w);
      for (int t = 0; t < w; ++t) piv[t] = basis[t].e.front().first;
      dmat rm(w, std::vector<rational>(w, rational(0)));
      for (int t = 0; t < w; ++t) {
        svec y = mt.apply(basis[t]);
        for (int u = 0; u < w; ++u) {
          rational cu = y.at(piv[u]);
          if (sgn(cu) != 0) {
            y.add_scaled(basis[u], -cu);
            rm[u][t] = cu;
          }
        }
        if (!y.zero()) /* the map leaves the subspace */
          throw error("classification not implemented for this case");
      }
      int total = 0;
      for (const auto& lam : rational_roots(char_poly(rm))) {
        sparse_matrix shifted(w, w);
        for (int i = 0; i < w; ++i)
          for (int j = 0; j < w; ++j) {
            rational v = rm[i][j];
            if (i == j) v -= lam;
            if (sgn(v) != 0) shifted.set(i, j, v);
          }
        auto kb = kernel_basis(shifted, ex);
        if (kb.empty()) continue;
        total += (int)kb.size();
        incremental_rref rr(h);
        for (const auto& kv : kb) {
          svec vec;
          for (const auto& [t, val] : kv.e) vec.add_scaled(basis[t], val);
          rr.add_row(vec);
        }
        next.push_back(rr.rows());
      }
      if (total != w) /* not diagonalizable over the rationals */
        throw error("classification not implemented for this case");
    }
    parts = std::move(next);
  }
  for (const auto& basis : parts)
    if ((int)basis.size() != 1) /* a whole plane scales together */
      throw error("classification not implemented for this case");

  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    return a[0].e.front().first < b[0].e.front().first;
  });
  int s = (int)parts.size();
  /* the family must scale the lines independently: eigenvalue rows span R^s */
  sparse_matrix u((int)induced.size(), s);
  for (int t = 0; t < (int)induced.size(); ++t)
    for (int k = 0; k < s; ++k) {
      svec y = induced[t].apply(parts[k][0]);
      rational lam = y.at(parts[k][0].e.front().first);
      svec chk = parts[k][0];
      chk.scale(lam);
      if (!(y == chk)) throw error("classification not implemented for this case");
      if (sgn(lam) != 0) u.set(t, k, lam);
    }
  if (rank(u, ex) != s) throw error("classification not implemented for this case");

  out.s = s;
  out.classes = 1L << s;
  for (const auto& basis : parts) out.directions.push_back(basis[0]);
  return out;
}

affine_classification classify_affine_reps(const representation& rho, exec ex) {
  if (!invariants(rho, ex).empty())
    throw error("classify_affine_reps: module has invariants");
  affine_classification out;
  out.cplx = full_complex(rho, 1, ex);
  auto h1 = cohomology(out.cplx, 1, ex);
  out.h1_dim = h1.dimension;
  auto inv = invariants(hom_module(rho, rho), ex);
  for (const auto& t : inv) out.invariant_maps.push_back(hom_matrix(rho, rho, t));

  int h = h1.dimension;
  int n = rho.alg->dim;
  std::vector<sparse_matrix> induced;
  for (const auto& tmat : out.invariant_maps) {
    sparse_matrix mt(h, h);
    for (int k = 0; k < h; ++k) {
      cochain z{1, svec{}};
      for (int i = 0; i < n; ++i) {
        svec val = tmat.apply(eval_cochain(out.cplx, h1.representatives[k], {i}));
        for (const auto& [q, v] : val.e)
          z.coords.set(out.cplx.basis[1].index_of(tuple_rank(n, {i}), q), v);
      }
      svec lam = class_coordinates(out.cplx, h1.representatives, z, ex);
      for (const auto& [q, v] : lam.e) mt.set(q, k, v);
    }
    induced.push_back(std::move(mt));
  }

  auto orbits = diagonal_orbit_count(induced, h, ex);
  out.s = orbits.s;
  out.classes = orbits.classes;
  for (long mask = 0; mask < out.classes; ++mask) {
    cochain rep{1, svec{}};
    for (int k = 0; k < orbits.s; ++k)
      if (mask >> k & 1)
        for (const auto& [j, w] : orbits.directions[k].e)
          rep.coords.add_scaled(h1.representatives[j].coords, w);
    out.representatives.push_back(std::move(rep));
  }
  return out;
}

} // namespace affcoh
