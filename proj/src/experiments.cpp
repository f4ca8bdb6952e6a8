#include "affcoh/experiments.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace affcoh {

namespace {

/* ---- monomial bookkeeping ---- */

std::vector<vfield> monomial_fields(int m, int d) {
  std::vector<vfield> out;
  for (int i = 0; i < m; ++i)
    for (const auto& a : expos_upto(m, d)) out.push_back(v_mono(m, i, a));
  return out;
}

std::vector<std::array<int, 3>> key_triples(int m) {
  std::vector<std::array<int, 3>> keys;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) keys.push_back({k, i, j});
  return keys;
}

poly diff_multi(const poly& p, const expo& g) {
  poly out = p;
  for (int i = 0; i < (int)g.size() && !out.zero(); ++i)
    for (int r = 0; r < g[i]; ++r) out = diff(out, i);
  return out;
}

rational expo_factorial(const expo& g) {
  long f = 1;
  for (int gi : g)
    for (int r = 2; r <= gi; ++r) f *= r;
  return rational(f);
}

void acc(svec& v, int i, const rational& x) { v.set(i, v.at(i) + x); }

std::vector<int> row_key(const std::array<int, 3>& k, const expo& e) {
  std::vector<int> out = {k[0], k[1], k[2]};
  out.insert(out.end(), e.begin(), e.end());
  return out;
}

rational rnd_q(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/* ---- constant-coefficient second-order operators X -> A(d^2 X) ----
 * The Euler weight of an operator term is coefficient degree minus derivative
 * order plus two, so weight zero forces constant coefficients and pure second
 * derivatives; a nonzero-weight cocycle c is the coboundary of c(E)/weight.
 * Coordinates: (target component key, source component, derivative). */

struct op2_space {
  int m = 0;
  std::vector<std::array<int, 3>> keys;
  std::map<std::array<int, 3>, int> kidx;
  std::vector<expo> g2;

  explicit op2_space(int m_) : m(m_), keys(key_triples(m_)), g2(expos(m_, 2)) {
    for (int t = 0; t < (int)keys.size(); ++t) kidx[keys[t]] = t;
  }
  int dim() const { return (int)keys.size() * m * (int)g2.size(); }
  int col(int t, int u, int g) const { return (t * m + u) * (int)g2.size() + g; }
};

s12 op2_value(const op2_space& sp, const svec& coords, const vfield& x) {
  s12 out(sp.m);
  int ng = (int)sp.g2.size();
  for (const auto& [c, v] : coords.e) {
    int g = c % ng, u = (c / ng) % sp.m, t = c / (ng * sp.m);
    poly q = diff_multi(x.at(u), sp.g2[g]);
    if (!q.zero()) out.add(sp.keys[t][0], sp.keys[t][1], sp.keys[t][2], v * q);
  }
  return out;
}

svec op2_coords_of(const op2_space& sp, const std::function<s12(const vfield&)>& f) {
  for (int u = 0; u < sp.m; ++u)
    for (const auto& a : expos_upto(sp.m, 1))
      if (!f(v_mono(sp.m, u, a)).zero())
        throw error("operator has terms below order two");
  svec out;
  expo zero(sp.m, 0);
  for (int u = 0; u < sp.m; ++u)
    for (int g = 0; g < (int)sp.g2.size(); ++g) {
      s12 val = f(v_mono(sp.m, u, sp.g2[g]));
      rational fac = expo_factorial(sp.g2[g]);
      for (const auto& [key, q] : val.comp) {
        if (q.degree() > 0) throw error("operator has terms above order two");
        out.set(sp.col(sp.kidx.at(key), u, g), q.at(zero) / fac);
      }
    }
  return out;
}

struct op2_cocycles {
  op2_space sp;
  int zdim = 0;
  bool lpr_in = true, ltr_in = true;
  svec lpr_v, ltr_v;
};

/* kernel of the cocycle condition over all monomial field pairs */
op2_cocycles weight_zero_cocycle_space(int m, int dmax, exec ex) {
  op2_cocycles z{op2_space(m)};
  connection flat(m);
  z.lpr_v = op2_coords_of(z.sp, [&](const vfield& x) { return lpr(x, flat); });
  z.ltr_v = op2_coords_of(z.sp, [&](const vfield& x) { return ltr(x, flat); });
  auto fields = monomial_fields(m, dmax);
  int n = z.sp.dim();
  incremental_rref rr(n);
  for (size_t a = 0; a < fields.size(); ++a)
    for (size_t b = a + 1; b < fields.size(); ++b) {
      vfield xy = bracket(fields[a], fields[b]);
      std::map<std::vector<int>, svec> rows;
      for (int c = 0; c < n; ++c) {
        svec unit = svec_unit(c);
        s12 d = lie(fields[a], op2_value(z.sp, unit, fields[b])) -
                lie(fields[b], op2_value(z.sp, unit, fields[a])) -
                op2_value(z.sp, unit, xy);
        for (const auto& [key, q] : d.comp)
          for (const auto& [e, val] : q.c) acc(rows[row_key(key, e)], c, val);
      }
      std::vector<svec> batch;
      for (auto& [k, r] : rows)
        if (!r.zero()) {
          if (sdot(r, z.lpr_v) != 0) z.lpr_in = false;
          if (sdot(r, z.ltr_v) != 0) z.ltr_in = false;
          batch.push_back(std::move(r));
        }
      rr.add_rows(batch, ex);
    }
  z.zdim = n - rr.rank();
  return z;
}

/* ---- experiments ---- */

exp_report run_classify(const exp_config& cfg, exec ex) {
  exp_report r;
  r.expected = "4";
  auto z = weight_zero_cocycle_space(cfg.m, cfg.degree, ex);
  if (z.zdim != 2) {
    r.computed = "cocycle space dimension " + std::to_string(z.zdim);
    return r;
  }
  if (!z.lpr_in || !z.ltr_in) {
    r.computed = "basis operators violate a cocycle constraint";
    return r;
  }
  sparse_matrix bs(z.sp.dim(), 2);
  for (const auto& [i, v] : z.lpr_v.e) bs.set(i, 0, v);
  for (const auto& [i, v] : z.ltr_v.e) bs.set(i, 1, v);
  if (rank(bs, ex) != 2) {
    r.computed = "basis operators are dependent";
    return r;
  }
  /* the two invariant endomorphisms in the basis of the two cocycles */
  auto image = [&](const std::function<s12(const s12&)>& t, const svec& base) {
    return op2_coords_of(z.sp, [&](const vfield& x) {
      return t(op2_value(z.sp, base, x));
    });
  };
  auto coords2 = [&](const svec& w) {
    auto s = solve(bs, w, ex);
    if (!s) throw error("invariant image leaves the cocycle plane");
    return *s;
  };
  sparse_matrix mp(2, 2), mt(2, 2);
  std::vector<std::pair<const svec*, int>> cols = {{&z.lpr_v, 0}, {&z.ltr_v, 1}};
  for (const auto& [base, j] : cols) {
    svec cp = coords2(image([](const s12& s) { return pr(s); }, *base));
    svec ct = coords2(image([](const s12& s) { return alpha1(trace(s)); }, *base));
    mp.set(0, j, cp.at(0));
    mp.set(1, j, cp.at(1));
    mt.set(0, j, ct.at(0));
    mt.set(1, j, ct.at(1));
  }
  auto orb = diagonal_orbit_count({mp, mt}, 2, ex);
  r.computed = std::to_string(orb.classes);
  r.pass = r.computed == r.expected && orb.s == 2;
  r.notes.push_back("cocycle space dimension 2 against vector fields of degree <= " +
                    std::to_string(cfg.degree));
  r.notes.push_back("projection acts as diag(" + rat_str(mp.at(0, 0)) + "," +
                    rat_str(mp.at(1, 1)) + "), trace insertion as diag(" +
                    rat_str(mt.at(0, 0)) + "," + rat_str(mt.at(1, 1)) + ")");
  r.notes.push_back("invariant algebra spans taken from the equivariant-maps computation");
  return r;
}

exp_report run_connectun(const exp_config& cfg, exec ex) {
  (void)ex;
  exp_report r;
  r.expected = "images match the basis operators up to one global sign, both nonzero";
  op2_space sp(cfg.m);
  connection flat(cfg.m);
  svec lpr_v = op2_coords_of(sp, [&](const vfield& x) { return lpr(x, flat); });
  svec ltr_v = op2_coords_of(sp, [&](const vfield& x) { return ltr(x, flat); });
  /* connecting image of an equivariant symbol t is x -> -t(L_x of the flat
   * connection) */
  auto chi_pr_op = [&](const vfield& x) { return rational(-1) * pr(lie_conn(x, flat)); };
  auto chi_tr_op = [&](const vfield& x) {
    return rational(-1) * alpha1(trace(lie_conn(x, flat)));
  };
  svec chi_pr = op2_coords_of(sp, chi_pr_op);
  svec chi_tr = op2_coords_of(sp, chi_tr_op);
  bool cocycle = true;
  auto fields = monomial_fields(cfg.m, 2);
  for (size_t a = 0; a < fields.size() && cocycle; ++a)
    for (size_t b = a + 1; b < fields.size() && cocycle; ++b) {
      s12 d = lie(fields[a], chi_pr_op(fields[b])) -
              lie(fields[b], chi_pr_op(fields[a])) -
              chi_pr_op(bracket(fields[a], fields[b]));
      s12 dt = lie(fields[a], chi_tr_op(fields[b])) -
               lie(fields[b], chi_tr_op(fields[a])) -
               chi_tr_op(bracket(fields[a], fields[b]));
      if (!d.zero() || !dt.zero()) cocycle = false;
    }
  int sign = 0;
  if (chi_pr == lpr_v && chi_tr == ltr_v) sign = 1;
  else if (chi_pr == lpr_v.neg() && chi_tr == ltr_v.neg()) sign = -1;
  bool nz = !chi_pr.zero() && !chi_tr.zero();
  if (sign != 0 && nz && cocycle) {
    r.computed = r.expected;
    r.pass = true;
  } else if (!cocycle) {
    r.computed = "connecting images fail the cocycle condition";
  } else {
    r.computed = "images do not lie on the basis operator lines";
  }
  r.notes.push_back(sign == 0 ? "no single sign matches both images"
                              : "recorded global sign: " + std::to_string(sign));
  r.notes.push_back("polynomial components are taken relative to the displacement "
                    "from the base point");
  r.notes.push_back("weight-zero coboundaries vanish, so nonzero cocycles "
                    "represent nonzero classes");
  return r;
}

/* operators S -> sum over components of coeff(x) d^g S, derivative order
 * matching coefficient degree as the Euler field demands, order <= 2 */
struct eqmap_space {
  int m = 0;
  std::vector<std::array<int, 3>> keys;
  std::map<std::array<int, 3>, int> kidx;
  std::vector<std::pair<expo, expo>> gb; /* (derivative, coefficient) */

  explicit eqmap_space(int m_) : m(m_), keys(key_triples(m_)) {
    for (int t = 0; t < (int)keys.size(); ++t) kidx[keys[t]] = t;
    for (int o = 0; o <= 2; ++o)
      for (const auto& g : expos(m_, o))
        for (const auto& b : expos(m_, o)) gb.push_back({g, b});
  }
  int nk() const { return (int)keys.size(); }
  int dim() const { return nk() * nk() * (int)gb.size(); }
  int col(int t, int s, int g) const { return (t * nk() + s) * (int)gb.size() + g; }
};

svec eqmap_order0(const eqmap_space& sp, const std::function<s12(const s12&)>& f) {
  svec out;
  expo zero(sp.m, 0);
  for (int s = 0; s < sp.nk(); ++s) {
    s12 e(sp.m);
    e.add(sp.keys[s][0], sp.keys[s][1], sp.keys[s][2], p_const(sp.m, rational(1)));
    s12 img = f(e);
    for (const auto& [key, q] : img.comp) {
      if (q.degree() > 0) throw error("image of a constant is not constant");
      out.set(sp.col(sp.kidx.at(key), s, 0), q.at(zero));
    }
  }
  return out;
}

exp_report run_equivariant(const exp_config& cfg, exec ex) {
  exp_report r;
  r.expected = "2";
  eqmap_space sp(cfg.m);
  svec pr_v = eqmap_order0(sp, [](const s12& s) { return pr(s); });
  svec tr_v = eqmap_order0(sp, [](const s12& s) { return alpha1(trace(s)); });
  {
    incremental_rref ind(sp.dim());
    ind.add_row(pr_v);
    ind.add_row(tr_v);
    if (ind.rank() != 2) {
      r.computed = "candidate operators are dependent";
      return r;
    }
  }
  auto fields = monomial_fields(cfg.m, 2);
  auto inputs = expos_upto(cfg.m, 3);
  incremental_rref rr(sp.dim());
  bool pr_in = true, tr_in = true;
  for (const auto& x : fields)
    for (int s = 0; s < sp.nk(); ++s)
      for (const auto& al : inputs) {
        s12 e(cfg.m);
        e.add(sp.keys[s][0], sp.keys[s][1], sp.keys[s][2], p_mono(cfg.m, al));
        s12 lxe = lie(x, e);
        std::map<std::vector<int>, svec> rows;
        for (int g = 0; g < (int)sp.gb.size(); ++g) {
          poly p1 = p_mono(cfg.m, sp.gb[g].second) *
                    diff_multi(p_mono(cfg.m, al), sp.gb[g].first);
          if (p1.zero()) continue;
          for (int t = 0; t < sp.nk(); ++t) {
            s12 ph(cfg.m);
            ph.add(sp.keys[t][0], sp.keys[t][1], sp.keys[t][2], p1);
            s12 d1 = lie(x, ph);
            int cc = sp.col(t, s, g);
            for (const auto& [key, q] : d1.comp)
              for (const auto& [e2, val] : q.c) acc(rows[row_key(key, e2)], cc, val);
          }
        }
        for (int s2 = 0; s2 < sp.nk(); ++s2) {
          poly q2 = lxe.at(sp.keys[s2][0], sp.keys[s2][1], sp.keys[s2][2]);
          if (q2.zero()) continue;
          for (int g = 0; g < (int)sp.gb.size(); ++g) {
            poly p2 = p_mono(cfg.m, sp.gb[g].second) * diff_multi(q2, sp.gb[g].first);
            if (p2.zero()) continue;
            for (int t = 0; t < sp.nk(); ++t) {
              int cc = sp.col(t, s2, g);
              for (const auto& [e2, val] : p2.c)
                acc(rows[row_key(sp.keys[t], e2)], cc, -val);
            }
          }
        }
        std::vector<svec> batch;
        for (auto& [k, row] : rows)
          if (!row.zero()) {
            if (sdot(row, pr_v) != 0) pr_in = false;
            if (sdot(row, tr_v) != 0) tr_in = false;
            batch.push_back(std::move(row));
          }
        rr.add_rows(batch, ex);
      }
  int zdim = sp.dim() - rr.rank();
  if (!pr_in || !tr_in) {
    r.computed = "projection or trace insertion violates a constraint";
    return r;
  }
  r.computed = std::to_string(zdim);
  r.pass = r.computed == r.expected;
  r.notes.push_back("operator model with derivative order and coefficient degree "
                    "matched and bounded by 2");
  r.notes.push_back("both candidates satisfy every constraint, so the computed "
                    "space is exactly their span");
  return r;
}

exp_report run_h0(const exp_config& cfg, exec ex) {
  exp_report r;
  r.expected = "0";
  auto keys = s12_keys(cfg.m, 0, cfg.degree);
  int n = (int)keys.size();
  incremental_rref rr(n);
  auto fields = monomial_fields(cfg.m, 2);
  for (const auto& x : fields) {
    std::map<std::vector<int>, svec> rows;
    for (int j = 0; j < n; ++j) {
      const auto& [k, i, jj, a] = keys[j];
      s12 e(cfg.m);
      e.add(k, i, jj, p_mono(cfg.m, a));
      s12 le = lie(x, e);
      for (const auto& [key, q] : le.comp)
        for (const auto& [e2, val] : q.c) acc(rows[row_key(key, e2)], j, val);
    }
    std::vector<svec> batch;
    for (auto& [k, row] : rows)
      if (!row.zero()) batch.push_back(std::move(row));
    rr.add_rows(batch, ex);
  }
  r.computed = std::to_string(n - rr.rank());
  r.pass = r.computed == r.expected;
  r.notes.push_back("coefficients of degree <= " + std::to_string(cfg.degree) +
                    ", invariance against vector fields of degree <= 2");
  return r;
}

exp_report run_prettr(const exp_config& cfg, exec ex) {
  exp_report r;
  r.expected = "a line of solutions with both structure coefficients nonzero";
  connection flat(cfg.m);
  incremental_rref rr(3);
  auto fields = monomial_fields(cfg.m, cfg.degree);
  std::vector<contra> ps;
  for (int i = 0; i < cfg.m; ++i)
    for (int j = i; j < cfg.m; ++j)
      for (const auto& a : expos_upto(cfg.m, 2)) {
        contra p(cfg.m, 2);
        p.add({i, j}, p_mono(cfg.m, a));
        ps.push_back(p);
      }
  for (const auto& x : fields) {
    s12 l0 = lie_conn(x, flat);
    s12 lt = ltr(x, flat);
    std::map<std::vector<int>, svec> rows;
    int pid = 0;
    for (const auto& p : ps) {
      contra c1 = contract0(l0, p);
      contra c2 = contract0(lt, p);
      contra c3 = lie(x, d_flat(p)) - d_flat(lie(x, p));
      auto put = [&](const contra& c, int colid, const rational& s) {
        for (const auto& [idx, q] : c.comp)
          for (const auto& [e2, val] : q.c) {
            std::vector<int> kk = {pid};
            kk.insert(kk.end(), idx.begin(), idx.end());
            kk.insert(kk.end(), e2.begin(), e2.end());
            acc(rows[kk], colid, s * val);
          }
      };
      put(c1, 0, rational(1));
      put(c2, 1, rational(1));
      put(c3, 2, rational(-1));
      ++pid;
    }
    std::vector<svec> batch;
    for (auto& [k, row] : rows)
      if (!row.zero()) batch.push_back(std::move(row));
    rr.add_rows(batch, ex);
  }
  auto kern = rr.kernel_basis();
  if (kern.size() != 1) {
    r.computed = "solution space dimension " + std::to_string(kern.size());
    return r;
  }
  rational p = kern[0].at(0), q = kern[0].at(1), s = kern[0].at(2);
  if (p == 0 || q == 0 || s == 0) {
    r.computed = "a structure coefficient vanishes";
    return r;
  }
  r.computed = r.expected;
  r.pass = true;
  r.notes.push_back("p = " + rat_str(p / s) + ", q = " + rat_str(q / s) +
                    " (DERIVED values)");
  r.notes.push_back("probed against vector fields of degree <= " +
                    std::to_string(cfg.degree) +
                    " and quadratic contravariant monomials");
  return r;
}

exp_report run_h1_sector(const exp_config& cfg, exec ex) {
  exp_report r;
  r.expected = "0";
  auto mod = s12_graded_module(cfg.m, cfg.w_lo, cfg.w_hi, true);
  auto cplx = weight_zero_subcomplex(mod.rep, 1, ex);
  auto h = cohomology(cplx, 1, ex);
  r.computed = std::to_string(h.dimension);
  r.pass = r.computed == r.expected;
  r.notes.push_back("trace-free coefficients in weight window [" +
                    std::to_string(cfg.w_lo) + ", " + std::to_string(cfg.w_hi) + "]");
  r.notes.push_back("cochain dimensions " + std::to_string(cplx.dim(0)) + ", " +
                    std::to_string(cplx.dim(1)) + ", " + std::to_string(cplx.dim(2)));
  return r;
}

exp_report run_h2_sector(const exp_config& cfg, exec ex) {
  exp_report r;
  r.expected = "1";
  auto mod = s12_graded_module(cfg.m, cfg.w_lo, cfg.w_hi, false);
  auto cplx = weight_zero_subcomplex(mod.rep, 2, ex);
  auto h = cohomology(cplx, 2, ex);
  connection flat(cfg.m);
  auto val = [&](const std::vector<int>& t) {
    const vfield& xx = mod.sl.gen[t[0]];
    const vfield& yy = mod.sl.gen[t[1]];
    return mod.to_coords(divergence(xx) * lie_conn(yy, flat) -
                         divergence(yy) * lie_conn(xx, flat));
  };
  cochain z = cochain_from_values(cplx, 2, val);
  bool faithful = true;
  int n = (int)mod.sl.gen.size();
  for (int i = 0; i < n && faithful; ++i)
    for (int j = i + 1; j < n && faithful; ++j)
      if (!(eval_cochain(cplx, z, {i, j}) == val({i, j}))) faithful = false;
  if (h.dimension != 1) {
    r.computed = "dimension " + std::to_string(h.dimension);
    return r;
  }
  if (!faithful) {
    r.computed = "candidate cocycle leaves the weight sector";
    return r;
  }
  if (!coboundary(cplx, z).coords.zero()) {
    r.computed = "candidate cochain is not closed";
    return r;
  }
  if (is_coboundary(cplx, z, ex).has_value()) {
    r.computed = "candidate cocycle is a coboundary";
    return r;
  }
  svec cls = class_coordinates(cplx, h.representatives, z, ex);
  if (cls.zero()) {
    r.computed = "class coordinates vanish";
    return r;
  }
  r.computed = "1";
  r.pass = true;
  r.notes.push_back("spanned by the cocycle pairing divergences with derivatives "
                    "of the flat connection, class coordinate " + rat_str(cls.at(0)));
  r.notes.push_back("full coefficients in weight window [" + std::to_string(cfg.w_lo) +
                    ", " + std::to_string(cfg.w_hi) + "]");
  return r;
}

/* push a cochain through a module map over the same algebra */
cochain push_cochain(const cochain_complex& src, const cochain_complex& dst,
                     const sparse_matrix& module_map, const cochain& c) {
  sparse_matrix t = module_map.transpose();
  cochain out{c.degree, {}};
  for (const auto& [ci, v] : c.coords.e) {
    auto [tr, b] = src.basis[c.degree].elems[ci];
    for (const auto& [q, w] : t.row[b].e) {
      int di = dst.basis[c.degree].index_of(tr, q);
      if (di < 0) throw error("cochain image misses the target complex");
      acc(out.coords, di, v * w);
    }
  }
  return out;
}

sparse_matrix class_matrix(const cochain_complex& cb, const std::vector<cochain>& rb,
                           const std::vector<cochain>& images, exec ex) {
  sparse_matrix f((int)rb.size(), (int)images.size());
  for (int j = 0; j < (int)images.size(); ++j) {
    svec cls = class_coordinates(cb, rb, images[j], ex);
    for (const auto& [i, v] : cls.e) f.set(i, j, v);
  }
  return f;
}

exp_report run_les(const exp_config& cfg, exec ex) {
  (void)cfg;
  exp_report r;
  r.expected = "exact at all 12 nodes, and obstruction classes separate exactly "
               "as base classes do";
  representation st = sl2_standard();
  representation w3 = direct_sum(st, trivial_rep(st.alg, 1));
  std::vector<svec> g0(3);
  for (int i = 0; i < 3; ++i) g0[i] = w3.action[i].apply(svec_unit(0));
  affine_rep a = from_pair(w3, g0);
  poly_tower tw = filtration_ses(a, w3, 1, 3, ex);
  std::array<const cochain_complex*, 3> cx = {&tw.sub_cplx, &tw.total_cplx,
                                              &tw.quot_cplx};
  std::vector<std::array<cohomology_result, 3>> h(4);
  for (int p = 0; p <= 3; ++p)
    for (int s = 0; s < 3; ++s) h[p][s] = cohomology(*cx[s], p, ex);
  std::vector<sparse_matrix> F(4), G(4), X(3);
  for (int p = 0; p <= 3; ++p) {
    std::vector<cochain> fi, gi;
    for (const auto& zc : h[p][0].representatives)
      fi.push_back(push_cochain(tw.sub_cplx, tw.total_cplx, tw.inclusion, zc));
    F[p] = class_matrix(tw.total_cplx, h[p][1].representatives, fi, ex);
    for (const auto& zc : h[p][1].representatives)
      gi.push_back(push_cochain(tw.total_cplx, tw.quot_cplx, tw.projection, zc));
    G[p] = class_matrix(tw.quot_cplx, h[p][2].representatives, gi, ex);
  }
  for (int p = 0; p <= 2; ++p) {
    std::vector<cochain> xi;
    for (const auto& zc : h[p][2].representatives) xi.push_back(connecting(tw, zc));
    X[p] = class_matrix(tw.sub_cplx, h[p + 1][0].representatives, xi, ex);
  }
  int good = 0;
  auto node = [&](bool comp_zero, int rank_in, int rank_out, int mid) {
    if (comp_zero && rank_in + rank_out == mid) ++good;
  };
  for (int p = 0; p <= 3; ++p) {
    int rf = rank(F[p], ex), rg = rank(G[p], ex);
    int rx_prev = p > 0 ? rank(X[p - 1], ex) : 0;
    bool fz = p > 0 ? F[p].mul(X[p - 1]).zero() : true;
    node(fz, rx_prev, rf, h[p][0].dimension);
    node(G[p].mul(F[p]).zero(), rf, rg, h[p][1].dimension);
    if (p < 3)
      node(X[p].mul(G[p]).zero(), rg, rank(X[p], ex), h[p][2].dimension);
    else
      node(true, rg, 0, h[p][2].dimension);
  }
  /* the degree-one obstruction class moves exactly with the base class */
  auto l = make_algebra({"h", "x"}, {{{0, 1}, svec_unit(1)}});
  sparse_matrix m1(1, 1), m0(1, 1);
  m1.set(0, 0, rational(1));
  representation wr = make_rep(l, 1, {m1, m0}, {"v"});
  affine_rep a1 = from_pair(wr, {svec{}, svec_unit(0)});
  affine_rep a0 = from_pair(wr, {svec{}, svec{}});
  svec pt;
  pt.set(0, rational(5));
  affine_rep a2 = from_pair(wr, rebase(a1, pt));
  cochain_complex bc = full_complex(wr, 1, ex);
  auto base_diff = [&](const affine_rep& u, const affine_rep& v) {
    return cochain_from_values(bc, 1, [&](const std::vector<int>& t) {
      svec d = u.gamma[t[0]];
      d.add_scaled(v.gamma[t[0]], rational(-1));
      return d;
    });
  };
  auto d1 = alpha_cocycle(a1, wr, 1, ex);
  auto d0 = alpha_cocycle(a0, wr, 1, ex);
  auto d2 = alpha_cocycle(a2, wr, 1, ex);
  cochain ga10{1, d1.alpha.coords};
  ga10.coords.add_scaled(d0.alpha.coords, rational(-1));
  cochain ga12{1, d1.alpha.coords};
  ga12.coords.add_scaled(d2.alpha.coords, rational(-1));
  bool split_pair = !is_coboundary(bc, base_diff(a1, a0), ex).has_value() &&
                    !is_coboundary(d1.cplx, ga10, ex).has_value();
  bool glued_pair = is_coboundary(bc, base_diff(a1, a2), ex).has_value() &&
                    is_coboundary(d1.cplx, ga12, ex).has_value();
  if (good == 12 && split_pair && glued_pair) {
    r.computed = r.expected;
    r.pass = true;
  } else if (good != 12) {
    r.computed = "exact at " + std::to_string(good) + " of 12 nodes";
  } else {
    r.computed = "obstruction classes do not track base classes";
  }
  std::ostringstream dims;
  for (int s = 0; s < 3; ++s) {
    dims << (s ? " / " : "") << "(";
    for (int p = 0; p <= 3; ++p) dims << (p ? "," : "") << h[p][s].dimension;
    dims << ")";
  }
  r.notes.push_back("cohomology dimensions sub / total / quotient " + dims.str());
  r.notes.push_back("synthetic finite model, independent of m");
  return r;
}

/* ---- catalog and dispatch ---- */

using runner = exp_report (*)(const exp_config&, exec);

const std::map<std::string, std::pair<const char*, runner>>& runner_table() {
  static const std::map<std::string, std::pair<const char*, runner>> t = {
      {"classify-s12", {"PAPER", run_classify}},
      {"connectun", {"PAPER", run_connectun}},
      {"equivariant-maps", {"PAPER", run_equivariant}},
      {"h0-vanish", {"PAPER", run_h0}},
      {"lemme1-h1", {"PAPER", run_h1_sector}},
      {"lemme1-h2", {"PAPER", run_h2_sector}},
      {"les-exactness", {"DERIVED", run_les}},
      {"prettr", {"PAPER", run_prettr}},
  };
  return t;
}

/* ---- check suites ---- */

check_result check_dd(const exp_config& cfg, exec ex) {
  std::mt19937 rng(497211);
  auto rnd_cochain = [&](const cochain_complex& c, int p) {
    cochain z{p, {}};
    for (int i = 0; i < c.dim(p); ++i) {
      rational q = rnd_q(rng);
      if (q != 0) z.coords.set(i, q);
    }
    return z;
  };
  lie_ptr l = sl2();
  std::vector<cochain_complex> cs;
  cs.push_back(full_complex(adjoint_rep(l), 3, ex));
  cs.push_back(full_complex(sl2_standard(), 3, ex));
  cs.push_back(full_complex(trivial_rep(l, 1), 3, ex));
  cs.push_back(
      weight_zero_subcomplex(s12_graded_module(cfg.m, cfg.w_lo, cfg.w_hi).rep, 3, ex));
  int total = 0, bad = 0;
  for (const auto& c : cs)
    for (int p = 0; p <= 2; ++p)
      for (int rep = 0; rep < 12; ++rep) {
        ++total;
        if (!coboundary(c, coboundary(c, rnd_cochain(c, p))).coords.zero()) ++bad;
      }
  return {"coboundary composes to zero", bad == 0 && total >= 100,
          std::to_string(total) + " random cochains of degree 0..2, " +
              (bad == 0 ? "all exactly zero" : std::to_string(bad) + " failures")};
}

check_result check_trace_projection(const exp_config& cfg) {
  int total = 0, bad = 0;
  for (int m : {2, 3}) {
    rational c(1, m + 1);
    c.canonicalize();
    for (int i = 0; i < m; ++i)
      for (const auto& a : expos_upto(m, cfg.degree)) {
        oneform w(m);
        w.add(i, p_mono(m, a));
        ++total;
        if (!(trace(alpha1(w)) == rational(m + 1) * w)) ++bad;
      }
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
          for (const auto& a : expos_upto(m, cfg.degree)) {
            s12 s(m);
            s.add(k, i, j, p_mono(m, a));
            ++total;
            bool ok = trace(pr(s)).zero() && pr(pr(s)) == pr(s) &&
                      pr(s) + c * alpha1(trace(s)) == s;
            if (!ok) ++bad;
          }
  }
  return {"trace and projection identities", bad == 0,
          std::to_string(total) + " monomial instances over m in {2, 3}, " +
              (bad == 0 ? "all hold" : std::to_string(bad) + " failures")};
}

check_result check_connection_cocycles(const exp_config& cfg) {
  std::mt19937 rng(88417);
  int m = cfg.m;
  auto rnd_conn = [&](int d) {
    connection n(m);
    auto es = expos_upto(m, d);
    std::uniform_int_distribution<size_t> pick(0, es.size() - 1);
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
          for (int rep = 0; rep < 2; ++rep) {
            rational q = rnd_q(rng);
            if (q != 0) n.gamma.add(k, i, j, p_mono(m, es[pick(rng)], q));
          }
    return n;
  };
  connection n1 = rnd_conn(3), n2 = rnd_conn(3);
  s12 dg = n2.gamma - n1.gamma;
  auto fields = monomial_fields(m, cfg.degree);
  int total = 0, bad = 0;
  for (const auto& x : fields) {
    ++total;
    if (!(lie_conn(x, n2) - lie_conn(x, n1) == lie(x, dg))) ++bad;
  }
  for (size_t a = 0; a < fields.size(); ++a)
    for (size_t b = a + 1; b < fields.size(); ++b) {
      const vfield &x = fields[a], &y = fields[b];
      vfield xy = bracket(x, y);
      ++total;
      if (!(lie(x, lie_conn(y, n1)) - lie(y, lie_conn(x, n1)) - lie_conn(xy, n1))
               .zero())
        ++bad;
      ++total;
      if (!(apply(x, divergence(y)) - apply(y, divergence(x)) - divergence(xy))
               .zero())
        ++bad;
    }
  return {"connection and divergence cocycle identities", bad == 0,
          std::to_string(total) + " identities on random symbols, " +
              (bad == 0 ? "all hold" : std::to_string(bad) + " failures")};
}

check_result check_flat_generators(const exp_config& cfg) {
  (void)cfg;
  int total = 0, bad = 0;
  for (int m : {2, 3}) {
    connection flat(m);
    auto sl = sl_projective(m);
    for (const auto& g : sl.gen) {
      ++total;
      if (!lpr(g, flat).zero()) ++bad;
    }
  }
  return {"projective generators have trace-only flat derivative", bad == 0,
          std::to_string(total) + " generators over m in {2, 3}, " +
              (bad == 0 ? "all trace-only" : std::to_string(bad) + " failures")};
}

check_result check_poly_properties(const exp_config& cfg) {
  (void)cfg;
  std::mt19937 rng(664301);
  auto rnd_svec = [&](int n) {
    svec v;
    for (int i = 0; i < n; ++i) {
      rational q = rnd_q(rng);
      if (q != 0) v.set(i, q);
    }
    return v;
  };
  auto rnd_sym = [&](int arity, int n, int w) {
    sym_multi_map t{arity, n, w, {}};
    for (const auto& mu : index_multisets(n, arity))
      for (int b = 0; b < w; ++b) {
        rational q = rnd_q(rng);
        if (q != 0) t.add(mu, b, q);
      }
    return t;
  };
  auto rnd_pm = [&](int k, int n, int w) {
    poly_map p = make_poly(k, n, w);
    for (int i = 0; i <= k; ++i) p.comp[i] = rnd_sym(i, n, w);
    return p;
  };
  auto lin = [](const representation& w, const std::vector<svec>& gs,
                const affine_rep& a, const svec& coef,
                const poly_map& p) {
    (void)gs;
    poly_map out = make_poly(p.k, p.source_dim, p.target_dim);
    bool first = true;
    for (const auto& [i, v] : coef.e) {
      poly_map term = v * act(a, w, i, p);
      out = first ? term : out + term;
      first = false;
    }
    return out;
  };
  struct model {
    representation w;
    affine_rep a;
  };
  std::vector<model> models;
  {
    auto l = make_algebra({"h", "x"}, {{{0, 1}, svec_unit(1)}});
    sparse_matrix m1(1, 1), m0(1, 1);
    m1.set(0, 0, rational(1));
    representation wr = make_rep(l, 1, {m1, m0}, {"v"});
    models.push_back({wr, from_pair(wr, {svec{}, svec_unit(0)})});
  }
  {
    representation st = sl2_standard();
    std::vector<svec> g0(3);
    for (int i = 0; i < 3; ++i) g0[i] = st.action[i].apply(svec_unit(0));
    models.push_back({st, from_pair(st, g0)});
  }
  int total = 0, bad = 0;
  auto checked = [&](bool ok) {
    ++total;
    if (!ok) ++bad;
  };
  for (const auto& mo : models) {
    int n = mo.w.module_dim;
    int na = (int)mo.w.alg->dim;
    std::uniform_int_distribution<int> gi(0, na - 1);
    for (int it = 0; it < 50; ++it) {
      poly_map p = rnd_pm(2, n, n);
      int xi = gi(rng), yj = gi(rng);
      poly_map lhs = act(mo.a, mo.w, xi, act(mo.a, mo.w, yj, p)) -
                     act(mo.a, mo.w, yj, act(mo.a, mo.w, xi, p));
      svec br = xi < yj   ? mo.w.alg->bracket(xi, yj)
                : xi > yj ? mo.w.alg->bracket(yj, xi).neg()
                          : svec{};
      checked(lhs == lin(mo.w, mo.a.gamma, mo.a, br, p));

      svec s = rnd_svec(n);
      affine_rep moved = from_pair(mo.w, rebase(mo.a, s));
      checked(rebase(act(mo.a, mo.w, xi, p), s) ==
              act(moved, mo.w, xi, rebase(p, s)));

      svec u = rnd_svec(n), su = s;
      su.add_scaled(u, rational(1));
      checked(rebase(rebase(p, s), s.neg()) == p &&
              eval(rebase(p, s), u) == eval(p, su));

      sym_multi_map t = rnd_sym(2, n, n);
      poly_map top = tau_section(t);
      checked(symbol(top, 2) == t && symbol(p - tau_section(symbol(p, 2)), 2).zero());

      affine_map f{sparse_matrix::identity(n), s};
      poly_map q = rnd_pm(2, n, n);
      checked(act(moved, mo.w, xi, pullback(f, moved, mo.a, q)) ==
              pullback(f, moved, mo.a, act(mo.a, mo.w, xi, q)));
    }
  }
  return {"polynomial module properties", bad == 0 && total >= 500,
          std::to_string(total) + " randomized checks across five properties, " +
              (bad == 0 ? "all hold" : std::to_string(bad) + " failures")};
}

/* ---- serialization ---- */

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  o += "\"";
  return o;
}

std::string md_cell(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '|') o += "\\|";
    else if (c == '\n') o += ' ';
    else o += c;
  }
  return o;
}

std::vector<exp_report> by_name(std::vector<exp_report> rs) {
  std::sort(rs.begin(), rs.end(),
            [](const exp_report& a, const exp_report& b) { return a.name < b.name; });
  return rs;
}

}  // namespace

std::string config_violation(const exp_config& c, const std::string& name) {
  if (c.m != 2 && c.m != 3) return "m must be 2 or 3";
  if (c.degree < 1 || c.degree > 6) return "degree must lie in [1, 6]";
  if (c.w_lo > c.w_hi) return "window must be a nonempty interval";
  if (c.w_lo > 1 || c.w_hi < 4)
    return "window must contain [1, 4] to hold the graded sectors";
  static const std::set<std::string> m2_only = {"classify-s12", "equivariant-maps",
                                               "lemme1-h2"};
  if (c.m != 2 && m2_only.count(name)) return name + " is documented for m = 2 only";
  return "";
}

const std::vector<std::string>& experiment_catalog() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, t] : runner_table()) v.push_back(n);
    return v;
  }();
  return names;
}

exp_report run_experiment(const std::string& name, const exp_config& cfg, exec ex) {
  const auto& tab = runner_table();
  auto it = tab.find(name);
  if (it == tab.end()) throw error("unknown experiment: " + name);
  std::string v = config_violation(cfg, name);
  if (!v.empty()) throw error(v);
  auto t0 = std::chrono::steady_clock::now();
  exp_report r = it->second.second(cfg, ex);
  auto t1 = std::chrono::steady_clock::now();
  r.name = name;
  r.cfg = cfg;
  r.provenance = it->second.first;
  r.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return r;
}

std::vector<exp_report> run_all(const exp_config& cfg, exec ex) {
  std::string v = config_violation(cfg);
  if (!v.empty()) throw error(v);
  std::vector<exp_report> out;
  for (const auto& name : experiment_catalog())
    if (config_violation(cfg, name).empty()) out.push_back(run_experiment(name, cfg, ex));
  return by_name(std::move(out));
}

std::string reports_json(const std::vector<exp_report>& rs,
                         const std::string& timestamp) {
  using nlohmann::ordered_json;
  auto sorted = by_name(rs);
  ordered_json doc;
  /* everything volatile lives under the timestamp key so the rest of the
   * document is byte-identical across runs of the same configuration */
  doc["timestamp"]["generated"] = timestamp;
  doc["timestamp"]["runtimes_ms"] = ordered_json::object();
  for (const auto& r : sorted) doc["timestamp"]["runtimes_ms"][r.name] = r.runtime_ms;
  doc["scope"] = "verified at desk scale (R^m, polynomial coefficients, stated bounds)";
  doc["reports"] = ordered_json::array();
  for (const auto& r : sorted) {
    ordered_json e;
    e["experiment"] = r.name;
    e["parameters"] = {{"m", r.cfg.m},
                       {"degree", r.cfg.degree},
                       {"window", {r.cfg.w_lo, r.cfg.w_hi}}};
    e["expected"] = {{"value", r.expected}, {"provenance", r.provenance}};
    e["computed"] = r.computed;
    e["pass"] = r.pass;
    e["notes"] = r.notes;
    doc["reports"].push_back(std::move(e));
  }
  return doc.dump();
}

std::string reports_csv(const std::vector<exp_report>& rs) {
  auto sorted = by_name(rs);
  std::ostringstream o;
  o << "experiment,m,degree,window_lo,window_hi,provenance,expected,computed,pass,"
       "runtime_ms,notes\n";
  for (const auto& r : sorted) {
    std::string notes;
    for (size_t k = 0; k < r.notes.size(); ++k)
      notes += (k ? "; " : "") + r.notes[k];
    o << csv_field(r.name) << "," << r.cfg.m << "," << r.cfg.degree << ","
      << r.cfg.w_lo << "," << r.cfg.w_hi << "," << csv_field(r.provenance) << ","
      << csv_field(r.expected) << "," << csv_field(r.computed) << ","
      << (r.pass ? "true" : "false") << "," << r.runtime_ms << ","
      << csv_field(notes) << "\n";
  }
  return o.str();
}

std::string reports_md(const std::vector<exp_report>& rs) {
  auto sorted = by_name(rs);
  std::ostringstream o;
  o << "| experiment | m | degree | window | provenance | expected | computed | "
       "pass | runtime (ms) |\n"
    << "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : sorted)
    o << "| " << md_cell(r.name) << " | " << r.cfg.m << " | " << r.cfg.degree
      << " | [" << r.cfg.w_lo << ", " << r.cfg.w_hi << "] | " << md_cell(r.provenance)
      << " | " << md_cell(r.expected) << " | " << md_cell(r.computed) << " | "
      << (r.pass ? "pass" : "fail") << " | " << r.runtime_ms << " |\n";
  bool any = false;
  for (const auto& r : sorted)
    for (const auto& n : r.notes) {
      if (!any) o << "\nnotes\n";
      any = true;
      o << "- " << md_cell(r.name) << ": " << md_cell(n) << "\n";
    }
  return o.str();
}

std::vector<check_result> check_suites(const exp_config& cfg, exec ex) {
  std::string v = config_violation(cfg);
  if (!v.empty()) throw error(v);
  std::vector<check_result> out;
  out.push_back(check_dd(cfg, ex));
  out.push_back(check_trace_projection(cfg));
  out.push_back(check_connection_cocycles(cfg));
  out.push_back(check_flat_generators(cfg));
  out.push_back(check_poly_properties(cfg));
  return out;
}

}  // namespace affcoh
