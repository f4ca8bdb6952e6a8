#include "affcoh/poly_module.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace affcoh {

std::vector<std::vector<int>> index_multisets(int n, int p) {
  std::vector<std::vector<int>> out;
  if (p == 0) {
    out.push_back({});
    return out;
  }
  if (n == 0) return out;
  std::vector<int> cur;
  /* nondecreasing sequences in lexicographic order */
  std::function<void(int)> rec = [&](int lo) {
    if ((int)cur.size() == p) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v < n; ++v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

long count_multisets(int n, int p) {
  if (p == 0) return 1;
  if (n == 0) return 0;
  long r = 1; /* C(n+p-1, p) */
  for (int i = 0; i < p; ++i) r = r * (n + p - 1 - i) / (i + 1);
  return r;
}

long multiset_rank(int n, const std::vector<int>& mu) {
  long r = 0;
  int p = (int)mu.size();
  int lo = 0;
  for (int s = 0; s < p; ++s) {
    for (int v = lo; v < mu[s]; ++v) r += count_multisets(n - v, p - s - 1);
    lo = mu[s];
  }
  return r;
}

namespace {

std::vector<int> merge_sorted(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

std::vector<int> erase_one(const std::vector<int>& mu, int j) {
  std::vector<int> out = mu;
  out.erase(std::find(out.begin(), out.end(), j));
  return out;
}

std::vector<std::pair<int, int>> run_lengths(const std::vector<int>& mu) {
  std::vector<std::pair<int, int>> rl;
  for (int j : mu) {
    if (!rl.empty() && rl.back().first == j)
      ++rl.back().second;
    else
      rl.emplace_back(j, 1);
  }
  return rl;
}

rational factorial(int n) {
  rational f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::string multiset_label(const std::vector<int>& mu) {
  std::string s = "[";
  for (int i = 0; i < (int)mu.size(); ++i)
    s += (i ? " " : "") + std::to_string(mu[i]);
  return s + "]";
}

} // namespace

rational sym_multi_map::at(const std::vector<int>& mu, int b) const {
  auto it = coords.find({mu, b});
  return it == coords.end() ? rational(0) : it->second;
}

void sym_multi_map::add(const std::vector<int>& mu, int b, const rational& v) {
  if (sgn(v) == 0) return;
  auto key = std::make_pair(mu, b);
  auto it = coords.find(key);
  if (it == coords.end()) {
    coords.emplace(std::move(key), v);
    return;
  }
  it->second += v;
  if (sgn(it->second) == 0) coords.erase(it);
}

bool sym_multi_map::operator==(const sym_multi_map& o) const {
  return arity == o.arity && source_dim == o.source_dim && target_dim == o.target_dim &&
         coords == o.coords;
}

sym_multi_map operator+(const sym_multi_map& a, const sym_multi_map& b) {
  sym_multi_map out = a;
  for (const auto& [key, v] : b.coords) out.add(key.first, key.second, v);
  return out;
}

sym_multi_map operator-(const sym_multi_map& a, const sym_multi_map& b) {
  sym_multi_map out = a;
  for (const auto& [key, v] : b.coords) out.add(key.first, key.second, -v);
  return out;
}

sym_multi_map operator*(const rational& s, const sym_multi_map& a) {
  sym_multi_map out{a.arity, a.source_dim, a.target_dim, {}};
  if (sgn(s) == 0) return out;
  for (const auto& [key, v] : a.coords) out.coords.emplace(key, s * v);
  return out;
}

svec diag_eval(const sym_multi_map& t, const svec& u) {
  svec out;
  for (const auto& [key, v] : t.coords) {
    rational term = v;
    for (const auto& [j, m] : run_lengths(key.first)) {
      rational uj = u.at(j);
      if (sgn(uj) == 0) {
        term = 0;
        break;
      }
      for (int s = 0; s < m; ++s) term *= uj;
    }
    /* the diagonal picks up every ordering of the multiset */
    if (sgn(term) != 0) {
      rational ways = factorial(t.arity);
      for (const auto& [j, m] : run_lengths(key.first)) {
        (void)j;
        ways /= factorial(m);
      }
      out.add_scaled(svec_unit(key.second), term * ways);
    }
  }
  return out;
}

sym_multi_map plug_first(const sym_multi_map& t, const svec& w) {
  if (t.arity < 1) throw error("plug_first: arity");
  sym_multi_map out{t.arity - 1, t.source_dim, t.target_dim, {}};
  for (const auto& [key, v] : t.coords)
    for (const auto& [j, m] : run_lengths(key.first)) {
      (void)m;
      rational wj = w.at(j);
      if (sgn(wj) != 0) out.add(erase_one(key.first, j), key.second, wj * v);
    }
  return out;
}

sym_multi_map sym_act(const representation& src, const representation& dst, int x,
                      const sym_multi_map& t) {
  if (t.source_dim != src.module_dim || t.target_dim != dst.module_dim)
    throw error("sym_act: shape mismatch");
  sym_multi_map out{t.arity, t.source_dim, t.target_dim, {}};
  sparse_matrix dt = dst.action[x].transpose();
  for (const auto& [key, v] : t.coords) {
    for (const auto& [b2, vv] : dt.row[key.second].e) out.add(key.first, b2, vv * v);
    for (const auto& [jr, mr] : run_lengths(key.first)) {
      (void)mr; /* the weight counts the slot added below, not the one removed */
      std::vector<int> rest = erase_one(key.first, jr);
      for (const auto& [ja, vv] : src.action[x].row[jr].e) {
        long madd = 1 + std::count(rest.begin(), rest.end(), ja);
        out.add(merge_sorted(rest, {ja}), key.second, rational(-madd) * vv * v);
      }
    }
  }
  return out;
}

bool poly_map::zero() const {
  for (const auto& c : comp)
    if (!c.zero()) return false;
  return true;
}

bool poly_map::operator==(const poly_map& o) const {
  return k == o.k && source_dim == o.source_dim && target_dim == o.target_dim &&
         comp == o.comp;
}

poly_map make_poly(int k, int source_dim, int target_dim) {
  if (k < 0) throw error("make_poly: negative degree");
  poly_map p{k, source_dim, target_dim, {}};
  for (int i = 0; i <= k; ++i)
    p.comp.push_back(sym_multi_map{i, source_dim, target_dim, {}});
  return p;
}

poly_map operator+(const poly_map& a, const poly_map& b) {
  if (a.k != b.k || a.source_dim != b.source_dim || a.target_dim != b.target_dim)
    throw error("poly_map: shape mismatch");
  poly_map out = a;
  for (int i = 0; i <= a.k; ++i) out.comp[i] = out.comp[i] + b.comp[i];
  return out;
}

poly_map operator-(const poly_map& a, const poly_map& b) {
  if (a.k != b.k || a.source_dim != b.source_dim || a.target_dim != b.target_dim)
    throw error("poly_map: shape mismatch");
  poly_map out = a;
  for (int i = 0; i <= a.k; ++i) out.comp[i] = out.comp[i] - b.comp[i];
  return out;
}

poly_map operator*(const rational& s, const poly_map& a) {
  poly_map out = a;
  for (auto& c : out.comp) c = s * c;
  return out;
}

svec eval(const poly_map& p, const svec& u) {
  svec out;
  for (const auto& c : p.comp)
    for (const auto& [key, v] : c.coords) {
      rational term = v;
      for (const auto& [j, m] : run_lengths(key.first)) {
        rational uj = u.at(j);
        if (sgn(uj) == 0) {
          term = 0;
          break;
        }
        for (int s = 0; s < m; ++s) term *= uj;
        term /= factorial(m);
      }
      if (sgn(term) != 0) out.add_scaled(svec_unit(key.second), term);
    }
  return out;
}

poly_map rebase(const poly_map& p, const svec& w) {
  poly_map out = make_poly(p.k, p.source_dim, p.target_dim);
  for (int i = 0; i <= p.k; ++i)
    for (const auto& [key, v] : p.comp[i].coords) {
      /* split the multiset: kept slots stay arguments, the rest eat w */
      auto rl = run_lengths(key.first);
      int parts = (int)rl.size();
      std::vector<int> take(parts, 0);
      while (true) {
        std::vector<int> mu;
        rational coeff = v;
        for (int t = 0; t < parts; ++t) {
          for (int s = 0; s < take[t]; ++s) mu.push_back(rl[t].first);
          int eaten = rl[t].second - take[t];
          if (eaten > 0) {
            rational wj = w.at(rl[t].first);
            if (sgn(wj) == 0) {
              coeff = 0;
              break;
            }
            for (int s = 0; s < eaten; ++s) coeff *= wj;
            coeff /= factorial(eaten);
          }
        }
        if (sgn(coeff) != 0) out.comp[(int)mu.size()].add(mu, key.second, coeff);
        int t = 0;
        while (t < parts && take[t] == rl[t].second) take[t++] = 0;
        if (t == parts) break;
        ++take[t];
      }
    }
  return out;
}

poly_map act(const affine_rep& a, const representation& w, int x, const poly_map& p) {
  if (a.model.alg != w.alg) throw error("act: different algebras");
  if (p.source_dim != a.dim() || p.target_dim != w.module_dim)
    throw error("act: shape mismatch");
  poly_map out = make_poly(p.k, p.source_dim, p.target_dim);
  for (int i = 0; i <= p.k; ++i) {
    out.comp[i] = sym_act(a.model, w, x, p.comp[i]);
    if (i + 1 <= p.k) out.comp[i] = out.comp[i] - plug_first(p.comp[i + 1], a.gamma[x]);
  }
  return out;
}

poly_map tau_section(const sym_multi_map& t) {
  poly_map out = make_poly(t.arity, t.source_dim, t.target_dim);
  out.comp[t.arity] = t;
  return out;
}

sym_multi_map symbol(const poly_map& p, int k) {
  if (k <= p.k) return p.comp[k];
  return sym_multi_map{k, p.source_dim, p.target_dim, {}};
}

poly_map pullback(const affine_map& f, const affine_rep& a, const affine_rep& b,
                  const poly_map& q) {
  if (!is_intertwining(f, a, b)) throw error("pullback: map is not equivariant");
  if (q.source_dim != b.dim()) throw error("pullback: shape mismatch");
  poly_map moved = rebase(q, f.translation);
  poly_map out = make_poly(q.k, a.dim(), q.target_dim);
  for (int i = 0; i <= q.k; ++i)
    for (const auto& mu : index_multisets(a.dim(), i)) {
      /* moved.comp[i] on (f e_{mu_1}, ..., f e_{mu_i}) by multilinearity */
      std::vector<int> pick(i, 0);
      while (true) {
        rational c(1);
        std::vector<int> img(i);
        for (int s = 0; s < i && sgn(c) != 0; ++s) {
          img[s] = pick[s];
          c *= f.linear.at(pick[s], mu[s]);
        }
        if (sgn(c) != 0) {
          std::sort(img.begin(), img.end());
          for (int t = 0; t < q.target_dim; ++t) {
            rational v = moved.comp[i].at(img, t);
            if (sgn(v) != 0) out.comp[i].add(mu, t, c * v);
          }
        }
        int s = 0;
        while (s < i && pick[s] == b.dim() - 1) pick[s++] = 0;
        if (s == i) break;
        ++pick[s];
      }
      if (i == 0) break; /* the single empty tuple is already done */
    }
  return out;
}

std::string poly_map_json(const poly_map& p) {
  std::ostringstream os;
  os << "{\"k\":" << p.k << ",\"components\":[";
  for (int i = 0; i <= p.k; ++i) {
    if (i) os << ",";
    os << "{\"arity\":" << i << ",\"entries\":[";
    bool first = true;
    for (const auto& [key, v] : p.comp[i].coords) {
      if (!first) os << ",";
      first = false;
      os << "[[";
      for (int s = 0; s < (int)key.first.size(); ++s)
        os << (s ? "," : "") << key.first[s];
      os << "]," << key.second << ",\"" << rat_str(v) << "\"]";
    }
    os << "]}";
  }
  os << "]}";
  return os.str();
}

/* ---- coordinatizations ---- */

svec sym_coords(const sym_multi_map& t) {
  svec v;
  for (const auto& [key, val] : t.coords)
    v.set((int)(multiset_rank(t.source_dim, key.first) * t.target_dim) + key.second, val);
  return v;
}

sym_multi_map sym_from_coords(int source_dim, int target_dim, int k, const svec& v) {
  sym_multi_map t{k, source_dim, target_dim, {}};
  auto ms = index_multisets(source_dim, k);
  for (const auto& [i, val] : v.e) {
    int r = i / target_dim;
    if (r >= (int)ms.size()) throw error("sym_from_coords: index out of range");
    t.coords.emplace(std::make_pair(ms[r], i % target_dim), val);
  }
  return t;
}

namespace {

long poly_offset(int n, int m, int i) {
  long off = 0;
  for (int l = 0; l < i; ++l) off += count_multisets(n, l) * m;
  return off;
}

} // namespace

svec poly_coords(const poly_map& p) {
  svec v;
  for (int i = 0; i <= p.k; ++i) {
    long off = poly_offset(p.source_dim, p.target_dim, i);
    for (const auto& [key, val] : p.comp[i].coords)
      v.set((int)(off + multiset_rank(p.source_dim, key.first) * p.target_dim) + key.second,
            val);
  }
  return v;
}

poly_map poly_from_coords(int source_dim, int target_dim, int k, const svec& v) {
  poly_map p = make_poly(k, source_dim, target_dim);
  std::vector<std::vector<std::vector<int>>> ms;
  for (int i = 0; i <= k; ++i) ms.push_back(index_multisets(source_dim, i));
  for (const auto& [idx, val] : v.e) {
    long rest = idx;
    int i = 0;
    while (i < k && rest >= (long)ms[i].size() * target_dim) {
      rest -= (long)ms[i].size() * target_dim;
      ++i;
    }
    long r = rest / target_dim;
    if (r >= (long)ms[i].size()) throw error("poly_from_coords: index out of range");
    p.comp[i].coords.emplace(std::make_pair(ms[i][r], (int)(rest % target_dim)), val);
  }
  return p;
}

representation sym_power_rep(const representation& a, const representation& w, int k) {
  if (a.alg != w.alg) throw error("sym_power_rep: different algebras");
  auto ms = index_multisets(a.module_dim, k);
  int dim = (int)ms.size() * w.module_dim;
  std::vector<sparse_matrix> action;
  for (int x = 0; x < a.alg->dim; ++x) {
    std::vector<sparse_matrix::triplet> tr;
    for (int r = 0; r < (int)ms.size(); ++r)
      for (int b = 0; b < w.module_dim; ++b) {
        sym_multi_map e{k, a.module_dim, w.module_dim, {}};
        e.coords.emplace(std::make_pair(ms[r], b), rational(1));
        svec img = sym_coords(sym_act(a, w, x, e));
        for (const auto& [q, v] : img.e)
          tr.emplace_back(q, r * w.module_dim + b, v);
      }
    action.push_back(sparse_matrix::from_triplets(dim, dim, tr));
  }
  std::vector<std::string> labels;
  for (const auto& mu : ms)
    for (const auto& l : w.module_labels) labels.push_back("t" + multiset_label(mu) + "->" + l);
  return make_rep(a.alg, dim, std::move(action), std::move(labels));
}

representation poly_rep(const affine_rep& a, const representation& w, int k) {
  if (a.model.alg != w.alg) throw error("poly_rep: different algebras");
  int n = a.dim(), m = w.module_dim;
  int dim = (int)poly_offset(n, m, k + 1);
  std::vector<std::vector<std::vector<int>>> ms;
  for (int i = 0; i <= k; ++i) ms.push_back(index_multisets(n, i));
  std::vector<sparse_matrix> action;
  for (int x = 0; x < a.model.alg->dim; ++x) {
    std::vector<sparse_matrix::triplet> tr;
    for (int i = 0; i <= k; ++i) {
      long off = poly_offset(n, m, i);
      for (int r = 0; r < (int)ms[i].size(); ++r)
        for (int b = 0; b < m; ++b) {
          poly_map e = make_poly(k, n, m);
          e.comp[i].coords.emplace(std::make_pair(ms[i][r], b), rational(1));
          svec img = poly_coords(act(a, w, x, e));
          for (const auto& [q, v] : img.e)
            tr.emplace_back(q, (int)(off + (long)r * m) + b, v);
        }
    }
    action.push_back(sparse_matrix::from_triplets(dim, dim, tr));
  }
  std::vector<std::string> labels;
  for (int i = 0; i <= k; ++i)
    for (const auto& mu : ms[i])
      for (const auto& l : w.module_labels)
        labels.push_back("p" + std::to_string(i) + multiset_label(mu) + "->" + l);
  return make_rep(a.model.alg, dim, std::move(action), std::move(labels));
}

poly_tower filtration_ses(const affine_rep& a, const representation& w, int k,
                          int p_max, exec ex) {
  if (k < 1) throw error("filtration_ses: positive degree required");
  if (p_max < 1) throw error("filtration_ses: p_max too small");
  poly_tower tw;
  tw.a = a;
  tw.w = w;
  tw.k = k;
  tw.p_max = p_max;
  tw.sub = poly_rep(a, w, k - 1);
  tw.total = poly_rep(a, w, k);
  tw.quot = sym_power_rep(a.model, w, k);

  int n = a.dim(), m = w.module_dim;
  long off = poly_offset(n, m, k);
  tw.inclusion = sparse_matrix(tw.total.module_dim, tw.sub.module_dim);
  for (int q = 0; q < tw.sub.module_dim; ++q) tw.inclusion.set(q, q, rational(1));
  tw.projection = sparse_matrix(tw.quot.module_dim, tw.total.module_dim);
  for (int q = 0; q < tw.quot.module_dim; ++q)
    tw.projection.set(q, (int)off + q, rational(1));

  for (int x = 0; x < a.model.alg->dim; ++x) {
    if (!(tw.total.action[x].mul(tw.inclusion) == tw.inclusion.mul(tw.sub.action[x])))
      throw error("internal: inclusion does not intertwine");
    if (!(tw.projection.mul(tw.total.action[x]) == tw.quot.action[x].mul(tw.projection)))
      throw error("internal: projection does not intertwine");
  }
  if (!(tw.projection.mul(tw.inclusion) == sparse_matrix(tw.quot.module_dim, tw.sub.module_dim)))
    throw error("internal: composite not zero");
  if (rank(tw.inclusion, ex) != tw.sub.module_dim ||
      rank(tw.projection, ex) != tw.quot.module_dim ||
      tw.sub.module_dim + tw.quot.module_dim != tw.total.module_dim)
    throw error("internal: sequence not exact");

  tw.sub_cplx = full_complex(tw.sub, p_max, ex);
  tw.total_cplx = full_complex(tw.total, p_max, ex);
  tw.quot_cplx = full_complex(tw.quot, p_max, ex);
  return tw;
}

alpha_data alpha_cocycle(const affine_rep& a, const representation& w, int k, exec ex) {
  if (k < 1) throw error("alpha_cocycle: positive degree required");
  alpha_data d;
  d.sym = sym_power_rep(a.model, w, k);
  d.poly = poly_rep(a, w, k - 1);
  d.hom = hom_module(d.sym, d.poly);
  d.cplx = full_complex(d.hom, 2, ex);
  int n = a.dim(), m = w.module_dim;
  auto ms = index_multisets(n, k);
  d.alpha.degree = 1;
  for (int x = 0; x < a.model.alg->dim; ++x) {
    long tr = tuple_rank(a.model.alg->dim, {x});
    for (int r = 0; r < (int)ms.size(); ++r)
      for (int b = 0; b < m; ++b) {
        sym_multi_map e{k, n, m, {}};
        e.coords.emplace(std::make_pair(ms[r], b), rational(1));
        svec val = poly_coords(tau_section(rational(-1) * plug_first(e, a.gamma[x])));
        int col = r * m + b;
        for (const auto& [q, v] : val.e)
          d.alpha.coords.set(
              d.cplx.basis[1].index_of(tr, hom_index(d.sym, d.poly, col, q)), v);
      }
  }
  if (!coboundary(d.cplx, d.alpha).coords.zero())
    throw error("internal: obstruction cochain is not closed");
  return d;
}

cochain connecting(const poly_tower& tw, const cochain& t, exec ex) {
  (void)ex;
  int p = t.degree;
  if (p + 1 > tw.p_max) throw error("connecting: degree exceeds the stored complexes");
  if (!coboundary(tw.quot_cplx, t).coords.zero()) throw error("connecting: not a cocycle");
  int n = tw.a.dim(), m = tw.w.module_dim;
  return cochain_from_values(tw.sub_cplx, p + 1, [&](const std::vector<int>& tup) {
    sym_multi_map acc{tw.k - 1, n, m, {}};
    for (int s = 0; s < (int)tup.size(); ++s) {
      std::vector<int> rest = tup;
      rest.erase(rest.begin() + s);
      sym_multi_map ts =
          sym_from_coords(n, m, tw.k, eval_cochain(tw.quot_cplx, t, rest));
      sym_multi_map plugged = plug_first(ts, tw.a.gamma[tup[s]]);
      acc = (s % 2 == 0) ? acc - plugged : acc + plugged;
    }
    return poly_coords(tau_section(acc));
  });
}

cochain connecting_via_lift(const poly_tower& tw, const cochain& t, exec ex) {
  (void)ex;
  int p = t.degree;
  if (p + 1 > tw.p_max) throw error("connecting: degree exceeds the stored complexes");
  if (!coboundary(tw.quot_cplx, t).coords.zero()) throw error("connecting: not a cocycle");
  int n = tw.a.dim(), m = tw.w.module_dim;
  long off = poly_offset(n, m, tw.k);
  cochain lifted = cochain_from_values(tw.total_cplx, p, [&](const std::vector<int>& tup) {
    svec val = eval_cochain(tw.quot_cplx, t, tup);
    svec out;
    for (const auto& [q, v] : val.e) out.set((int)off + q, v);
    return out;
  });
  cochain d = coboundary(tw.total_cplx, lifted);
  return cochain_from_values(tw.sub_cplx, p + 1, [&](const std::vector<int>& tup) {
    svec val = eval_cochain(tw.total_cplx, d, tup);
    for (const auto& [q, v] : val.e) {
      (void)v;
      if (q >= tw.sub.module_dim) /* the symbol part must have cancelled */
        throw error("internal: lifted boundary escapes the subobject");
    }
    return val;
  });
}

} // namespace affcoh
