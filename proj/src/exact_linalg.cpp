#include "affcoh/exact_linalg.hpp"

#include <algorithm>
#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace affcoh {

rational rat_parse(const std::string& s) {
  mpq_t q;
  mpq_init(q);
  if (mpq_set_str(q, s.c_str(), 10) != 0) {
    mpq_clear(q);
    throw error("bad rational literal: " + s);
  }
  if (mpz_sgn(mpq_denref(q)) == 0) {
    mpq_clear(q);
    throw error("zero denominator: " + s);
  }
  mpq_canonicalize(q);
  rational r(q);
  mpq_clear(q);
  return r;
}

std::string rat_str(const rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/* ---- svec ---- */

rational svec::at(int i) const {
  auto it = std::lower_bound(e.begin(), e.end(), i,
                             [](const auto& p, int k) { return p.first < k; });
  if (it != e.end() && it->first == i) return it->second;
  return rational(0);
}

void svec::set(int i, const rational& v) {
  auto it = std::lower_bound(e.begin(), e.end(), i,
                             [](const auto& p, int k) { return p.first < k; });
  if (it != e.end() && it->first == i) {
    if (v == 0) e.erase(it);
    else it->second = v;
  } else if (v != 0) {
    e.insert(it, {i, v});
  }
}

void svec::push(int i, const rational& v) {
  if (v != 0) e.emplace_back(i, v);
}

svec& svec::add_scaled(const svec& x, const rational& s) {
  if (s == 0 || x.e.empty()) return *this;
  std::vector<std::pair<int, rational>> out;
  out.reserve(e.size() + x.e.size());
  size_t i = 0, j = 0;
  while (i < e.size() || j < x.e.size()) {
    if (j >= x.e.size() || (i < e.size() && e[i].first < x.e[j].first)) {
      out.push_back(e[i++]);
    } else if (i >= e.size() || x.e[j].first < e[i].first) {
      out.emplace_back(x.e[j].first, s * x.e[j].second);
      ++j;
    } else {
      rational v = e[i].second + s * x.e[j].second;
      if (v != 0) out.emplace_back(e[i].first, v);
      ++i, ++j;
    }
  }
  e = std::move(out);
  return *this;
}

svec& svec::scale(const rational& s) {
  if (s == 0) { e.clear(); return *this; }
  for (auto& p : e) p.second *= s;
  return *this;
}

svec svec::neg() const {
  svec r = *this;
  for (auto& p : r.e) p.second = -p.second;
  return r;
}

svec svec_unit(int i) {
  svec v;
  v.push(i, rational(1));
  return v;
}

rational sdot(const svec& a, const svec& b) {
  rational s(0);
  size_t i = 0, j = 0;
  while (i < a.e.size() && j < b.e.size()) {
    if (a.e[i].first < b.e[j].first) ++i;
    else if (b.e[j].first < a.e[i].first) ++j;
    else { s += a.e[i].second * b.e[j].second; ++i; ++j; }
  }
  return s;
}

/* ---- sparse_matrix ---- */

bool sparse_matrix::zero() const {
  for (const auto& r : row)
    if (!r.zero()) return false;
  return true;
}

svec sparse_matrix::apply(const svec& x) const {
  svec y;
  for (int r = 0; r < n_rows; ++r) {
    rational v = sdot(row[r], x);
    if (v != 0) y.push(r, v);
  }
  return y;
}

sparse_matrix sparse_matrix::transpose() const {
  sparse_matrix t(n_cols, n_rows);
  for (int r = 0; r < n_rows; ++r)
    for (const auto& [c, v] : row[r].e) t.row[c].push(r, v);
  return t;
}

sparse_matrix sparse_matrix::mul(const sparse_matrix& b) const {
  if (n_cols != b.n_rows) throw error("mul: shape mismatch");
  sparse_matrix c(n_rows, b.n_cols);
  for (int r = 0; r < n_rows; ++r)
    for (const auto& [k, v] : row[r].e) c.row[r].add_scaled(b.row[k], v);
  return c;
}

sparse_matrix sparse_matrix::add_scaled(const sparse_matrix& b, const rational& s) const {
  if (n_rows != b.n_rows || n_cols != b.n_cols) throw error("add: shape mismatch");
  sparse_matrix c = *this;
  for (int r = 0; r < n_rows; ++r) c.row[r].add_scaled(b.row[r], s);
  return c;
}

bool sparse_matrix::operator==(const sparse_matrix& o) const {
  return n_rows == o.n_rows && n_cols == o.n_cols && row == o.row;
}

std::vector<sparse_matrix::triplet> sparse_matrix::triplets() const {
  std::vector<triplet> t;
  for (int r = 0; r < n_rows; ++r)
    for (const auto& [c, v] : row[r].e) t.emplace_back(r, c, v);
  return t;
}

sparse_matrix sparse_matrix::from_triplets(int r, int c, const std::vector<triplet>& ts) {
  sparse_matrix m(r, c);
  std::map<std::pair<int, int>, rational> acc;
  for (const auto& [i, j, v] : ts) {
    if (i < 0 || i >= r || j < 0 || j >= c) throw error("triplet out of range");
    acc[{i, j}] += v;
  }
  for (const auto& [rc, v] : acc)
    if (v != 0) m.row[rc.first].push(rc.second, v);
  return m;
}

sparse_matrix sparse_matrix::identity(int n) {
  sparse_matrix m(n, n);
  for (int i = 0; i < n; ++i) m.row[i].push(i, rational(1));
  return m;
}

/* ---- exec policy ---- */

namespace {
exec g_exec =
#ifdef _OPENMP
    exec::openmp;
#else
    exec::serial;
#endif
}

exec default_exec() { return g_exec; }
void set_default_exec(exec e) { g_exec = e; }

/* ---- integer rows ---- */

namespace {

void iz_strip(izrow& r) {
  if (r.e.empty()) return;
  bigint g(0);
  for (const auto& p : r.e) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), p.second.get_mpz_t());
    if (g == 1) break;
  }
  if (g > 1)
    for (auto& p : r.e) mpz_divexact(p.second.get_mpz_t(), p.second.get_mpz_t(), g.get_mpz_t());
}

/* r := a*r - b*p, sparse merge over sorted columns */
void iz_axpby(izrow& r, const bigint& a, const bigint& b, const izrow& p) {
  std::vector<std::pair<int, bigint>> out;
  out.reserve(r.e.size() + p.e.size());
  size_t i = 0, j = 0;
  while (i < r.e.size() || j < p.e.size()) {
    if (j >= p.e.size() || (i < r.e.size() && r.e[i].first < p.e[j].first)) {
      out.emplace_back(r.e[i].first, a * r.e[i].second);
      ++i;
    } else if (i >= r.e.size() || p.e[j].first < r.e[i].first) {
      out.emplace_back(p.e[j].first, -b * p.e[j].second);
      ++j;
    } else {
      bigint v = a * r.e[i].second - b * p.e[j].second;
      if (v != 0) out.emplace_back(r.e[i].first, std::move(v));
      ++i, ++j;
    }
  }
  r.e = std::move(out);
}

const bigint* iz_at(const izrow& r, int col) {
  auto it = std::lower_bound(r.e.begin(), r.e.end(), col,
                             [](const auto& p, int k) { return p.first < k; });
  if (it != r.e.end() && it->first == col) return &it->second;
  return nullptr;
}

} // namespace

izrow iz_from_svec(const svec& v) {
  izrow r;
  if (v.zero()) return r;
  bigint l(1);
  for (const auto& p : v.e) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.second.get_den().get_mpz_t());
  r.e.reserve(v.e.size());
  for (const auto& p : v.e) {
    bigint n = p.second.get_num() * (l / p.second.get_den());
    r.e.emplace_back(p.first, std::move(n));
  }
  iz_strip(r);
  return r;
}

svec iz_to_svec_unit_pivot(const izrow& r, int pivot_col) {
  const bigint* d = iz_at(r, pivot_col);
  if (!d) throw error("pivot missing");
  svec v;
  v.e.reserve(r.e.size());
  for (const auto& p : r.e) {
    rational q(p.second, *d);
    q.canonicalize();
    v.e.emplace_back(p.first, std::move(q));
  }
  return v;
}

/* ---- incremental_rref ---- */

void incremental_rref::reduce_(izrow& r) const {
  if (r.zero() || basis_.empty()) return;
  /* pivot-column hits present now; eliminations only introduce non-pivot
   * columns, so one pass over the initial hits is complete */
  std::vector<int> hits;
  for (const auto& p : r.e)
    if (by_pivot_.count(p.first)) hits.push_back(p.first);
  for (int c : hits) {
    const bigint* rc = iz_at(r, c);
    if (!rc) continue;
    int bi = by_pivot_.at(c);
    const izrow& b = basis_[bi];
    const bigint* bp = iz_at(b, c);
    iz_axpby(r, *bp, *rc, b);
  }
  iz_strip(r);
}

void incremental_rref::insert_(izrow&& r) {
  if (r.zero()) return;
  int pc = r.e.front().first; /* leftmost nonzero after reduction */
  if (r.e.front().second < 0)
    for (auto& p : r.e) p.second = -p.second;
  /* back-reduce existing rows at the new pivot column */
  const bigint piv = r.e.front().second;
  for (size_t i = 0; i < basis_.size(); ++i) {
    const bigint* h = iz_at(basis_[i], pc);
    if (!h) continue;
    bigint hv = *h;
    iz_axpby(basis_[i], piv, hv, r);
    iz_strip(basis_[i]);
    /* pivot entry sign is preserved: piv > 0 and r has no entry at the
     * other row's pivot column (it was reduced against the basis) */
  }
  basis_.push_back(std::move(r));
  pivot_.push_back(pc);
  by_pivot_[pc] = (int)basis_.size() - 1;
}

void incremental_rref::add_row(const svec& v) {
  izrow r = iz_from_svec(v);
  reduce_(r);
  insert_(std::move(r));
}

void incremental_rref::add_rows(const std::vector<svec>& rows, exec ex) {
  if (ex == exec::serial) {
    for (const auto& v : rows) add_row(v);
    return;
  }
  /* parallel phase reduces a chunk against the frozen basis; survivors are
   * inserted serially (and re-reduced, since earlier survivors may have
   * added pivots).  The final basis is the unique reduced echelon basis of
   * the accumulated row space, so chunking does not affect the result. */
  const size_t chunk = 256;
  for (size_t base = 0; base < rows.size(); base += chunk) {
    size_t hi = std::min(rows.size(), base + chunk);
    std::vector<izrow> red(hi - base);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t k = 0; k < (std::ptrdiff_t)(hi - base); ++k) {
      izrow r = iz_from_svec(rows[base + k]);
      reduce_(r);
      red[k] = std::move(r);
    }
    for (auto& r : red) {
      if (r.zero()) continue;
      reduce_(r); /* catch pivots added by earlier survivors */
      insert_(std::move(r));
    }
  }
}

std::vector<svec> incremental_rref::rows() const {
  std::vector<svec> out;
  out.reserve(basis_.size());
  for (const auto& [pc, bi] : by_pivot_)
    out.push_back(iz_to_svec_unit_pivot(basis_[bi], pc));
  return out;
}

std::vector<int> incremental_rref::pivot_cols() const {
  std::vector<int> p;
  p.reserve(by_pivot_.size());
  for (const auto& [pc, bi] : by_pivot_) p.push_back(pc);
  return p;
}

std::vector<svec> incremental_rref::kernel_basis() const {
  std::vector<svec> out;
  std::vector<char> is_pivot(cols_, 0);
  for (const auto& [pc, bi] : by_pivot_) is_pivot[pc] = 1;
  for (int f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    svec v;
    for (const auto& [pc, bi] : by_pivot_) {
      const izrow& b = basis_[bi];
      const bigint* a = iz_at(b, f);
      if (!a) continue;
      const bigint* d = iz_at(b, pc);
      rational q(-*a, *d);
      q.canonicalize();
      v.push(pc, q);
    }
    v.set(f, rational(1));
    out.push_back(std::move(v));
  }
  return out;
}

svec incremental_rref::residual(const svec& v) const {
  izrow r = iz_from_svec(v);
  reduce_(r);
  if (r.zero()) return svec{};
  /* scale back to a rational vector; any nonzero scaling is fine for a
   * zero/nonzero membership residual, keep it primitive */
  svec out;
  for (const auto& p : r.e) out.push(p.first, rational(p.second));
  return out;
}

/* ---- derived operations ---- */

int rank(const sparse_matrix& a, exec ex) {
  incremental_rref r(a.n_cols);
  r.add_rows(a.row, ex);
  return r.rank();
}

int rank_sparsest(const sparse_matrix& a, exec ex) {
  std::vector<izrow> act;
  act.reserve(a.n_rows);
  for (const auto& rv : a.row) {
    izrow r = iz_from_svec(rv);
    if (!r.zero()) act.push_back(std::move(r));
  }
  int rk = 0;
  while (!act.empty()) {
    /* structurally sparsest column, smallest index on ties */
    std::map<int, int> cnt;
    for (const auto& r : act)
      for (const auto& p : r.e) cnt[p.first]++;
    int bc = -1, bn = 0;
    for (const auto& [c, n] : cnt)
      if (bc < 0 || n < bn) { bc = c; bn = n; }
    /* sparsest row having that column, smallest index on ties */
    size_t br = act.size();
    for (size_t i = 0; i < act.size(); ++i)
      if (iz_at(act[i], bc) && (br == act.size() || act[i].e.size() < act[br].e.size()))
        br = i;
    izrow piv = std::move(act[br]);
    act.erase(act.begin() + br);
    const bigint pv = *iz_at(piv, bc);
    ++rk;
    auto step = [&](izrow& r) {
      const bigint* h = iz_at(r, bc);
      if (!h) return;
      bigint hv = *h;
      iz_axpby(r, pv, hv, piv);
      iz_strip(r);
    };
    if (ex == exec::openmp) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
      for (std::ptrdiff_t i = 0; i < (std::ptrdiff_t)act.size(); ++i) step(act[i]);
    } else {
      for (auto& r : act) step(r);
    }
    act.erase(std::remove_if(act.begin(), act.end(),
                             [](const izrow& r) { return r.zero(); }),
              act.end());
  }
  return rk;
}

std::vector<svec> kernel_basis(const sparse_matrix& a, exec ex) {
  incremental_rref r(a.n_cols);
  r.add_rows(a.row, ex);
  return r.kernel_basis();
}

std::vector<svec> image_basis(const sparse_matrix& a, exec ex) {
  sparse_matrix t = a.transpose();
  incremental_rref r(a.n_rows);
  r.add_rows(t.row, ex);
  return r.rows();
}

std::optional<svec> solve(const sparse_matrix& a, const svec& b, exec ex) {
  if (!b.zero() && b.e.back().first >= a.n_rows) throw error("solve: rhs dimension");
  incremental_rref r(a.n_cols + 1);
  std::vector<svec> aug(a.n_rows);
  for (int i = 0; i < a.n_rows; ++i) {
    aug[i] = a.row[i];
    rational bi = b.at(i);
    if (bi != 0) aug[i].push(a.n_cols, bi);
  }
  r.add_rows(aug, ex);
  svec x;
  for (const auto& rr : r.rows()) {
    int pc = rr.e.front().first;
    if (pc == a.n_cols) return std::nullopt; /* 0 = nonzero */
    rational beta = rr.at(a.n_cols);
    if (beta != 0) x.set(pc, beta); /* free vars 0, pivot coeff is 1 */
  }
  return x;
}

/* ---- subspaces ---- */

subspace row_space(int ambient, const std::vector<svec>& gens, exec ex) {
  incremental_rref r(ambient);
  r.add_rows(gens, ex);
  return subspace{ambient, r.rows()};
}

bool contains(const subspace& s, const svec& v) {
  svec r = v;
  for (const auto& b : s.basis) {
    if (b.zero()) continue;
    rational c = r.at(b.e.front().first);
    if (c != 0) r.add_scaled(b, -c);
  }
  return r.zero();
}

bool subspace_leq(const subspace& u, const subspace& w) {
  if (u.ambient != w.ambient) return false;
  for (const auto& b : u.basis)
    if (!contains(w, b)) return false;
  return true;
}

int quotient_dim(const subspace& w, const subspace& u) {
  if (!subspace_leq(u, w)) throw error("quotient_dim: not a subspace");
  return w.dim() - u.dim();
}

} // namespace affcoh
