#pragma once
/* Polynomial maps on an affine representation: symmetric multilinear
 * components relative to a base point, base change, the induced action,
 * the degree filtration with its symbol sequence, the canonical section
 * of the symbol, its obstruction cocycle, and the connecting map. */

#include "affcoh/affine_rep.hpp"
#include "affcoh/ce_cohomology.hpp"
#include "affcoh/lie_core.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace affcoh {

/* sorted index multisets of size p over {0..n-1}, listed lexicographically */
std::vector<std::vector<int>> index_multisets(int n, int p);
long count_multisets(int n, int p);
long multiset_rank(int n, const std::vector<int>& mu);

/* symmetric i-linear map, stored by its values on sorted basis multisets */
struct sym_multi_map {
  int arity = 0;
  int source_dim = 0;
  int target_dim = 0;
  std::map<std::pair<std::vector<int>, int>, rational> coords;

  bool zero() const { return coords.empty(); }
  rational at(const std::vector<int>& mu, int b) const;
  void add(const std::vector<int>& mu, int b, const rational& v);
  bool operator==(const sym_multi_map& o) const;
};

sym_multi_map operator+(const sym_multi_map& a, const sym_multi_map& b);
sym_multi_map operator-(const sym_multi_map& a, const sym_multi_map& b);
sym_multi_map operator*(const rational& s, const sym_multi_map& a);

/* value on the diagonal, t(u,...,u); a symmetric map is determined by it */
svec diag_eval(const sym_multi_map& t, const svec& u);
/* fix the first argument: (u_2..u_k) -> t(w, u_2..u_k) */
sym_multi_map plug_first(const sym_multi_map& t, const svec& w);
/* tensor action: (x.t)(u_1..u_k) = x.(t(u..)) - sum_i t(.., x.u_i, ..) */
sym_multi_map sym_act(const representation& src, const representation& dst, int x,
                      const sym_multi_map& t);

/* polynomial of degree <= k with components relative to the origin;
 * the value at u is sum_i (1/i!) comp[i](u,...,u) */
struct poly_map {
  int k = 0;
  int source_dim = 0;
  int target_dim = 0;
  std::vector<sym_multi_map> comp; /* comp[i] has arity i */

  bool zero() const;
  bool operator==(const poly_map& o) const;
};

poly_map make_poly(int k, int source_dim, int target_dim);
poly_map operator+(const poly_map& a, const poly_map& b);
poly_map operator-(const poly_map& a, const poly_map& b);
poly_map operator*(const rational& s, const poly_map& a);

svec eval(const poly_map& p, const svec& u);
/* components of the same function relative to the shifted base point */
poly_map rebase(const poly_map& p, const svec& w);
/* (x.p)_i = (x.p_i) - p_{i+1}(x at the origin, ...) */
poly_map act(const affine_rep& a, const representation& w, int x, const poly_map& p);
/* degree-k polynomial whose only component is t */
poly_map tau_section(const sym_multi_map& t);
/* top component */
sym_multi_map symbol(const poly_map& p, int k);
/* composition with an equivariant affine map of the source; rejects others */
poly_map pullback(const affine_map& f, const affine_rep& a, const affine_rep& b,
                  const poly_map& q);
std::string poly_map_json(const poly_map& p);

/* coordinatizations; multiset blocks in lex order, target index fastest */
representation sym_power_rep(const representation& a, const representation& w, int k);
representation poly_rep(const affine_rep& a, const representation& w, int k);
svec sym_coords(const sym_multi_map& t);
sym_multi_map sym_from_coords(int source_dim, int target_dim, int k, const svec& v);
svec poly_coords(const poly_map& p);
poly_map poly_from_coords(int source_dim, int target_dim, int k, const svec& v);

/* the k-th filtration step 0 -> P^{k-1} -> P^k -> S^k -> 0 with both maps
 * intertwining, together with the full cochain complexes of the three terms */
struct poly_tower {
  affine_rep a;
  representation w;
  int k = 1;
  int p_max = 2;
  representation sub, total, quot;
  sparse_matrix inclusion, projection;
  cochain_complex sub_cplx, total_cplx, quot_cplx;
};
poly_tower filtration_ses(const affine_rep& a, const representation& w, int k,
                          int p_max = 2, exec ex = default_exec());

/* obstruction to an equivariant splitting of the k-th filtration step:
 * the 1-cocycle x -> (t -> the degree-(k-1) polynomial u -> -1/(k-1)! t(x.a0, u..u)) */
struct alpha_data {
  representation sym;   /* top quotient */
  representation poly;  /* lower filtration step */
  representation hom;
  cochain_complex cplx; /* full complex of hom up to degree 2 */
  cochain alpha;        /* degree 1 */
};
alpha_data alpha_cocycle(const affine_rep& a, const representation& w, int k,
                         exec ex = default_exec());

/* connecting map on cochains: a degree-p cocycle t valued in the quotient goes
 * to the degree-(p+1) cocycle valued in the subobject whose top component on
 * (x_0..x_p) is sum_i (-1)^{i+1} t(..without x_i..)(x_i.a0, ...) */
cochain connecting(const poly_tower& tw, const cochain& t, exec ex = default_exec());
/* the same cocycle from the boundary of the tau-lift, folded back through the
 * inclusion; agreement with `connecting` is exact, not just up to class */
cochain connecting_via_lift(const poly_tower& tw, const cochain& t,
                            exec ex = default_exec());

} // namespace affcoh
