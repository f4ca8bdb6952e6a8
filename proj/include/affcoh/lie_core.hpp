#pragma once
/* Finite-dimensional Lie algebras over the rationals, their representations,
 * and integer gradings (possibly window-truncated modules). */

#include "affcoh/exact_linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace affcoh {

struct lie_algebra {
  int dim = 0;
  std::vector<std::string> labels;
  /* c[k] of [e_i,e_j] for i<j; antisymmetric extension implied */
  std::map<std::pair<int, int>, svec> table;

  svec bracket(int i, int j) const;
  svec bracket_vec(const svec& x, const svec& y) const;
  /* violations of antisymmetry conventions / Jacobi; empty = valid */
  std::vector<std::string> validate() const;
};

using lie_ptr = std::shared_ptr<const lie_algebra>;

lie_ptr make_algebra(std::vector<std::string> labels,
                     std::map<std::pair<int, int>, svec> table); /* validates */
lie_ptr sl2();               /* basis e, f, h */
lie_ptr abelian(int n);

struct representation {
  lie_ptr alg;
  int module_dim = 0;
  std::vector<sparse_matrix> action; /* one per algebra basis element */
  std::vector<std::string> module_labels;

  svec act(int i, const svec& v) const { return action[i].apply(v); }
  svec act_vec(const svec& x, const svec& v) const;
  std::vector<std::string> validate() const; /* commutator identity */
};

/* validates at construction; throws error on violation */
representation make_rep(lie_ptr alg, int module_dim,
                        std::vector<sparse_matrix> action,
                        std::vector<std::string> module_labels = {});

representation trivial_rep(lie_ptr alg, int n);
representation adjoint_rep(lie_ptr alg);
representation sl2_standard();
representation direct_sum(const representation& a, const representation& b);
/* Hom(V_src, V_dst) with (x.T) = rho_dst(x) T - T rho_src(x);
 * basis index of (e_p -> e_q) is p*dim_dst + q */
representation hom_module(const representation& src, const representation& dst);
int hom_index(const representation& src, const representation& dst, int p, int q);
/* hom coordinates -> the matrix V_src -> V_dst they describe */
sparse_matrix hom_matrix(const representation& src, const representation& dst,
                         const svec& coords);

/* H^0: joint kernel of the action, canonical basis */
std::vector<svec> invariants(const representation& r, exec ex = default_exec());

/* ---- integer gradings ----
 * The module may be a weight-window truncation of an infinite graded module:
 * sectors inside [window_lo, window_hi] are stored completely, sectors
 * outside are either genuinely zero (complete_* = true) or truncated away. */

struct graded_rep {
  lie_ptr alg;
  int h_index = -1;                  /* grading element, an algebra basis index */
  std::vector<long> algebra_weights;
  int module_dim = 0;
  std::vector<sparse_matrix> action;
  std::vector<long> module_weights;
  std::vector<std::string> module_labels;
  long window_lo = 0, window_hi = 0;
  bool complete_below = true, complete_above = true;

  bool representable(long w) const {
    if (w >= window_lo && w <= window_hi) return true;
    return w < window_lo ? complete_below : complete_above;
  }
  bool in_window(long w) const { return w >= window_lo && w <= window_hi; }
  svec act(int i, const svec& v) const { return action[i].apply(v); }
  std::vector<std::string> validate() const;
};

/* full decomposition of an honest finite representation; requires ad(h) and
 * rho(h) diagonal with integer eigenvalues */
graded_rep weight_decompose(const representation& r, int h_index);

/* constructs with validation; throws on violation */
graded_rep make_graded(graded_rep g);

} // namespace affcoh
