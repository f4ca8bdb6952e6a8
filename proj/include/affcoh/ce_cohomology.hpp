#pragma once
/* Chevalley-Eilenberg cochain complexes with module coefficients.
 * One builder covers both the full complex of a finite representation and a
 * single weight sector of a graded (possibly window-truncated) module; the
 * full complex is the weight-0 sector for the trivial grading. */

#include "affcoh/lie_core.hpp"

#include <functional>
#include <optional>

namespace affcoh {

/* strictly increasing p-tuples out of 0..n-1, ranked lexicographically */
long n_tuples(int n, int p);
long tuple_rank(int n, const std::vector<int>& t);
std::vector<int> tuple_unrank(int n, int p, long r);

struct cplx_basis {
  /* (tuple rank, module basis index), in (tuple, module) lex order */
  std::vector<std::pair<long, int>> elems;
  std::map<std::pair<long, int>, int> idx;
  int dim() const { return (int)elems.size(); }
  int index_of(long tr, int b) const {
    auto it = idx.find({tr, b});
    return it == idx.end() ? -1 : it->second;
  }
};

struct cochain_complex {
  lie_ptr alg;
  int module_dim = 0;
  long sector_weight = 0;
  int p_max = 0;                      /* deltas 0..p_max are built */
  std::vector<cplx_basis> basis;      /* degrees 0..p_max+1 */
  std::vector<sparse_matrix> delta;   /* delta[p]: C^p -> C^{p+1} */
  int dim(int p) const { return basis[p].dim(); }
};

struct cochain {
  int degree = 0;
  svec coords; /* over the complex basis at that degree */
  bool operator==(const cochain& o) const {
    return degree == o.degree && coords == o.coords;
  }
};

/* full complex of an honest finite representation */
cochain_complex full_complex(const representation& r, int p_max, exec ex = default_exec());

/* one weight sector of a graded module; throws error naming the required
 * module weight when the window cannot support degree <= p_max+1 cochains */
cochain_complex weight_sector_subcomplex(const graded_rep& g, long w, int p_max,
                                         exec ex = default_exec());
cochain_complex weight_zero_subcomplex(const graded_rep& g, int p_max,
                                       exec ex = default_exec());

cochain coboundary(const cochain_complex& c, const cochain& x);

struct cohomology_result {
  int degree = 0;
  int dimension = 0;
  int cocycle_rank = 0;   /* dim ker delta_p */
  int boundary_rank = 0;  /* rank delta_{p-1} */
  std::vector<cochain> representatives; /* reduced modulo boundaries */
};

cohomology_result cohomology(const cochain_complex& c, int p, exec ex = default_exec());
/* convenience: builds the full complex first */
cohomology_result cohomology(const representation& r, int p, exec ex = default_exec());

/* pre: x is a cocycle (throws error otherwise); returns a primitive if any */
std::optional<cochain> is_coboundary(const cochain_complex& c, const cochain& x,
                                     exec ex = default_exec());

/* value of a coordinate cochain on a strictly increasing basis tuple */
svec eval_cochain(const cochain_complex& c, const cochain& x, const std::vector<int>& t);
/* build a degree-p cochain from values on all strictly increasing tuples */
cochain cochain_from_values(const cochain_complex& c, int p,
                            const std::function<svec(const std::vector<int>&)>& val);

/* coordinates of the class of a cocycle z in the span of the given class
 * representatives; unique because the representatives are independent */
svec class_coordinates(const cochain_complex& c, const std::vector<cochain>& reps,
                       const cochain& z, exec ex = default_exec());

} // namespace affcoh
