#pragma once
/* Affine representations: a linear model representation together with the
 * base-point 1-cocycle. Equivalence, direct sums, orbit classification. */

#include "affcoh/ce_cohomology.hpp"
#include "affcoh/lie_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace affcoh {

struct affine_rep {
  representation model;
  std::vector<svec> gamma; /* gamma[i] = action of basis element i at the origin */
  int dim() const { return model.module_dim; }
};

/* f(a) = linear a + translation */
struct affine_map {
  sparse_matrix linear;
  svec translation;
};

affine_map affine_identity(int n);
affine_map compose(const affine_map& g, const affine_map& f);

/* validated constructor; rejects a base cochain that is not closed */
affine_rep from_pair(const representation& rho, std::vector<svec> gamma0);

/* x.(y.a) - y.(x.a) - [x,y].a on all basis pairs at each sample; empty = pass */
std::vector<std::string> check_affine_axiom(const affine_rep& a,
                                            const std::vector<svec>& samples);

/* base-point cocycle seen from `point`: x -> gamma(x) + rho(x) point */
std::vector<svec> rebase(const affine_rep& a, const svec& point);

bool is_intertwining(const affine_map& f, const affine_rep& a, const affine_rep& b);

/* bijective intertwiner if one can be found; none is certain when the matching
 * system is infeasible or the solution family is provably singular */
std::optional<affine_map> equivalent(const affine_rep& a, const affine_rep& b,
                                     exec ex = default_exec());

affine_rep direct_sum(const affine_rep& a, const affine_rep& b);

/* affine action on the cohomology class of gamma, written in the coordinates
 * v -> gamma + dv; needs a module without invariants so v is unique */
affine_rep canonical_on_class(const representation& rho, std::vector<svec> gamma);

/* orbits of a commuting-on-lines family on an h-dimensional space: every map
 * must act diagonally in some common rational basis, the lines must scale
 * independently, and then the orbits are the 2^s support patterns */
struct diag_orbits {
  int s = 0;
  long classes = 1;
  std::vector<svec> directions;
};
diag_orbits diagonal_orbit_count(const std::vector<sparse_matrix>& induced, int h,
                                 exec ex = default_exec());

struct affine_classification {
  int h1_dim = 0;
  int s = 0;
  long classes = 1;
  cochain_complex cplx;
  std::vector<cochain> representatives; /* one degree-1 cocycle per class */
  std::vector<sparse_matrix> invariant_maps;
};
affine_classification classify_affine_reps(const representation& rho,
                                           exec ex = default_exec());

} // namespace affcoh
