#pragma once
/* Exact sparse linear algebra over arbitrary-precision rationals.
 * Scalars are GMP rationals; elimination runs fraction-free on
 * content-stripped integer rows and only converts back to rationals
 * when a canonical reduced basis is read off. */

#include <gmpxx.h>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace affcoh {

using rational = mpq_class;
using bigint = mpz_class;

/* "num/den" <-> rational, canonical form (gcd 1, den > 0) */
rational rat_parse(const std::string& s);
std::string rat_str(const rational& q);

struct error : std::runtime_error {
  explicit error(const std::string& m) : std::runtime_error(m) {}
};

/* ---- sparse vector: sorted (index, value), no explicit zeros ---- */

struct svec {
  std::vector<std::pair<int, rational>> e;

  bool zero() const { return e.empty(); }
  int nnz() const { return (int)e.size(); }
  rational at(int i) const;
  void set(int i, const rational& v); /* keeps order, drops zeros */
  void push(int i, const rational& v); /* append, caller keeps order */
  svec& add_scaled(const svec& x, const rational& s); /* *this += s*x */
  svec& scale(const rational& s);
  svec neg() const;
  bool operator==(const svec& o) const { return e == o.e; }
};

svec svec_unit(int i);
rational sdot(const svec& a, const svec& b);

/* ---- row-major sparse matrix ---- */

struct sparse_matrix {
  int n_rows = 0, n_cols = 0;
  std::vector<svec> row;

  sparse_matrix() = default;
  sparse_matrix(int r, int c) : n_rows(r), n_cols(c), row(r) {}

  rational at(int r, int c) const { return row[r].at(c); }
  void set(int r, int c, const rational& v) { row[r].set(c, v); }
  bool zero() const;
  svec apply(const svec& x) const;           /* y = A x */
  sparse_matrix transpose() const;
  sparse_matrix mul(const sparse_matrix& b) const;
  sparse_matrix add_scaled(const sparse_matrix& b, const rational& s) const;
  bool operator==(const sparse_matrix& o) const;

  using triplet = std::tuple<int, int, rational>;
  std::vector<triplet> triplets() const;      /* row-major order */
  static sparse_matrix from_triplets(int r, int c, const std::vector<triplet>& t);
  static sparse_matrix identity(int n);
};

/* ---- execution policy for the data-parallel kernels ---- */

enum class exec { serial, openmp };
exec default_exec();
void set_default_exec(exec e);

/* ---- fraction-free reduced elimination ----
 * Maintains the unique reduced echelon basis of the span of all inserted
 * rows (lexicographic / leftmost pivots), so the result is independent of
 * insertion order and chunking.  Rows are held as primitive integer rows
 * with positive pivot; rational output divides by the pivot. */

struct izrow {
  std::vector<std::pair<int, bigint>> e;
  bool zero() const { return e.empty(); }
};

izrow iz_from_svec(const svec& v);  /* clears denominators, strips content */
svec iz_to_svec_unit_pivot(const izrow& r, int pivot_col);

class incremental_rref {
public:
  explicit incremental_rref(int cols) : cols_(cols) {}

  void add_row(const svec& v);
  void add_rows(const std::vector<svec>& rows, exec ex);
  int rank() const { return (int)basis_.size(); }
  int cols() const { return cols_; }

  /* canonical reduced rows, sorted by pivot column */
  std::vector<svec> rows() const;
  std::vector<int> pivot_cols() const;
  std::vector<svec> kernel_basis() const;

  /* reduce a vector against the basis (returns the residual) */
  svec residual(const svec& v) const;

private:
  void reduce_(izrow& r) const;
  void insert_(izrow&& r);
  int cols_;
  std::vector<izrow> basis_;       /* parallel arrays */
  std::vector<int> pivot_;
  std::map<int, int> by_pivot_;    /* pivot col -> basis index */
};

/* ---- derived operations ---- */

int rank(const sparse_matrix& a, exec ex = default_exec());
/* forward elimination with sparsest-column-first pivoting; rank only */
int rank_sparsest(const sparse_matrix& a, exec ex = default_exec());

std::vector<svec> kernel_basis(const sparse_matrix& a, exec ex = default_exec());
/* canonical basis of the column space, as length-n_rows vectors */
std::vector<svec> image_basis(const sparse_matrix& a, exec ex = default_exec());

/* particular solution of A x = b (free variables 0), or nullopt */
std::optional<svec> solve(const sparse_matrix& a, const svec& b, exec ex = default_exec());

/* ---- subspaces (stored as canonical reduced bases) ---- */

struct subspace {
  int ambient = 0;
  std::vector<svec> basis; /* reduced echelon rows */
  int dim() const { return (int)basis.size(); }
};

subspace row_space(int ambient, const std::vector<svec>& gens, exec ex = default_exec());
bool contains(const subspace& s, const svec& v);
bool subspace_leq(const subspace& u, const subspace& w);
/* dim(W/U); throws error unless U <= W */
int quotient_dim(const subspace& w, const subspace& u);

} // namespace affcoh
