#pragma once
/* Polynomial tensor calculus on R^m, m > 1: vector fields, symmetric
 * (1,2)-tensor fields, 1-forms, symmetric contravariant fields, torsion-free
 * connections, and the cocycles built from them. All coefficients rational. */

#include "affcoh/exact_linalg.hpp"
#include "affcoh/lie_core.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace affcoh {

/* exponent vector of length m */
using expo = std::vector<int>;

int expo_deg(const expo& a);
std::vector<expo> expos(int m, int d);        /* all |a| = d, lex order */
std::vector<expo> expos_upto(int m, int d);   /* degrees 0..d */
std::vector<std::vector<int>> multisets(int m, int p); /* sorted p-tuples in 0..m-1 */

struct poly {
  int m = 0;
  std::map<expo, rational> c; /* zero entries always erased */

  poly() = default;
  explicit poly(int m_) : m(m_) {}
  bool zero() const { return c.empty(); }
  int degree() const; /* -1 when zero */
  rational at(const expo& a) const;
  void add(const expo& a, const rational& v);
  bool operator==(const poly& o) const { return m == o.m && c == o.c; }
};

poly p_mono(int m, const expo& a, const rational& v = rational(1));
poly p_const(int m, const rational& v);
poly p_var(int m, int i); /* x^i, 0-based */
poly operator+(const poly& a, const poly& b);
poly operator-(const poly& a, const poly& b);
poly operator*(const poly& a, const poly& b);
poly operator*(const rational& s, const poly& a);
poly diff(const poly& a, int u);
std::string poly_str(const poly& a); /* x1..xm, for messages */

/* X = sum X^i d_i */
struct vfield {
  int m = 0;
  std::map<int, poly> comp;

  vfield() = default;
  explicit vfield(int m_) : m(m_) {}
  bool zero() const { return comp.empty(); }
  poly at(int i) const;
  void add(int i, const poly& p);
  bool operator==(const vfield& o) const { return m == o.m && comp == o.comp; }
};

struct oneform {
  int m = 0;
  std::map<int, poly> comp;

  oneform() = default;
  explicit oneform(int m_) : m(m_) {}
  bool zero() const { return comp.empty(); }
  poly at(int i) const;
  void add(int i, const poly& p);
  bool operator==(const oneform& o) const { return m == o.m && comp == o.comp; }
};

/* S = S^k_ij dx^i dx^j (x) d_k, symmetric in (i,j); stored with i <= j */
struct s12 {
  int m = 0;
  std::map<std::array<int, 3>, poly> comp; /* {k,i,j} */

  s12() = default;
  explicit s12(int m_) : m(m_) {}
  bool zero() const { return comp.empty(); }
  poly at(int k, int i, int j) const;
  void add(int k, int i, int j, const poly& p);
  bool operator==(const s12& o) const { return m == o.m && comp == o.comp; }
};

/* torsion-free by construction: the symbol table is symmetric */
struct connection {
  int m = 0;
  s12 gamma;

  connection() = default;
  explicit connection(int m_) : m(m_), gamma(m_) {}
  bool operator==(const connection& o) const { return m == o.m && gamma == o.gamma; }
};

/* P^(i1..ip), symmetric; keys are sorted index tuples of length p */
struct contra {
  int m = 0, p = 1;
  std::map<std::vector<int>, poly> comp;

  contra() = default;
  contra(int m_, int p_) : m(m_), p(p_) {}
  bool zero() const { return comp.empty(); }
  poly at(std::vector<int> idx) const;
  void add(std::vector<int> idx, const poly& q);
  bool operator==(const contra& o) const {
    return m == o.m && p == o.p && comp == o.comp;
  }
};

vfield v_mono(int m, int i, const expo& a, const rational& v = rational(1));
vfield coord_field(int m, int i);           /* d_i */
vfield euler_field(int m);                  /* sum x^u d_u */
vfield operator+(const vfield& a, const vfield& b);
vfield operator-(const vfield& a, const vfield& b);
vfield operator*(const rational& s, const vfield& a);
vfield operator*(const poly& f, const vfield& a);
oneform operator+(const oneform& a, const oneform& b);
oneform operator-(const oneform& a, const oneform& b);
oneform operator*(const rational& s, const oneform& a);
oneform operator*(const poly& f, const oneform& a);
s12 operator+(const s12& a, const s12& b);
s12 operator-(const s12& a, const s12& b);
s12 operator*(const rational& s, const s12& a);
s12 operator*(const poly& f, const s12& a);
contra operator+(const contra& a, const contra& b);
contra operator-(const contra& a, const contra& b);
contra operator*(const rational& s, const contra& a);

poly apply(const vfield& x, const poly& f); /* directional derivative */
vfield bracket(const vfield& x, const vfield& y);

/* Lie derivatives, all exact */
s12 lie(const vfield& x, const s12& s);
oneform lie(const vfield& x, const oneform& a);
contra lie(const vfield& x, const contra& q);

/* trace, its section, and the trace-free projection */
oneform trace(const s12& s);
s12 alpha1(const oneform& a);  /* (a.1)(u,v) = a(u)v + a(v)u */
s12 pr(const s12& s);          /* s - 1/(m+1) (tr s).1 */

vfield cov(const connection& n, const vfield& y, const vfield& z); /* n_y z */
s12 lie_conn(const vfield& x, const connection& n);                /* L_x n */
s12 lpr(const vfield& x, const connection& n); /* pr(L_x n) */
s12 ltr(const vfield& x, const connection& n); /* (tr L_x n).1 */

poly divergence(const vfield& x); /* sum d_i X^i */

/* flat-connection 2-cochain
 * a div(X) tr(L_Y)1 + b div(X) pr(L_Y) - (X <-> Y) */
s12 kappa(const rational& a, const rational& b, const vfield& x, const vfield& y);

contra contract0(const s12& s, const contra& q); /* deg 2 -> 1: sum S^k_ij P^ij */
contra d_flat(const contra& q);                  /* deg 2 -> 1: sum d_j P^ji */

/* equal up to a.1 for some 1-form a */
bool proj_equivalent(const connection& n1, const connection& n2);

/* the projective realization: d_i, x^j d_i, x^a E; the Euler field E is a
 * basis element so the grading operator lives inside the algebra */
struct sl_realization {
  int m = 0;
  lie_ptr alg;
  int h_index = -1;
  std::vector<vfield> gen;
  std::vector<long> weights; /* eigenvalues of ad(E) */
};
sl_realization sl_projective(int m);

/* polynomial-coefficient S12 sectors as a window-truncated graded module;
 * degree-d coefficients sit in weight d+1 */
struct s12_module {
  sl_realization sl;
  bool trace_free = false;
  graded_rep rep;
  std::vector<std::tuple<int, int, int, expo>> keys; /* ambient sector basis */
  std::map<std::tuple<int, int, int, expo>, int> key_idx;
  sparse_matrix tf;          /* trace-free basis rows in ambient coordinates */
  std::vector<int> tf_cols;  /* coordinate columns of that basis */

  svec to_coords(const s12& s) const;
  s12 from_coords(const svec& v) const;
};
s12_module s12_graded_module(int m, long w_lo, long w_hi, bool trace_free = false);

/* plain coefficient coordinates for desk kernel computations */
std::vector<std::tuple<int, int, int, expo>> s12_keys(int m, int d_lo, int d_hi);
svec s12_coords(const s12& s, const std::map<std::tuple<int, int, int, expo>, int>& idx);
s12 s12_from_coords(int m, const svec& v,
                    const std::vector<std::tuple<int, int, int, expo>>& keys);

} // namespace affcoh
