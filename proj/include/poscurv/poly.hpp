// Dense univariate polynomials: Poly over the rationals for construction
// and calculus, ZPoly/IntPoly over the integers for sign work (pseudo
// remainders, subresultant gcd, Sturm chains).
//
// Conventions shared by every type here:
//   * coefficients are stored lowest degree first,
//   * the zero polynomial has an empty coefficient vector and degree -1,
//   * a Var tag says which indeterminate the coefficients refer to:
//     Var::t is the global coordinate, Var::u is the shifted coordinate
//     u = t - L used by pieces expanded around the right endpoint.
// Mixing variables in arithmetic is a programming error and asserts.
#pragma once

#include <cassert>
#include <string>
#include <vector>

#include "poscurv/rational.hpp"

namespace poscurv {

enum class Var { t, u };

inline const char* var_name(Var v) { return v == Var::t ? "t" : "u"; }

// ---------------------------------------------------------------------------
// ZPoly: integer coefficients, no variable tag (helper layer).

struct ZPoly {
  std::vector<Int> c;

  ZPoly() = default;
  explicit ZPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim();
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Int& leading() const;

  friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator-(const ZPoly& a);
  friend ZPoly operator*(const ZPoly& a, const Int& k);
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c == b.c; }

  ZPoly derivative() const;

  // Sign of the value at x, computed by homogeneous integer evaluation
  // (no rational canonicalization in the inner loop).
  int sign_at(const Rat& x) const;
  Rat eval(const Rat& x) const;
  Int eval_int(const Int& x) const;
};

// Content (gcd of coefficients, >= 0; 0 only for the zero polynomial).
Int content(const ZPoly& p);
// p / content(p), leading sign preserved; zero stays zero.
ZPoly primitive_part(const ZPoly& p);
// Divides every coefficient by k; asserts exactness.
ZPoly divexact(const ZPoly& p, const Int& k);
// Exact polynomial division; throws math_error if b does not divide a.
ZPoly divexact(const ZPoly& a, const ZPoly& b);
// Sign-safe pseudo remainder: returns r = s * rem(a, b) where rem is the
// exact euclidean remainder over the rationals and s is a positive rational.
// Requires deg a >= deg b >= 0.
ZPoly spseudo_rem(const ZPoly& a, const ZPoly& b);
// Primitive gcd via the subresultant PRS (Knuth vol 2, algorithm 4.6.1C).
// Result is primitive with positive leading coefficient; gcd(p, 0) = prim(p).
ZPoly gcd_primitive(const ZPoly& a, const ZPoly& b);
// p / gcd(p, p'): same roots, all simple. Primitive, leading sign kept.
ZPoly squarefree_part(const ZPoly& p);

// ---------------------------------------------------------------------------
// Poly: rational coefficients with a variable tag.

struct Poly {
  Var var = Var::t;
  std::vector<Rat> c;

  Poly() = default;
  explicit Poly(Var v) : var(v) {}
  Poly(Var v, std::vector<Rat> coeffs) : var(v), c(std::move(coeffs)) { trim(); }
  static Poly constant(Var v, const Rat& k);
  // The monomial x (in the given variable).
  static Poly identity(Var v);

  void trim();
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Rat& leading() const;
  Rat coeff(int i) const;  // 0 beyond the stored range

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Rat& k);
  friend Poly operator*(const Rat& k, const Poly& a) { return a * k; }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.var == b.var && a.c == b.c;
  }

  Poly derivative() const;
  Poly nth_derivative(int n) const;
  Rat eval(const Rat& x) const;

  std::string str() const;  // human-readable, e.g. "4t - 10t^3"
};

// Euclidean division over the rationals: a = q*b + r with deg r < deg b.
struct PolyDivRem {
  Poly quot, rem;
};
PolyDivRem divrem(const Poly& a, const Poly& b);

// p(c0 + c1*x), expanded exactly; the result is tagged with out_var.
Poly affine_compose(const Poly& p, const Rat& c0, const Rat& c1, Var out_var);

// ---------------------------------------------------------------------------
// IntPoly: integer polynomial split as content * primitive.

struct IntPoly {
  Var var = Var::t;
  ZPoly prim;   // primitive (content 1); empty for zero
  Int content;  // > 0 always; the represented value is content * prim

  IntPoly() : content(1) {}
  explicit IntPoly(Var v) : var(v), content(1) {}
  // Splits z into content and primitive part. The sign of z's leading
  // coefficient stays on prim; content is positive.
  IntPoly(Var v, const ZPoly& z);
  static IntPoly constant(Var v, const Int& k);

  bool is_zero() const { return prim.is_zero(); }
  int degree() const { return prim.degree(); }
  ZPoly value() const;  // content * prim, expanded
  Rat eval(const Rat& x) const;
  int sign_at(const Rat& x) const { return prim.sign_at(x); }

  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.var == b.var && a.content == b.content && a.prim == b.prim;
  }
};

// Clears denominators: returns an IntPoly whose value is m * p for the
// smallest positive rational m making all coefficients integral. Values
// agree with p up to that positive factor (signs and roots are preserved).
IntPoly clear_denominators(const Poly& p);

// Exact conversion of an integer polynomial back to a rational Poly.
Poly to_poly(const IntPoly& p);
Poly to_poly(Var v, const ZPoly& p);

}  // namespace poscurv
