// Rational functions of one variable in a canonical form suitable for exact
// sign certification: value = (num.content * num.prim) / (den.content * den.prim)
// with gcd(num.prim, den.prim) = 1, gcd(num.content, den.content) = 1, and a
// positive leading coefficient on den.prim. The zero function is 0/1.
#pragma once

#include "poscurv/poly.hpp"

namespace poscurv {

struct RatFunc {
  Var var = Var::t;
  IntPoly num, den;

  RatFunc() : num(Var::t), den(IntPoly::constant(Var::t, 1)) {}
  explicit RatFunc(Var v) : var(v), num(v), den(IntPoly::constant(v, 1)) {}

  static RatFunc from_rat(Var v, const Rat& q);
  static RatFunc from_poly(const Poly& p);
  // num / den as given, then canonicalized.
  static RatFunc make(Var v, const ZPoly& num, const ZPoly& den);
  static RatFunc make(const Poly& num, const Poly& den);

  bool is_zero() const { return num.is_zero(); }
  bool is_constant() const { return num.degree() <= 0 && den.degree() <= 0; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.var == b.var && a.num == b.num && a.den == b.den;
  }

  RatFunc derivative() const;

  // Exact value; throws math_error at a pole of the reduced form.
  Rat eval(const Rat& x) const;
  // True if the reduced denominator vanishes at x.
  bool has_pole_at(const Rat& x) const { return den.sign_at(x) == 0; }

  std::string str() const;
};

RatFunc pow(const RatFunc& a, int n);  // n >= 0

}  // namespace poscurv
