// Laurent polynomials in the fiber-scaling parameter, with RatFunc
// coefficients in t (or u). Negative powers appear only in intermediate
// quantities (the inverse metric endomorphism carries one); every public
// curvature result is asserted to be a genuine polynomial in the parameter.
#pragma once

#include <map>

#include "poscurv/ratfunc.hpp"

namespace poscurv {

struct EpsPoly {
  Var var = Var::t;
  std::map<int, RatFunc> terms;  // eps-degree -> nonzero coefficient

  EpsPoly() = default;
  explicit EpsPoly(Var v) : var(v) {}

  static EpsPoly from(const RatFunc& coeff, int eps_deg = 0);
  static EpsPoly from_rat(Var v, const Rat& q, int eps_deg = 0);

  bool is_zero() const { return terms.empty(); }
  // Smallest / largest eps-degree with nonzero coefficient; throws on zero.
  int min_deg() const;
  int max_deg() const;
  RatFunc coeff(int eps_deg) const;  // zero RatFunc if absent

  void set(int eps_deg, const RatFunc& c);

  friend EpsPoly operator+(const EpsPoly& a, const EpsPoly& b);
  friend EpsPoly operator-(const EpsPoly& a, const EpsPoly& b);
  friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b);
  friend EpsPoly operator-(const EpsPoly& a);
  friend EpsPoly operator*(const EpsPoly& a, const RatFunc& k);
  friend EpsPoly operator*(const EpsPoly& a, const Rat& k);
  friend bool operator==(const EpsPoly& a, const EpsPoly& b) {
    return a.var == b.var && a.terms == b.terms;
  }

  // Multiplies by eps^k (k may be negative).
  EpsPoly shift(int k) const;
  // d/dt, coefficient-wise.
  EpsPoly derivative() const;
  // Substitutes a nonzero rational value for eps (required nonzero when
  // negative powers are present).
  RatFunc subst_eps(const Rat& e) const;
  // Value at (x, e), exact.
  Rat eval(const Rat& x, const Rat& e) const;

  std::string str() const;
};

}  // namespace poscurv
