#include "poscurv/ratfunc.hpp"

namespace poscurv {

namespace {

// Shared canonicalization: value = (nc * n) / (dc * d) with n, d arbitrary
// integer polynomials (not necessarily primitive), nc, dc positive.
RatFunc normalize(Var v, ZPoly n, Int nc, ZPoly d, Int dc) {
  assert(!d.is_zero());
  assert(nc > 0 && dc > 0);
  RatFunc r(v);
  if (n.is_zero()) return r;
  ZPoly g = gcd_primitive(n, d);
  if (g.degree() > 0) {
    n = divexact(n, g);
    d = divexact(d, g);
  }
  IntPoly nip(v, n), dip(v, d);
  nc *= nip.content;
  dc *= dip.content;
  if (sign(dip.prim.leading()) < 0) {
    dip.prim = -dip.prim;
    nip.prim = -nip.prim;
  }
  Int c = igcd(nc, dc);
  nc /= c;
  dc /= c;
  r.num = nip;
  r.num.content = nc;
  r.den = dip;
  r.den.content = dc;
  return r;
}

}  // namespace

RatFunc RatFunc::from_rat(Var v, const Rat& q) {
  ZPoly n, d;
  if (sign(q) != 0) n.c = {Int(q.get_num())};
  d.c = {Int(q.get_den())};
  return normalize(v, n, 1, d, 1);
}

RatFunc RatFunc::from_poly(const Poly& p) {
  IntPoly n = clear_denominators(p);
  Int m = 1;
  for (const auto& x : p.c) m = ilcm(m, x.get_den());
  // clear_denominators represents m * p; divide back out.
  RatFunc r(p.var);
  if (n.is_zero()) return r;
  Int c = igcd(n.content, m);
  r.num = n;
  r.num.content = n.content / c;
  r.den = IntPoly::constant(p.var, m / c);
  return r;
}

RatFunc RatFunc::make(Var v, const ZPoly& num, const ZPoly& den) {
  if (den.is_zero()) throw math_error("rational function with zero denominator");
  return normalize(v, num, 1, den, 1);
}

RatFunc RatFunc::make(const Poly& num, const Poly& den) {
  assert(num.var == den.var);
  return RatFunc::from_poly(num) / RatFunc::from_poly(den);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  assert(a.var == b.var);
  // (an/ad) + (bn/bd) = (an*bd + bn*ad) / (ad*bd), with contents carried.
  ZPoly n = a.num.prim * b.den.prim * (a.num.content * b.den.content) +
            b.num.prim * a.den.prim * (b.num.content * a.den.content);
  if (n.is_zero()) return RatFunc(a.var);
  ZPoly d = a.den.prim * b.den.prim;
  Int dc = a.den.content * b.den.content;
  return normalize(a.var, n, 1, d, dc);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator-(const RatFunc& a) {
  RatFunc r = a;
  r.num.prim = -r.num.prim;
  return r;
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  assert(a.var == b.var);
  if (a.is_zero() || b.is_zero()) return RatFunc(a.var);
  // Cross-reduce before multiplying to keep degrees small.
  ZPoly an = a.num.prim, bd = b.den.prim;
  ZPoly g1 = gcd_primitive(an, bd);
  if (g1.degree() > 0) {
    an = divexact(an, g1);
    bd = divexact(bd, g1);
  }
  ZPoly bn = b.num.prim, ad = a.den.prim;
  ZPoly g2 = gcd_primitive(bn, ad);
  if (g2.degree() > 0) {
    bn = divexact(bn, g2);
    ad = divexact(ad, g2);
  }
  return normalize(a.var, an * bn, a.num.content * b.num.content, ad * bd,
                   a.den.content * b.den.content);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  assert(a.var == b.var);
  if (b.is_zero()) throw math_error("division by the zero rational function");
  RatFunc inv(b.var);
  inv.num = b.den;
  inv.den = b.num;
  if (sign(inv.den.prim.leading()) < 0) {
    inv.den.prim = -inv.den.prim;
    inv.num.prim = -inv.num.prim;
  }
  return a * inv;
}

RatFunc RatFunc::derivative() const {
  if (is_zero()) return RatFunc(var);
  // (n/d)' = (n'd - nd') / d^2 with contents carried through.
  ZPoly n = num.prim, d = den.prim;
  ZPoly top = n.derivative() * d - n * d.derivative();
  if (top.is_zero()) return RatFunc(var);
  return normalize(var, top, num.content, d * d, den.content);
}

Rat RatFunc::eval(const Rat& x) const {
  if (den.sign_at(x) == 0)
    throw math_error("rational function evaluated at a pole");
  return num.eval(x) / den.eval(x);
}

std::string RatFunc::str() const {
  std::string s = "(" + to_poly(num).str() + ")";
  if (den.degree() > 0 || den.content != 1)
    s += " / (" + to_poly(den).str() + ")";
  return s;
}

RatFunc pow(const RatFunc& a, int n) {
  assert(n >= 0);
  RatFunc r = RatFunc::from_rat(a.var, 1);
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

}  // namespace poscurv
