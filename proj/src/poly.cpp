#include "poscurv/poly.hpp"

#include <algorithm>
#include <sstream>

namespace poscurv {

// ---------------------------------------------------------------------------
// ZPoly

void ZPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

const Int& ZPoly::leading() const {
  assert(!c.empty());
  return c.back();
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  ZPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] += a.c[i];
    if (i < b.c.size()) r.c[i] += b.c[i];
  }
  r.trim();
  return r;
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) { return a + (-b); }

ZPoly operator-(const ZPoly& a) {
  ZPoly r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return ZPoly{};
  ZPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] += a.c[i] * b.c[j];
  }
  r.trim();
  return r;
}

ZPoly operator*(const ZPoly& a, const Int& k) {
  if (k == 0) return ZPoly{};
  ZPoly r = a;
  for (auto& x : r.c) x *= k;
  return r;
}

ZPoly ZPoly::derivative() const {
  ZPoly r;
  if (c.size() <= 1) return r;
  r.c.resize(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * Int(i);
  r.trim();
  return r;
}

int ZPoly::sign_at(const Rat& x) const {
  if (is_zero()) return 0;
  const Int& p = x.get_num();
  const Int& q = x.get_den();  // canonical: q > 0
  // Homogeneous Horner: sum_i c_i p^i q^{n-i} has the sign of the value.
  Int val = c.back();
  Int qq = 1;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    qq *= q;
    val = val * p + c[i] * qq;
  }
  return sign(val);
}

Rat ZPoly::eval(const Rat& x) const {
  Rat val = 0;
  for (std::size_t i = c.size(); i-- > 0;) val = val * x + Rat(c[i]);
  return val;
}

Int ZPoly::eval_int(const Int& x) const {
  Int val = 0;
  for (std::size_t i = c.size(); i-- > 0;) val = val * x + c[i];
  return val;
}

Int content(const ZPoly& p) {
  Int g = 0;
  for (const auto& x : p.c) {
    g = igcd(g, x);
    if (g == 1) break;
  }
  return g;
}

ZPoly primitive_part(const ZPoly& p) {
  if (p.is_zero()) return p;
  return divexact(p, content(p));
}

ZPoly divexact(const ZPoly& p, const Int& k) {
  assert(k != 0);
  ZPoly r = p;
  for (auto& x : r.c) {
    assert(mpz_divisible_p(x.get_mpz_t(), k.get_mpz_t()));
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
  }
  return r;
}

ZPoly divexact(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) throw math_error("polynomial division by zero");
  if (a.is_zero()) return ZPoly{};
  if (a.degree() < b.degree())
    throw math_error("nonexact polynomial division (degree)");
  ZPoly r = a;
  ZPoly q;
  q.c.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), Int(0));
  const Int& lb = b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const Int& lr = r.leading();
    if (!mpz_divisible_p(lr.get_mpz_t(), lb.get_mpz_t()))
      throw math_error("nonexact polynomial division (leading coefficient)");
    Int qk;
    mpz_divexact(qk.get_mpz_t(), lr.get_mpz_t(), lb.get_mpz_t());
    int shift = r.degree() - b.degree();
    q.c[static_cast<std::size_t>(shift)] = qk;
    for (std::size_t i = 0; i < b.c.size(); ++i)
      r.c[i + static_cast<std::size_t>(shift)] -= qk * b.c[i];
    r.trim();
  }
  if (!r.is_zero()) throw math_error("nonexact polynomial division (remainder)");
  q.trim();
  return q;
}

namespace {

// Plain pseudo remainder: lc(b)^{deg a - deg b + 1} * a mod b, computed by
// repeated scaling. Exactly the classical prem, full power enforced.
ZPoly prem_full(const ZPoly& a, const ZPoly& b) {
  assert(!b.is_zero() && a.degree() >= b.degree());
  const Int& lb = b.leading();
  ZPoly r = a;
  int mults_needed = a.degree() - b.degree() + 1;
  int mults_done = 0;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Int lr = r.leading();
    int shift = r.degree() - b.degree();
    for (auto& x : r.c) x *= lb;
    ++mults_done;
    for (std::size_t i = 0; i < b.c.size(); ++i)
      r.c[i + static_cast<std::size_t>(shift)] -= lr * b.c[i];
    r.trim();
  }
  // Degree can drop by more than one per step; pad to the canonical power.
  for (; mults_done < mults_needed; ++mults_done)
    for (auto& x : r.c) x *= lb;
  return r;
}

}  // namespace

ZPoly spseudo_rem(const ZPoly& a, const ZPoly& b) {
  assert(!b.is_zero() && a.degree() >= b.degree());
  ZPoly r = prem_full(a, b);
  // prem = lc(b)^{delta+1} * rem; flip the sign back when that power is
  // negative so the result is a positive multiple of the exact remainder.
  int delta_plus_1 = a.degree() - b.degree() + 1;
  if (sign(b.leading()) < 0 && (delta_plus_1 % 2) != 0) r = -r;
  return r;
}

ZPoly gcd_primitive(const ZPoly& a, const ZPoly& b) {
  auto pos_prim = [](const ZPoly& p) {
    ZPoly q = primitive_part(p);
    if (!q.is_zero() && sign(q.leading()) < 0) q = -q;
    return q;
  };
  if (a.is_zero()) return pos_prim(b);
  if (b.is_zero()) return pos_prim(a);
  ZPoly u = pos_prim(a), v = pos_prim(b);
  if (u.degree() < v.degree()) std::swap(u, v);
  // Subresultant PRS (Knuth vol 2, 4.6.1C).
  Int g = 1, h = 1;
  while (true) {
    int delta = u.degree() - v.degree();
    ZPoly r = prem_full(u, v);
    if (r.is_zero()) return pos_prim(v);
    if (v.degree() == 0 || r.degree() == 0) {
      ZPoly one;
      one.c = {Int(1)};
      return one;
    }
    Int divisor = g;
    for (int i = 0; i < delta; ++i) divisor *= h;
    u = v;
    v = divexact(r, divisor);
    g = u.leading();
    if (delta > 0) {
      // h = g^delta / h^{delta-1}
      Int num = g;
      for (int i = 1; i < delta; ++i) num *= g;
      Int den = 1;
      for (int i = 1; i < delta; ++i) den *= h;
      assert(mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
  }
}

ZPoly squarefree_part(const ZPoly& p) {
  if (p.is_zero()) return p;
  ZPoly prim = primitive_part(p);
  if (prim.degree() == 0) {
    ZPoly one;
    one.c = {Int(sign(prim.leading()))};
    return one;
  }
  ZPoly g = gcd_primitive(prim, prim.derivative());
  if (g.degree() == 0) return prim;
  return divexact(prim, g);
}

// ---------------------------------------------------------------------------
// Poly

Poly Poly::constant(Var v, const Rat& k) {
  Poly p(v);
  if (sign(k) != 0) p.c = {k};
  return p;
}

Poly Poly::identity(Var v) {
  Poly p(v);
  p.c = {Rat(0), Rat(1)};
  return p;
}

void Poly::trim() {
  while (!c.empty() && sign(c.back()) == 0) c.pop_back();
}

const Rat& Poly::leading() const {
  assert(!c.empty());
  return c.back();
}

Rat Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c.size())) return Rat(0);
  return c[static_cast<std::size_t>(i)];
}

Poly operator+(const Poly& a, const Poly& b) {
  assert(a.var == b.var);
  Poly r(a.var);
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] += a.c[i];
    if (i < b.c.size()) r.c[i] += b.c[i];
  }
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  assert(a.var == b.var);
  Poly r(a.var);
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (sign(a.c[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] += a.c[i] * b.c[j];
  }
  r.trim();
  return r;
}

Poly operator*(const Poly& a, const Rat& k) {
  Poly r(a.var);
  if (sign(k) == 0) return r;
  r = a;
  for (auto& x : r.c) x *= k;
  return r;
}

Poly Poly::derivative() const {
  Poly r(var);
  if (c.size() <= 1) return r;
  r.c.resize(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * Rat(Int(i));
  r.trim();
  return r;
}

Poly Poly::nth_derivative(int n) const {
  Poly r = *this;
  for (int i = 0; i < n; ++i) r = r.derivative();
  return r;
}

Rat Poly::eval(const Rat& x) const {
  Rat val = 0;
  for (std::size_t i = c.size(); i-- > 0;) val = val * x + c[i];
  return val;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sign(c[i]) == 0) continue;
    Rat a = c[i];
    if (first) {
      if (sign(a) < 0) os << "-";
    } else {
      os << (sign(a) > 0 ? " + " : " - ");
    }
    Rat mag = abs(a);
    bool unit = (mag == 1) && i > 0;
    if (!unit) os << rat_str(mag);
    if (i >= 1) {
      if (!unit) os << "*";
      os << var_name(var);
      if (i >= 2) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

PolyDivRem divrem(const Poly& a, const Poly& b) {
  assert(a.var == b.var);
  if (b.is_zero()) throw math_error("polynomial division by zero");
  Poly q(a.var), r = a;
  if (a.degree() >= b.degree())
    q.c.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rat(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Rat qk = r.leading() / b.leading();
    int shift = r.degree() - b.degree();
    q.c[static_cast<std::size_t>(shift)] = qk;
    for (std::size_t i = 0; i < b.c.size(); ++i)
      r.c[i + static_cast<std::size_t>(shift)] -= qk * b.c[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

Poly affine_compose(const Poly& p, const Rat& c0, const Rat& c1, Var out_var) {
  Poly lin(out_var);
  lin.c = {c0, c1};
  lin.trim();
  Poly r(out_var);
  for (std::size_t i = p.c.size(); i-- > 0;)
    r = r * lin + Poly::constant(out_var, p.c[i]);
  return r;
}

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(Var v, const ZPoly& z) : var(v), content(1) {
  if (z.is_zero()) return;
  content = poscurv::content(z);
  prim = divexact(z, content);
}

IntPoly IntPoly::constant(Var v, const Int& k) {
  IntPoly p(v);
  if (k != 0) {
    p.content = abs(k);
    p.prim.c = {Int(sign(k))};
  }
  return p;
}

ZPoly IntPoly::value() const { return prim * content; }

Rat IntPoly::eval(const Rat& x) const { return prim.eval(x) * Rat(content); }

IntPoly clear_denominators(const Poly& p) {
  if (p.is_zero()) return IntPoly(p.var);
  Int m = 1;
  for (const auto& x : p.c) m = ilcm(m, x.get_den());
  ZPoly z;
  z.c.reserve(p.c.size());
  for (const auto& x : p.c) {
    Rat scaled = x * Rat(m);
    assert(scaled.get_den() == 1);
    z.c.push_back(scaled.get_num());
  }
  z.trim();
  return IntPoly(p.var, z);
}

Poly to_poly(const IntPoly& p) {
  Poly r(p.var);
  r.c.reserve(p.prim.c.size());
  for (const auto& x : p.prim.c) r.c.push_back(Rat(x * p.content));
  r.trim();
  return r;
}

Poly to_poly(Var v, const ZPoly& p) {
  Poly r(v);
  r.c.reserve(p.c.size());
  for (const auto& x : p.c) r.c.push_back(Rat(x));
  r.trim();
  return r;
}

}  // namespace poscurv
