#include "poscurv/epspoly.hpp"

#include <sstream>

namespace poscurv {

EpsPoly EpsPoly::from(const RatFunc& coeff, int eps_deg) {
  EpsPoly p(coeff.var);
  if (!coeff.is_zero()) p.terms[eps_deg] = coeff;
  return p;
}

EpsPoly EpsPoly::from_rat(Var v, const Rat& q, int eps_deg) {
  return from(RatFunc::from_rat(v, q), eps_deg);
}

int EpsPoly::min_deg() const {
  if (terms.empty()) throw math_error("min_deg of the zero EpsPoly");
  return terms.begin()->first;
}

int EpsPoly::max_deg() const {
  if (terms.empty()) throw math_error("max_deg of the zero EpsPoly");
  return terms.rbegin()->first;
}

RatFunc EpsPoly::coeff(int eps_deg) const {
  auto it = terms.find(eps_deg);
  return it == terms.end() ? RatFunc(var) : it->second;
}

void EpsPoly::set(int eps_deg, const RatFunc& c) {
  assert(c.var == var);
  if (c.is_zero())
    terms.erase(eps_deg);
  else
    terms[eps_deg] = c;
}

EpsPoly operator+(const EpsPoly& a, const EpsPoly& b) {
  assert(a.var == b.var);
  EpsPoly r = a;
  for (const auto& [d, c] : b.terms) {
    auto it = r.terms.find(d);
    if (it == r.terms.end()) {
      r.terms[d] = c;
    } else {
      RatFunc s = it->second + c;
      if (s.is_zero())
        r.terms.erase(it);
      else
        it->second = s;
    }
  }
  return r;
}

EpsPoly operator-(const EpsPoly& a, const EpsPoly& b) { return a + (-b); }

EpsPoly operator-(const EpsPoly& a) {
  EpsPoly r = a;
  for (auto& [d, c] : r.terms) c = -c;
  return r;
}

EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
  assert(a.var == b.var);
  EpsPoly r(a.var);
  for (const auto& [da, ca] : a.terms)
    for (const auto& [db, cb] : b.terms) {
      RatFunc prod = ca * cb;
      if (prod.is_zero()) continue;
      auto it = r.terms.find(da + db);
      if (it == r.terms.end()) {
        r.terms[da + db] = prod;
      } else {
        RatFunc s = it->second + prod;
        if (s.is_zero())
          r.terms.erase(it);
        else
          it->second = s;
      }
    }
  return r;
}

EpsPoly operator*(const EpsPoly& a, const RatFunc& k) {
  EpsPoly r(a.var);
  if (k.is_zero()) return r;
  for (const auto& [d, c] : a.terms) r.terms[d] = c * k;
  return r;
}

EpsPoly operator*(const EpsPoly& a, const Rat& k) {
  return a * RatFunc::from_rat(a.var, k);
}

EpsPoly EpsPoly::shift(int k) const {
  EpsPoly r(var);
  for (const auto& [d, c] : terms) r.terms[d + k] = c;
  return r;
}

EpsPoly EpsPoly::derivative() const {
  EpsPoly r(var);
  for (const auto& [d, c] : terms) {
    RatFunc dc = c.derivative();
    if (!dc.is_zero()) r.terms[d] = dc;
  }
  return r;
}

RatFunc EpsPoly::subst_eps(const Rat& e) const {
  if (!terms.empty() && min_deg() < 0 && sign(e) == 0)
    throw math_error("substituting eps=0 into a Laurent term");
  RatFunc r(var);
  for (const auto& [d, c] : terms) {
    Rat f = 1;
    for (int i = 0; i < (d >= 0 ? d : -d); ++i) f *= e;
    if (d < 0) f = Rat(1) / f;
    r = r + c * RatFunc::from_rat(var, f);
  }
  return r;
}

Rat EpsPoly::eval(const Rat& x, const Rat& e) const {
  return subst_eps(e).eval(x);
}

std::string EpsPoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : terms) {
    if (!first) os << " + ";
    os << "e^" << d << " * " << c.str();
    first = false;
  }
  return os.str();
}

}  // namespace poscurv
