#include "poscurv/sturm.hpp"

namespace poscurv {

SturmChain build_sturm_chain(Var var, const ZPoly& p) {
  if (p.is_zero()) throw math_error("Sturm chain of the zero polynomial");
  SturmChain chain;
  chain.var = var;
  ZPoly p1 = squarefree_part(p);
  // squarefree_part returns prim(p) exactly when gcd(p, p') is constant.
  chain.squarefree_reduced = !(p1 == primitive_part(p));
  chain.terms.push_back(p1);
  if (p1.degree() == 0) return chain;
  ZPoly p2 = primitive_part(p1.derivative());
  chain.terms.push_back(p2);
  while (!chain.terms.back().is_zero() && chain.terms.back().degree() > 0) {
    const ZPoly& a = chain.terms[chain.terms.size() - 2];
    const ZPoly& b = chain.terms.back();
    ZPoly r = -spseudo_rem(a, b);
    if (r.is_zero()) break;  // cannot happen for squarefree input
    chain.terms.push_back(primitive_part(r));
  }
  return chain;
}

std::vector<int> chain_signs_at(const SturmChain& chain, const Rat& x) {
  std::vector<int> signs;
  signs.reserve(chain.terms.size());
  for (const auto& p : chain.terms) signs.push_back(p.sign_at(x));
  return signs;
}

int count_sign_changes(const std::vector<int>& signs) {
  int changes = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int sign_changes_at(const SturmChain& chain, const Rat& x) {
  return count_sign_changes(chain_signs_at(chain, x));
}

int count_roots_halfopen(const SturmChain& chain, const Rat& a, const Rat& b) {
  if (!(a < b)) throw math_error("count_roots_halfopen requires a < b");
  return sign_changes_at(chain, a) - sign_changes_at(chain, b);
}

int count_roots_halfopen(Var var, const ZPoly& p, const Rat& a, const Rat& b) {
  return count_roots_halfopen(build_sturm_chain(var, p), a, b);
}

const char* verdict_name(SignVerdict v) {
  switch (v) {
    case SignVerdict::StrictlyPositive: return "StrictlyPositive";
    case SignVerdict::StrictlyNegative: return "StrictlyNegative";
    case SignVerdict::HasZero: return "HasZero";
    case SignVerdict::BoundaryZero: return "BoundaryZero";
    case SignVerdict::ZeroPoly: return "ZeroPoly";
  }
  return "?";
}

SignCertificate certify_sign_closed(Var var, const ZPoly& p, const Rat& a,
                                    const Rat& b) {
  if (!(a < b)) throw math_error("certify_sign_closed requires a < b");
  SignCertificate cert;
  cert.var = var;
  cert.poly = p;
  cert.a = a;
  cert.b = b;
  if (p.is_zero()) {
    cert.verdict = SignVerdict::ZeroPoly;
    return cert;
  }
  SturmChain chain = build_sturm_chain(var, p);
  cert.squarefree_reduced = chain.squarefree_reduced;
  for (const auto& term : chain.terms) cert.chain_degrees.push_back(term.degree());
  cert.changes_at_a = sign_changes_at(chain, a);
  cert.changes_at_b = sign_changes_at(chain, b);
  cert.root_count = cert.changes_at_a - cert.changes_at_b;
  cert.sign_at_a = p.sign_at(a);
  if (cert.sign_at_a == 0)
    cert.verdict = SignVerdict::BoundaryZero;
  else if (cert.root_count > 0)
    cert.verdict = SignVerdict::HasZero;
  else
    cert.verdict = cert.sign_at_a > 0 ? SignVerdict::StrictlyPositive
                                      : SignVerdict::StrictlyNegative;
  return cert;
}

RatFuncSignCertificate certify_sign(const RatFunc& f, const Rat& a, const Rat& b) {
  RatFuncSignCertificate cert;
  cert.num_cert = certify_sign_closed(f.var, f.num.prim, a, b);
  cert.den_cert = certify_sign_closed(f.var, f.den.prim, a, b);
  auto strict = [](const SignCertificate& c) {
    return c.verdict == SignVerdict::StrictlyPositive ||
           c.verdict == SignVerdict::StrictlyNegative;
  };
  if (strict(cert.num_cert) && strict(cert.den_cert))
    cert.overall_sign = cert.num_cert.sign_at_a * cert.den_cert.sign_at_a;
  return cert;
}

}  // namespace poscurv
