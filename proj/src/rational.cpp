#include "poscurv/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace poscurv {

int sign(const Int& x) { return mpz_sgn(x.get_mpz_t()); }
int sign(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

Int igcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int ilcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

namespace {

bool is_valid_int_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat parse_rat(const std::string& s) {
  std::size_t slash = s.find('/');
  std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "" : s.substr(slash + 1);
  if (!is_valid_int_token(num) || (slash != std::string::npos && !is_valid_int_token(den)))
    throw input_error("malformed rational: \"" + s + "\"");
  if (slash != std::string::npos && Int(den) == 0)
    throw input_error("zero denominator in rational: \"" + s + "\"");
  Rat r(s);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& x) {
  // Direct (num, den) construction of mpq_class skips canonicalization;
  // never emit a non-canonical form.
  Rat c = x;
  c.canonicalize();
  return c.get_str();
}

long floor_log10_abs(const Rat& x) {
  if (sign(x) == 0) throw math_error("floor_log10_abs(0)");
  // |x| >= 10^e  iff  |num| * 10^{-e} >= den (for e <= 0: |num| >= den * 10^e).
  Int n = abs(x.get_num());
  Int d = x.get_den();
  // Initial guess from digit counts, then correct by at most one step.
  long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 10));
  auto ge_pow10 = [&](long k) {
    // |x| >= 10^k ?
    Int p;
    if (k >= 0) {
      mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
      return n >= d * p;
    }
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-k));
    return n * p >= d;
  };
  while (!ge_pow10(e)) --e;
  while (ge_pow10(e + 1)) ++e;
  return e;
}

std::string rat_decimal(const Rat& x, int sig_digits) {
  if (sig_digits < 1) throw math_error("rat_decimal: sig_digits < 1");
  if (sign(x) == 0) {
    std::string s = "0.";
    s.append(static_cast<std::size_t>(sig_digits - 1), '0');
    return s;
  }
  bool neg = sign(x) < 0;
  Rat a = abs(x);
  long e = floor_log10_abs(a);
  // Scale so that the significand has exactly sig_digits integer digits:
  // m = round(a * 10^{sig_digits-1-e}), round half to even.
  long k = sig_digits - 1 - e;
  Int num = a.get_num(), den = a.get_den();
  if (k >= 0) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
    num *= p;
  } else {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-k));
    den *= p;
  }
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Int twice_r = 2 * r;
  if (twice_r > den || (twice_r == den && mpz_odd_p(q.get_mpz_t())))
    q += 1;
  std::string digits = q.get_str();
  if (static_cast<int>(digits.size()) > sig_digits) {
    // Rounding carried into a new leading digit (e.g. 9.99... -> 10.0...).
    e += 1;
    digits.pop_back();  // trailing digit is 0 after such a carry
  }
  // Place the decimal point after the first digit offset by e.
  std::string out;
  if (neg) out.push_back('-');
  if (e >= 0) {
    if (e + 1 >= static_cast<long>(digits.size())) {
      out += digits;
      out.append(static_cast<std::size_t>(e + 1 - digits.size()), '0');
      out += ".0";
    } else {
      out += digits.substr(0, static_cast<std::size_t>(e + 1));
      out.push_back('.');
      out += digits.substr(static_cast<std::size_t>(e + 1));
    }
  } else {
    out += "0.";
    out.append(static_cast<std::size_t>(-e - 1), '0');
    out += digits;
  }
  return out;
}

double rat_to_double(const Rat& x) { return x.get_d(); }

}  // namespace poscurv
