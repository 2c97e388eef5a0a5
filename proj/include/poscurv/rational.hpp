// Exact rational scalars built on GMP, plus the string formats used
// throughout: "p/q" for exact IO and a fixed-width decimal for plotting.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace poscurv {

using Int = mpz_class;
using Rat = mpq_class;

// Raised when external input (JSON, CLI arguments) is malformed.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a mathematically invalid operation is requested,
// e.g. evaluating a rational function at a pole.
struct math_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -1, 0, +1.
int sign(const Int& x);
int sign(const Rat& x);

Int igcd(const Int& a, const Int& b);
Int ilcm(const Int& a, const Int& b);

// Parses "p", "-p", "p/q" (q > 0 after canonicalization). Whitespace is not
// accepted; throws input_error on anything else.
Rat parse_rat(const std::string& s);

// Canonical exact form: "p" or "p/q" with q > 1.
std::string rat_str(const Rat& x);

// Decimal with the given number of significant digits, round half to even.
// Used only for human-facing output (CSV, SVG); never parsed back.
std::string rat_decimal(const Rat& x, int sig_digits = 12);

// Floor of log10(|x|) for x != 0.
long floor_log10_abs(const Rat& x);

// Truncated double approximation for plot scaling only.
double rat_to_double(const Rat& x);

}  // namespace poscurv
