// Shared helpers for the test suites: compact constructors for exact
// polynomials and the reference data reused across several suites.
#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "poscurv/poly.hpp"
#include "poscurv/ratfunc.hpp"

namespace poscurv::testutil {

inline Rat rat(const std::string& s) { return parse_rat(s); }

inline ZPoly zpoly(std::initializer_list<long> coeffs) {
  std::vector<Int> c;
  for (long x : coeffs) c.push_back(Int(x));
  return ZPoly(std::move(c));
}

inline Poly qpoly(Var v, std::initializer_list<const char*> coeffs) {
  std::vector<Rat> c;
  for (const char* s : coeffs) c.push_back(parse_rat(s));
  return Poly(v, std::move(c));
}

// The worked-example numerator polynomial (the degree-6 factor of the
// gamma_2 numerator on the first piece) and its published Sturm chain data.
inline ZPoly gamma2_num_factor() {
  return zpoly({2720, 4620, -5253, -9240, 5066, 4620, 374});
}

// Chain terms as published (with cleared denominators). The published
// listing prints its degree-2 term twice in adjacent slots; an exact chain
// cannot repeat a term (degrees strictly decrease), and recomputation shows
// the duplicated slot stands in for a distinct degree-3 term. The terms
// below are the distinct published ones; published_chain_positions() maps
// them to their indices in the true 7-term chain (index 3, the garbled
// slot, is skipped).
inline std::vector<ZPoly> gamma2_published_chain() {
  return {
      zpoly({2720, 4620, -5253, -9240, 5066, 4620, 374}),
      zpoly({4620, -10506, -27720, 20264, 23100, 2244}),
      zpoly({-57870, -380205, -306498, 590240, 318128}),
      ZPoly({Int("-61495144443148677710"), Int("-69541807934598114885"),
             Int("64022592445768027674")}),
      ZPoly({Int("-62700752036018098289608090"),
             Int("-117945618693411267877827243")}),
      zpoly({1}),
  };
}

inline std::vector<std::size_t> gamma2_published_chain_positions() {
  return {0, 1, 2, 4, 5, 6};
}

// gamma_2 on the first piece as displayed: the quotient below times 180/187.
inline ZPoly gamma2_den_factor_quadratic() { return zpoly({-2, 0, 5}); }
inline ZPoly gamma2_den_factor_cubic() {
  return zpoly({-1341, -2200, 180, 1260});
}

inline std::string data_path(const std::string& name) {
  return std::string(POSCURV_DATA_DIR) + "/" + name;
}

}  // namespace poscurv::testutil
