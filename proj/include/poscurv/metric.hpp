// Piecewise-polynomial metric data: JSON ingestion, C2 Hermite gluing,
// the shipped instance, smoothness checkers, and the unrolled single
// function on [0, 3L].
#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "poscurv/poly.hpp"

namespace poscurv {

struct Piece {
  Rat a, b;   // global t interval, a < b
  Poly poly;  // Var::t (coefficients around 0) or Var::u (around L)
  bool glued = false;

  // Coordinate of the global point t in the piece's own variable.
  Rat local(const Rat& t, const Rat& L) const {
    return poly.var == Var::t ? t : t - L;
  }
};

struct PiecewiseFunc {
  std::string name;
  Rat L;
  std::vector<Piece> pieces;  // contiguous cover of [0, domain end]

  std::size_t n_pieces() const { return pieces.size(); }
  // Index of the leftmost piece whose closed interval contains t.
  std::size_t piece_index(const Rat& t) const;
  Rat eval_piece(std::size_t i, const Rat& t, int deriv = 0) const;
  Rat eval(const Rat& t, int deriv = 0) const;
};

struct Metric {
  std::string name;
  int ell = 0;
  Rat L;
  std::vector<Rat> breakpoints;
  std::array<PiecewiseFunc, 3> v, h;  // working (sign-adjusted) form
  bool v3_negated = false;            // true if v3 was negated on load
  nlohmann::json canonical;           // canonical input document
};

// The unique degree <= 5 polynomial (in the given variable) matching value,
// first and second derivative at both interval ends. Endpoints are given in
// the output variable's own coordinates.
Poly hermite_quintic_glue(Var var, const Rat& a, const std::array<Rat, 3>& jet_a,
                          const Rat& b, const std::array<Rat, 3>& jet_b);

// Parses and validates a metric document; throws input_error with a
// location message on malformed data. Glue pieces are filled in here.
Metric load_metric(const nlohmann::json& doc);
Metric load_metric_file(const std::string& path);

// Canonical serialization of the metric definition (the document as
// ingested, canonicalized rationals, sorted keys) and its fingerprint.
std::string canonical_metric_json(const Metric& m);
std::string metric_fingerprint(const Metric& m);

// Atomic write (temp file + rename) of the canonical document.
void save_metric_file(const Metric& m, const std::string& path);

// The shipped instance, constructed from the printed coefficients, and the
// sign-experiment variant that skips the v3 negation.
nlohmann::json p2_metric_document(bool negate_v3_on_load);
Metric build_p2_metric();
Metric build_p2_flipped_v3_metric();

// ---------------------------------------------------------------------------
// Smoothness

struct SmoothCondition {
  std::string name;
  Rat lhs, rhs;
  bool pass = false;
};

struct SmoothnessReport {
  std::vector<SmoothCondition> c2;  // endpoint conditions + junction C0..C2
  std::vector<SmoothCondition> c3;  // informational third-order probe
  bool c2_pass = false;
  bool c3_pass = false;
};

// Endpoint collapse conditions (with the pairings read against the stored
// v3 sign) plus C0/C1/C2 continuity at interior junctions. The c3 list
// probes the analogous third-order conditions; it is informational.
SmoothnessReport check_smoothness(const Metric& m);

// General collapsing-circle conditions at t = 0 for arbitrary slopes
// (p, q), gcd(p, q) = 1, ineffective kernel of order k. Conditions are
// checked on Taylor coefficients up to the given order; a fractional
// valuation exponent forces the right hand side to vanish identically.
struct GenSmoothInput {
  std::array<Poly, 3> f, g, h;  // Var::t, expanded around the collapse point
  long p = 1, q = 1;
  long k = 1;
  int order = 2;  // C2 data constrains Taylor coefficients up to order 2
};

struct GenSmoothReport {
  std::vector<SmoothCondition> conditions;
  bool pass = false;
};

GenSmoothReport check_gen_smooth(const GenSmoothInput& in);

// ---------------------------------------------------------------------------
// The unrolled description on [0, 3L]

struct UnrolledMetric {
  PiecewiseFunc v, h;  // on [0, 3L]; Var::t pieces in the global coordinate
};

// v(t) = v1(t) on [0,L], the reflected third function on [L,2L] (printed
// sign, so the unrolled function is continuous), v2(t-2L) on [2L,3L];
// h likewise.
UnrolledMetric map_to_3L(const Metric& m);

// Endpoint conditions of the single-function description:
// v(0)=0, v'(0)=4, v''(0)=0, v'(L)=0, v(3L)=0, v'(3L)=-4/ell, v''(3L)=0,
// h(0)=-1, h'(0)=0, h(L)=0=h''(L), h(3L)=(ell+2)/ell, h'(3L)=0.
GenSmoothReport check_unrolled_smoothness(const Metric& m);

}  // namespace poscurv
