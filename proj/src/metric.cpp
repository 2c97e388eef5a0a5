#include "poscurv/metric.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "poscurv/sha256.hpp"

namespace poscurv {

// ---------------------------------------------------------------------------
// PiecewiseFunc

std::size_t PiecewiseFunc::piece_index(const Rat& t) const {
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].a <= t && t <= pieces[i].b) return i;
  throw math_error(name + ": evaluation outside the domain at t = " + rat_str(t));
}

Rat PiecewiseFunc::eval_piece(std::size_t i, const Rat& t, int deriv) const {
  const Piece& p = pieces.at(i);
  return p.poly.nth_derivative(deriv).eval(p.local(t, L));
}

Rat PiecewiseFunc::eval(const Rat& t, int deriv) const {
  return eval_piece(piece_index(t), t, deriv);
}

// ---------------------------------------------------------------------------
// Hermite gluing

Poly hermite_quintic_glue(Var var, const Rat& a, const std::array<Rat, 3>& jet_a,
                          const Rat& b, const std::array<Rat, 3>& jet_b) {
  if (!(a < b)) throw math_error("hermite_quintic_glue requires a < b");
  // Solve the 6x6 linear system for the coefficients of
  // q(x) = c0 + c1 x + ... + c5 x^5 matching the two jets.
  constexpr int n = 6;
  std::array<std::array<Rat, n + 1>, n> M;
  auto fill_rows = [&](int row0, const Rat& x, const std::array<Rat, 3>& jet) {
    for (int d = 0; d < 3; ++d) {
      // Row for the d-th derivative: sum_i i!/(i-d)! x^{i-d} c_i.
      for (int i = 0; i < n; ++i) {
        if (i < d) {
          M[row0 + d][i] = 0;
          continue;
        }
        Rat coeff = 1;
        for (int f = i; f > i - d; --f) coeff *= f;
        Rat xp = 1;
        for (int e = 0; e < i - d; ++e) xp *= x;
        M[row0 + d][i] = coeff * xp;
      }
      M[row0 + d][n] = jet[d];
    }
  };
  fill_rows(0, a, jet_a);
  fill_rows(3, b, jet_b);
  // Exact Gaussian elimination with nonzero pivoting.
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (sign(M[r][col]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw math_error("hermite_quintic_glue: singular system");
    std::swap(M[col], M[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == col || sign(M[r][col]) == 0) continue;
      Rat f = M[r][col] / M[col][col];
      for (int c = col; c <= n; ++c) M[r][c] -= f * M[col][c];
    }
  }
  std::vector<Rat> coeffs(n);
  for (int i = 0; i < n; ++i) coeffs[i] = M[i][n] / M[i][i];
  return Poly(var, std::move(coeffs));
}

// ---------------------------------------------------------------------------
// JSON ingestion

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw input_error("metric JSON, " + where + ": " + what);
}

Rat get_rat(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a rational string");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const input_error& e) {
    bad(where, e.what());
  }
}

struct RawPiece {
  Rat a, b;
  bool glue = false;
  Var var = Var::t;
  std::vector<Rat> coeffs;
};

RawPiece parse_piece(const json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "piece must be an object");
  RawPiece p;
  if (!j.contains("interval") || !j["interval"].is_array() ||
      j["interval"].size() != 2)
    bad(where, "missing interval [a, b]");
  p.a = get_rat(j["interval"][0], where + ".interval[0]");
  p.b = get_rat(j["interval"][1], where + ".interval[1]");
  if (!(p.a < p.b)) bad(where, "interval endpoints must satisfy a < b");
  if (j.value("glue", false)) {
    p.glue = true;
    if (j.contains("coeffs")) bad(where, "glue pieces carry no coefficients");
    return p;
  }
  if (!j.contains("center") || !j["center"].is_string())
    bad(where, "explicit pieces need center \"0\" or \"L\"");
  std::string center = j["center"].get<std::string>();
  if (center == "0")
    p.var = Var::t;
  else if (center == "L")
    p.var = Var::u;
  else
    bad(where, "center must be \"0\" or \"L\"");
  if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
    bad(where, "explicit pieces need a nonempty coeffs array");
  for (std::size_t i = 0; i < j["coeffs"].size(); ++i)
    p.coeffs.push_back(
        get_rat(j["coeffs"][i], where + ".coeffs[" + std::to_string(i) + "]"));
  return p;
}

json piece_to_json(const RawPiece& p) {
  json j;
  j["interval"] = {rat_str(p.a), rat_str(p.b)};
  if (p.glue) {
    j["glue"] = true;
    return j;
  }
  j["center"] = p.var == Var::t ? "0" : "L";
  json coeffs = json::array();
  for (const Rat& c : p.coeffs) coeffs.push_back(rat_str(c));
  j["coeffs"] = coeffs;
  return j;
}

PiecewiseFunc assemble(const std::string& name, const Rat& L,
                       const std::vector<RawPiece>& raw, bool negate) {
  PiecewiseFunc f;
  f.name = name;
  f.L = L;
  // First pass: explicit pieces.
  for (const RawPiece& rp : raw) {
    Piece piece;
    piece.a = rp.a;
    piece.b = rp.b;
    piece.glued = rp.glue;
    if (!rp.glue) {
      std::vector<Rat> c = rp.coeffs;
      if (negate)
        for (Rat& x : c) x = -x;
      piece.poly = Poly(rp.var, std::move(c));
    }
    f.pieces.push_back(std::move(piece));
  }
  // Second pass: fill glue pieces from their explicit neighbors.
  for (std::size_t i = 0; i < f.pieces.size(); ++i) {
    if (!f.pieces[i].glued) continue;
    if (i == 0 || i + 1 == f.pieces.size() || f.pieces[i - 1].glued ||
        f.pieces[i + 1].glued)
      bad(name, "glue pieces need explicit neighbors on both sides");
    const Rat& a = f.pieces[i].a;
    const Rat& b = f.pieces[i].b;
    std::array<Rat, 3> ja, jb;
    for (int d = 0; d < 3; ++d) {
      ja[static_cast<std::size_t>(d)] = f.eval_piece(i - 1, a, d);
      jb[static_cast<std::size_t>(d)] = f.eval_piece(i + 1, b, d);
    }
    f.pieces[i].poly = hermite_quintic_glue(Var::t, a, ja, b, jb);
  }
  return f;
}

}  // namespace

Metric load_metric(const nlohmann::json& doc) {
  if (!doc.is_object()) bad("top level", "expected an object");
  Metric m;
  m.name = doc.value("name", std::string("metric"));
  if (!doc.contains("ell") || !doc["ell"].is_number_integer())
    bad("ell", "required integer");
  m.ell = doc["ell"].get<int>();
  if (m.ell < 1) bad("ell", "must be >= 1");
  if (!doc.contains("L")) bad("L", "required rational string");
  m.L = get_rat(doc["L"], "L");
  if (sign(m.L) <= 0) bad("L", "must be positive");
  if (!doc.contains("breakpoints") || !doc["breakpoints"].is_array() ||
      doc["breakpoints"].size() < 2)
    bad("breakpoints", "required array of at least two rational strings");
  for (std::size_t i = 0; i < doc["breakpoints"].size(); ++i)
    m.breakpoints.push_back(
        get_rat(doc["breakpoints"][i], "breakpoints[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i + 1 < m.breakpoints.size(); ++i)
    if (!(m.breakpoints[i] < m.breakpoints[i + 1]))
      bad("breakpoints", "must be strictly increasing");
  if (sign(m.breakpoints.front()) != 0) bad("breakpoints", "must start at 0");
  if (m.breakpoints.back() != m.L) bad("breakpoints", "must end at L");

  std::string v3_sign = "as-printed";
  if (doc.contains("conventions")) {
    if (!doc["conventions"].is_object()) bad("conventions", "must be an object");
    v3_sign = doc["conventions"].value("v3_sign", std::string("as-printed"));
  }
  if (v3_sign != "as-printed" && v3_sign != "negate-on-load")
    bad("conventions.v3_sign", "must be \"as-printed\" or \"negate-on-load\"");
  m.v3_negated = (v3_sign == "negate-on-load");

  auto is_breakpoint = [&](const Rat& x) {
    for (const Rat& b : m.breakpoints)
      if (b == x) return true;
    return false;
  };

  std::vector<std::pair<Rat, Rat>> partition;  // of the first function parsed
  bool have_partition = false;
  json canon_fns;
  std::array<std::array<std::vector<RawPiece>, 3>, 2> raw;  // [v,h][index]
  for (int fam = 0; fam < 2; ++fam) {
    const char* fam_name = fam == 0 ? "v" : "h";
    if (!doc.contains(fam_name) || !doc[fam_name].is_object())
      bad(fam_name, "required object with keys \"1\", \"2\", \"3\"");
    json canon_fam;
    for (int idx = 0; idx < 3; ++idx) {
      std::string key = std::to_string(idx + 1);
      std::string where = std::string(fam_name) + key;
      if (!doc[fam_name].contains(key)) bad(where, "missing");
      const json& arr = doc[fam_name][key];
      if (!arr.is_array() || arr.empty()) bad(where, "must be a piece array");
      std::vector<RawPiece>& pieces = raw[static_cast<std::size_t>(fam)]
                                        [static_cast<std::size_t>(idx)];
      json canon_pieces = json::array();
      for (std::size_t i = 0; i < arr.size(); ++i) {
        RawPiece p =
            parse_piece(arr[i], where + "[" + std::to_string(i) + "]");
        if (!is_breakpoint(p.a) || !is_breakpoint(p.b))
          bad(where, "piece endpoints must be breakpoints");
        pieces.push_back(p);
        canon_pieces.push_back(piece_to_json(p));
      }
      for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        if (pieces[i].b < pieces[i + 1].a)
          bad(where, "gap between pieces at t = " + rat_str(pieces[i].b));
        if (pieces[i + 1].a < pieces[i].b)
          bad(where, "overlapping pieces at t = " + rat_str(pieces[i + 1].a));
      }
      if (sign(pieces.front().a) != 0 || pieces.back().b != m.L)
        bad(where, "pieces must cover [0, L] exactly");
      std::vector<std::pair<Rat, Rat>> part;
      for (const RawPiece& p : pieces) part.emplace_back(p.a, p.b);
      if (!have_partition) {
        partition = part;
        have_partition = true;
      } else if (part != partition) {
        bad(where, "all six functions must share one piece partition");
      }
      canon_fam[key] = canon_pieces;
    }
    canon_fns[fam_name] = canon_fam;
  }

  // Canonical document (printed data; the sign decision stays declarative).
  json canon;
  canon["name"] = m.name;
  canon["ell"] = m.ell;
  canon["L"] = rat_str(m.L);
  json bps = json::array();
  for (const Rat& b : m.breakpoints) bps.push_back(rat_str(b));
  canon["breakpoints"] = bps;
  canon["conventions"] = {{"v3_sign", v3_sign}};
  canon["v"] = canon_fns["v"];
  canon["h"] = canon_fns["h"];
  m.canonical = canon;

  for (int idx = 0; idx < 3; ++idx) {
    bool negate = m.v3_negated && idx == 2;
    m.v[static_cast<std::size_t>(idx)] =
        assemble("v" + std::to_string(idx + 1), m.L,
                 raw[0][static_cast<std::size_t>(idx)], negate);
    m.h[static_cast<std::size_t>(idx)] =
        assemble("h" + std::to_string(idx + 1), m.L,
                 raw[1][static_cast<std::size_t>(idx)], false);
  }
  return m;
}

Metric load_metric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open metric file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw input_error("metric JSON parse error in " + path + ": " + e.what());
  }
  return load_metric(doc);
}

std::string canonical_metric_json(const Metric& m) { return m.canonical.dump(1); }

std::string metric_fingerprint(const Metric& m) {
  return sha256_hex(canonical_metric_json(m));
}

void save_metric_file(const Metric& m, const std::string& path) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw input_error("cannot write " + tmp);
    out << canonical_metric_json(m) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// The shipped instance

nlohmann::json p2_metric_document(bool negate_v3_on_load) {
  json doc;
  doc["name"] = negate_v3_on_load ? "p2" : "p2-flipped-v3";
  doc["ell"] = 3;
  doc["L"] = "29/50";
  doc["breakpoints"] = {"0", "1/10", "1/2", "29/50"};
  doc["conventions"] = {
      {"v3_sign", negate_v3_on_load ? "negate-on-load" : "as-printed"}};
  auto explicit_piece = [](const char* a, const char* b, const char* center,
                           std::vector<const char*> coeffs) {
    json j;
    j["interval"] = {a, b};
    j["center"] = center;
    json cs = json::array();
    for (const char* c : coeffs) cs.push_back(c);
    j["coeffs"] = cs;
    return j;
  };
  auto glue_piece = [] {
    json j;
    j["interval"] = {"1/10", "1/2"};
    j["glue"] = true;
    return j;
  };
  json v, h;
  v["1"] = {explicit_piece("0", "1/10", "0", {"0", "4", "0", "-10"}),
            glue_piece(),
            explicit_piece("1/2", "29/50", "L", {"5/4", "0", "-3", "1"})};
  v["2"] = {explicit_piece("0", "1/10", "0",
                           {"149/200", "-11/9", "-1/10", "-1/25"}),
            glue_piece(),
            explicit_piece("1/2", "29/50", "L", {"0", "-4/3", "0", "3/10"})};
  v["3"] = {explicit_piece("0", "1/10", "0",
                           {"149/200", "11/9", "-1/10", "-7/10"}),
            glue_piece(),
            explicit_piece("1/2", "29/50", "L", {"5/4", "0", "-3", "-3"})};
  h["1"] = {explicit_piece("0", "1/10", "0", {"-1", "0", "4", "0", "-4"}),
            glue_piece(),
            explicit_piece("1/2", "29/50", "L", {"0", "31/12", "0", "-16/7"})};
  h["2"] = {explicit_piece("0", "1/10", "0",
                           {"21/17", "16/11", "-21/17", "1/10"}),
            glue_piece(),
            explicit_piece("1/2", "29/50", "L",
                           {"5/3", "0", "-4/3", "0", "1/4"})};
  h["3"] = {explicit_piece("0", "1/10", "0",
                           {"21/17", "-16/11", "-21/17", "-1/10"}),
            glue_piece(),
            explicit_piece("1/2", "29/50", "L", {"0", "-31/12", "0", "20/11"})};
  doc["v"] = v;
  doc["h"] = h;
  return doc;
}

Metric build_p2_metric() { return load_metric(p2_metric_document(true)); }

Metric build_p2_flipped_v3_metric() {
  return load_metric(p2_metric_document(false));
}

// ---------------------------------------------------------------------------
// Smoothness

namespace {

void add_cond(std::vector<SmoothCondition>& out, const std::string& name,
              const Rat& lhs, const Rat& rhs) {
  out.push_back({name, lhs, rhs, lhs == rhs});
}

}  // namespace

SmoothnessReport check_smoothness(const Metric& m) {
  SmoothnessReport rep;
  const Rat zero(0), L = m.L;
  // Pairing conditions are stated for the printed (positive) third function;
  // with the stored sign convention, printed v3 = sgn * stored v3.
  Rat sgn = m.v3_negated ? Rat(-1) : Rat(1);
  const PiecewiseFunc &v1 = m.v[0], &v2 = m.v[1], &v3 = m.v[2];
  const PiecewiseFunc &h1 = m.h[0], &h2 = m.h[1], &h3 = m.h[2];

  auto& c2 = rep.c2;
  add_cond(c2, "v1(0) = 0", v1.eval(zero), zero);
  add_cond(c2, "v1'(0) = 4", v1.eval(zero, 1), Rat(4));
  add_cond(c2, "v1''(0) = 0", v1.eval(zero, 2), zero);
  add_cond(c2, "v2(0) = v3(0)", v2.eval(zero), sgn * v3.eval(zero));
  add_cond(c2, "v2'(0) = -v3'(0)", v2.eval(zero, 1), -sgn * v3.eval(zero, 1));
  add_cond(c2, "v2''(0) = v3''(0)", v2.eval(zero, 2), sgn * v3.eval(zero, 2));
  add_cond(c2, "v2(L) = 0", v2.eval(L), zero);
  add_cond(c2, "v2'(L) = -4/ell", v2.eval(L, 1), Rat(-4) / Rat(m.ell));
  add_cond(c2, "v2''(L) = 0", v2.eval(L, 2), zero);
  add_cond(c2, "v1(L) = v3(L)", v1.eval(L), sgn * v3.eval(L));
  add_cond(c2, "v1'(L) = 0", v1.eval(L, 1), zero);
  add_cond(c2, "v3'(L) = 0", v3.eval(L, 1), zero);
  add_cond(c2, "v1''(L) = v3''(L)", v1.eval(L, 2), sgn * v3.eval(L, 2));

  add_cond(c2, "h1(0) = -1", h1.eval(zero), Rat(-1));
  add_cond(c2, "h1'(0) = 0", h1.eval(zero, 1), zero);
  add_cond(c2, "h2(0) = h3(0)", h2.eval(zero), h3.eval(zero));
  add_cond(c2, "h2'(0) = -h3'(0)", h2.eval(zero, 1), -h3.eval(zero, 1));
  add_cond(c2, "h2''(0) = h3''(0)", h2.eval(zero, 2), h3.eval(zero, 2));
  add_cond(c2, "h2(L) = (ell+2)/ell", h2.eval(L), Rat(m.ell + 2) / Rat(m.ell));
  add_cond(c2, "h2'(L) = 0", h2.eval(L, 1), zero);
  add_cond(c2, "h1(L) = 0", h1.eval(L), zero);
  add_cond(c2, "h3(L) = 0", h3.eval(L), zero);
  add_cond(c2, "h1'(L) = -h3'(L)", h1.eval(L, 1), -h3.eval(L, 1));
  add_cond(c2, "h1''(L) = 0", h1.eval(L, 2), zero);
  add_cond(c2, "h3''(L) = 0", h3.eval(L, 2), zero);

  // Interior junction continuity up to second order; third order goes to
  // the informational probe.
  auto junctions = [&](const PiecewiseFunc& f) {
    for (std::size_t i = 0; i + 1 < f.pieces.size(); ++i) {
      const Rat& x = f.pieces[i].b;
      for (int d = 0; d <= 3; ++d) {
        Rat lhs = f.eval_piece(i, x, d);
        Rat rhs = f.eval_piece(i + 1, x, d);
        std::string cname = f.name + " C" + std::to_string(d) + " at " +
                            rat_str(x);
        add_cond(d <= 2 ? rep.c2 : rep.c3, cname, lhs, rhs);
      }
    }
  };
  for (int i = 0; i < 3; ++i) {
    junctions(m.v[static_cast<std::size_t>(i)]);
    junctions(m.h[static_cast<std::size_t>(i)]);
  }

  // Third-order endpoint probe: continuity of the unrolled functions across
  // the collapse points plus the parity conditions at the two poles.
  auto& c3 = rep.c3;
  add_cond(c3, "v2'''(0) = -v3'''(0)", v2.eval(zero, 3), -sgn * v3.eval(zero, 3));
  add_cond(c3, "v1'''(L) = -v3'''(L)", v1.eval(L, 3), -sgn * v3.eval(L, 3));
  add_cond(c3, "h2'''(0) = -h3'''(0)", h2.eval(zero, 3), -h3.eval(zero, 3));
  add_cond(c3, "h1'''(L) = -h3'''(L)", h1.eval(L, 3), -h3.eval(L, 3));
  add_cond(c3, "h1'''(0) = 0", h1.eval(zero, 3), zero);
  add_cond(c3, "h2'''(L) = 0", h2.eval(L, 3), zero);

  rep.c2_pass = true;
  for (const auto& c : rep.c2) rep.c2_pass = rep.c2_pass && c.pass;
  rep.c3_pass = true;
  for (const auto& c : rep.c3) rep.c3_pass = rep.c3_pass && c.pass;
  return rep;
}

namespace {

// Sum of squares of the coefficients of orders <= m violating the rule
// "zero unless n >= e and n == e (mod 2)"; e < 0 encodes "all must vanish".
Rat valuation_violation(const Poly& s, long e, int m) {
  Rat acc(0);
  for (int n = 0; n <= m; ++n) {
    Rat c = s.coeff(n);
    if (sign(c) == 0) continue;
    bool allowed = e >= 0 && n >= e && ((n - e) % 2 == 0);
    if (!allowed) acc += c * c;
  }
  return acc;
}

}  // namespace

GenSmoothReport check_gen_smooth(const GenSmoothInput& in) {
  GenSmoothReport rep;
  auto& out = rep.conditions;
  const Poly &f1 = in.f[0], &g1 = in.g[0], &h1 = in.h[0];
  long k = in.k, p = in.p, q = in.q;
  if (k <= 0) throw math_error("check_gen_smooth: k must be positive");

  auto even_cond = [&](const Poly& s, const std::string& name) {
    add_cond(out, name + " even (orders <= " + std::to_string(in.order) + ")",
             valuation_violation(s, 0, in.order), Rat(0));
  };
  even_cond(f1, "f1");
  even_cond(g1, "g1");
  even_cond(h1, "h1");
  add_cond(out, "p f1(0) = -q h1(0)", Rat(p) * f1.eval(Rat(0)),
           Rat(-q) * h1.eval(Rat(0)));
  add_cond(out, "q g1(0) = -p h1(0)", Rat(q) * g1.eval(Rat(0)),
           Rat(-p) * h1.eval(Rat(0)));
  add_cond(out, "p^2 f1''(0) + q^2 g1''(0) + 2pq h1''(0) = 2k^2",
           Rat(p * p) * f1.nth_derivative(2).eval(Rat(0)) +
               Rat(q * q) * g1.nth_derivative(2).eval(Rat(0)) +
               Rat(2 * p * q) * h1.nth_derivative(2).eval(Rat(0)),
           Rat(2 * k * k));

  // Valuation exponent t^(num/k): integral -> that exponent, else the right
  // hand side must vanish identically (encoded as e = -1).
  auto exponent = [&](long num) { return num % k == 0 ? num / k : -1l; };
  auto pair_conds = [&](const Poly& s2, const Poly& s3, const std::string& base,
                        long dif_num) {
    add_cond(out, base + "2+" + base + "3 is phi(t^2)",
             valuation_violation(s2 + s3, 0, in.order), Rat(0));
    add_cond(out,
             base + "2-" + base + "3 is t^(" + std::to_string(dif_num) + "/" +
                 std::to_string(k) + ") phi(t^2)",
             valuation_violation(s2 - s3, exponent(dif_num), in.order), Rat(0));
  };
  pair_conds(in.f[1], in.f[2], "f", 4 * std::abs(p));
  pair_conds(in.g[1], in.g[2], "g", 4 * std::abs(q));
  // For h the sum and difference carry separate valuations.
  add_cond(out,
           "h2+h3 is t^(" + std::to_string(2 * std::abs(q - p)) + "/" +
               std::to_string(k) + ") phi(t^2)",
           valuation_violation(in.h[1] + in.h[2], exponent(2 * std::abs(q - p)),
                               in.order),
           Rat(0));
  add_cond(out,
           "h2-h3 is t^(" + std::to_string(2 * std::abs(q + p)) + "/" +
               std::to_string(k) + ") phi(t^2)",
           valuation_violation(in.h[1] - in.h[2], exponent(2 * std::abs(q + p)),
                               in.order),
           Rat(0));

  rep.pass = true;
  for (const auto& c : out) rep.pass = rep.pass && c.pass;
  return rep;
}

// ---------------------------------------------------------------------------
// Unrolling

UnrolledMetric map_to_3L(const Metric& m) {
  UnrolledMetric u;
  const Rat L = m.L, twoL = Rat(2) * m.L, threeL = Rat(3) * m.L;
  Rat sgn = m.v3_negated ? Rat(-1) : Rat(1);  // printed v3 = sgn * stored v3

  auto unroll = [&](const std::array<PiecewiseFunc, 3>& fns, bool flip_sign,
                    const std::string& name) {
    PiecewiseFunc out;
    out.name = name;
    out.L = m.L;
    // [0, L]: the first function as-is, re-expressed in the global variable.
    for (const Piece& p : fns[0].pieces) {
      Piece q;
      q.a = p.a;
      q.b = p.b;
      q.poly = p.poly.var == Var::t ? p.poly
                                    : affine_compose(p.poly, -L, Rat(1), Var::t);
      out.pieces.push_back(std::move(q));
    }
    // [L, 2L]: the reflected third function, printed sign.
    std::vector<Piece> mid;
    for (const Piece& p : fns[2].pieces) {
      Piece q;
      q.a = twoL - p.b;
      q.b = twoL - p.a;
      // s -> 2L - s lands in the piece; compose accordingly.
      q.poly = p.poly.var == Var::t
                   ? affine_compose(p.poly, twoL, Rat(-1), Var::t)
                   : affine_compose(p.poly, L, Rat(-1), Var::t);
      if (flip_sign) q.poly = q.poly * sgn;
      mid.push_back(std::move(q));
    }
    for (auto it = mid.rbegin(); it != mid.rend(); ++it)
      out.pieces.push_back(std::move(*it));
    // [2L, 3L]: the second function shifted.
    for (const Piece& p : fns[1].pieces) {
      Piece q;
      q.a = twoL + p.a;
      q.b = twoL + p.b;
      q.poly = p.poly.var == Var::t
                   ? affine_compose(p.poly, -twoL, Rat(1), Var::t)
                   : affine_compose(p.poly, -threeL, Rat(1), Var::t);
      out.pieces.push_back(std::move(q));
    }
    return out;
  };
  u.v = unroll(m.v, true, "v");
  u.h = unroll(m.h, false, "h");
  return u;
}

GenSmoothReport check_unrolled_smoothness(const Metric& m) {
  UnrolledMetric um = map_to_3L(m);
  GenSmoothReport rep;
  auto& out = rep.conditions;
  const Rat zero(0), L = m.L, twoL = Rat(2) * m.L, threeL = Rat(3) * m.L;

  add_cond(out, "v(0) = 0", um.v.eval(zero), zero);
  add_cond(out, "v'(0) = 4", um.v.eval(zero, 1), Rat(4));
  add_cond(out, "v''(0) = 0", um.v.eval(zero, 2), zero);
  add_cond(out, "v'(L) = 0", um.v.eval(L, 1), zero);
  add_cond(out, "v(3L) = 0", um.v.eval(threeL), zero);
  add_cond(out, "v'(3L) = -4/ell", um.v.eval(threeL, 1), Rat(-4) / Rat(m.ell));
  add_cond(out, "v''(3L) = 0", um.v.eval(threeL, 2), zero);
  add_cond(out, "h(0) = -1", um.h.eval(zero), Rat(-1));
  add_cond(out, "h'(0) = 0", um.h.eval(zero, 1), zero);
  add_cond(out, "h(L) = 0", um.h.eval(L), zero);
  add_cond(out, "h''(L) = 0", um.h.eval(L, 2), zero);
  add_cond(out, "h(3L) = (ell+2)/ell", um.h.eval(threeL),
           Rat(m.ell + 2) / Rat(m.ell));
  add_cond(out, "h'(3L) = 0", um.h.eval(threeL, 1), zero);

  // Continuity where the three branches meet.
  for (const Rat& x : {L, twoL}) {
    for (int d = 0; d <= 2; ++d) {
      std::size_t left = um.v.piece_index(x);
      // Leftmost containing piece ends at x; its successor starts there.
      add_cond(out, "v C" + std::to_string(d) + " at " + rat_str(x),
               um.v.eval_piece(left, x, d), um.v.eval_piece(left + 1, x, d));
      std::size_t lh = um.h.piece_index(x);
      add_cond(out, "h C" + std::to_string(d) + " at " + rat_str(x),
               um.h.eval_piece(lh, x, d), um.h.eval_piece(lh + 1, x, d));
    }
  }

  rep.pass = true;
  for (const auto& c : out) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace poscurv
