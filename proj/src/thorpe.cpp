#include "poscurv/thorpe.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace poscurv {

namespace {

EpsPoly e(const RatFunc& r, int k) { return EpsPoly::from(r, k); }

RatFunc rfc(Var v, const Rat& q) { return RatFunc::from_rat(v, q); }

const int CYC[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};

}  // namespace

const char* block_name(BlockLabel label) {
  switch (label) {
    case BlockLabel::A0:
      return "A0";
    case BlockLabel::A12:
      return "A12";
    case BlockLabel::A23:
      return "A23";
    case BlockLabel::A31:
      return "A31";
  }
  return "?";
}

std::array<int, 3> block_indices(BlockLabel label) {
  switch (label) {
    case BlockLabel::A12:
      return {0, 1, 2};
    case BlockLabel::A23:
      return {1, 2, 0};
    case BlockLabel::A31:
      return {2, 0, 1};
    default:
      return {0, 1, 2};
  }
}

FourFormParams build_params(const CurvatureFrame& fr) {
  FourFormParams p;
  p.var = fr.var;
  Rat half(1, 2);
  for (auto& cyc : CYC) {
    int i = cyc[0], j = cyc[1], k = cyc[2];
    p.a[i] = e(fr.gamma[i], 1) - e(fr.gamma[j] * fr.gamma[k], 2);
    p.b[i] = e(-fr.beta[i], 1) +
             e((fr.beta[j] * fr.gamma[k] + fr.beta[k] * fr.gamma[j]) *
                   rfc(fr.var, half),
               2);
    p.c[i] = EpsPoly(fr.var);
  }
  p.d1 = EpsPoly(fr.var);
  p.d2 = e(-fr.Nbase[1], 0);
  return p;
}

EpsPoly four_form_value(const FourFormParams& p, int x, int y, int z, int w) {
  struct Term {
    const EpsPoly* coeff;
    std::array<int, 4> lab;
  };
  auto X = [](int i) { return BX + i; };
  auto Z = [](int i) { return BY + i; };
  std::vector<Term> terms;
  terms.reserve(11);
  for (auto& cyc : CYC) {
    int i = cyc[0], j = cyc[1], k = cyc[2];
    terms.push_back({&p.a[k], {X(i), X(j), Z(i), Z(j)}});
  }
  terms.push_back({&p.b[0], {Z(0), X(1), X(2), BT}});
  terms.push_back({&p.b[1], {X(0), Z(1), X(2), BT}});
  terms.push_back({&p.b[2], {X(0), X(1), Z(2), BT}});
  terms.push_back({&p.c[0], {X(0), Z(1), Z(2), BT}});
  terms.push_back({&p.c[1], {Z(0), X(1), Z(2), BT}});
  terms.push_back({&p.c[2], {Z(0), Z(1), X(2), BT}});
  terms.push_back({&p.d1, {X(0), X(1), X(2), BT}});
  terms.push_back({&p.d2, {Z(0), Z(1), Z(2), BT}});

  std::array<int, 4> arg = {x, y, z, w};
  EpsPoly out(p.var);
  for (const Term& tm : terms) {
    // Position of each term label among the arguments; fails on any
    // mismatch or repetition, in which case the term contributes nothing.
    std::array<int, 4> pos{};
    bool used[4] = {false, false, false, false};
    bool match = true;
    for (int s = 0; s < 4 && match; ++s) {
      match = false;
      for (int t = 0; t < 4; ++t)
        if (!used[t] && arg[t] == tm.lab[s]) {
          used[t] = true;
          pos[s] = t;
          match = true;
          break;
        }
    }
    if (!match) continue;
    int inversions = 0;
    for (int s = 0; s < 4; ++s)
      for (int t = s + 1; t < 4; ++t)
        if (pos[s] > pos[t]) ++inversions;
    out = (inversions % 2 == 0) ? out + *tm.coeff : out - *tm.coeff;
  }
  return out;
}

namespace {

std::vector<std::string> block_basis(BlockLabel label, int dim) {
  auto xs = [](int i) { return "X" + std::to_string(i + 1); };
  auto zs = [](int i) { return "Z" + std::to_string(i + 1); };
  if (label == BlockLabel::A0)
    return {xs(0) + "^" + zs(0), xs(1) + "^" + zs(1), xs(2) + "^" + zs(2)};
  auto idx = block_indices(label);
  int i = idx[0], j = idx[1], k = idx[2];
  std::vector<std::string> b = {
      xs(i) + "^" + xs(j), xs(i) + "^" + zs(j), zs(i) + "^" + xs(j),
      xs(k) + "^T",        zs(i) + "^" + zs(j), zs(k) + "^T"};
  if (dim == 5) b.erase(b.begin());
  return b;
}

}  // namespace

OperatorBlock build_block(const CurvatureFrame& fr, const FourFormParams& p,
                          BlockLabel label, BlockMode mode, int dim,
                          const EpsPoly* alpha_k) {
  OperatorBlock out;
  out.label = label;
  out.mode = mode;
  out.ijk = block_indices(label);
  Var v = fr.var;
  RatFunc one = rfc(v, 1);
  RatFunc two = rfc(v, 2);
  RatFunc three = rfc(v, 3);

  if (label == BlockLabel::A0) {
    if (dim != 3) throw math_error("A0 block has dimension 3");
    out.dim = 3;
    out.entries.assign(3, std::vector<EpsPoly>(3, EpsPoly(v)));
    for (int r = 0; r < 3; ++r)
      out.entries[r][r] = e(fr.beta[r] * fr.beta[r], 2);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        if (r == c) continue;
        int m = 3 - r - c;
        out.entries[r][c] = e(fr.gamma[m], 1) -
                            e(fr.gamma[r] * fr.gamma[c], 2) - p.a[m];
      }
    out.basis = block_basis(label, 3);
    return out;
  }

  if (dim != 5 && dim != 6) throw math_error("A_ij block has dimension 5 or 6");
  if (mode == BlockMode::Exact && alpha_k == nullptr)
    throw math_error("exact mode needs the alpha term of the block");

  int i = out.ijk[0], j = out.ijk[1], k = out.ijk[2];
  const auto& g = fr.gamma;
  const auto& b = fr.beta;

  // Entries of the full 6x6 block over
  // {X_i^X_j, X_i^Z_j, Z_i^X_j, X_k^T, Z_i^Z_j, Z_k^T}.
  std::vector<std::vector<EpsPoly>> m6(6, std::vector<EpsPoly>(6, EpsPoly(v)));
  auto put = [&](int r, int c, const EpsPoly& val) {
    m6[r][c] = val;
    m6[c][r] = val;
  };
  put(0, 0, e(one, 1));
  put(0, 3, p.d1);
  put(0, 4, e(two * g[k], 1) - e(g[i] * g[j] + b[i] * b[j], 2) + p.a[k]);
  put(0, 5, e(-(two * b[k]), 1) + e(b[i] * g[j] + b[j] * g[i], 2) + p.b[k]);
  put(1, 1, e(g[i] * g[i], 2));
  put(1, 2, e(g[k], 1) - e(b[i] * b[j], 2) - p.a[k]);
  put(1, 3, e(b[j], 1) - e(b[i] * g[k], 2) + p.b[j]);
  put(1, 4, e(-fr.B[i][j], 1));
  put(1, 5, e(fr.C[i][j], 1) + p.c[i]);
  put(2, 2, e(g[j] * g[j], 2));
  put(2, 3, e(b[i], 1) - e(b[j] * g[k], 2) + p.b[i]);
  put(2, 4, e(-fr.B[j][i], 1));
  put(2, 5, e(fr.C[j][i], 1) + p.c[j]);
  put(3, 3, e(b[k] * b[k], 2));
  put(3, 4, e(-(fr.C[k][i] + fr.C[k][j]), 1) + p.c[k]);
  put(3, 5, e(-fr.beta_prime[k], 1));
  put(4, 4, e(fr.Mbase[k], 0) - e(three * g[k] * g[k], 1));
  EpsPoly e45 = e(fr.Nbase[k], 0) + p.d2;
  if (mode == BlockMode::Exact) e45 = e45 + alpha_k->shift(1);
  put(4, 5, e45);
  put(5, 5, e(fr.Lbase[k], 0) - e(three * b[k] * b[k], 1));

  out.dim = dim;
  int off = 6 - dim;
  out.entries.assign(dim, std::vector<EpsPoly>(dim, EpsPoly(v)));
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) out.entries[r][c] = m6[r + off][c + off];
  out.basis = block_basis(label, dim);
  return out;
}

std::vector<OperatorBlock> assemble_from_4form(const UnitFrameCurvature& u,
                                               const FourFormParams& p,
                                               int dim) {
  if (dim != 5 && dim != 6) throw math_error("A_ij block has dimension 5 or 6");
  Var v = u.frame().var;
  if (v != p.var) throw math_error("4-form coefficients on the wrong variable");
  auto X = [](int i) { return BX + i; };
  auto Z = [](int i) { return BY + i; };

  std::vector<OperatorBlock> out;
  auto assemble = [&](BlockLabel label, const std::vector<std::array<int, 2>>& w) {
    OperatorBlock blk;
    blk.label = label;
    blk.mode = BlockMode::Exact;
    blk.ijk = block_indices(label);
    blk.dim = static_cast<int>(w.size());
    blk.entries.assign(blk.dim, std::vector<EpsPoly>(blk.dim, EpsPoly(v)));
    for (int r = 0; r < blk.dim; ++r)
      for (int c = r; c < blk.dim; ++c) {
        EpsPoly val = u.component(w[r][0], w[r][1], w[c][0], w[c][1]) +
                      four_form_value(p, w[r][0], w[r][1], w[c][0], w[c][1]);
        blk.entries[r][c] = val;
        blk.entries[c][r] = val;
      }
    blk.basis = block_basis(label, blk.dim);
    out.push_back(std::move(blk));
  };

  assemble(BlockLabel::A0,
           {{X(0), Z(0)}, {X(1), Z(1)}, {X(2), Z(2)}});
  for (BlockLabel label : {BlockLabel::A12, BlockLabel::A23, BlockLabel::A31}) {
    auto idx = block_indices(label);
    int i = idx[0], j = idx[1], k = idx[2];
    std::vector<std::array<int, 2>> w = {{X(i), X(j)}, {X(i), Z(j)},
                                         {Z(i), X(j)}, {X(k), BT},
                                         {Z(i), Z(j)}, {Z(k), BT}};
    if (dim == 5) w.erase(w.begin());
    assemble(label, w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Determinants. Entries are lifted row by row to integer polynomials in
// (t, eps) by the least common denominator of the row; fraction-free
// elimination (Bareiss) then yields every leading principal minor of the
// lifted matrix as an exact pivot, and division by the row denominators
// recovers the minors of the original block.

namespace {

// Integer polynomial in eps with ZPoly coefficients; zero terms absent.
using BiPoly = std::map<int, ZPoly>;

bool bp_zero(const BiPoly& a) { return a.empty(); }

void bp_set(BiPoly& a, int d, const ZPoly& z) {
  if (z.c.empty())
    a.erase(d);
  else
    a[d] = z;
}

BiPoly bp_sub(const BiPoly& a, const BiPoly& b) {
  BiPoly out = a;
  for (const auto& [d, z] : b) {
    auto it = out.find(d);
    if (it == out.end()) {
      out[d] = -z;
    } else {
      bp_set(out, d, it->second - z);
    }
  }
  return out;
}

BiPoly bp_mul(const BiPoly& a, const BiPoly& b) {
  BiPoly out;
  for (const auto& [da, za] : a)
    for (const auto& [db, zb] : b) {
      auto it = out.find(da + db);
      if (it == out.end())
        out[da + db] = za * zb;
      else
        bp_set(out, da + db, it->second + za * zb);
    }
  return out;
}

// Exact division in Z[t][eps]: long division on the eps variable with
// exact ZPoly coefficient division at each step.
BiPoly bp_divexact(BiPoly a, const BiPoly& b) {
  if (bp_zero(b)) throw math_error("division by the zero polynomial");
  BiPoly out;
  int db = b.rbegin()->first;
  const ZPoly& lb = b.rbegin()->second;
  while (!bp_zero(a)) {
    int da = a.rbegin()->first;
    if (da < db) throw math_error("inexact bivariate division");
    ZPoly q = divexact(a.rbegin()->second, lb);
    int dq = da - db;
    out[dq] = q;
    BiPoly sub;
    for (const auto& [d, z] : b) bp_set(sub, d + dq, z * q);
    a = bp_sub(a, sub);
  }
  return out;
}

// Integer trial division: quotient written to q and true returned when b
// divides a exactly over the integers, false otherwise. b is primitive, so
// divisibility over the rationals and over the integers coincide.
bool try_divexact(const ZPoly& a, const ZPoly& b, ZPoly* q) {
  int da = a.degree(), db = b.degree();
  if (da < db) return false;
  const Int& lb = b.c.back();
  std::vector<Int> rem = a.c;
  std::vector<Int> quot(da - db + 1);
  for (int i = da - db; i >= 0; --i) {
    Int& lead = rem[db + i];
    if (lead == 0) {
      quot[i] = 0;
      continue;
    }
    if (!mpz_divisible_p(lead.get_mpz_t(), lb.get_mpz_t())) return false;
    Int qi;
    mpz_divexact(qi.get_mpz_t(), lead.get_mpz_t(), lb.get_mpz_t());
    quot[i] = qi;
    for (int s = 0; s <= db; ++s) rem[s + i] -= qi * b.c[s];
  }
  for (const Int& r : rem)
    if (r != 0) return false;
  *q = ZPoly(std::move(quot));
  return true;
}

ZPoly pos_primitive(const ZPoly& p) {
  ZPoly q = primitive_part(p);
  if (!q.c.empty() && q.c.back() < 0) q = -q;
  return q;
}

// Pairwise-coprime refinement basis for the denominators seen in a block.
// Every inserted polynomial factors exactly over the basis, which keeps the
// elimination denominators in factored form and the final reductions cheap.
void insert_basis(std::vector<ZPoly>& basis, ZPoly p) {
  std::vector<ZPoly> work = {pos_primitive(p)};
  while (!work.empty()) {
    ZPoly cur = work.back();
    work.pop_back();
    std::size_t i = 0;
    while (cur.degree() > 0 && i < basis.size()) {
      ZPoly g = gcd_primitive(cur, basis[i]);
      if (g.degree() <= 0) {
        ++i;
        continue;
      }
      if (g.degree() < basis[i].degree()) {
        ZPoly rest = pos_primitive(divexact(basis[i], g));
        basis[i] = g;
        work.push_back(rest);
      }
      cur = pos_primitive(divexact(cur, g));
    }
    if (cur.degree() > 0) basis.push_back(cur);
  }
}

// Exponents of p over the basis; p must factor completely.
std::vector<int> basis_exponents(const std::vector<ZPoly>& basis, ZPoly p) {
  std::vector<int> e(basis.size(), 0);
  p = pos_primitive(p);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    ZPoly q;
    while (p.degree() >= basis[i].degree() && try_divexact(p, basis[i], &q)) {
      p = q;
      ++e[i];
    }
  }
  if (p.degree() != 0)
    throw math_error("denominator does not factor over the block basis");
  return e;
}

// Canonical form for num / (den * dc) when gcd(num, den) is already known
// to be trivial, skipping the polynomial gcd that RatFunc::make would run.
// den is primitive with positive leading coefficient by construction.
RatFunc rf_coprime(Var v, const ZPoly& num, const ZPoly& den, Int dc) {
  RatFunc r(v);
  if (num.is_zero()) return r;
  IntPoly nip(v, num);
  Int nc = nip.content;
  Int c = igcd(nc, dc);
  r.num = nip;
  r.num.content = nc / c;
  r.den = IntPoly(v, den);
  r.den.content = dc / c;
  return r;
}

EpsPoly bp_to_eps(Var v, const BiPoly& a, const std::vector<ZPoly>& basis,
                  const std::vector<int>& den_exp, const Int& den_cont) {
  EpsPoly out(v);
  for (const auto& [d, z] : a) {
    ZPoly num = z;
    ZPoly den{{Int(1)}};
    bool coprime = true;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      int rem = den_exp[i];
      ZPoly q;
      while (rem > 0 && try_divexact(num, basis[i], &q)) {
        num = q;
        --rem;
      }
      if (rem > 0 && !num.is_zero()) {
        // Trial division failed, but a reducible basis factor could still
        // share a proper divisor with num; one small gcd settles it.
        if (gcd_primitive(num, basis[i]).degree() > 0) coprime = false;
        for (int s = 0; s < rem; ++s) den = den * basis[i];
      }
    }
    if (coprime)
      out.set(d, rf_coprime(v, num, den, den_cont));
    else
      out.set(d, RatFunc::make(v, num, den * den_cont));
  }
  return out;
}

}  // namespace

EpsPoly block_determinant_cofactor(const OperatorBlock& block, int k) {
  Var v = block.entries.empty() ? Var::t : block.entries[0][0].var;
  if (k == 0) return EpsPoly::from_rat(v, 1, 0);
  // det over the first popcount(mask) rows and the column set in mask,
  // expanded along the last used row; memoized on the column mask.
  std::map<unsigned, EpsPoly> memo;
  auto det = [&](auto&& self, unsigned mask) -> EpsPoly {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int r = __builtin_popcount(mask) - 1;
    EpsPoly acc(v);
    int slot = 0;
    for (int c = 0; c < block.dim; ++c) {
      if (!(mask & (1u << c))) continue;
      EpsPoly sub = r == 0 ? EpsPoly::from_rat(v, 1, 0)
                           : self(self, mask & ~(1u << c));
      EpsPoly term = block.entries[r][c] * sub;
      acc = (slot % 2 == r % 2) ? acc + term : acc - term;
      ++slot;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return det(det, (1u << k) - 1);
}

namespace {

void insert_block_denominators(std::vector<ZPoly>& basis,
                               const OperatorBlock& block) {
  for (int r = 0; r < block.dim; ++r)
    for (int c = 0; c < block.dim; ++c)
      for (const auto& [d, q] : block.entries[r][c].terms)
        if (q.den.degree() > 0) insert_basis(basis, q.den.prim);
}

}  // namespace

std::vector<ZPoly> denominator_basis(const OperatorBlock& block) {
  std::vector<ZPoly> basis;
  insert_block_denominators(basis, block);
  return basis;
}

std::vector<ZPoly> denominator_basis(const std::vector<OperatorBlock>& blocks) {
  std::vector<ZPoly> basis;
  for (const OperatorBlock& block : blocks)
    insert_block_denominators(basis, block);
  return basis;
}

bool factor_over_basis(const std::vector<ZPoly>& basis, const ZPoly& p,
                       std::vector<int>* exps) {
  exps->assign(basis.size(), 0);
  ZPoly rest = pos_primitive(p);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    ZPoly q;
    while (rest.degree() >= basis[i].degree() &&
           try_divexact(rest, basis[i], &q)) {
      rest = q;
      ++(*exps)[i];
    }
  }
  return rest.degree() == 0;
}

std::vector<MinorSpectrum> leading_minors(const OperatorBlock& block) {
  int n = block.dim;
  Var v = block.entries.empty() ? Var::t : block.entries[0][0].var;
  std::vector<MinorSpectrum> out;

  // Coprime factor basis of every denominator in the block.
  std::vector<ZPoly> basis = denominator_basis(block);

  // Row lifts in factored form: row r times rowden[r] has integer
  // polynomial entries.
  std::vector<std::vector<int>> rowexp(n, std::vector<int>(basis.size(), 0));
  std::vector<Int> rowcont(n, Int(1));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (const auto& [d, q] : block.entries[r][c].terms) {
        std::vector<int> e = basis_exponents(basis, q.den.prim);
        for (std::size_t i = 0; i < basis.size(); ++i)
          rowexp[r][i] = std::max(rowexp[r][i], e[i]);
        mpz_lcm(rowcont[r].get_mpz_t(), rowcont[r].get_mpz_t(),
                q.den.content.get_mpz_t());
      }
  std::vector<std::vector<BiPoly>> m(n, std::vector<BiPoly>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      BiPoly b;
      for (const auto& [d, q] : block.entries[r][c].terms) {
        std::vector<int> e = basis_exponents(basis, q.den.prim);
        ZPoly lift = q.num.prim * q.num.content;
        for (std::size_t i = 0; i < basis.size(); ++i)
          for (int s = e[i]; s < rowexp[r][i]; ++s) lift = lift * basis[i];
        Int scale;
        mpz_divexact(scale.get_mpz_t(), rowcont[r].get_mpz_t(),
                     q.den.content.get_mpz_t());
        bp_set(b, d, lift * scale);
      }
      m[r][c] = b;
    }

  // After step k-1 the (k,k) element is the lifted k+1 by k+1 leading
  // principal minor; division is by the previous pivot.  Knuth, TAOCP
  // vol. 2, 4.6.1, exercise 11 (Bareiss).
  std::vector<int> den_exp(basis.size(), 0);
  Int den_cont(1);
  BiPoly prev;
  prev[0] = ZPoly{{Int(1)}};
  bool dead = false;
  for (int k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < basis.size(); ++i) den_exp[i] += rowexp[k][i];
    den_cont *= rowcont[k];
    MinorSpectrum ms;
    ms.label = block.label;
    ms.k = k + 1;
    if (dead) {
      ms.det = block_determinant_cofactor(block, k + 1);
    } else {
      ms.det = bp_to_eps(v, m[k][k], basis, den_exp, den_cont);
    }
    if (ms.det == EpsPoly(v)) {
      ms.degenerate = true;
      ms.eps_degree = -1;
      ms.leading = RatFunc(v);
    } else {
      ms.eps_degree = ms.det.min_deg();
      ms.leading = ms.det.coeff(ms.eps_degree);
    }
    out.push_back(ms);
    if (k == n - 1) break;
    if (!dead && bp_zero(m[k][k])) dead = true;
    if (dead) continue;
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = bp_divexact(
            bp_sub(bp_mul(m[k][k], m[i][j]), bp_mul(m[i][k], m[k][j])), prev);
    prev = m[k][k];
  }
  return out;
}

}  // namespace poscurv
