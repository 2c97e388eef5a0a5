// Exact curvature quantities of connection metrics: per-piece frame
// quantities, the general curvature tensor computed from the structure
// equations, the frame change to the unit basis, and the closed-form
// component table for connection metrics.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "poscurv/epspoly.hpp"
#include "poscurv/metric.hpp"

namespace poscurv {

// Basis index conventions (0-based). Action basis: 0..2 = X_1..X_3,
// 3..5 = Y_1..Y_3, 6 = T. Unit basis: 0..2 = X_1..X_3, 3..5 = Z_1..Z_3
// (Z_i = (Y_i - h_i X_i)/v_i with signed v_i), 6 = T.
inline constexpr int BX = 0;  // X_i index = BX + i
inline constexpr int BY = 3;  // Y_i / Z_i index = BY + i
inline constexpr int BT = 6;

// ---------------------------------------------------------------------------
// Frame quantities on one piece (rational functions of the piece variable).

struct CurvatureFrame {
  Var var = Var::t;
  Rat a, b;  // piece interval in the piece's own variable
  std::array<RatFunc, 3> v, h, vprime, hprime;
  std::array<RatFunc, 3> Lbase, Mbase, Nbase;
  std::array<RatFunc, 3> beta, gamma, beta_prime;
  std::array<std::array<RatFunc, 3>, 3> B, C;  // [i][j] for i != j
};

CurvatureFrame compute_frame(const Metric& m, std::size_t piece);

// ---------------------------------------------------------------------------
// General curvature tensor on the action basis.

// Metric data (f_i, g_i, h_i); entries may carry the scaling parameter.
// Each D_i = f_i g_i - h_i^2 must be a nonzero monomial in the parameter
// (constructor throws math_error naming the index otherwise).
struct GeneralMetricData {
  Var var = Var::t;
  std::array<EpsPoly, 3> f, g, h;
};

// Scaled connection substitution on one piece: f_i = eps, h_i -> eps h_i,
// g_i = v_i^2 + eps h_i^2 (signed v_i).
GeneralMetricData connection_substitution(const Metric& m, std::size_t piece);

// Curvature components R_{abcd} in the convention where R_{abab} is the
// unnormalized sectional curvature of the plane (a, b): the value equals
// <R(e_a, e_b) e_d, e_c> for the Levi-Civita curvature operator.
class GeneralCurvature {
 public:
  explicit GeneralCurvature(GeneralMetricData data);

  const GeneralMetricData& data() const { return data_; }
  EpsPoly component(int a, int b, int c, int d) const;

 private:
  using Vec = std::array<EpsPoly, 6>;  // coefficients over the orbit block

  // Structure-equation values in the standard convention for orbit basis
  // indices: r1 = <R(x,y)z, w>, r2 = <R(x,y)z, T>, r3 = <R(x,T)T, y>.
  EpsPoly r1(int x, int y, int z, int w) const;
  EpsPoly r2(int x, int y, int z) const;
  EpsPoly r3(int x, int y) const;

  EpsPoly qdot(const Vec& x, const Vec& y) const;
  Vec lie_left(int s, const Vec& w) const;   // [e_s, w]
  Vec lie_right(const Vec& v, int t) const;  // [v, e_t]
  Vec apply_pinv(const Vec& x) const;

  GeneralMetricData data_;
  std::array<EpsPoly, 3> fp_, gp_, hp_;     // first derivatives
  std::array<EpsPoly, 3> fpp_, gpp_, hpp_;  // second derivatives
  std::array<EpsPoly, 3> dinv_;             // 1/D_i as a Laurent monomial

  // Basis-level tables, precomputed once. Brackets of basis elements are a
  // single basis element with an integer coefficient (or zero).
  struct BrEntry {
    int idx = -1;
    int c = 0;
  };
  BrEntry br_[6][6];
  Vec P_[6], Pp_[6], Ppp_[6], Pinv_[6];
  Vec bp_[6][6], bm_[6][6], pinv_bp_[6][6];
  Vec r3vec_[6];  // (-P''/2 + P' P^{-1} P'/4) e_x
};

// ---------------------------------------------------------------------------
// Frame change to the unit basis.

class UnitFrameCurvature {
 public:
  UnitFrameCurvature(const Metric& m, std::size_t piece);

  const GeneralCurvature& action() const { return gc_; }
  const CurvatureFrame& frame() const { return frame_; }

  // Component in the unit basis {X_i, Z_i, T}, same sign convention.
  EpsPoly component(int a, int b, int c, int d) const;

 private:
  CurvatureFrame frame_;
  GeneralCurvature gc_;
  // Expansion of each unit basis vector over the action basis.
  std::array<std::vector<std::pair<int, RatFunc>>, 7> expand_;
  mutable std::map<std::uint32_t, EpsPoly> memo_;
};

// ---------------------------------------------------------------------------
// Closed-form component table for connection metrics.

struct CurvComponent {
  std::array<int, 4> label;  // unit-basis indices, instantiated
  std::string family;        // pattern id, e.g. "XiZjZkT"
  EpsPoly value;
};

// The displayed closed-form families instantiated over cyclic (i,j,k),
// expressed in the given frame quantities. Does not include the family
// R(Zi,Zj,Zk,T), whose subleading part has no closed form here.
std::vector<CurvComponent> connection_table(const CurvatureFrame& fr);

// Closed-form families plus the oracle-backed R(Zi,Zj,Zk,T) family,
// computed exactly on the given piece.
std::vector<CurvComponent> connection_curvature(const Metric& m,
                                                std::size_t piece);

// (oracle R(Zi,Zj,Zk,T) - N_k) / eps, exact; k = 0,1,2.
EpsPoly alpha_term(const UnitFrameCurvature& u, int k);

}  // namespace poscurv
