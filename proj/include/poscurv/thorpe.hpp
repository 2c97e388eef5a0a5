// Modified curvature operator: an invariant 4-form eta added to the curvature
// operator R-hat on Lambda^2 leaves all sectional curvatures unchanged, so
// positive definiteness of R-hat + eta-hat certifies positive curvature. The
// operator splits into four symmetric blocks over the invariant 2-vector
// basis; positivity is decided on the leading principal minors of each block
// at the lowest order in the scaling parameter eps.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "poscurv/curvature.hpp"

namespace poscurv {

// Coefficients of the invariant 4-form over the eleven wedge monomials
// (indices 1-based in this comment):
//   sum over cyclic (i,j,k) of  a_k X_i^X_j^Z_i^Z_j
//   + b_1 Z_1^X_2^X_3^T + b_2 X_1^Z_2^X_3^T + b_3 X_1^X_2^Z_3^T
//   + c_1 X_1^Z_2^Z_3^T + c_2 Z_1^X_2^Z_3^T + c_3 Z_1^Z_2^X_3^T
//   + d1 X_1^X_2^X_3^T + d2 Z_1^Z_2^Z_3^T
struct FourFormParams {
  Var var = Var::t;
  std::array<EpsPoly, 3> a, b, c;
  EpsPoly d1, d2;
};

// Standard choice for a connection metric frame:
//   a_i = eps gamma_i - eps^2 gamma_j gamma_k,
//   b_i = -eps beta_i + (1/2) eps^2 (beta_j gamma_k + beta_k gamma_j),
//   c_i = 0, d1 = 0, d2 = -N_2.
// This choice makes the A0 block diagonal and cancels the lowest eps order
// of every off-diagonal entry that has one.
FourFormParams build_params(const CurvatureFrame& fr);

// eta(e_x, e_y, e_z, e_w) for unit-basis indices in the BX/BY/BT layout.
EpsPoly four_form_value(const FourFormParams& p, int x, int y, int z, int w);

enum class BlockLabel { A0, A12, A23, A31 };
enum class BlockMode { Leading, Exact };

const char* block_name(BlockLabel label);

// Cyclic index triple (i,j,k), 0-based: A12 -> (0,1,2), A23 -> (1,2,0),
// A31 -> (2,0,1), A0 -> (0,1,2).
std::array<int, 3> block_indices(BlockLabel label);

// One invariant block of R-hat + eta-hat, entries
// <(R-hat + eta-hat)(w_r), w_c> over the listed orthonormal 2-vector basis.
// dim 3 is the A0 block {X_1^Z_1, X_2^Z_2, X_3^Z_3}; dim 6 is the A_ij block
// {X_i^X_j, X_i^Z_j, Z_i^X_j, X_k^T, Z_i^Z_j, Z_k^T}; dim 5 drops the first
// basis vector of the six.
struct OperatorBlock {
  BlockLabel label = BlockLabel::A0;
  BlockMode mode = BlockMode::Leading;
  int dim = 0;
  std::array<int, 3> ijk{};
  std::vector<std::vector<EpsPoly>> entries;
  std::vector<std::string> basis;
};

// Closed-form construction of one block from the frame quantities and
// generic 4-form coefficients. The (Z_i^Z_j, Z_k^T) entry has no closed
// form beyond its lowest eps order; Leading mode truncates it there, Exact
// mode includes the tail, which the caller supplies as alpha_k (the
// alpha_term of the block's distinguished index). alpha_k is unused in
// Leading mode and for A0. dim must be 3 for A0 and 5 or 6 otherwise.
OperatorBlock build_block(const CurvatureFrame& fr, const FourFormParams& p,
                          BlockLabel label, BlockMode mode = BlockMode::Leading,
                          int dim = 5, const EpsPoly* alpha_k = nullptr);

// All four blocks assembled generically from exact curvature components and
// the pairing <eta-hat(x^y), z^w> = eta(x,y,z,w). Agrees with build_block
// in Exact mode entry by entry; the agreement is the defining cross-check
// of every wedge-basis sign convention used here.
std::vector<OperatorBlock> assemble_from_4form(const UnitFrameCurvature& u,
                                               const FourFormParams& p,
                                               int dim = 5);

// Exact determinant of the upper-left k x k minor together with its minimal
// eps degree and the coefficient there. A determinant that is identically
// zero is reported with degenerate = true and eps_degree = -1.
struct MinorSpectrum {
  BlockLabel label = BlockLabel::A0;
  int k = 0;
  EpsPoly det;
  int eps_degree = -1;
  RatFunc leading;
  bool degenerate = false;
};

// Minor determinants for k = 1..dim via fraction-free elimination over a
// common-denominator integer polynomial lift (one elimination pass yields
// all leading principal minors).
std::vector<MinorSpectrum> leading_minors(const OperatorBlock& block);

// Division-free cofactor expansion of the upper-left k x k determinant,
// an independent cross-check of leading_minors.
EpsPoly block_determinant_cofactor(const OperatorBlock& block, int k);

// Pairwise-coprime factor basis of every denominator appearing in the
// block (factors of positive degree only, primitive, positive leading
// coefficient). Every block denominator factors exactly over it. The
// multi-block form builds one shared basis for all the given blocks.
std::vector<ZPoly> denominator_basis(const OperatorBlock& block);
std::vector<ZPoly> denominator_basis(const std::vector<OperatorBlock>& blocks);

// Exponents of each basis element in p (written to *exps); returns false
// when a positive-degree factor of p lies outside the basis.
bool factor_over_basis(const std::vector<ZPoly>& basis, const ZPoly& p,
                       std::vector<int>* exps);

}  // namespace poscurv
