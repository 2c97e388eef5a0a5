// Certified positivity pipeline. Every inequality the construction needs is
// reduced to exact evidence: a Sturm sign certificate for an integer
// polynomial on a rational interval, a pair of such certificates for a
// rational function, a factored-denominator variant that reuses shared
// factor certificates, or an exact rational comparison. The entries form a
// dependency DAG (clearing a denominator depends on the entry certifying its
// sign) and are assembled into a replayable certificate document.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "poscurv/curvature.hpp"
#include "poscurv/metric.hpp"
#include "poscurv/sturm.hpp"
#include "poscurv/thorpe.hpp"

namespace poscurv {

// Reference to a previously certified polynomial factor together with the
// exponent it carries in a composite denominator.
struct FactorRef {
  std::string name;
  int exponent = 1;
};

// Expected evidence outcome of one entry. The verdict of an entry is PASS
// exactly when its embedded evidence satisfies the expectation; a replay
// checker re-derives this from the evidence alone.
//   StrictlyPositive / StrictlyNegative: single-poly verdict matches.
//   StrictSign:          single-poly verdict is strictly one-signed.
//   PositiveInside:      p(a) = 0, no root in (a, b], p(b) > 0.
//   PositiveUpToRightRoot: p(a) > 0, the only root in (a, b] is b itself.
//   Positive / Negative: overall sign of the rational-function or factored
//                        form is +1 / -1.
//   Compare:             exact rational lhs <relation> rhs holds.
//   Identity:            symbolic equality asserted by the generator; the
//                        embedded witness values satisfy lhs == rhs.
enum class Expectation {
  StrictlyPositive,
  StrictlyNegative,
  StrictSign,
  PositiveInside,
  PositiveUpToRightRoot,
  Positive,
  Negative,
  Compare,
  Identity,
};

const char* expectation_name(Expectation e);

// One certified fact. Exactly one evidence form is populated:
//   cert                      single integer polynomial sign certificate
//   num_cert + den_cert       rational function, both parts certified
//   num_cert + den_factors    rational function, denominator factored over
//                             previously certified entries
//   lhs/rhs + relation        exact rational comparison
struct CheckEntry {
  std::string name;    // unique path-like id, e.g. "fatness/piece0/gamma2"
  std::string anchor;  // statement of the certified condition
  std::vector<std::string> depends_on;

  std::optional<SignCertificate> cert;
  std::optional<SignCertificate> num_cert;
  std::optional<SignCertificate> den_cert;
  std::vector<FactorRef> den_factors;
  Rat den_content = Rat(1);
  std::optional<Rat> lhs, rhs;
  std::string relation;  // "==", "!=", "<", "<=", ">", ">="

  Expectation expect = Expectation::Compare;
  std::optional<int> eps_degree;  // leading order, for minor entries
  bool pass = false;
  std::string detail;  // branch taken, witness point, diagnostics
};

struct VerifyConfig {
  BlockMode mode = BlockMode::Leading;
  Rat eps = Rat(1, 100);  // exact-mode evaluation point, 0 < eps <= 1
  unsigned seed = 0;      // recorded in the certificate; results do not
                          // depend on it (all sample points are fixed)
  int jobs = 1;           // parallelism degree; content-independent
};

struct Certificate {
  std::string metric_sha256;
  std::string metric_name;
  VerifyConfig config;
  std::vector<CheckEntry> checks;
  bool overall = false;
};

// ---------------------------------------------------------------------------
// Pipeline stages. Each returns its entries with stable names; `verify`
// concatenates them in dependency order.

// Collapse and junction conditions as exact rational comparisons.
std::vector<CheckEntry> check_smoothness_entries(const Metric& m);

// v1 > 0 on (0, L], vanishing exactly at 0; v2 > 0 on [0, L), vanishing
// exactly at L; v3 < 0 on [0, L]. Certified per piece in local coordinates.
std::vector<CheckEntry> check_sign_conventions(const Metric& m);

// beta_i > 0 and gamma_i > 0 on the piece (fatness of the connection).
std::vector<CheckEntry> check_fatness(const CurvatureFrame& fr,
                                      std::size_t piece);

// L_i beta_i^2 - beta_i'^2 > 0 and gamma_i^2 M_k - B_ij^2 > 0 on the piece,
// cleared of denominators against previously certified signs.
std::vector<CheckEntry> check_hyperfatness(const CurvatureFrame& fr,
                                           std::size_t piece);

// L_i > 0, M_i > 0, and |N_i - N_j| < sqrt(L_i M_i) + sqrt(L_j M_j) per
// pair, via the square-bound / product-bound branches with interval
// subdivision as a fallback.
std::vector<CheckEntry> check_base_positive(const CurvatureFrame& fr,
                                            std::size_t piece);

// Exact endpoint conditions at both collapse points, extracted from the
// boundary jets of the metric.
std::vector<CheckEntry> check_endpoint_inequalities(const Metric& m);

// Closed-form curvature component families compared against the
// structure-equation oracle, plus independence of the high minors from the
// one family without a closed form.
std::vector<CheckEntry> check_oracle_equivalence(const Metric& m,
                                                 std::size_t piece);

// The 45 leading-minor certificates (3 blocks x k = 1..5 x 3 pieces) plus
// the diagonal-block chain; exact mode additionally certifies each minor
// determinant at the given epsilon.
std::vector<CheckEntry> check_minors(const Metric& m, BlockMode mode,
                                     const Rat& eps);

// Endpoint conditions on raw jets. At the origin the jet is
// (a2, b2^2, c2, d0); at the far end (a1, c1, d3, ell). Both reduce to
// exact rational comparisons by squaring after a branch split.
std::vector<CheckEntry> endpoint_condition_origin(const Rat& a2,
                                                  const Rat& b2sq,
                                                  const Rat& c2, const Rat& d0);
std::vector<CheckEntry> endpoint_condition_far(const Rat& a1, const Rat& c1,
                                               const Rat& d3, long ell);

// Runs the full pipeline; failures are recorded as failing entries, never
// thrown past the stage boundary.
Certificate verify(const Metric& m, const VerifyConfig& cfg);

// ---------------------------------------------------------------------------
// Serialization. Objects use sorted keys and exact rational strings, so the
// document is canonical: equal certificates serialize identically.

nlohmann::json certificate_json(const Certificate& c);
std::string certificate_text(const Certificate& c);  // pretty, trailing \n
void save_certificate(const Certificate& c, const std::string& path);

}  // namespace poscurv
