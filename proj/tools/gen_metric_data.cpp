// Regenerates the canonical metric documents under data/.
// Usage: gen-metric-data <output-dir>
#include <cstdio>
#include <string>

#include "poscurv/metric.hpp"

using namespace poscurv;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <output-dir>\n", argv[0]);
    return 2;
  }
  std::string dir = argv[1];
  try {
    save_metric_file(build_p2_metric(), dir + "/p2.metric.json");
    save_metric_file(build_p2_flipped_v3_metric(),
                     dir + "/p2_flipped_v3.metric.json");

    // Perturbation corpus: nudge the cubic coefficient of the second
    // vertical function's inner piece. The small nudge keeps every
    // positivity certificate intact; the large one breaks them.
    auto perturbed = [](const char* name, const char* cubic) {
      nlohmann::json doc = p2_metric_document(true);
      doc["name"] = name;
      doc["v"]["2"][0]["coeffs"][3] = cubic;
      return load_metric(doc);
    };
    save_metric_file(perturbed("p2-perturbed-small", "-39/1000"),
                     dir + "/p2_perturbed_small.metric.json");
    save_metric_file(perturbed("p2-perturbed-large", "-1"),
                     dir + "/p2_perturbed_large.metric.json");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
