#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tsscore {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Observed discrepancy against its threshold, human readable.
  std::string detail;
};

/// Fast oracle checks of the closed forms against generic computations:
/// Gaussian Hyvarinen equivalence, analytic precision matrices, the Wishart
/// sensitivity, Wishart gradient vs finite differences, pairwise sigma2
/// consistency and score-equation unbiasedness.
std::vector<CheckResult> run_checks(std::uint64_t seed = 20140512);

}  // namespace tsscore
