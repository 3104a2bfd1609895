#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "idealflow/matrix.hpp"

namespace idealflow {

struct Defect {
  std::size_t row = 0;
  std::size_t col = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Outcome of checking one identity cell by cell. holds == defects.empty().
struct VerificationReport {
  explicit VerificationReport(std::string name = {}) : identity(std::move(name)) {}

  std::string identity;
  bool holds = true;
  std::vector<Defect> defects;   // at most kMaxDefects entries
  std::size_t defect_count = 0;  // total, including those past the cap

  static constexpr std::size_t kMaxDefects = 100;

  void add_defect(const Defect& d);
};

// F <= A o D <= D, cellwise. Both inequalities are folded into one report; a
// defect's lhs/rhs are the two sides of whichever inequality failed first.
VerificationReport verify_inequality(const IntMatrix& flow, const BinaryMatrix& adjacency,
                                     const IntMatrix& od);

struct FlowIdentityInputs {
  const IntMatrix& flow;
  const IntMatrix& od;
  const IntMatrix& indirect;
  const IntMatrix& alternative;
  const BinaryMatrix& adjacency;
  const BinaryMatrix& path_binary;
  const BinaryMatrix& external_binary;
};

// Four count-level identities, checked independently with exact equality:
//   L = T + Ehat o D
//   A o D = D - Ehat o D
//   D = Phat o D
//   F = A o D - T
std::vector<VerificationReport> verify_flow_identities(const FlowIdentityInputs& in);

// |rowsum(i) - colsum(i)| <= tolerance for every i. Defects use (i, i).
VerificationReport verify_premagic(const RealMatrix& m, double tolerance);
VerificationReport verify_premagic(const IntMatrix& m);

}  // namespace idealflow
