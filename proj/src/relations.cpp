#include "idealflow/relations.hpp"

#include <cmath>

namespace idealflow {

namespace {

VerificationReport compare_equal(std::string name, const IntMatrix& lhs, const IntMatrix& rhs) {
  VerificationReport report{std::move(name)};
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j)
      if (lhs(i, j) != rhs(i, j)) {
        report.add_defect({i, j, static_cast<double>(lhs(i, j)), static_cast<double>(rhs(i, j))});
      }
  return report;
}

}  // namespace

void VerificationReport::add_defect(const Defect& d) {
  holds = false;
  ++defect_count;
  if (defects.size() < kMaxDefects) defects.push_back(d);
}

VerificationReport verify_inequality(const IntMatrix& flow, const BinaryMatrix& adjacency,
                                     const IntMatrix& od) {
  require_same_shape(flow, od, "verify_inequality");
  require_same_shape(adjacency, od, "verify_inequality");
  const IntMatrix masked = hadamard(adjacency, od);
  VerificationReport report{"F <= A o D <= D"};
  for (std::size_t i = 0; i < flow.rows(); ++i) {
    for (std::size_t j = 0; j < flow.cols(); ++j) {
      if (flow(i, j) > masked(i, j)) {
        report.add_defect({i, j, static_cast<double>(flow(i, j)), static_cast<double>(masked(i, j))});
      } else if (masked(i, j) > od(i, j)) {
        report.add_defect({i, j, static_cast<double>(masked(i, j)), static_cast<double>(od(i, j))});
      }
    }
  }
  return report;
}

std::vector<VerificationReport> verify_flow_identities(const FlowIdentityInputs& in) {
  for (const IntMatrix* m : {&in.flow, &in.indirect, &in.alternative, &in.adjacency,
                             &in.path_binary, &in.external_binary}) {
    require_same_shape(*m, in.od, "verify_flow_identities");
  }
  const IntMatrix external_od = hadamard(in.external_binary, in.od);
  const IntMatrix direct_od = hadamard(in.adjacency, in.od);
  std::vector<VerificationReport> reports;
  reports.push_back(compare_equal("L = T + Ehat o D", in.indirect, in.alternative + external_od));
  reports.push_back(compare_equal("A o D = D - Ehat o D", direct_od, in.od - external_od));
  reports.push_back(compare_equal("D = Phat o D", in.od, hadamard(in.path_binary, in.od)));
  reports.push_back(compare_equal("F = A o D - T", in.flow, direct_od - in.alternative));
  return reports;
}

VerificationReport verify_premagic(const RealMatrix& m, double tolerance) {
  if (!m.is_square()) throw Error(ErrorKind::kNotSquare, "verify_premagic");
  if (!(tolerance >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "tolerance must be >= 0");
  const auto rows = row_sums(m);
  const auto cols = col_sums(m);
  VerificationReport report{"premagic"};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!(std::abs(rows[i] - cols[i]) <= tolerance)) report.add_defect({i, i, rows[i], cols[i]});
  }
  return report;
}

VerificationReport verify_premagic(const IntMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::kNotSquare, "verify_premagic");
  const auto rows = row_sums(m);
  const auto cols = col_sums(m);
  VerificationReport report{"premagic"};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (rows[i] != cols[i]) {
      report.add_defect({i, i, static_cast<double>(rows[i]), static_cast<double>(cols[i])});
    }
  }
  return report;
}

}  // namespace idealflow
