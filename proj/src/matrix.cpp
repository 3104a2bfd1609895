#include "idealflow/matrix.hpp"

#include <cmath>

namespace idealflow {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kEmptyGraph: return "EmptyGraph";
    case ErrorKind::kSelfLoop: return "SelfLoop";
    case ErrorKind::kDuplicateEdge: return "DuplicateEdge";
    case ErrorKind::kUnknownNode: return "UnknownNode";
    case ErrorKind::kNonEdgeStep: return "NonEdgeStep";
    case ErrorKind::kDuplicateId: return "DuplicateId";
    case ErrorKind::kTooShort: return "TooShort";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNotSquare: return "NotSquare";
    case ErrorKind::kNotStronglyConnected: return "NotStronglyConnected";
    case ErrorKind::kSinkNode: return "SinkNode";
    case ErrorKind::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::kNotNormalized: return "NotNormalized";
    case ErrorKind::kZeroAgents: return "ZeroAgents";
    case ErrorKind::kAllZero: return "AllZero";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kIo: return "IoError";
  }
  return "Error";
}

BinaryMatrix binarize(const HopMatrix& m) {
  BinaryMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = (m(i, j).finite() && m(i, j).value() > 0) ? 1 : 0;
  return out;
}

BinaryMatrix binarize(const IntMatrix& m) {
  BinaryMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) > 0 ? 1 : 0;
  return out;
}

BinaryMatrix binarize(const RealMatrix& m) {
  BinaryMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = (std::isfinite(m(i, j)) && m(i, j) > 0.0) ? 1 : 0;
  return out;
}

RealMatrix to_real(const IntMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = static_cast<double>(m(i, j));
  return out;
}

}  // namespace idealflow
