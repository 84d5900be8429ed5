#include "qsum/errors.hpp"

namespace qsum {

DimensionError::DimensionError(int n1, int q1, int n2, int q2)
    : Error("dimension mismatch: (n=" + std::to_string(n1) + ", q=" + std::to_string(q1) + ") vs (n=" +
            std::to_string(n2) + ", q=" + std::to_string(q2) + ")"),
      lhs_n(n1), lhs_q(q1), rhs_n(n2), rhs_q(q2) {}

SchemaError::SchemaError(std::string pointer, const std::string& what)
    : Error(what + " at " + (pointer.empty() ? std::string("/") : pointer)), pointer_(std::move(pointer)) {}

}  // namespace qsum
