#pragma once

#include <stdexcept>

namespace diskbond {

/// Configuration is representable but meaningless in binary64: eps/r below
/// 1e-12 pushes mu = (1-rho)^2/rho under the relative accuracy floor.
class ConditioningError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// The tail certificate cannot be met within the truncation cap; the
/// eps/tol combination is infeasible at binary64.
class TruncationCapError : public std::length_error {
  public:
    using std::length_error::length_error;
};

}  // namespace diskbond
