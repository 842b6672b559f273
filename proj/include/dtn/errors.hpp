#pragma once

#include <stdexcept>
#include <string>

namespace dtn {

/// A construction could not resolve a geometric feature at the requested
/// resolution (e.g. a Delaunay neck thinner than five grid cells).
struct RefinementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagree beyond
/// their documented tolerance.
struct InternalConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dtn
