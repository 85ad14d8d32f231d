#pragma once
//
// errors.hpp -- exception types raised across the library. Each corresponds
// to a precondition violation or a reportable numerical failure; plain
// roundoff never raises.
//

#include <stdexcept>
#include <string>

namespace qrd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operator preconditions.
struct NonHermitian : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct ZeroOperator : Error { using Error::Error; };
struct DimensionCap : Error { using Error::Error; };

// Divergence-specific.
struct UnsupportedAlphaVariant : Error { using Error::Error; };
struct EmptySupportMeet : Error { using Error::Error; };
struct InfiniteDivergence : Error { using Error::Error; };
struct InvalidAlphaRange : Error { using Error::Error; };

// Combinatorics.
struct PartitionMismatch : Error { using Error::Error; };

// Channels and optimization.
struct UnknownLabel : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };

// Input parsing (CLI layer).
struct InputError : Error { using Error::Error; };

}  // namespace qrd
