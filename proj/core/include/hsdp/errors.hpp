#pragma once

#include <stdexcept>

namespace hsdp {

/// The tail-weight recursion cannot be evaluated: with tail length 1 and
/// antennas != 2 the last weight appears on both sides of its own defining
/// equation with a nonzero coefficient.
struct DegenerateRecursion : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The modulus is smaller than 2*radius+1, so the signed construction values
/// would collide after reduction.
struct ModulusTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The closed-form last block dimension (2^{r+2}-2L-1)q/(2^{r+1}-L) is not an
/// integer for the requested parameters.
struct NonIntegralBlockDim : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exhaustive search found no dimension vector satisfying the modulus bound,
/// not even all-ones.
struct NoFeasiblePoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Stacked interference rows span the whole antenna space, so no nonzero
/// nulling vector exists.
struct RankDeficiency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A served user could not recover its payload within tolerance.
struct DecodeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File or stream problem while reading or writing artifacts.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hsdp
