#pragma once

#include <optional>
#include <vector>

#include "hsdp/numeric.hpp"
#include "hsdp/packing.hpp"

namespace hsdp {

/// Smallest positive r with antennas <= 2^r.
int minimal_tail(int antennas);

/// A dimension vector fits an odd modulus v when 2*radius+1 <= v.
bool is_feasible(int antennas, int tail_length,
                 const std::vector<long long>& block_dims, long long modulus);

/// A fully determined construction instance plus its derived scheme numbers.
struct DesignPoint {
  int antennas = 1;
  int tail_length = 1;
  std::vector<long long> block_dims;
  long long modulus = 3;

  long long users() const noexcept { return modulus; }            // K
  long long subpacketization() const noexcept { return modulus; }  // F
  long long block_count() const;  // b = prod(m_i)
  long long block_size() const;   // g = 2^{n+r}
  long long stars() const;        // Z = v - b*g
  long long symbols() const;      // S = b*v
  Rational memory_ratio() const;  // 1 - b*g/v
  ConstructionParams construction() const;
};

/// Closed-form sub-optimal dimension choice: the first n-1 dims equal q, the
/// last is (2^{r+2}-2L-1)q/(2^{r+1}-L), and the modulus is
/// (2^{r+2}-2L-1)(1+2q)^n.  `tail` defaults to minimal_tail(antennas).
/// Throws NonIntegralBlockDim when the division does not come out whole.
DesignPoint closed_form_point(int antennas, long long q, int n,
                              std::optional<int> tail = std::nullopt);

/// closed_form_point specialised to antennas = 2^tail.
DesignPoint power_of_two_point(int tail, long long q, int n);

struct SearchReport {
  DesignPoint best;
  /// Product of the closed-form dims targeting the same modulus, when the
  /// modulus is of closed-form shape; lets callers report the gap.
  std::optional<long long> closed_form_product;
};

/// Exhaustive maximisation of prod(m_i) over feasible dimension vectors.
/// The radius is strictly increasing in every dimension, so each coordinate
/// scans upward until infeasible.  Ties resolve to the lexicographically
/// smallest vector.  Throws NoFeasiblePoint when all-ones already fails.
SearchReport search_best(long long modulus, int antennas, int n,
                         std::optional<int> tail = std::nullopt);

}  // namespace hsdp
