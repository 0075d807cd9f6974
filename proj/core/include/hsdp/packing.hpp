#pragma once

#include <cstddef>
#include <vector>

#include "hsdp/residue.hpp"

namespace hsdp {

/// One block of a packing: distinct residues, kept sorted ascending.
using Block = std::vector<long long>;

/// A half-sum disjoint packing: b pairwise-disjoint g-subsets of Z_v such
/// that for every block element d, the half-sums (d+d')/2 formed with its
/// block mates land inside the union of all blocks fewer than `antennas`
/// times.
struct Hsdp {
  ResidueRing ring;
  std::vector<Block> blocks;
  int antennas = 1;

  std::size_t block_count() const noexcept { return blocks.size(); }
  std::size_t block_size() const noexcept {
    return blocks.empty() ? 0 : blocks.front().size();
  }
};

/// Inputs for the recursive construction: prod(m_i) blocks of size 2^{n+r}
/// inside Z_v, where n = block_dims.size() and r = tail_length.
struct ConstructionParams {
  int antennas = 1;                   // L, with 1 <= L <= 2^r
  int tail_length = 1;                // r
  std::vector<long long> block_dims;  // m_1..m_n, all >= 1
  long long modulus = 3;              // odd v
};

/// Weight sequence f(1..n+r) driving the construction.  The first n weights
/// grow fast enough that distinct dimension vectors give distinct sums; the
/// last r ("tail") weights control how often half-sums can re-enter blocks.
/// Throws DegenerateRecursion when tail_length == 1 and antennas != 2.
std::vector<long long> basis_weights(int antennas, int tail_length,
                                     const std::vector<long long>& block_dims);

/// Basis elements x_i = f(i)/m_i spanning the blocks.
std::vector<long long> basis_elements(int antennas, int tail_length,
                                      const std::vector<long long>& block_dims);

/// Largest magnitude any constructed element takes before reduction; the
/// modulus must be at least 2*radius+1 for the blocks to stay disjoint.
/// Computed as the weight sum and cross-checked against the closed form.
long long packing_radius(int antennas, int tail_length,
                         const std::vector<long long>& block_dims);

/// Closed-form evaluation of the same radius, kept as an independent route.
long long packing_radius_closed_form(int antennas, int tail_length,
                                     const std::vector<long long>& block_dims);

/// Runs the recursive construction.  Blocks come out in lexicographic order
/// of their generating dimension vector, elements sorted ascending.
/// Throws ModulusTooSmall when modulus < 2*radius+1.
Hsdp construct_hsdp(const ConstructionParams& params);

/// One verification record: the half-sum set of `element` in block `block`
/// (deduplicated), the residues of it that landed inside blocks, and the
/// count summed over blocks.
struct HalfSumEntry {
  std::size_t block = 0;
  long long element = 0;
  std::vector<long long> half_sums;
  std::vector<long long> collisions;
  long long count = 0;
};

struct HsdpVerifyReport {
  bool disjoint = false;
  std::vector<long long> duplicates;  // residues owned by more than one slot
  std::vector<HalfSumEntry> entries;  // one per (block, element)
  long long max_count = 0;
  int antennas = 1;
  bool half_sum_ok = false;  // max_count < antennas

  bool pass() const noexcept { return disjoint && half_sum_ok; }
  const HalfSumEntry* find(std::size_t block, long long element) const noexcept;
};

/// Brute-force check of both packing conditions.  Total: accepts any
/// candidate and reports violations instead of throwing.
HsdpVerifyReport verify_hsdp(const Hsdp& candidate);

}  // namespace hsdp
