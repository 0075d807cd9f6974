#pragma once

#include <cmath>
#include <complex>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hsdp/mapda.hpp"
#include "hsdp/packing.hpp"

namespace hsdp::test {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(HSDP_FIXTURE_DIR) / name;
}

/// Definition-level packing check, no membership index: for every block pair
/// scan elements directly, and count half-sum hits by scanning all blocks.
/// Kept deliberately naive as an independent oracle for verify_hsdp.
struct NaiveHsdpResult {
  bool disjoint = true;
  long long max_count = 0;
  bool pass(int antennas) const { return disjoint && max_count < antennas; }
};

inline NaiveHsdpResult naive_verify_hsdp(const Hsdp& candidate) {
  NaiveHsdpResult result;
  const ResidueRing& ring = candidate.ring;
  const auto& blocks = candidate.blocks;
  for (std::size_t a = 0; a < blocks.size(); ++a)
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (long long x : blocks[a])
        for (long long y : blocks[b]) {
          if (a == b && x == y) continue;
          if (ring.reduce(x) == ring.reduce(y)) result.disjoint = false;
        }
  for (const Block& block : blocks) {
    for (long long d : block) {
      std::set<long long> half_sums;
      for (long long dp : block)
        if (dp != d) half_sums.insert(ring.half(d, dp));
      long long count = 0;
      for (long long s : half_sums)
        for (const Block& other : blocks)
          for (long long e : other)
            if (ring.reduce(e) == s) ++count;
      result.max_count = std::max(result.max_count, count);
    }
  }
  return result;
}

/// Definition-level array check, independent of verify_mapda.
struct NaiveMapdaResult {
  bool c1 = true, c2 = true, c3 = true, c4 = true;
  bool pass() const { return c1 && c2 && c3 && c4; }
};

inline NaiveMapdaResult naive_verify_mapda(const Mapda& array) {
  NaiveMapdaResult result;
  const long long F = array.rows(), K = array.cols();
  long long z0 = 0;
  for (long long f = 0; f < F; ++f)
    if (array.at(f, 0).is_star()) ++z0;
  for (long long k = 0; k < K; ++k) {
    long long z = 0;
    for (long long f = 0; f < F; ++f)
      if (array.at(f, k).is_star()) ++z;
    if (z != z0) result.c1 = false;
  }
  std::map<Symbol, std::vector<std::pair<long long, long long>>> cells;
  for (long long f = 0; f < F; ++f)
    for (long long k = 0; k < K; ++k)
      if (!array.at(f, k).is_star()) cells[array.at(f, k).symbol()].emplace_back(f, k);
  result.c2 = static_cast<long long>(cells.size()) == array.symbol_count();
  for (const auto& [symbol, occ] : cells) {
    std::set<long long> seen;
    for (const auto& [f, k] : occ)
      if (!seen.insert(k).second) result.c3 = false;
    std::set<long long> rows, columns;
    for (const auto& [f, k] : occ) {
      rows.insert(f);
      columns.insert(k);
    }
    for (long long f : rows) {
      long long load = 0;
      for (long long k : columns)
        if (!array.at(f, k).is_star()) ++load;
      if (load > array.antennas()) result.c4 = false;
    }
  }
  return result;
}

/// True when a and b are complex-scalar multiples of each other.
inline bool parallel(const std::vector<std::complex<double>>& a,
                     const std::vector<std::complex<double>>& b,
                     double tolerance = 1e-9) {
  if (a.size() != b.size()) return false;
  // all 2x2 minors vanish
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      worst = std::max(worst, std::abs(a[i] * b[j] - a[j] * b[i]));
  return worst < tolerance;
}

inline Hsdp example2_packing() {
  return Hsdp{ResidueRing(11), {{1, 2, 4, 10}, {5, 6, 8, 9}}, 2};
}

}  // namespace hsdp::test
