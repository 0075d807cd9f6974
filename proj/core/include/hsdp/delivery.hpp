#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hsdp/mapda.hpp"
#include "hsdp/numeric.hpp"

namespace hsdp {

inline constexpr std::uint64_t kDefaultSeed = 20240915;

/// K x L complex channel, row k = user k's coefficients.
class ChannelMatrix {
 public:
  /// Entries with independent standard-normal real/imaginary parts from a
  /// seeded mt19937_64.  Redraws (deterministically) while the cheap
  /// degeneracy screen fails; the precoder still guards the general case.
  static ChannelMatrix random(long long users, int antennas, std::uint64_t seed);

  /// CSV loader: each line is one user row, either L real values or L
  /// re,im pairs (2L values).  Throws IoError on shape or parse problems.
  static ChannelMatrix from_csv(std::istream& in, long long users, int antennas);

  long long users() const noexcept { return users_; }
  int antennas() const noexcept { return antennas_; }
  std::complex<double> at(long long user, int antenna) const;
  std::span<const std::complex<double>> row(long long user) const;

 private:
  ChannelMatrix(long long users, int antennas,
                std::vector<std::complex<double>> entries);

  long long users_;
  int antennas_;
  std::vector<std::complex<double>> entries_;  // row-major
};

/// Per user, the sorted packet rows it caches (the starred rows of its
/// column).
using PlacementMap = std::vector<std::vector<long long>>;
PlacementMap derive_placement(const Mapda& array);

/// A nonzero unit vector orthogonal to all given rows, deterministic given
/// the input order: echelon reduction with partial pivoting (relative pivot
/// tolerance 1e-9), free variable set to 1, then rotated so the
/// largest-magnitude component is real positive.  With no rows, the first
/// standard basis vector.  Throws RankDeficiency when the rows already span
/// the whole space.
std::vector<std::complex<double>> zf_precoder(
    const std::vector<std::vector<std::complex<double>>>& null_rows,
    int antennas);

struct SimOptions {
  std::uint64_t seed = kDefaultSeed;  // drives the packet payload phases
  double decode_tolerance = 1e-6;     // max relative payload error
};

struct PacketReport {
  long long user = 0;  // column index
  long long row = 0;   // packet row
  long long file = 0;  // demanded file (1-based)
  std::vector<std::complex<double>> precoder;
  double decode_rel_error = 0.0;
  bool decoded = false;
};

struct IntervalReport {
  Symbol symbol;
  std::vector<PacketReport> packets;  // one per served user, column order
  double max_null_residual = 0.0;
};

struct SimReport {
  int antennas = 0;
  long long users = 0;
  long long rows = 0;
  long long intervals_run = 0;  // number of distinct symbols served
  std::uint64_t seed = 0;
  std::vector<long long> demands;       // 1-based file ids, one per user
  std::vector<IntervalReport> intervals;
  std::vector<bool> user_decoded;       // per user, all its packets decoded
  Rational measured_sum_dof;            // (sum of served counts) / intervals
  double max_null_residual = 0.0;
  double max_decode_rel_error = 0.0;
};

/// Noiseless zero-forcing delivery over every symbol of the array.  One
/// interval per symbol, in ascending symbol order; within an interval each
/// cell is one packet, precoded to vanish at the served users that neither
/// requested nor cached it.  Payloads are unit-magnitude complex scalars,
/// one per (file, row) pair, derived from the seed.  Demands default to
/// user k requesting file k+1.  Expects a verified array; on bad input
/// throws RankDeficiency or DecodeFailure naming the interval.
SimReport simulate(const Mapda& array, const ChannelMatrix& channel,
                   std::vector<long long> demands = {},
                   const SimOptions& options = {});

}  // namespace hsdp
