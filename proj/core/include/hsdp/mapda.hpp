#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsdp/numeric.hpp"
#include "hsdp/packing.hpp"

namespace hsdp {

/// Symbol identity: the value plus a block tag.  Arrays built from a packing
/// tag every entry with its block index (>= 1); plain integer arrays use
/// block == 0.
struct Symbol {
  long long value = 0;
  int block = 0;

  auto operator<=>(const Symbol&) const = default;
  std::string str() const;
};

/// Dense array cell: either a star or a symbol.
struct Cell {
  static constexpr std::int32_t kStarTag = -1;

  std::int32_t value = 0;
  std::int32_t block = kStarTag;

  static Cell star() noexcept { return {}; }
  static Cell integer(long long v) noexcept {
    return Cell{static_cast<std::int32_t>(v), 0};
  }
  static Cell tagged(long long v, int block) noexcept {
    return Cell{static_cast<std::int32_t>(v), static_cast<std::int32_t>(block)};
  }

  bool is_star() const noexcept { return block == kStarTag; }
  Symbol symbol() const noexcept { return Symbol{value, block}; }

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Placement-delivery array of stars and symbols; rows = subpacketization F,
/// cols = users K.  `declared_symbols` is the alphabet size S used by the
/// occurrence condition; kInferSymbols means "whatever is present".
class Mapda {
 public:
  static constexpr long long kInferSymbols = -1;

  Mapda(int antennas, long long rows, long long cols, std::vector<Cell> grid,
        long long declared_symbols = kInferSymbols);

  int antennas() const noexcept { return antennas_; }
  long long rows() const noexcept { return rows_; }
  long long cols() const noexcept { return cols_; }
  long long symbol_count() const noexcept { return declared_symbols_; }

  const Cell& at(long long f, long long k) const;
  void set(long long f, long long k, Cell cell);
  void set_antennas(int antennas);

  long long stars_in_column(long long k) const;
  long long distinct_symbols() const;
  /// All symbols present, sorted ascending by (value, block).
  std::vector<Symbol> symbols() const;
  /// Cells holding `symbol`, sorted by (row, column).
  std::vector<std::pair<long long, long long>> cells_of(const Symbol& symbol) const;

 private:
  int antennas_;
  long long rows_;
  long long cols_;
  long long declared_symbols_;
  std::vector<Cell> grid_;
};

/// Cyclic lift of a packing: a v x v array with P(f,k) = (f+k mod v, i) when
/// k-f mod v lies in block i, star otherwise.  Parameters come out as
/// K = F = v, Z = v - b*g, S = b*v.
Mapda build_mapda(const Hsdp& packing);

struct MapdaVerifyReport {
  // The four defining conditions, in order: uniform stars per column (C1),
  // full alphabet coverage (C2), once-per-column (C3), bounded row load in
  // every symbol's induced subarray (C4).
  bool stars_uniform = false;
  bool alphabet_covered = false;
  bool once_per_column = false;
  bool row_load_bounded = false;

  int antennas = 0;
  long long rows = 0;
  long long cols = 0;
  long long stars_per_column = -1;  // Z (column 0's count when not uniform)
  long long symbol_count = 0;       // declared S
  long long distinct_symbols = 0;

  struct RowLoadViolation {
    Symbol symbol;
    long long row = 0;   // row id in the parent array
    long long load = 0;  // non-star entries in that subarray row
  };
  std::vector<RowLoadViolation> row_load_violations;
  std::vector<std::string> notes;  // details for C1-C3 failures

  bool pass() const noexcept {
    return stars_uniform && alphabet_covered && once_per_column && row_load_bounded;
  }
};

/// Checks the four conditions by direct enumeration.  Total.
MapdaVerifyReport verify_mapda(const Mapda& array);

/// Exact scheme numbers of a verified array.
struct SchemeParams {
  int antennas = 0;              // L
  long long users = 0;           // K
  long long subpacketization = 0;  // F
  long long stars = 0;           // Z
  long long symbols = 0;         // S
  Rational memory_ratio;         // Z/F
  Rational sum_dof;              // K(F-Z)/S
};
SchemeParams scheme_params(const Mapda& array);

/// Removes one user column (default: the last) and recounts the alphabet.
Mapda drop_virtual_user(const Mapda& array,
                        std::optional<long long> column = std::nullopt);

/// Subarray induced by the rows and columns containing `symbol`.
struct Subarray {
  std::vector<long long> row_ids;
  std::vector<long long> col_ids;
  std::vector<Cell> cells;  // row-major, row_ids.size() x col_ids.size()

  const Cell& at(std::size_t r, std::size_t c) const {
    return cells[r * col_ids.size() + c];
  }
};
Subarray induced_subarray(const Mapda& array, const Symbol& symbol);

}  // namespace hsdp
