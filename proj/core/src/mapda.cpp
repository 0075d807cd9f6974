#include "hsdp/mapda.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "hsdp/errors.hpp"

namespace hsdp {

std::string Symbol::str() const {
  if (block == 0) return std::to_string(value);
  return "(" + std::to_string(value) + "," + std::to_string(block) + ")";
}

Mapda::Mapda(int antennas, long long rows, long long cols, std::vector<Cell> grid,
             long long declared_symbols)
    : antennas_(antennas),
      rows_(rows),
      cols_(cols),
      declared_symbols_(declared_symbols),
      grid_(std::move(grid)) {
  if (antennas < 1) throw std::invalid_argument("antenna count must be positive");
  if (rows < 1 || cols < 1) throw std::invalid_argument("array must be non-empty");
  if (rows > (1LL << 31) || cols > (1LL << 31))
    throw std::invalid_argument("array dimensions out of range");
  if (grid_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    throw std::invalid_argument("grid size does not match dimensions");
  if (declared_symbols_ == kInferSymbols) declared_symbols_ = distinct_symbols();
  if (declared_symbols_ < 0)
    throw std::invalid_argument("alphabet size cannot be negative");
}

const Cell& Mapda::at(long long f, long long k) const {
  return grid_[static_cast<std::size_t>(f) * cols_ + k];
}

void Mapda::set(long long f, long long k, Cell cell) {
  grid_[static_cast<std::size_t>(f) * cols_ + k] = cell;
}

void Mapda::set_antennas(int antennas) {
  if (antennas < 1) throw std::invalid_argument("antenna count must be positive");
  antennas_ = antennas;
}

long long Mapda::stars_in_column(long long k) const {
  long long count = 0;
  for (long long f = 0; f < rows_; ++f)
    if (at(f, k).is_star()) ++count;
  return count;
}

long long Mapda::distinct_symbols() const {
  std::set<Symbol> seen;
  for (const Cell& c : grid_)
    if (!c.is_star()) seen.insert(c.symbol());
  return static_cast<long long>(seen.size());
}

std::vector<Symbol> Mapda::symbols() const {
  std::set<Symbol> seen;
  for (const Cell& c : grid_)
    if (!c.is_star()) seen.insert(c.symbol());
  return {seen.begin(), seen.end()};
}

std::vector<std::pair<long long, long long>> Mapda::cells_of(
    const Symbol& symbol) const {
  std::vector<std::pair<long long, long long>> cells;
  for (long long f = 0; f < rows_; ++f)
    for (long long k = 0; k < cols_; ++k) {
      const Cell& c = at(f, k);
      if (!c.is_star() && c.symbol() == symbol) cells.emplace_back(f, k);
    }
  return cells;
}

Mapda build_mapda(const Hsdp& packing) {
  const long long v = packing.ring.modulus();
  // difference -> 1-based block index, 0 when no block owns it
  std::vector<int> owner(static_cast<std::size_t>(v), 0);
  for (std::size_t i = 0; i < packing.blocks.size(); ++i)
    for (long long d : packing.blocks[i])
      owner[static_cast<std::size_t>(packing.ring.reduce(d))] =
          static_cast<int>(i) + 1;

  std::vector<Cell> grid(static_cast<std::size_t>(v) * static_cast<std::size_t>(v),
                         Cell::star());
  for (long long f = 0; f < v; ++f) {
    // k - f == d  <=>  k == f + d: walk each selected orbit directly
    for (long long d = 0; d < v; ++d) {
      const int block = owner[static_cast<std::size_t>(d)];
      if (block == 0) continue;
      const long long k = (f + d) % v;
      grid[static_cast<std::size_t>(f) * v + k] =
          Cell::tagged((f + k) % v, block);
    }
  }
  const long long declared =
      static_cast<long long>(packing.block_count()) * v;
  return Mapda(packing.antennas, v, v, std::move(grid), declared);
}

namespace {

std::uint64_t symbol_key(const Cell& cell) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cell.value)) << 32) |
         static_cast<std::uint32_t>(cell.block);
}

}  // namespace

MapdaVerifyReport verify_mapda(const Mapda& array) {
  MapdaVerifyReport report;
  report.antennas = array.antennas();
  report.rows = array.rows();
  report.cols = array.cols();
  report.symbol_count = array.symbol_count();

  const long long F = array.rows();
  const long long K = array.cols();
  const int L = array.antennas();

  // stars per column must be uniform
  report.stars_per_column = array.stars_in_column(0);
  report.stars_uniform = true;
  for (long long k = 1; k < K; ++k) {
    long long z = array.stars_in_column(k);
    if (z != report.stars_per_column) {
      report.stars_uniform = false;
      report.notes.push_back("column " + std::to_string(k) + " has " +
                             std::to_string(z) + " stars, column 0 has " +
                             std::to_string(report.stars_per_column));
      break;
    }
  }

  // flat per-symbol cell index (the arrays get large; avoid node containers)
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  std::vector<Symbol> symbols;
  std::vector<std::uint32_t> counts;
  for (long long f = 0; f < F; ++f)
    for (long long k = 0; k < K; ++k) {
      const Cell& c = array.at(f, k);
      if (c.is_star()) continue;
      auto [it, inserted] =
          ids.try_emplace(symbol_key(c), static_cast<std::uint32_t>(symbols.size()));
      if (inserted) {
        symbols.push_back(c.symbol());
        counts.push_back(0);
      }
      ++counts[it->second];
    }
  const std::size_t distinct = symbols.size();
  std::vector<std::size_t> offsets(distinct + 1, 0);
  for (std::size_t i = 0; i < distinct; ++i) offsets[i + 1] = offsets[i] + counts[i];
  std::vector<std::pair<std::int32_t, std::int32_t>> cells(offsets.back());
  {
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (long long f = 0; f < F; ++f)
      for (long long k = 0; k < K; ++k) {
        const Cell& c = array.at(f, k);
        if (c.is_star()) continue;
        cells[cursor[ids.find(symbol_key(c))->second]++] = {
            static_cast<std::int32_t>(f), static_cast<std::int32_t>(k)};
      }
  }

  report.distinct_symbols = static_cast<long long>(distinct);
  report.alphabet_covered = report.distinct_symbols == report.symbol_count;
  if (!report.alphabet_covered)
    report.notes.push_back(std::to_string(report.distinct_symbols) +
                           " distinct symbols present, alphabet declares " +
                           std::to_string(report.symbol_count));

  report.once_per_column = true;
  report.row_load_bounded = true;
  std::vector<std::int32_t> sub_rows, sub_cols;
  for (std::size_t s = 0; s < distinct; ++s) {
    sub_rows.clear();
    sub_cols.clear();
    for (std::size_t i = offsets[s]; i < offsets[s + 1]; ++i) {
      sub_rows.push_back(cells[i].first);
      sub_cols.push_back(cells[i].second);
    }
    std::sort(sub_cols.begin(), sub_cols.end());
    if (std::adjacent_find(sub_cols.begin(), sub_cols.end()) != sub_cols.end() &&
        report.once_per_column) {
      report.once_per_column = false;
      report.notes.push_back("symbol " + symbols[s].str() +
                             " repeats within a column");
    }
    sub_cols.erase(std::unique(sub_cols.begin(), sub_cols.end()), sub_cols.end());
    std::sort(sub_rows.begin(), sub_rows.end());
    sub_rows.erase(std::unique(sub_rows.begin(), sub_rows.end()), sub_rows.end());
    for (std::int32_t f : sub_rows) {
      long long load = 0;
      for (std::int32_t k : sub_cols)
        if (!array.at(f, k).is_star()) ++load;
      if (load > L) {
        report.row_load_bounded = false;
        report.row_load_violations.push_back({symbols[s], f, load});
      }
    }
  }
  return report;
}

SchemeParams scheme_params(const Mapda& array) {
  SchemeParams params;
  params.antennas = array.antennas();
  params.users = array.cols();
  params.subpacketization = array.rows();
  params.stars = array.stars_in_column(0);
  params.symbols = array.symbol_count();
  if (params.symbols == 0)
    throw std::invalid_argument("array has an empty alphabet, no delivery to rate");
  params.memory_ratio = Rational(params.stars, params.subpacketization);
  params.sum_dof = Rational(params.users * (params.subpacketization - params.stars),
                            params.symbols);
  return params;
}

Mapda drop_virtual_user(const Mapda& array, std::optional<long long> column) {
  const long long K = array.cols();
  if (K < 2)
    throw std::invalid_argument("cannot drop a column from a single-user array");
  const long long drop = column.value_or(K - 1);
  if (drop < 0 || drop >= K)
    throw std::invalid_argument("virtual-user column " + std::to_string(drop) +
                                " out of range");
  std::vector<Cell> grid;
  grid.reserve(static_cast<std::size_t>(array.rows()) * (K - 1));
  for (long long f = 0; f < array.rows(); ++f)
    for (long long k = 0; k < K; ++k)
      if (k != drop) grid.push_back(array.at(f, k));
  return Mapda(array.antennas(), array.rows(), K - 1, std::move(grid),
               Mapda::kInferSymbols);
}

Subarray induced_subarray(const Mapda& array, const Symbol& symbol) {
  std::set<long long> sub_rows, sub_cols;
  for (const auto& [f, k] : array.cells_of(symbol)) {
    sub_rows.insert(f);
    sub_cols.insert(k);
  }
  Subarray sub;
  sub.row_ids.assign(sub_rows.begin(), sub_rows.end());
  sub.col_ids.assign(sub_cols.begin(), sub_cols.end());
  sub.cells.reserve(sub.row_ids.size() * sub.col_ids.size());
  for (long long f : sub.row_ids)
    for (long long k : sub.col_ids) sub.cells.push_back(array.at(f, k));
  return sub;
}

}  // namespace hsdp
