#include "hsdp/delivery.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hsdp/errors.hpp"

namespace hsdp {

namespace {

using Complex = std::complex<double>;

constexpr double kPivotTolerance = 1e-9;  // relative, rank decisions

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Unit-magnitude payload for (file, row), a pure function of the seed.
Complex payload(std::uint64_t seed, long long file, long long row) {
  std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(file)));
  h = splitmix64(h ^ splitmix64(static_cast<std::uint64_t>(row) + 0x51ed270b0a343cbdULL));
  const double angle = 2.0 * M_PI * (static_cast<double>(h >> 11) * 0x1.0p-53);
  return Complex(std::cos(angle), std::sin(angle));
}

double row_norm(std::span<const Complex> row) {
  double s = 0;
  for (const Complex& x : row) s += std::norm(x);
  return std::sqrt(s);
}

/// Cheap screen for clearly unusable channels: zero rows, or (for L >= 2)
/// two proportional rows.  Deeper degeneracies surface as RankDeficiency
/// during precoding.
bool channel_looks_degenerate(long long users, int antennas,
                              const std::vector<Complex>& entries) {
  for (long long k = 0; k < users; ++k) {
    double s = 0;
    for (int i = 0; i < antennas; ++i)
      s += std::norm(entries[static_cast<std::size_t>(k) * antennas + i]);
    if (s < 1e-24) return true;
  }
  if (antennas < 2) return false;
  for (long long a = 0; a < users; ++a) {
    const Complex* ra = &entries[static_cast<std::size_t>(a) * antennas];
    for (long long b = a + 1; b < users; ++b) {
      const Complex* rb = &entries[static_cast<std::size_t>(b) * antennas];
      // rows proportional iff all 2x2 minors vanish
      double max_minor = 0, scale = 0;
      for (int i = 0; i < antennas; ++i)
        for (int j = i + 1; j < antennas; ++j) {
          max_minor = std::max(max_minor, std::abs(ra[i] * rb[j] - ra[j] * rb[i]));
          scale = std::max({scale, std::abs(ra[i]), std::abs(rb[i])});
        }
      if (max_minor < 1e-12 * std::max(1.0, scale * scale)) return true;
    }
  }
  return false;
}

}  // namespace

ChannelMatrix::ChannelMatrix(long long users, int antennas,
                             std::vector<Complex> entries)
    : users_(users), antennas_(antennas), entries_(std::move(entries)) {
  if (users < 1 || antennas < 1)
    throw std::invalid_argument("channel needs at least one user and antenna");
  if (entries_.size() != static_cast<std::size_t>(users) * antennas)
    throw std::invalid_argument("channel entry count does not match dimensions");
}

ChannelMatrix ChannelMatrix::random(long long users, int antennas,
                                    std::uint64_t seed) {
  std::mt19937_64 engine(splitmix64(seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> entries(static_cast<std::size_t>(users) * antennas);
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (Complex& e : entries) e = Complex(normal(engine), normal(engine));
    if (!channel_looks_degenerate(users, antennas, entries))
      return ChannelMatrix(users, antennas, std::move(entries));
  }
  throw std::runtime_error("could not draw a non-degenerate channel");
}

ChannelMatrix ChannelMatrix::from_csv(std::istream& in, long long users,
                                      int antennas) {
  std::vector<Complex> entries;
  entries.reserve(static_cast<std::size_t>(users) * antennas);
  std::string line;
  long long rows = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::vector<double> values;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      try {
        values.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw IoError("channel CSV: cannot parse '" + field + "'");
      }
    }
    if (values.size() == static_cast<std::size_t>(antennas)) {
      for (double x : values) entries.emplace_back(x, 0.0);
    } else if (values.size() == 2 * static_cast<std::size_t>(antennas)) {
      for (std::size_t i = 0; i < values.size(); i += 2)
        entries.emplace_back(values[i], values[i + 1]);
    } else {
      throw IoError("channel CSV row " + std::to_string(rows) + " has " +
                    std::to_string(values.size()) + " fields, expected " +
                    std::to_string(antennas) + " or " +
                    std::to_string(2 * antennas));
    }
    ++rows;
  }
  if (rows != users)
    throw IoError("channel CSV has " + std::to_string(rows) + " rows, expected " +
                  std::to_string(users));
  if (channel_looks_degenerate(users, antennas, entries))
    throw IoError("channel CSV is rank-degenerate");
  return ChannelMatrix(users, antennas, std::move(entries));
}

Complex ChannelMatrix::at(long long user, int antenna) const {
  return entries_[static_cast<std::size_t>(user) * antennas_ + antenna];
}

std::span<const Complex> ChannelMatrix::row(long long user) const {
  return {entries_.data() + static_cast<std::size_t>(user) * antennas_,
          static_cast<std::size_t>(antennas_)};
}

PlacementMap derive_placement(const Mapda& array) {
  PlacementMap placement(static_cast<std::size_t>(array.cols()));
  for (long long k = 0; k < array.cols(); ++k)
    for (long long f = 0; f < array.rows(); ++f)
      if (array.at(f, k).is_star())
        placement[static_cast<std::size_t>(k)].push_back(f);
  return placement;
}

std::vector<Complex> zf_precoder(
    const std::vector<std::vector<Complex>>& null_rows, int antennas) {
  if (antennas < 1) throw std::invalid_argument("antenna count must be positive");
  const int L = antennas;
  std::vector<Complex> x(static_cast<std::size_t>(L), Complex(0, 0));
  if (null_rows.empty()) {
    x[0] = 1.0;
    return x;
  }
  for (const auto& row : null_rows)
    if (row.size() != static_cast<std::size_t>(L))
      throw std::invalid_argument("null row length does not match antennas");

  // Gauss-Jordan with partial pivoting; pivots below a relative threshold
  // count as zero so near-dependent rows do not fake full rank.
  std::vector<std::vector<Complex>> a = null_rows;
  const int t = static_cast<int>(a.size());
  double scale = 0;
  for (const auto& row : a)
    for (const Complex& e : row) scale = std::max(scale, std::abs(e));
  const double threshold = kPivotTolerance * std::max(scale, 1e-300);

  std::vector<std::pair<int, int>> pivots;  // (row, col)
  int next_row = 0;
  for (int col = 0; col < L && next_row < t; ++col) {
    int pivot = -1;
    double best = threshold;
    for (int i = next_row; i < t; ++i) {
      double mag = std::abs(a[i][col]);
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (pivot < 0) continue;  // free column
    std::swap(a[next_row], a[pivot]);
    const Complex inv = 1.0 / a[next_row][col];
    for (int j = col; j < L; ++j) a[next_row][j] *= inv;
    for (int i = 0; i < t; ++i) {
      if (i == next_row) continue;
      const Complex factor = a[i][col];
      if (std::abs(factor) == 0.0) continue;
      for (int j = col; j < L; ++j) a[i][j] -= factor * a[next_row][j];
    }
    pivots.emplace_back(next_row, col);
    ++next_row;
  }
  if (static_cast<int>(pivots.size()) >= L)
    throw RankDeficiency("interference rows span all " + std::to_string(L) +
                         " antenna dimensions, nothing left to transmit in");

  int free_col = 0;
  {
    std::vector<bool> is_pivot(static_cast<std::size_t>(L), false);
    for (auto& [row, col] : pivots) is_pivot[static_cast<std::size_t>(col)] = true;
    while (is_pivot[static_cast<std::size_t>(free_col)]) ++free_col;
  }
  x[static_cast<std::size_t>(free_col)] = 1.0;
  for (auto& [row, col] : pivots)
    x[static_cast<std::size_t>(col)] = -a[row][free_col];

  // Deterministic gauge: biggest component real positive, unit length.
  std::size_t imax = 0;
  for (std::size_t i = 1; i < x.size(); ++i)
    if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
  const Complex rot = std::conj(x[imax]) / std::abs(x[imax]);
  double norm = 0;
  for (Complex& e : x) {
    e *= rot;
    norm += std::norm(e);
  }
  norm = std::sqrt(norm);
  for (Complex& e : x) e /= norm;
  return x;
}

SimReport simulate(const Mapda& array, const ChannelMatrix& channel,
                   std::vector<long long> demands, const SimOptions& options) {
  const long long K = array.cols();
  const long long F = array.rows();
  const int L = array.antennas();
  if (channel.users() != K)
    throw std::invalid_argument("channel has " + std::to_string(channel.users()) +
                                " users, array has " + std::to_string(K));
  if (channel.antennas() != L)
    throw std::invalid_argument("channel antenna count does not match array");
  if (demands.empty()) {
    demands.resize(static_cast<std::size_t>(K));
    for (long long k = 0; k < K; ++k) demands[static_cast<std::size_t>(k)] = k + 1;
  }
  if (demands.size() != static_cast<std::size_t>(K))
    throw std::invalid_argument("need one demand per user");
  for (long long d : demands)
    if (d < 1) throw std::invalid_argument("file ids are 1-based");

  SimReport report;
  report.antennas = L;
  report.users = K;
  report.rows = F;
  report.seed = options.seed;
  report.demands = demands;
  report.user_decoded.assign(static_cast<std::size_t>(K), true);

  long long served_total = 0;
  const std::vector<Symbol> alphabet = array.symbols();
  report.intervals_run = static_cast<long long>(alphabet.size());
  report.intervals.reserve(alphabet.size());

  for (const Symbol& symbol : alphabet) {
    IntervalReport interval;
    interval.symbol = symbol;

    // One packet per occurrence, ordered by serving column.
    auto occ = array.cells_of(symbol);
    std::sort(occ.begin(), occ.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    const std::size_t count = occ.size();
    std::vector<Complex> payloads(count);
    std::vector<std::vector<Complex>> precoders(count);
    std::vector<long long> served_users(count);

    for (std::size_t j = 0; j < count; ++j) {
      const auto [f, k] = occ[j];
      served_users[j] = k;
      PacketReport packet;
      packet.user = k;
      packet.row = f;
      packet.file = demands[static_cast<std::size_t>(k)];
      payloads[j] = payload(options.seed, packet.file, f);

      std::vector<std::vector<Complex>> null_rows;
      for (std::size_t other = 0; other < count; ++other) {
        const long long u = occ[other].second;
        if (u == k) continue;
        if (!array.at(f, u).is_star()) {
          auto row = channel.row(u);
          null_rows.emplace_back(row.begin(), row.end());
        }
      }
      try {
        precoders[j] = zf_precoder(null_rows, L);
      } catch (const RankDeficiency& e) {
        throw RankDeficiency("interval " + symbol.str() + ", packet for user " +
                             std::to_string(k) + ": " + e.what());
      }
      packet.precoder = precoders[j];
      interval.packets.push_back(std::move(packet));
    }

    // Received scalar at each served user, then cache cancellation + decode.
    for (std::size_t j = 0; j < count; ++j) {
      const long long u = served_users[j];
      const long long own_row = occ[j].first;
      auto hu = channel.row(u);
      const double hnorm = row_norm(hu);

      Complex received(0, 0);
      Complex cached(0, 0);
      Complex own_coeff(0, 0);
      for (std::size_t p = 0; p < count; ++p) {
        Complex coeff(0, 0);
        for (int i = 0; i < L; ++i) coeff += hu[static_cast<std::size_t>(i)] * precoders[p][static_cast<std::size_t>(i)];
        received += coeff * payloads[p];
        if (p == j) {
          own_coeff = coeff;
          continue;
        }
        const long long fp = occ[p].first;
        if (array.at(fp, u).is_star()) {
          cached += coeff * payloads[p];  // user holds packet fp of every file
        } else {
          // zero-forced term; record how much survives
          interval.max_null_residual =
              std::max(interval.max_null_residual, std::abs(coeff) / hnorm);
        }
      }
      if (std::abs(own_coeff) < 1e-12 * hnorm)
        throw DecodeFailure("interval " + symbol.str() + ": signal for user " +
                            std::to_string(u) + " vanished at row " +
                            std::to_string(own_row));
      const Complex estimate = (received - cached) / own_coeff;
      const double rel_error = std::abs(estimate - payloads[j]);  // |payload| = 1
      interval.packets[j].decode_rel_error = rel_error;
      interval.packets[j].decoded = rel_error <= options.decode_tolerance;
      report.max_decode_rel_error =
          std::max(report.max_decode_rel_error, rel_error);
      if (!interval.packets[j].decoded) {
        report.user_decoded[static_cast<std::size_t>(u)] = false;
        throw DecodeFailure("interval " + symbol.str() + ": user " +
                            std::to_string(u) + " payload error " +
                            std::to_string(rel_error) + " exceeds tolerance");
      }
    }
    report.max_null_residual =
        std::max(report.max_null_residual, interval.max_null_residual);
    served_total += static_cast<long long>(count);
    report.intervals.push_back(std::move(interval));
  }

  if (report.intervals_run == 0)
    throw std::invalid_argument("array has an empty alphabet, nothing to send");
  report.measured_sum_dof = Rational(served_total, report.intervals_run);
  return report;
}

}  // namespace hsdp
