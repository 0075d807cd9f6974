#include "hsdp/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hsdp/errors.hpp"

namespace hsdp {

using nlohmann::json;

namespace {

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string(what) + ": " + e.what());
  }
}

[[noreturn]] void bad(const char* what, const std::string& detail) {
  throw IoError(std::string(what) + ": " + detail);
}

}  // namespace

std::string hsdp_to_json(const Hsdp& packing) {
  json j;
  j["v"] = packing.ring.modulus();
  j["L"] = packing.antennas;
  std::vector<Block> blocks = packing.blocks;
  for (Block& block : blocks) {
    for (long long& d : block) d = packing.ring.reduce(d);
    std::sort(block.begin(), block.end());
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.front() < b.front(); });
  j["blocks"] = blocks;
  return j.dump();
}

Hsdp hsdp_from_json(const std::string& text) {
  json j = parse(text, "packing JSON");
  try {
    const long long v = j.at("v").get<long long>();
    const int antennas = j.at("L").get<int>();
    std::vector<Block> blocks = j.at("blocks").get<std::vector<Block>>();
    ResidueRing ring(v);
    for (Block& block : blocks) {
      for (long long& d : block) d = ring.reduce(d);
      std::sort(block.begin(), block.end());
    }
    return Hsdp{ring, std::move(blocks), antennas};
  } catch (const json::exception& e) {
    bad("packing JSON", e.what());
  } catch (const std::invalid_argument& e) {
    bad("packing JSON", e.what());
  }
}

std::string mapda_to_json(const Mapda& array) {
  json grid = json::array();
  for (long long f = 0; f < array.rows(); ++f) {
    json row = json::array();
    for (long long k = 0; k < array.cols(); ++k) {
      const Cell& cell = array.at(f, k);
      if (cell.is_star())
        row.push_back("*");
      else if (cell.block == 0)
        row.push_back(cell.value);
      else
        row.push_back(json::array({cell.value, cell.block}));
    }
    grid.push_back(std::move(row));
  }
  json j;
  j["L"] = array.antennas();
  j["v"] = array.rows();
  j["grid"] = std::move(grid);
  return j.dump();
}

Mapda mapda_from_json(const std::string& text, std::optional<int> antennas_override) {
  json j = parse(text, "array JSON");
  try {
    const int antennas = antennas_override.value_or(j.at("L").get<int>());
    const long long v = j.at("v").get<long long>();
    const json& grid = j.at("grid");
    if (!grid.is_array() || grid.empty()) bad("array JSON", "grid must be a non-empty array");
    const long long rows = static_cast<long long>(grid.size());
    if (rows != v) bad("array JSON", "grid row count does not match v");
    const long long cols = static_cast<long long>(grid.front().size());
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (const json& row : grid) {
      if (static_cast<long long>(row.size()) != cols)
        bad("array JSON", "ragged grid");
      for (const json& entry : row) {
        if (entry.is_string()) {
          if (entry.get<std::string>() != "*")
            bad("array JSON", "unknown cell '" + entry.get<std::string>() + "'");
          cells.push_back(Cell::star());
        } else if (entry.is_number_integer()) {
          cells.push_back(Cell::integer(entry.get<long long>()));
        } else if (entry.is_array() && entry.size() == 2) {
          cells.push_back(Cell::tagged(entry[0].get<long long>(), entry[1].get<int>()));
        } else {
          bad("array JSON", "cell must be \"*\", an integer, or [value, block]");
        }
      }
    }
    return Mapda(antennas, rows, cols, std::move(cells));
  } catch (const json::exception& e) {
    bad("array JSON", e.what());
  } catch (const std::invalid_argument& e) {
    bad("array JSON", e.what());
  }
}

namespace {

json design_point_json(const DesignPoint& point) {
  json j;
  j["L"] = point.antennas;
  j["r"] = point.tail_length;
  j["m"] = point.block_dims;
  j["v"] = point.modulus;
  j["K"] = point.users();
  j["F"] = point.subpacketization();
  j["Z"] = point.stars();
  j["S"] = point.symbols();
  j["b"] = point.block_count();
  j["g"] = point.block_size();
  j["memory_ratio"] = to_string(point.memory_ratio());
  j["sum_dof"] = point.block_size();
  return j;
}

DesignPoint design_point_from(const json& j) {
  DesignPoint point;
  point.antennas = j.at("L").get<int>();
  point.tail_length = j.at("r").get<int>();
  point.block_dims = j.at("m").get<std::vector<long long>>();
  point.modulus = j.at("v").get<long long>();
  return point;
}

}  // namespace

std::string design_point_to_json(const DesignPoint& point) {
  return design_point_json(point).dump();
}

DesignPoint design_point_from_json(const std::string& text) {
  json j = parse(text, "design point JSON");
  try {
    return design_point_from(j);
  } catch (const json::exception& e) {
    bad("design point JSON", e.what());
  }
}

std::vector<DesignPoint> design_points_from_json(const std::string& text) {
  json j = parse(text, "design point JSON");
  try {
    std::vector<DesignPoint> points;
    if (j.is_array()) {
      for (const json& item : j) points.push_back(design_point_from(item));
    } else {
      points.push_back(design_point_from(j));
    }
    return points;
  } catch (const json::exception& e) {
    bad("design point JSON", e.what());
  }
}

namespace {

json complex_json(const std::complex<double>& z) {
  return json::array({z.real(), z.imag()});
}

json symbol_json(const Symbol& s) {
  if (s.block == 0) return s.value;
  return json::array({s.value, s.block});
}

}  // namespace

std::string sim_report_to_json(const SimReport& report) {
  json j;
  j["L"] = report.antennas;
  j["K"] = report.users;
  j["F"] = report.rows;
  j["S"] = report.intervals_run;
  j["seed"] = report.seed;
  j["demands"] = report.demands;
  j["measured_sum_dof"] = to_string(report.measured_sum_dof);
  j["max_null_residual"] = report.max_null_residual;
  j["max_decode_rel_error"] = report.max_decode_rel_error;
  j["user_decoded"] = report.user_decoded;
  j["all_decoded"] = std::all_of(report.user_decoded.begin(),
                                 report.user_decoded.end(),
                                 [](bool b) { return b; });
  json intervals = json::array();
  for (const IntervalReport& interval : report.intervals) {
    json ji;
    ji["symbol"] = symbol_json(interval.symbol);
    ji["served"] = interval.packets.size();
    ji["max_null_residual"] = interval.max_null_residual;
    json packets = json::array();
    for (const PacketReport& packet : interval.packets) {
      json jp;
      jp["user"] = packet.user;
      jp["row"] = packet.row;
      jp["file"] = packet.file;
      jp["decode_rel_error"] = packet.decode_rel_error;
      jp["decoded"] = packet.decoded;
      json pre = json::array();
      for (const auto& z : packet.precoder) pre.push_back(complex_json(z));
      jp["precoder"] = std::move(pre);
      packets.push_back(std::move(jp));
    }
    ji["packets"] = std::move(packets);
    intervals.push_back(std::move(ji));
  }
  j["intervals"] = std::move(intervals);
  return j.dump();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed on " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed on " + path.string());
}

Hsdp load_hsdp(const std::filesystem::path& path) {
  return hsdp_from_json(read_text_file(path));
}

void save_hsdp(const std::filesystem::path& path, const Hsdp& packing) {
  write_text_file(path, hsdp_to_json(packing) + "\n");
}

Mapda load_mapda(const std::filesystem::path& path,
                 std::optional<int> antennas_override) {
  return mapda_from_json(read_text_file(path), antennas_override);
}

void save_mapda(const std::filesystem::path& path, const Mapda& array) {
  write_text_file(path, mapda_to_json(array) + "\n");
}

std::vector<DesignPoint> load_design_points(const std::filesystem::path& path) {
  return design_points_from_json(read_text_file(path));
}

void save_design_point(const std::filesystem::path& path, const DesignPoint& point) {
  write_text_file(path, design_point_to_json(point) + "\n");
}

void save_sim_report(const std::filesystem::path& path, const SimReport& report) {
  write_text_file(path, sim_report_to_json(report) + "\n");
}

ChannelMatrix load_channel_csv(const std::filesystem::path& path, long long users,
                               int antennas) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return ChannelMatrix::from_csv(in, users, antennas);
}

void render_mapda(std::ostream& out, const Mapda& array) {
  std::size_t width = 1;
  std::vector<std::string> tokens;
  tokens.reserve(static_cast<std::size_t>(array.rows() * array.cols()));
  for (long long f = 0; f < array.rows(); ++f)
    for (long long k = 0; k < array.cols(); ++k) {
      const Cell& cell = array.at(f, k);
      std::string token = cell.is_star() ? "*" : cell.symbol().str();
      width = std::max(width, token.size());
      tokens.push_back(std::move(token));
    }
  const std::size_t label = std::to_string(array.rows() - 1).size();
  out << std::string(label + 2, ' ');
  for (long long k = 0; k < array.cols(); ++k)
    out << std::setw(static_cast<int>(width) + 1) << k;
  out << '\n';
  for (long long f = 0; f < array.rows(); ++f) {
    out << std::setw(static_cast<int>(label)) << f << " |";
    for (long long k = 0; k < array.cols(); ++k)
      out << std::setw(static_cast<int>(width) + 1)
          << tokens[static_cast<std::size_t>(f * array.cols() + k)];
    out << '\n';
  }
}

void render_hsdp_report(std::ostream& out, const HsdpVerifyReport& report) {
  out << "blocks disjoint: " << (report.disjoint ? "yes" : "NO") << '\n';
  if (!report.duplicates.empty()) {
    out << "  repeated residues:";
    for (std::size_t i = 0; i < report.duplicates.size() && i < 16; ++i)
      out << ' ' << report.duplicates[i];
    out << '\n';
  }
  out << "max half-sum hits: " << report.max_count << " (need < "
      << report.antennas << "): " << (report.half_sum_ok ? "ok" : "VIOLATED")
      << '\n';
  if (!report.half_sum_ok) {
    int shown = 0;
    for (const HalfSumEntry& e : report.entries) {
      if (e.count < report.antennas) continue;
      out << "  block " << e.block + 1 << ", element " << e.element << ": "
          << e.count << " hits at";
      for (long long c : e.collisions) out << ' ' << c;
      out << '\n';
      if (++shown == 8) break;
    }
  }
  out << "verdict: " << (report.pass() ? "PASS" : "FAIL") << '\n';
}

void render_mapda_report(std::ostream& out, const MapdaVerifyReport& report) {
  out << "C1 uniform stars per column: " << (report.stars_uniform ? "ok" : "FAIL")
      << " (Z = " << report.stars_per_column << ")\n";
  out << "C2 alphabet coverage: " << (report.alphabet_covered ? "ok" : "FAIL")
      << " (" << report.distinct_symbols << " of " << report.symbol_count
      << " symbols present)\n";
  out << "C3 once per column: " << (report.once_per_column ? "ok" : "FAIL") << '\n';
  out << "C4 row load <= L: " << (report.row_load_bounded ? "ok" : "FAIL") << '\n';
  for (std::size_t i = 0; i < report.row_load_violations.size() && i < 8; ++i) {
    const auto& violation = report.row_load_violations[i];
    out << "  symbol " << violation.symbol.str() << " row " << violation.row
        << " carries " << violation.load << " entries\n";
  }
  for (const std::string& note : report.notes) out << "  " << note << '\n';
  out << "parameters (L,K,F,Z,S) = (" << report.antennas << ',' << report.cols
      << ',' << report.rows << ',' << report.stars_per_column << ','
      << report.symbol_count << ")\n";
  out << "verdict: " << (report.pass() ? "PASS" : "FAIL") << '\n';
}

}  // namespace hsdp
