#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hsdp/delivery.hpp"
#include "hsdp/design.hpp"
#include "hsdp/mapda.hpp"
#include "hsdp/packing.hpp"

namespace hsdp {

// Packing JSON: {"v": int, "L": int, "blocks": [[int,...],...]}; canonical
// form sorts blocks by minimum element, elements ascending.
std::string hsdp_to_json(const Hsdp& packing);
Hsdp hsdp_from_json(const std::string& text);

// Array JSON: {"L": int, "v": int, "grid": [[entry,...],...]} where an entry
// is "*", a bare integer label, or a [value, block] pair.  The alphabet size
// is recounted on load.
std::string mapda_to_json(const Mapda& array);
Mapda mapda_from_json(const std::string& text,
                      std::optional<int> antennas_override = std::nullopt);

// Design point JSON: {"L","r","m","v"} plus derived fields on output; the
// loader needs only the four inputs.  design_points_from_json accepts a
// single object or an array.
std::string design_point_to_json(const DesignPoint& point);
DesignPoint design_point_from_json(const std::string& text);
std::vector<DesignPoint> design_points_from_json(const std::string& text);

std::string sim_report_to_json(const SimReport& report);

// File helpers; throw IoError on filesystem problems or malformed content.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Hsdp load_hsdp(const std::filesystem::path& path);
void save_hsdp(const std::filesystem::path& path, const Hsdp& packing);
Mapda load_mapda(const std::filesystem::path& path,
                 std::optional<int> antennas_override = std::nullopt);
void save_mapda(const std::filesystem::path& path, const Mapda& array);
std::vector<DesignPoint> load_design_points(const std::filesystem::path& path);
void save_design_point(const std::filesystem::path& path, const DesignPoint& point);
void save_sim_report(const std::filesystem::path& path, const SimReport& report);
ChannelMatrix load_channel_csv(const std::filesystem::path& path,
                               long long users, int antennas);

/// Blockarray-style text rendering with column headers and row labels, for
/// eyeballing small arrays.
void render_mapda(std::ostream& out, const Mapda& array);

void render_hsdp_report(std::ostream& out, const HsdpVerifyReport& report);
void render_mapda_report(std::ostream& out, const MapdaVerifyReport& report);

}  // namespace hsdp
