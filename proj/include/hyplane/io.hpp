#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hyplane/geom.hpp"
#include "hyplane/tiling.hpp"

namespace hyplane {

inline constexpr std::string_view kSchemaVersion = "1.0";

// Apex angles are rounded to 15 significant digits, so serialize(parse(s)) == s.
std::string serialize_tiling(const Tiling& tiling);
// Throws ParseError naming the offending line or field.
Tiling parse_tiling(std::string_view text);

void write_tiling(const Tiling& tiling, const std::filesystem::path& path);
Tiling read_tiling(const std::filesystem::path& path);

struct SvgOptions {
    int width = 800;
    Model model = Model::disk;
    // Visible half-plane window: [-extent, extent] x [0, extent].
    double halfplane_extent = 4.0;
};

std::string render_svg(const Tiling& tiling, const SvgOptions& options = {});

} // namespace hyplane
