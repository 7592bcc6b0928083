#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ptzinspect/geometry.hpp"

namespace ptzinspect {

struct PointCloud {
    std::vector<Vec3> points;
    // Either empty or one (possibly empty) tag per point.
    std::vector<std::string> tags;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
    bool has_tags() const noexcept { return !tags.empty(); }
};

enum class CloudFormat {
    xyz_ascii,  // "x y z [tag]" per line, '#' comments
    ply_ascii,  // ascii PLY, vertex element with x, y, z properties
};

// Picks the format from the extension (.ply, otherwise xyz).
CloudFormat format_from_path(const std::filesystem::path& path) noexcept;

// Throws ParseError (with line) on malformed input or an empty cloud, and
// Error(io) when the file cannot be read.
PointCloud parse_xyz(std::string_view text, const std::string& source);
PointCloud parse_ply(std::string_view text, const std::string& source);
PointCloud load_point_cloud(const std::filesystem::path& path, CloudFormat format);
PointCloud load_point_cloud(const std::filesystem::path& path);

// %.17g per coordinate, so write-then-read reproduces every value exactly.
std::string format_xyz(const PointCloud& cloud);
std::string format_ply(const PointCloud& cloud);

}  // namespace ptzinspect
