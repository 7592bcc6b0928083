#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ptzinspect/geometry.hpp"
#include "ptzinspect/rng.hpp"

namespace ptzinspect {

struct Range {
    double lo{0.0};
    double hi{0.0};

    bool valid() const noexcept { return std::isfinite(lo) && std::isfinite(hi) && lo <= hi; }
    double mid() const noexcept { return 0.5 * (lo + hi); }
};

struct TextureRanges {
    Range offset{0.0, 1.0};          // u and v, texture units
    Range rotation_deg{0.0, 360.0};
    Range scale{0.5, 2.0};           // su and sv
};

struct DeploymentBoundary {
    int quadrant{3};
    Range x{-13.5, -10.5};
    Range y{8.5, 11.5};
    Range z{6.25, 7.25};
    double yaw_halfwidth_deg{10.0};  // window is beta_q +- this
    double tilt_deg{-18.0};
    double tilt_tolerance_deg{0.5};
    double hfov_deg{60.0};           // recorded in manifests only
    TextureRanges texture;

    double beta_deg() const;
    Range yaw_window() const;
    Range tilt_window() const noexcept { return {tilt_deg - tilt_tolerance_deg, tilt_deg + tilt_tolerance_deg}; }

    // Throws invalid_argument for a bad quadrant or any empty/non-finite range.
    void validate() const;
};

// Default boundary of a quadrant; only quadrant and beta differ between them.
DeploymentBoundary default_boundary(int quadrant);

// JSON: {"boundaries": [{"quadrant": 3, "x": [lo, hi], "y": [...], "z": [...],
//   "yaw_halfwidth_deg": 10, "tilt_deg": -18, "tilt_tolerance_deg": 0.5,
//   "hfov_deg": 60, "texture": {"offset": [..], "rotation_deg": [..], "scale": [..]}}]}
// Omitted fields keep their defaults. Throws ParseError.
std::vector<DeploymentBoundary> parse_boundaries(std::string_view json_text, const std::string& source);
std::vector<DeploymentBoundary> load_boundaries(const std::filesystem::path& path);
// Throws invalid_argument when the quadrant is not in the list.
const DeploymentBoundary& boundary_for(const std::vector<DeploymentBoundary>& list, int quadrant);

inline constexpr std::array<std::string_view, 3> kSceneObjects{"aircraft", "ground", "wall"};

struct Material {
    std::array<double, 3> ambient{};
    std::array<double, 3> specular{};
};

struct TexturePlacement {
    double u{0.0};
    double v{0.0};
    double rotation_deg{0.0};
    double su{1.0};
    double sv{1.0};
};

struct RandomizationSample {
    Vec3 position;
    double yaw_deg{0.0};  // camera heading; equals the pan of a levelled base
    double pan_deg{0.0};
    double tilt_deg{0.0};
    std::array<Material, 3> materials{};          // indexed like kSceneObjects
    std::array<TexturePlacement, 3> textures{};   // indexed like kSceneObjects

    CameraPose pose() const { return make_levelled_pose(position, yaw_deg, tilt_deg); }
};

// Draws, in this order: x, y, z, yaw, tilt; then ambient rgb and specular rgb
// of each object; then u, v, rotation, su, sv of each surface. All draws are
// independent uniforms.
RandomizationSample sample_setup(const DeploymentBoundary& boundary, Rng& rng);

struct SplitSizes {
    std::size_t train{4000};
    std::size_t val{700};
    std::size_t test{300};

    std::size_t total() const noexcept { return train + val + test; }
};

enum class Split { train, val, test };
std::string_view split_name(Split s) noexcept;

struct ManifestEntry {
    std::size_t index{0};
    Split split{Split::train};
    RandomizationSample sample;
};

struct DatasetManifest {
    std::uint64_t seed{0};
    SplitSizes sizes;
    DeploymentBoundary boundary;
    std::vector<ManifestEntry> entries;
};

// One Rng seeded with `seed` produces all samples in index order; the first
// sizes.train entries are train, then val, then test.
DatasetManifest generate_manifest(const DeploymentBoundary& boundary, const SplitSizes& sizes, std::uint64_t seed);

std::string format_manifest_json(const DatasetManifest& manifest);

struct ConstraintCheck {
    std::string name;   // "x", "y", "height", "yaw"
    double value{0.0};
    Range allowed;
    double violation{0.0};  // distance outside the allowed range, 0 when inside
    bool pass{true};
};

struct DeploymentReport {
    bool pass{true};
    std::vector<ConstraintCheck> checks;

    std::vector<ConstraintCheck> violations() const;
};

// Checks the x-y box, the height range and the yaw window (compared after
// wrapping to within 180 deg of beta). Values within 1e-9 of a bound pass.
DeploymentReport validate_deployment(const CameraPose& pose, const DeploymentBoundary& boundary);

}  // namespace ptzinspect
