#include "ptzinspect/scene_randomizer.hpp"

#include <cmath>
#include <json.hpp>

#include "ptzinspect/pantilt.hpp"
#include "ptzinspect/text_io.hpp"

namespace ptzinspect {

namespace {

constexpr double kBoundTolerance = 1e-9;

void require_range(const Range& r, const char* what) {
    if (!r.valid()) {
        throw Error(ErrorCategory::invalid_argument, std::string("range '") + what + "' must be finite with lo <= hi");
    }
}

Range range_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw Error(ErrorCategory::invalid_argument, "ranges are written as [lo, hi]");
    }
    return Range{j.at(0).get<double>(), j.at(1).get<double>()};
}

nlohmann::ordered_json range_to_json(const Range& r) { return nlohmann::ordered_json::array({r.lo, r.hi}); }

}  // namespace

double DeploymentBoundary::beta_deg() const { return quadrant_beta(quadrant); }

Range DeploymentBoundary::yaw_window() const {
    const double b = beta_deg();
    return {b - yaw_halfwidth_deg, b + yaw_halfwidth_deg};
}

void DeploymentBoundary::validate() const {
    quadrant_beta(quadrant);
    require_range(x, "x");
    require_range(y, "y");
    require_range(z, "z");
    require_range(texture.offset, "texture.offset");
    require_range(texture.rotation_deg, "texture.rotation_deg");
    require_range(texture.scale, "texture.scale");
    if (!(yaw_halfwidth_deg >= 0.0) || !(tilt_tolerance_deg >= 0.0) || !std::isfinite(yaw_halfwidth_deg) ||
        !std::isfinite(tilt_tolerance_deg) || !std::isfinite(tilt_deg)) {
        throw Error(ErrorCategory::invalid_argument, "yaw and tilt windows must be finite and non-negative");
    }
    if (!(hfov_deg > 0.0)) {
        throw Error(ErrorCategory::invalid_argument, "hfov_deg must be positive");
    }
}

DeploymentBoundary default_boundary(int quadrant) {
    DeploymentBoundary b;
    b.quadrant = quadrant;
    b.validate();
    return b;
}

std::vector<DeploymentBoundary> parse_boundaries(std::string_view json_text, const std::string& source) {
    try {
        const nlohmann::json doc = nlohmann::json::parse(json_text);
        std::vector<DeploymentBoundary> out;
        for (const auto& e : doc.at("boundaries")) {
            DeploymentBoundary b;
            b.quadrant = e.at("quadrant").get<int>();
            if (e.contains("x")) b.x = range_from_json(e.at("x"));
            if (e.contains("y")) b.y = range_from_json(e.at("y"));
            if (e.contains("z")) b.z = range_from_json(e.at("z"));
            b.yaw_halfwidth_deg = e.value("yaw_halfwidth_deg", b.yaw_halfwidth_deg);
            b.tilt_deg = e.value("tilt_deg", b.tilt_deg);
            b.tilt_tolerance_deg = e.value("tilt_tolerance_deg", b.tilt_tolerance_deg);
            b.hfov_deg = e.value("hfov_deg", b.hfov_deg);
            if (e.contains("texture")) {
                const auto& t = e.at("texture");
                if (t.contains("offset")) b.texture.offset = range_from_json(t.at("offset"));
                if (t.contains("rotation_deg")) b.texture.rotation_deg = range_from_json(t.at("rotation_deg"));
                if (t.contains("scale")) b.texture.scale = range_from_json(t.at("scale"));
            }
            b.validate();
            out.push_back(b);
        }
        if (out.empty()) {
            throw Error(ErrorCategory::invalid_argument, "'boundaries' is empty");
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source, 0, e.what());
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(source, 0, e.what());
    }
}

std::vector<DeploymentBoundary> load_boundaries(const std::filesystem::path& path) {
    return parse_boundaries(read_text_file(path), path.string());
}

const DeploymentBoundary& boundary_for(const std::vector<DeploymentBoundary>& list, int quadrant) {
    for (const auto& b : list) {
        if (b.quadrant == quadrant) {
            return b;
        }
    }
    throw Error(ErrorCategory::invalid_argument, "no deployment boundary for quadrant " + std::to_string(quadrant));
}

RandomizationSample sample_setup(const DeploymentBoundary& boundary, Rng& rng) {
    const auto draw = [&rng](const Range& r) { return rng.uniform(r.lo, r.hi); };
    RandomizationSample s;
    s.position.x = draw(boundary.x);
    s.position.y = draw(boundary.y);
    s.position.z = draw(boundary.z);
    s.yaw_deg = draw(boundary.yaw_window());
    s.pan_deg = s.yaw_deg;
    s.tilt_deg = draw(boundary.tilt_window());
    for (Material& m : s.materials) {
        for (double& c : m.ambient) {
            c = rng.uniform01();
        }
        for (double& c : m.specular) {
            c = rng.uniform01();
        }
    }
    for (TexturePlacement& t : s.textures) {
        t.u = draw(boundary.texture.offset);
        t.v = draw(boundary.texture.offset);
        t.rotation_deg = draw(boundary.texture.rotation_deg);
        t.su = draw(boundary.texture.scale);
        t.sv = draw(boundary.texture.scale);
    }
    return s;
}

std::string_view split_name(Split s) noexcept {
    switch (s) {
        case Split::train: return "train";
        case Split::val: return "val";
        case Split::test: return "test";
    }
    return "unknown";
}

DatasetManifest generate_manifest(const DeploymentBoundary& boundary, const SplitSizes& sizes, std::uint64_t seed) {
    boundary.validate();
    DatasetManifest m;
    m.seed = seed;
    m.sizes = sizes;
    m.boundary = boundary;
    m.entries.reserve(sizes.total());
    Rng rng(seed);
    for (std::size_t k = 0; k < sizes.total(); ++k) {
        const Split split = k < sizes.train ? Split::train : (k < sizes.train + sizes.val ? Split::val : Split::test);
        m.entries.push_back(ManifestEntry{k, split, sample_setup(boundary, rng)});
    }
    return m;
}

std::string format_manifest_json(const DatasetManifest& m) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["generator"] = Rng::kGeneratorName;
    doc["seed"] = m.seed;
    doc["sizes"] = {{"train", m.sizes.train}, {"val", m.sizes.val}, {"test", m.sizes.test}};
    const DeploymentBoundary& b = m.boundary;
    doc["boundary"] = {{"quadrant", b.quadrant},
                       {"beta_deg", b.beta_deg()},
                       {"x", range_to_json(b.x)},
                       {"y", range_to_json(b.y)},
                       {"z", range_to_json(b.z)},
                       {"yaw_window_deg", range_to_json(b.yaw_window())},
                       {"tilt_window_deg", range_to_json(b.tilt_window())},
                       {"hfov_deg", b.hfov_deg},
                       {"texture",
                        {{"offset", range_to_json(b.texture.offset)},
                         {"rotation_deg", range_to_json(b.texture.rotation_deg)},
                         {"scale", range_to_json(b.texture.scale)}}}};
    // Header fields first, then one sample record per line.
    std::string text = doc.dump();
    text.pop_back();
    text += ",\n\"samples\": [\n";
    for (std::size_t n = 0; n < m.entries.size(); ++n) {
        const ManifestEntry& e = m.entries[n];
        const RandomizationSample& s = e.sample;
        ordered_json objects = ordered_json::object();
        ordered_json textures = ordered_json::object();
        for (std::size_t k = 0; k < kSceneObjects.size(); ++k) {
            const std::string name(kSceneObjects[k]);
            objects[name] = {{"ambient", s.materials[k].ambient}, {"specular", s.materials[k].specular}};
            const TexturePlacement& t = s.textures[k];
            textures[name] = {{"offset", {t.u, t.v}}, {"rotation_deg", t.rotation_deg}, {"scale", {t.su, t.sv}}};
        }
        const ordered_json rec = {{"index", e.index},
                                  {"split", split_name(e.split)},
                                  {"position", {s.position.x, s.position.y, s.position.z}},
                                  {"yaw_deg", s.yaw_deg},
                                  {"pan_deg", s.pan_deg},
                                  {"tilt_deg", s.tilt_deg},
                                  {"materials", std::move(objects)},
                                  {"textures", std::move(textures)}};
        text += rec.dump();
        text += n + 1 < m.entries.size() ? ",\n" : "\n";
    }
    text += "]}\n";
    return text;
}

std::vector<ConstraintCheck> DeploymentReport::violations() const {
    std::vector<ConstraintCheck> out;
    for (const auto& c : checks) {
        if (!c.pass) {
            out.push_back(c);
        }
    }
    return out;
}

DeploymentReport validate_deployment(const CameraPose& pose, const DeploymentBoundary& boundary) {
    const auto check = [](std::string name, double value, Range allowed) {
        ConstraintCheck c{std::move(name), value, allowed, 0.0, true};
        if (value < allowed.lo) {
            c.violation = allowed.lo - value;
        } else if (value > allowed.hi) {
            c.violation = value - allowed.hi;
        }
        c.pass = c.violation <= kBoundTolerance;
        return c;
    };
    DeploymentReport r;
    r.checks.push_back(check("x", pose.position.x, boundary.x));
    r.checks.push_back(check("y", pose.position.y, boundary.y));
    r.checks.push_back(check("height", pose.position.z, boundary.z));
    const double beta = boundary.beta_deg();
    const double yaw = beta + wrap_degrees(yaw_from_quaternion(pose.orientation).yaw_deg - beta);
    r.checks.push_back(check("yaw", yaw, boundary.yaw_window()));
    for (const auto& c : r.checks) {
        r.pass = r.pass && c.pass;
    }
    return r;
}

}  // namespace ptzinspect
