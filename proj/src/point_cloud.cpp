#include "ptzinspect/point_cloud.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ptzinspect/text_io.hpp"

namespace ptzinspect {

CloudFormat format_from_path(const std::filesystem::path& path) noexcept {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".ply" ? CloudFormat::ply_ascii : CloudFormat::xyz_ascii;
}

PointCloud parse_xyz(std::string_view text, const std::string& source) {
    PointCloud cloud;
    bool any_tag = false;
    for (const TextRecord& rec : split_records(text)) {
        if (rec.fields.size() != 3 && rec.fields.size() != 4) {
            throw ParseError(source, rec.line, "expected 'x y z' or 'x y z tag', got " + std::to_string(rec.fields.size()) +
                                                   " fields");
        }
        cloud.points.push_back({parse_double(rec.fields[0], source, rec.line),
                                parse_double(rec.fields[1], source, rec.line),
                                parse_double(rec.fields[2], source, rec.line)});
        cloud.tags.push_back(rec.fields.size() == 4 ? rec.fields[3] : std::string{});
        any_tag = any_tag || rec.fields.size() == 4;
    }
    if (cloud.points.empty()) {
        throw ParseError(source, 0, "point cloud is empty");
    }
    if (!any_tag) {
        cloud.tags.clear();
    }
    return cloud;
}

PointCloud parse_ply(std::string_view text, const std::string& source) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;

    const auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) {
            return false;
        }
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        return true;
    };

    if (!next_line() || line != "ply") {
        throw ParseError(source, line_no == 0 ? 1 : line_no, "missing 'ply' magic line");
    }

    std::size_t vertex_count = 0;
    bool have_vertex = false;
    bool in_vertex = false;
    bool other_elements = false;
    std::vector<std::string> vertex_props;
    bool header_done = false;
    while (next_line()) {
        std::istringstream words(line);
        std::string kw;
        words >> kw;
        if (kw.empty() || kw == "comment" || kw == "obj_info") {
            continue;
        }
        if (kw == "format") {
            std::string fmt;
            words >> fmt;
            if (fmt != "ascii") {
                throw ParseError(source, line_no, "only ascii PLY is supported, got '" + fmt + "'");
            }
        } else if (kw == "element") {
            std::string name;
            long long count = -1;
            words >> name >> count;
            if (count < 0) {
                throw ParseError(source, line_no, "bad element count");
            }
            in_vertex = name == "vertex";
            if (in_vertex) {
                if (have_vertex) {
                    throw ParseError(source, line_no, "duplicate vertex element");
                }
                vertex_count = static_cast<std::size_t>(count);
                have_vertex = true;
            } else if (!have_vertex) {
                throw ParseError(source, line_no, "vertex element must come first");
            } else {
                other_elements = true;
            }
        } else if (kw == "property") {
            if (in_vertex) {
                std::string type, name;
                words >> type >> name;
                if (type == "list") {
                    throw ParseError(source, line_no, "list properties on vertices are not supported");
                }
                vertex_props.push_back(name);
            }
        } else if (kw == "end_header") {
            header_done = true;
            break;
        } else {
            throw ParseError(source, line_no, "unexpected header keyword '" + kw + "'");
        }
    }
    if (!header_done) {
        throw ParseError(source, line_no, "missing end_header");
    }
    if (!have_vertex) {
        throw ParseError(source, line_no, "no vertex element");
    }
    const auto find_prop = [&](const char* name) -> std::size_t {
        const auto it = std::find(vertex_props.begin(), vertex_props.end(), name);
        if (it == vertex_props.end()) {
            throw ParseError(source, line_no, std::string("vertex element lacks property ") + name);
        }
        return static_cast<std::size_t>(it - vertex_props.begin());
    };
    const std::size_t ix = find_prop("x");
    const std::size_t iy = find_prop("y");
    const std::size_t iz = find_prop("z");

    PointCloud cloud;
    cloud.points.reserve(vertex_count);
    while (cloud.points.size() < vertex_count) {
        if (!next_line()) {
            throw ParseError(source, line_no,
                             "header declares " + std::to_string(vertex_count) + " vertices, file has " +
                                 std::to_string(cloud.points.size()));
        }
        const std::vector<TextRecord> recs = split_records(line);
        if (recs.empty()) {
            continue;
        }
        const auto& f = recs.front().fields;
        if (f.size() != vertex_props.size()) {
            throw ParseError(source, line_no,
                             "expected " + std::to_string(vertex_props.size()) + " vertex values, got " +
                                 std::to_string(f.size()));
        }
        cloud.points.push_back(
            {parse_double(f[ix], source, line_no), parse_double(f[iy], source, line_no), parse_double(f[iz], source, line_no)});
    }
    // Data after the vertices belongs to other elements, which are ignored.
    if (!other_elements) {
        while (next_line()) {
            if (!split_records(line).empty()) {
                throw ParseError(source, line_no,
                                 "header declares " + std::to_string(vertex_count) + " vertices, file has more");
            }
        }
    }
    if (cloud.points.empty()) {
        throw ParseError(source, line_no, "point cloud is empty");
    }
    return cloud;
}

PointCloud load_point_cloud(const std::filesystem::path& path, CloudFormat format) {
    const std::string text = read_text_file(path);
    return format == CloudFormat::ply_ascii ? parse_ply(text, path.string()) : parse_xyz(text, path.string());
}

PointCloud load_point_cloud(const std::filesystem::path& path) {
    return load_point_cloud(path, format_from_path(path));
}

std::string format_xyz(const PointCloud& cloud) {
    std::string out;
    out.reserve(cloud.size() * 64);
    for (std::size_t k = 0; k < cloud.size(); ++k) {
        const Vec3& p = cloud.points[k];
        out += format_double(p.x);
        out += ' ';
        out += format_double(p.y);
        out += ' ';
        out += format_double(p.z);
        if (cloud.has_tags() && !cloud.tags[k].empty()) {
            out += ' ';
            out += cloud.tags[k];
        }
        out += '\n';
    }
    return out;
}

std::string format_ply(const PointCloud& cloud) {
    std::string out = "ply\nformat ascii 1.0\nelement vertex " + std::to_string(cloud.size()) +
                      "\nproperty double x\nproperty double y\nproperty double z\nend_header\n";
    for (const Vec3& p : cloud.points) {
        out += format_double(p.x) + ' ' + format_double(p.y) + ' ' + format_double(p.z) + '\n';
    }
    return out;
}

}  // namespace ptzinspect
