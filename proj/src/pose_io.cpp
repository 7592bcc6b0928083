#include "ptzinspect/pose_io.hpp"

#include <sstream>

#include "ptzinspect/text_io.hpp"

namespace ptzinspect {

namespace {

CameraPose pose_from_fields(const TextRecord& rec, std::size_t first, const std::string& source) {
    double v[6];
    for (std::size_t k = 0; k < 6; ++k) {
        v[k] = parse_double(rec.fields[first + k], source, rec.line);
    }
    return CameraPose{{v[0], v[1], v[2]}, orientation_from_ypr_deg(v[3], v[4], v[5])};
}

void append_pose(std::ostringstream& out, const CameraPose& pose) {
    const YawPitchRoll e = to_yaw_pitch_roll(pose.orientation);
    out << ' ' << format_double(pose.position.x) << ' ' << format_double(pose.position.y) << ' '
        << format_double(pose.position.z) << ' ' << format_double(rad_to_deg(e.yaw)) << ' '
        << format_double(rad_to_deg(e.pitch)) << ' ' << format_double(rad_to_deg(e.roll));
}

}  // namespace

UnitQuaternion orientation_from_ypr_deg(double yaw_deg, double pitch_deg, double roll_deg) {
    return UnitQuaternion::from_yaw_pitch_roll(deg_to_rad(yaw_deg), deg_to_rad(pitch_deg), deg_to_rad(roll_deg));
}

std::vector<PoseRecord> parse_pose_records(std::string_view text, const std::string& source) {
    std::vector<PoseRecord> out;
    for (const TextRecord& rec : split_records(text)) {
        if (rec.fields.size() != 7) {
            throw ParseError(source, rec.line,
                             "expected 7 fields (id x y z yaw pitch roll), got " + std::to_string(rec.fields.size()));
        }
        out.push_back(PoseRecord{rec.fields[0], pose_from_fields(rec, 1, source)});
    }
    return out;
}

std::vector<PoseRecord> load_pose_records(const std::filesystem::path& path) {
    return parse_pose_records(read_text_file(path), path.string());
}

std::string format_pose_records(std::span<const PoseRecord> records) {
    std::ostringstream out;
    out << "# id x y z yaw_deg pitch_deg roll_deg\n";
    for (const PoseRecord& r : records) {
        out << r.id;
        append_pose(out, r.pose);
        out << '\n';
    }
    return out.str();
}

std::vector<LossRecord> parse_loss_records(std::string_view text, const std::string& source) {
    std::vector<LossRecord> out;
    for (const TextRecord& rec : split_records(text)) {
        if (rec.fields.size() != 13 && rec.fields.size() != 16) {
            throw ParseError(source, rec.line,
                             "expected 13 or 16 fields (id, true pose, predicted pose, optional s_x s_q s_c), got " +
                                 std::to_string(rec.fields.size()));
        }
        LossRecord r;
        r.id = rec.fields[0];
        r.sample.truth = pose_from_fields(rec, 1, source);
        const CameraPose pred = pose_from_fields(rec, 7, source);
        r.sample.predicted_position = pred.position;
        r.sample.predicted_orientation_raw = {pred.orientation.w(), pred.orientation.x(), pred.orientation.y(),
                                              pred.orientation.z()};
        if (rec.fields.size() == 16) {
            r.weights = LossWeights{parse_double(rec.fields[13], source, rec.line),
                                    parse_double(rec.fields[14], source, rec.line),
                                    parse_double(rec.fields[15], source, rec.line)};
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<LossRecord> load_loss_records(const std::filesystem::path& path) {
    return parse_loss_records(read_text_file(path), path.string());
}

std::string format_loss_records(std::span<const LossRecord> records) {
    std::ostringstream out;
    out << "# id true(x y z yaw pitch roll) predicted(x y z yaw pitch roll) [s_x s_q s_c]\n";
    for (const LossRecord& r : records) {
        out << r.id;
        append_pose(out, r.sample.truth);
        append_pose(out, predicted_pose(r.sample));
        if (r.weights) {
            out << ' ' << format_double(r.weights->s_x) << ' ' << format_double(r.weights->s_q) << ' '
                << format_double(r.weights->s_c);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace ptzinspect
