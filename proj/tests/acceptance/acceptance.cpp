// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptzinspect/loss.hpp"
#include "ptzinspect/pantilt.hpp"
#include "ptzinspect/pose_eval.hpp"
#include "ptzinspect/rng.hpp"
#include "ptzinspect/scan_planner.hpp"
#include "ptzinspect/scan_simulator.hpp"
#include "ptzinspect/scene_randomizer.hpp"
#include "ptzinspect/synthetic.hpp"
#include "ptzinspect/text_io.hpp"

namespace pz = ptzinspect;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("criterion %2d %s: %s (%s)\n", id, pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += pass ? 0 : 1;
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// Runs a criterion body, turning an escaped exception into a FAIL line.
void guarded(int id, const std::string& name, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

// Brute-force ray march with 1e-4 m steps, then bisection on the residual.
std::optional<pz::Vec3> march_cylinder(const pz::Ray& ray, const pz::CylinderModel& cyl, double t_max) {
    const double step = 1e-4;
    double t0 = pz::kMinRayParameter;
    double f0 = cyl.residual(ray.at(t0));
    for (double t1 = t0 + step; t1 <= t_max; t1 += step) {
        const double f1 = cyl.residual(ray.at(t1));
        if ((f0 > 0) != (f1 > 0)) {
            double lo = t0, hi = t1;
            for (int k = 0; k < 200 && hi - lo > 1e-15; ++k) {
                const double mid = 0.5 * (lo + hi);
                if ((cyl.residual(ray.at(mid)) > 0) == (f0 > 0)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return ray.at(0.5 * (lo + hi));
        }
        t0 = t1;
        f0 = f1;
    }
    return std::nullopt;
}

void criterion_1() {
    const auto t0 = Clock::now();
    const pz::CylinderModel cyl(2.0, 2.0);
    pz::Rng rng(1001);
    double worst_dev = 0.0, worst_res = 0.0;
    int misses = 0;
    for (int k = 0; k < 1000; ++k) {
        // Origin outside the cylinder, aimed at a point strictly inside it.
        const double ang = rng.uniform(0, 2 * 3.141592653589793);
        const double rad = rng.uniform(2.5, 15.0);
        const pz::Vec3 origin{rad * std::cos(ang), rng.uniform(-10, 10), cyl.h0() + rad * std::sin(ang)};
        const double a2 = rng.uniform(0, 2 * 3.141592653589793);
        const double r2 = rng.uniform(0.0, 1.9);
        const pz::Vec3 target{r2 * std::cos(a2), rng.uniform(-10, 10), cyl.h0() + r2 * std::sin(a2)};
        const pz::Ray ray = pz::Ray::make(origin, pz::normalized(target - origin));
        const pz::Vec3 hit = pz::intersect_cylinder(ray, cyl);
        const auto oracle = march_cylinder(ray, cyl, pz::distance(origin, target) + 1.0);
        if (!oracle) {
            ++misses;
            continue;
        }
        worst_dev = std::max(worst_dev, pz::distance(hit, *oracle));
        worst_res = std::max(worst_res, std::abs(cyl.residual(hit)));
    }
    const double secs = seconds_since(t0);
    const bool pass = misses == 0 && worst_dev <= 1e-6 && worst_res < 1e-9 && secs < 5.0;
    report(1, "ray-cylinder oracle", pass,
           "max |hit-oracle| " + fmt("%.3g m", worst_dev) + ", max residual " + fmt("%.3g m^2", worst_res) +
               ", oracle misses " + std::to_string(misses) + ", " + fmt("%.2f s", secs));
}

// Random batch of pose samples with the true view ray aimed near the cylinder axis.
std::vector<pz::PoseSample> loss_batch(std::size_t n, std::uint64_t seed) {
    pz::Rng rng(seed);
    std::vector<pz::PoseSample> out;
    for (std::size_t k = 0; k < n; ++k) {
        pz::PoseSample s;
        const pz::Vec3 cam{rng.uniform(-13, -10), rng.uniform(5, 15), rng.uniform(6.25, 7.25)};
        const pz::Vec3 aim{0.0, cam.y + rng.uniform(-3, 3), rng.uniform(1.5, 2.5)};
        const double yaw = pz::rad_to_deg(std::atan2(aim.y - cam.y, aim.x - cam.x));
        const double tilt = pz::rad_to_deg(std::atan2(aim.z - cam.z, std::hypot(aim.x - cam.x, aim.y - cam.y)));
        s.truth = pz::make_levelled_pose(cam, yaw, tilt);
        s.predicted_position = s.truth.position + pz::Vec3{rng.normal(0, 0.15), rng.normal(0, 0.15),
                                                           rng.normal(0, 0.15)};
        const auto q = pz::orientation_from_yaw_tilt_deg(yaw + rng.normal(0, 2), tilt + rng.normal(0, 1));
        s.predicted_orientation_raw = {q.w() * 1.3, q.x() * 1.3, q.y() * 1.3, q.z() * 1.3};
        out.push_back(s);
    }
    return out;
}

void criterion_2() {
    const auto t0 = Clock::now();
    const pz::CylinderModel cyl(2.0, 2.0);
    pz::Rng rng(2002);
    double worst_form = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const pz::LossComponents c{rng.uniform(0, 3), rng.uniform(0, 2), rng.uniform(0, 5)};
        const pz::LossWeights w{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const pz::LossVariances v{std::exp(w.s_x), std::exp(w.s_q), std::exp(w.s_c)};
        worst_form = std::max(worst_form, std::abs(pz::weighted_total(c, w) - pz::weighted_total_sigma(c, v)));
    }

    // Batch objective: mean total over the batch as a function of (s_x, s_q, s_c).
    const auto batch = loss_batch(200, 2003);
    std::vector<pz::LossBreakdown> rows;
    for (const auto& s : batch) rows.push_back(pz::combined_loss(s, {}, cyl, true));
    const pz::BatchSummary sum = pz::summarize(rows);
    const auto objective = [&](std::span<const double> s) {
        double acc = 0.0;
        for (const auto& r : rows) acc += pz::weighted_total({r.l_x, r.l_q, r.l_c}, {s[0], s[1], s[2]});
        return acc / static_cast<double>(rows.size());
    };
    const std::vector<double> s_star{pz::optimal_log_variance(sum.mean_l_x), pz::optimal_log_variance(sum.mean_l_q),
                                     pz::optimal_log_variance(*sum.mean_l_c)};
    const auto grad = pz::central_difference(objective, s_star, 1e-5);
    double worst_grad = 0.0;
    for (double g : grad) worst_grad = std::max(worst_grad, std::abs(g));

    // Two-level grid search over [-10, 10] for argmin of L e^-s + s.
    double worst_grid = 0.0;
    for (double mean : {sum.mean_l_x, sum.mean_l_q, *sum.mean_l_c, 1.0, std::exp(1.0), 0.01, 50.0}) {
        const auto f = [mean](double s) { return mean * std::exp(-s) + s; };
        double best = -10.0;
        for (double s = -10.0; s <= 10.0; s += 1e-3) {
            if (f(s) < f(best)) best = s;
        }
        const double lo = best - 1e-3;
        double fine = lo;
        for (int k = 0; k <= 20000; ++k) {
            const double s = lo + k * 1e-7;
            if (f(s) < f(fine)) fine = s;
        }
        worst_grid = std::max(worst_grid, std::abs(fine - pz::optimal_log_variance(mean)));
    }
    const double secs = seconds_since(t0);
    const bool pass = worst_form <= 1e-12 && worst_grad <= 1e-5 && worst_grid <= 1e-6 && secs < 10.0;
    report(2, "loss forms and gradients", pass,
           "sigma vs s form " + fmt("%.3g", worst_form) + ", |dL/ds| at ln mean " + fmt("%.3g", worst_grad) +
               ", grid search gap " + fmt("%.3g", worst_grid) + ", " + fmt("%.2f s", secs));
}

void criterion_3() {
    const pz::CylinderModel cyl(2.0, 2.0);
    bool all_equal = true;
    std::size_t with_icsc = 0;
    for (const auto& s : loss_batch(1000, 3003)) {
        const auto r = pz::combined_loss(s, {0.0, 0.0, 0.0}, cyl, true);
        const double expected = r.l_c ? r.l_x + r.l_q + *r.l_c : r.l_x + r.l_q;
        with_icsc += r.l_c ? 1 : 0;
        all_equal = all_equal && r.total == expected;
    }
    report(3, "zero log-variance identity", all_equal && with_icsc > 0,
           "1000 samples, " + std::to_string(with_icsc) + " with the ICSC term, exact equality");
}

void criterion_4() {
    const auto t0 = Clock::now();
    pz::SectionSpec spec;
    spec.name = "s";
    spec.box = {{-100, -100, -100}, {100, 100, 100}};

    pz::PointCloud plane;
    pz::Rng rng(4004);
    for (int k = 0; k < 5000; ++k) {
        const double x = rng.uniform(-2, 2), y = rng.uniform(0, 5);
        plane.points.push_back({x, y, 2 * x + 3 * y + 1});
    }
    const auto pg = pz::interpolate_section(plane, spec);
    double plane_err = 0.0;
    for (std::size_t i = 0; i < pg.rows(); ++i) {
        for (std::size_t j = 0; j < pg.cols(); ++j) {
            if (const auto& c = pg.cell(i, j)) {
                plane_err = std::max(plane_err, std::abs(c->z - (2 * c->x + 3 * c->y + 1)));
            }
        }
    }

    pz::CylinderCloudSpec cs;
    cs.arc_step = 0.01;
    cs.y_step = 0.01;
    cs.y_max = 5.0;
    const auto cg = pz::interpolate_section(pz::cylinder_cloud(cs), spec);
    double cyl_err = 0.0;
    for (std::size_t i = 0; i < cg.rows(); ++i) {
        for (std::size_t j = 0; j < cg.cols(); ++j) {
            if (const auto& c = cg.cell(i, j)) {
                const double z = cs.h0 + std::sqrt(std::max(0.0, cs.r0 * cs.r0 - c->x * c->x));
                cyl_err = std::max(cyl_err, std::abs(c->z - z));
            }
        }
    }
    const double secs = seconds_since(t0);
    const bool pass = pg.present_count() > 0 && plane_err <= 1e-9 && cyl_err <= 1e-3 && secs < 30.0;
    report(4, "surface interpolation", pass,
           "plane max error " + fmt("%.3g m", plane_err) + ", half-cylinder max error " + fmt("%.3g m", cyl_err) +
               ", " + fmt("%.2f s", secs));
}

void criterion_5() {
    pz::Rng rng(5005);
    double worst_ray = 0.0, worst_eq = 0.0;
    bool tilt_same = true;
    for (int k = 0; k < 10000; ++k) {
        const pz::Vec3 cam{rng.uniform(-16, -8), rng.uniform(0, 37), rng.uniform(6.25, 7.25)};
        const pz::Vec3 p{rng.uniform(-17, 1), rng.uniform(0, 37), rng.uniform(1.5, 11)};
        const int quadrant = 1 + k % 4;
        const double gamma = pz::quadrant_beta(quadrant) + rng.uniform(-10, 10);
        const double alpha = pz::compute_alpha({quadrant, gamma, cam}).alpha_deg;
        const pz::PanTilt pt = pz::point_to_pantilt(p, cam, alpha);
        const pz::Vec3 dir = pz::pantilt_direction(pt, alpha);
        const pz::Vec3 d = p - cam;
        worst_ray = std::max(worst_ray, pz::distance(cam + dir * pz::dot(d, dir), p));
        const double delta = rng.uniform(-5, 5);
        const pz::PanTilt shifted = pz::point_to_pantilt(p, cam, alpha + delta);
        worst_eq = std::max(worst_eq, std::abs(pz::wrap_degrees(shifted.pan_deg - (pt.pan_deg - delta))));
        tilt_same = tilt_same && shifted.tilt_deg == pt.tilt_deg;
    }
    const bool pass = worst_ray <= 1e-9 && worst_eq <= 1e-12 && tilt_same;
    report(5, "pan-tilt round trip", pass,
           "max ray miss " + fmt("%.3g m", worst_ray) + ", max pan shift error " + fmt("%.3g deg", worst_eq) +
               ", tilt unchanged under alpha shift: " + (tilt_same ? "yes" : "no"));
}

pz::PanTiltGrid row_of(const std::vector<double>& pans) {
    std::vector<std::optional<pz::PanTilt>> cells;
    for (double p : pans) cells.push_back(pz::PanTilt{p, -18.0});
    return pz::PanTiltGrid(1, pans.size(), std::move(cells));
}

void criterion_6() {
    const pz::ScanConfig trace_cfg{2.0, 2.0, 0.15};
    std::vector<double> pans;
    for (const auto& p : pz::select_scan_points(row_of({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}),
                                                pz::SectionKind::fuselage, trace_cfg)) {
        pans.push_back(p.pan_deg);
    }
    const bool trace_ok = pans == std::vector<double>{0, 2, 4, 6, 8, 10};
    const bool single_ok = pz::select_scan_points(row_of({3.0}), pz::SectionKind::fuselage, {}).size() == 1;

    pz::Rng rng(6006);
    bool spacing_ok = true;
    const pz::ScanConfig cfg;
    const double gap = cfg.lambda() * cfg.hfov_deg;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> row{rng.uniform(-60, 60)};
        double max_step = 0.0;
        const int n = 2 + static_cast<int>(rng.uniform(0, 300));
        const double scale = rng.uniform(0.01, 2.0);
        for (int k = 1; k < n; ++k) {
            const double step = rng.uniform(0.05, 1.0) * scale;
            max_step = std::max(max_step, step);
            row.push_back(row.back() + step);
        }
        const auto pts = pz::select_scan_points(row_of(row), pz::SectionKind::fuselage, cfg);
        spacing_ok = spacing_ok && !pts.empty() && pts.front().j == 0;
        for (std::size_t k = 1; k < pts.size(); ++k) {
            const double d = pts[k].pan_deg - pts[k - 1].pan_deg;
            const bool last_clause = pts[k].j + 1 == row.size() && d < gap;
            spacing_ok = spacing_ok && (last_clause || d >= gap) && d <= gap + max_step + 1e-12;
        }
    }
    report(6, "scan point selection fixtures", trace_ok && single_ok && spacing_ok,
           std::string("hand trace ") + (trace_ok ? "ok" : "wrong") + ", single cell " +
               (single_ok ? "ok" : "wrong") + ", spacing invariant on 200 monotone rows " +
               (spacing_ok ? "ok" : "violated"));
}

struct Scene {
    pz::CameraPose pose;
    std::vector<pz::SimSection> sections;
    pz::ScanConfig cfg;
    int quadrant{3};
};

// Cylinder fuselage r0 2 m, h0 2 m, 20 m long; camera at the centre of the
// default quadrant-3 box, yawed to the quadrant's initialisation pan.
Scene cylinder_scene() {
    Scene s;
    const pz::DeploymentBoundary b = pz::default_boundary(3);
    s.pose = pz::make_levelled_pose({b.x.mid(), b.y.mid(), b.z.mid()}, b.beta_deg(), 0.0);
    pz::CylinderCloudSpec cs;
    cs.phi_min_deg = 90.0;
    const pz::PointCloud cloud = pz::cylinder_cloud(cs);
    pz::SectionSpec spec;
    spec.name = "fuselage";
    spec.box = {{-2, 0, 2}, {0, 20, 4}};
    s.sections.push_back({pz::interpolate_section(cloud, spec), pz::HalfRelevance::back_half,
                          pz::CylinderModel(cs.h0, cs.r0)});
    return s;
}

// Closed-form image count from the section's angular extent in U: rows span
// the range of row-median tilts, columns the full pan range.
double image_count_estimate(const pz::PanTiltGrid& u, const pz::ScanConfig& cfg) {
    std::vector<double> medians;
    double pan_lo = 1e300, pan_hi = -1e300;
    for (std::size_t i = 0; i < u.rows(); ++i) {
        std::vector<double> tilts;
        for (std::size_t j = 0; j < u.cols(); ++j) {
            if (const auto& c = u.cell(i, j)) {
                tilts.push_back(c->tilt_deg);
                pan_lo = std::min(pan_lo, c->pan_deg);
                pan_hi = std::max(pan_hi, c->pan_deg);
            }
        }
        if (!tilts.empty()) medians.push_back(pz::median(tilts));
    }
    const auto [tlo, thi] = std::minmax_element(medians.begin(), medians.end());
    const double rows = std::ceil((*thi - *tlo) / (cfg.lambda() * cfg.vfov_deg));
    const double cols = std::ceil((pan_hi - pan_lo) / (cfg.lambda() * cfg.hfov_deg));
    return rows * cols;
}

void criterion_7(const Scene& scene, Clock::time_point t0, pz::SimulationReport& out) {
    const auto deploy = pz::validate_deployment(scene.pose, pz::default_boundary(scene.quadrant));
    const pz::AlphaResult alpha = pz::compute_alpha(
        {scene.quadrant, pz::yaw_from_quaternion(scene.pose.orientation).yaw_deg, scene.pose.position});
    const auto u = pz::grid_to_pantilt(scene.sections[0].grid,
                                       {scene.quadrant, pz::yaw_from_quaternion(scene.pose.orientation).yaw_deg,
                                        scene.pose.position});
    const double estimate = image_count_estimate(u, scene.cfg);

    const pz::ScanPlan plan = pz::plan_for_pose(scene.sections, scene.pose, scene.cfg, scene.quadrant);
    out = pz::execute_plan(plan, scene.pose, scene.pose, scene.sections, scene.cfg, scene.quadrant);
    const double secs = seconds_since(t0);
    const double ratio = static_cast<double>(out.images) / estimate;
    const bool pass = deploy.pass && !alpha.warning && out.missed_shots == 0 && out.images > 0 &&
                      out.labelling_error.max <= 0.05 && out.coverage >= 0.99 && ratio >= 0.8 && ratio <= 1.2 &&
                      secs < 60.0;
    report(7, "end-to-end zero-error scan", pass,
           std::to_string(out.images) + " images vs estimate " + fmt("%.0f", estimate) + " (ratio " +
               fmt("%.3f", ratio) + "), coverage " + fmt("%.4f", out.coverage) + ", max labelling error " +
               fmt("%.3g m", out.labelling_error.max) + ", missed " + std::to_string(out.missed_shots) + ", " +
               fmt("%.2f s", secs));
}

void criterion_8(const Scene& scene, const pz::SimulationReport& zero_error) {
    const auto t0 = Clock::now();
    const std::size_t draws = 100;
    const auto a = pz::run_monte_carlo(scene.sections, scene.pose, scene.cfg, scene.quadrant, 0.24, 2.0, draws, 8008);
    const auto b = pz::run_monte_carlo(scene.sections, scene.pose, scene.cfg, scene.quadrant, 0.24, 2.0, draws, 8008);
    const bool deterministic = pz::format_monte_carlo_json(a) == pz::format_monte_carlo_json(b);
    const auto z = pz::run_monte_carlo(scene.sections, scene.pose, scene.cfg, scene.quadrant, 0.0, 0.0, 3, 8008);
    bool recovers = z.draws.size() == 3;
    for (const auto& d : z.draws) {
        recovers = recovers && d.images == zero_error.images && d.coverage == zero_error.coverage &&
                   d.labelling_error.max == zero_error.labelling_error.max && d.labelling_error.max <= 0.05 &&
                   d.coverage >= 0.99;
    }
    const double secs = seconds_since(t0);
    report(8, "noisy-pose error propagation", a.draws.size() == draws && deterministic && recovers,
           std::to_string(a.draws.size()) + " draws at 0.24 m / 2 deg, pooled labelling error median " +
               fmt("%.3f m", a.pooled_labelling_error.median) + " rmse " +
               fmt("%.3f m", a.pooled_labelling_error.rmse) + ", same seed identical: " +
               (deterministic ? "yes" : "no") + ", zero noise matches zero-error scan: " + (recovers ? "yes" : "no") +
               ", " + fmt("%.2f s", secs));
}

void criterion_9() {
    const fs::path dir = fs::temp_directory_path() / "ptzinspect_acceptance";
    fs::create_directories(dir);
    const pz::DeploymentBoundary b = pz::default_boundary(3);
    const pz::SplitSizes sizes;
    const auto m1 = pz::generate_manifest(b, sizes, 9009);
    pz::write_text_file_atomic(dir / "manifest_a.json", pz::format_manifest_json(m1));
    pz::write_text_file_atomic(dir / "manifest_b.json",
                               pz::format_manifest_json(pz::generate_manifest(b, sizes, 9009)));
    const bool identical = pz::read_text_file(dir / "manifest_a.json") == pz::read_text_file(dir / "manifest_b.json");
    std::size_t n[3] = {0, 0, 0};
    std::size_t invalid = 0;
    for (const auto& e : m1.entries) {
        ++n[static_cast<int>(e.split)];
        invalid += pz::validate_deployment(e.sample.pose(), b).pass ? 0 : 1;
    }
    const bool counts = n[0] == 4000 && n[1] == 700 && n[2] == 300;
    report(9, "manifest reproducibility", identical && counts && invalid == 0,
           std::string("bit-identical: ") + (identical ? "yes" : "no") + ", splits " + std::to_string(n[0]) + "/" +
               std::to_string(n[1]) + "/" + std::to_string(n[2]) + ", invalid samples " + std::to_string(invalid));
}

void criterion_10() {
    const pz::CameraPose gt = pz::make_levelled_pose({-12, 10, 6.75}, 20.0, -18.0);
    const std::vector<pz::CameraPose> truths{gt, gt, gt};
    std::vector<pz::PoseEstimate> preds;
    for (const pz::Vec3 d : {pz::Vec3{0.1, 0, 0}, pz::Vec3{0, -0.2, 0}, pz::Vec3{0, 0, 0.3}}) {
        preds.push_back({gt.position + d, gt.orientation, pz::PoseSource::external_file});
    }
    const auto s = pz::evaluate(preds, truths);
    const auto rz = pz::UnitQuaternion::from_axis_angle({0, 0, 1}, pz::deg_to_rad(10.0));
    const std::vector<pz::CameraPose> one{{{0, 0, 0}, pz::UnitQuaternion{}}};
    const std::vector<pz::PoseEstimate> rotated{{{0, 0, 0}, rz, pz::PoseSource::external_file}};
    const double angle = pz::evaluate(rotated, one).median_orientation;
    const bool pass = std::abs(s.median_position - 0.2) <= 1e-12 && std::abs(s.rmse_position - 0.2160) <= 1e-4 &&
                      std::abs(angle - 10.0) <= 1e-9;
    report(10, "pose error metrics", pass,
           "median " + fmt("%.6f m", s.median_position) + ", rmse " + fmt("%.6f m", s.rmse_position) +
               ", 10 deg z-rotation reads " + fmt("%.12f deg", angle));
}

}  // namespace

int main() {
    guarded(1, "ray-cylinder oracle", criterion_1);
    guarded(2, "loss forms and gradients", criterion_2);
    guarded(3, "zero log-variance identity", criterion_3);
    guarded(4, "surface interpolation", criterion_4);
    guarded(5, "pan-tilt round trip", criterion_5);
    guarded(6, "scan point selection fixtures", criterion_6);
    std::optional<Scene> scene;
    pz::SimulationReport zero_error;
    bool scene_ok = false;
    guarded(7, "end-to-end zero-error scan", [&] {
        const auto t0 = Clock::now();
        scene = cylinder_scene();
        criterion_7(*scene, t0, zero_error);
        scene_ok = true;
    });
    if (scene_ok) {
        guarded(8, "noisy-pose error propagation", [&] { criterion_8(*scene, zero_error); });
    } else {
        report(8, "noisy-pose error propagation", false, "scene for criterion 7 could not be built");
    }
    guarded(9, "manifest reproducibility", criterion_9);
    guarded(10, "pose error metrics", criterion_10);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
