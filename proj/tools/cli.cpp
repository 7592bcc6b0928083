#include "cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "ptzinspect/loss.hpp"
#include "ptzinspect/pantilt.hpp"
#include "ptzinspect/point_cloud.hpp"
#include "ptzinspect/pose_eval.hpp"
#include "ptzinspect/pose_io.hpp"
#include "ptzinspect/scan_planner.hpp"
#include "ptzinspect/scan_simulator.hpp"
#include "ptzinspect/scene_randomizer.hpp"
#include "ptzinspect/surface_grid.hpp"
#include "ptzinspect/synthetic.hpp"
#include "ptzinspect/text_io.hpp"

namespace fs = std::filesystem;

namespace ptzinspect::cli {

namespace {

int exit_code_for(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::invalid_argument: return kUsage;
        case ErrorCategory::io: return kIo;
        case ErrorCategory::parse: return kParse;
        case ErrorCategory::invalid_setup:
        case ErrorCategory::geometry: return kSetup;
        case ErrorCategory::internal_consistency: return kInternal;
    }
    return kInternal;
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    auto log = std::make_shared<spdlog::logger>("ptzinspect", sink);
    log->set_pattern("%l: %v");
    spdlog::level::level_enum level = spdlog::level::info;
    if (const char* env = std::getenv("PTZINSPECT_LOG")) {
        level = spdlog::level::from_str(env);
    }
    log->set_level(level);
    return log;
}

// Files are rendered in memory first and written together at the end of a
// command, so a failing command leaves no outputs behind.
class OutputSet {
public:
    void add(fs::path path, std::string content) { files_.emplace_back(std::move(path), std::move(content)); }

    void commit() const {
        for (const auto& [path, content] : files_) {
            if (path.has_parent_path()) {
                std::error_code ec;
                fs::create_directories(path.parent_path(), ec);
                if (ec) {
                    throw Error(ErrorCategory::io, "cannot create directory '" + path.parent_path().string() + "'");
                }
            }
        }
        for (const auto& [path, content] : files_) {
            write_text_file_atomic(path, content);
        }
    }

private:
    std::vector<std::pair<fs::path, std::string>> files_;
};

struct PoseArgs {
    std::vector<double> camera;
    double yaw_deg{std::nan("")};
    std::string pose_file;

    bool given() const { return !camera.empty() || !pose_file.empty(); }

    CameraPose resolve(const std::string& what) const {
        if (!pose_file.empty()) {
            if (!camera.empty()) {
                throw Error(ErrorCategory::invalid_argument, what + ": give either a pose file or --camera, not both");
            }
            const auto recs = load_pose_records(pose_file);
            if (recs.empty()) {
                throw ParseError(pose_file, 0, "pose file has no records");
            }
            return recs.front().pose;
        }
        if (camera.size() != 3) {
            throw Error(ErrorCategory::invalid_argument, what + ": camera position must be x,y,z");
        }
        if (!std::isfinite(yaw_deg)) {
            throw Error(ErrorCategory::invalid_argument, what + ": a yaw angle is required with the camera position");
        }
        return make_levelled_pose({camera[0], camera[1], camera[2]}, yaw_deg, 0.0);
    }
};

void add_pose_options(CLI::App* cmd, PoseArgs& p, const std::string& prefix, const std::string& what) {
    cmd->add_option("--" + prefix + "camera", p.camera, what + " camera position x,y,z (m)")
        ->delimiter(',')
        ->expected(3);
    cmd->add_option("--" + prefix + "yaw-deg", p.yaw_deg, what + " camera yaw (deg)");
    cmd->add_option("--" + prefix + "pose", p.pose_file, what + " pose file; the first record is used");
}

struct ScanArgs {
    double hfov{6.15};
    double vfov{3.46};
    double mu{0.15};

    ScanConfig config() const {
        ScanConfig c{hfov, vfov, mu};
        c.validate();
        return c;
    }
};

void add_scan_options(CLI::App* cmd, ScanArgs& s) {
    cmd->add_option("--hfov-deg", s.hfov, "horizontal field of view at scan zoom")->capture_default_str();
    cmd->add_option("--vfov-deg", s.vfov, "vertical field of view at scan zoom")->capture_default_str();
    cmd->add_option("--mu", s.mu, "overlap factor in [0, 1)")->capture_default_str();
}

struct Sections {
    std::vector<SimSection> sim;
};

Sections build_sections(const std::string& cloud_path, const std::string& sections_path,
                        std::optional<std::vector<double>> cylinder, spdlog::logger& log) {
    const PointCloud cloud = load_point_cloud(cloud_path);
    const std::vector<SectionSpec> specs = load_sections(sections_path);
    log.debug("loaded {} points, {} section specs", cloud.size(), specs.size());
    Sections out;
    for (const SectionSpec& spec : specs) {
        const SectionSelection sel = section_points(cloud, spec);
        if (sel.empty) {
            log.warn("section '{}' contains no points and is skipped", spec.name);
            continue;
        }
        SimSection s{interpolate_section(sel.cloud, spec), spec.relevance, std::nullopt};
        if (cylinder && spec.kind == SectionKind::fuselage) {
            s.cylinder = CylinderModel((*cylinder)[0], (*cylinder)[1]);
        }
        log.info("section '{}': {} points -> {}x{} grid, {} present cells", spec.name, sel.cloud.size(), s.grid.rows(),
                 s.grid.cols(), s.grid.present_count());
        out.sim.push_back(std::move(s));
    }
    if (out.sim.empty()) {
        throw Error(ErrorCategory::invalid_setup, "no section of '" + sections_path + "' contains any point");
    }
    return out;
}

void warn_alpha(int quadrant, const CameraPose& pose, spdlog::logger& log) {
    const AlphaResult a = compute_alpha({quadrant, yaw_from_quaternion(pose.orientation).yaw_deg, pose.position});
    if (a.warning) {
        log.warn("{}", *a.warning);
    }
}

void add_plan_outputs(OutputSet& outputs, const fs::path& dir, const ScanPlan& plan,
                      const std::vector<SimSection>& sections, const CameraPose& estimated, int quadrant) {
    outputs.add(dir / "plan.json", format_plan_json(plan));
    outputs.add(dir / "plan.csv", format_plan_csv(plan));
    const QuadrantSetup setup{quadrant, yaw_from_quaternion(estimated.orientation).yaw_deg, estimated.position};
    for (const SimSection& s : sections) {
        outputs.add(dir / (s.grid.name() + ".pantilt.csv"), format_pantilt_csv(grid_to_pantilt(s.grid, setup)));
    }
}

std::string fmt_num(double v) {
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto log = make_logger(err);

    CLI::App app{"Pan-tilt-zoom aircraft inspection planning and simulation toolkit", "ptzinspect"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    std::string cloud_path, sections_path, boundary_path, out_path, plan_path;
    int quadrant = 3;
    std::uint64_t seed = 1;
    ScanArgs scan;
    PoseArgs est_pose, true_pose;
    std::vector<double> cylinder;

    const auto add_quadrant = [&](CLI::App* cmd, bool required) {
        auto* o = cmd->add_option("--quadrant", quadrant, "deployment quadrant")->check(CLI::Range(1, 4));
        if (required) {
            o->required();
        }
    };

    auto* interp = app.add_subcommand("interpolate", "Section a point cloud and resample each section on the 5 cm grid");
    interp->add_option("--cloud", cloud_path, "point cloud (.xyz or .ply)")->required();
    interp->add_option("--sections", sections_path, "section configuration (JSON)")->required();
    interp->add_option("--out", out_path, "output directory")->required();

    auto* plan_cmd = app.add_subcommand("plan", "Generate a scan plan from an estimated camera pose");
    plan_cmd->add_option("--cloud", cloud_path, "point cloud")->required();
    plan_cmd->add_option("--sections", sections_path, "section configuration")->required();
    add_quadrant(plan_cmd, true);
    add_pose_options(plan_cmd, est_pose, "", "estimated");
    add_scan_options(plan_cmd, scan);
    plan_cmd->add_option("--out", out_path, "output directory")->required();

    std::size_t mc_draws = 0;
    double sigma_pos = 0.24, sigma_yaw = 2.0;
    auto* sim = app.add_subcommand("simulate", "Execute a scan plan on a virtual PTZ camera at the true pose");
    sim->add_option("--cloud", cloud_path, "point cloud")->required();
    sim->add_option("--sections", sections_path, "section configuration")->required();
    add_quadrant(sim, true);
    add_pose_options(sim, est_pose, "", "estimated");
    add_pose_options(sim, true_pose, "true-", "true");
    add_scan_options(sim, scan);
    sim->add_option("--plan", plan_path, "plan JSON; planned from the estimated pose when omitted");
    sim->add_option("--cylinder", cylinder, "cast fuselage shots onto the cylinder h0,r0 instead of the grid")
        ->delimiter(',')
        ->expected(2);
    sim->add_option("--monte-carlo", mc_draws, "number of noisy pose draws (0 disables)");
    sim->add_option("--sigma-pos", sigma_pos, "position noise RMS for Monte Carlo (m)")->capture_default_str();
    sim->add_option("--sigma-yaw", sigma_yaw, "yaw noise sigma for Monte Carlo (deg)")->capture_default_str();
    sim->add_option("--seed", seed, "random seed")->capture_default_str();
    sim->add_option("--out", out_path, "output directory")->required();

    SplitSizes sizes;
    auto* rnd = app.add_subcommand("randomize", "Write a domain-randomisation dataset manifest");
    rnd->add_option("--boundary", boundary_path, "deployment boundary configuration (JSON)");
    add_quadrant(rnd, false);
    rnd->add_option("--seed", seed, "random seed")->capture_default_str();
    rnd->add_option("--train", sizes.train, "training samples")->capture_default_str();
    rnd->add_option("--val", sizes.val, "validation samples")->capture_default_str();
    rnd->add_option("--test", sizes.test, "test samples")->capture_default_str();
    rnd->add_option("--out", out_path, "manifest path")->required();

    std::string predictions_path, truth_path, csv_path;
    auto* eval = app.add_subcommand("evaluate", "Median and RMSE of predicted against ground-truth poses");
    eval->add_option("--predictions", predictions_path, "predicted pose records")->required();
    eval->add_option("--truth", truth_path, "ground-truth pose records")->required();
    eval->add_option("--out", out_path, "key=value report path");
    eval->add_option("--csv", csv_path, "per-sample error table path");

    std::string batch_path, fallback_name = "skip";
    bool include_icsc = false;
    double h0 = 2.0, r0 = 2.0, step = 1e-5;
    auto* loss = app.add_subcommand("loss-check", "Evaluate pose losses on a batch and check their gradients");
    loss->add_option("--batch", batch_path, "loss batch records")->required();
    loss->add_flag("--icsc", include_icsc, "include the image-centre scene-coordinate term");
    loss->add_option("--h0", h0, "fuselage axis height (m)")->capture_default_str();
    loss->add_option("--r0", r0, "fuselage radius (m)")->capture_default_str();
    loss->add_option("--fallback", fallback_name, "missed predicted ray: skip or error")
        ->check(CLI::IsMember({"skip", "error"}))
        ->capture_default_str();
    loss->add_option("--step", step, "finite-difference step")->capture_default_str();
    loss->add_option("--out", out_path, "JSON report path");

    auto* pipe = app.add_subcommand("pipeline", "interpolate, plan and simulate in one run");
    pipe->add_option("--cloud", cloud_path, "point cloud")->required();
    pipe->add_option("--sections", sections_path, "section configuration")->required();
    add_quadrant(pipe, true);
    add_pose_options(pipe, est_pose, "", "estimated");
    add_pose_options(pipe, true_pose, "true-", "true");
    add_scan_options(pipe, scan);
    pipe->add_option("--cylinder", cylinder, "cast fuselage shots onto the cylinder h0,r0")
        ->delimiter(',')
        ->expected(2);
    pipe->add_option("--out", out_path, "output directory")->required();

    std::string model = "cylinder";
    CylinderCloudSpec cyl_spec;
    double synth_step = 0.04;
    auto* synth = app.add_subcommand("synth", "Write an analytic point cloud");
    synth->add_option("--model", model, "cylinder or surrogate")
        ->check(CLI::IsMember({"cylinder", "surrogate"}))
        ->capture_default_str();
    synth->add_option("--h0", cyl_spec.h0, "cylinder axis height")->capture_default_str();
    synth->add_option("--r0", cyl_spec.r0, "cylinder radius")->capture_default_str();
    synth->add_option("--y-min", cyl_spec.y_min, "cylinder start")->capture_default_str();
    synth->add_option("--y-max", cyl_spec.y_max, "cylinder end")->capture_default_str();
    synth->add_option("--phi-min-deg", cyl_spec.phi_min_deg, "first arc angle")->capture_default_str();
    synth->add_option("--phi-max-deg", cyl_spec.phi_max_deg, "last arc angle")->capture_default_str();
    synth->add_option("--arc-step", cyl_spec.arc_step, "arc spacing (m)")->capture_default_str();
    synth->add_option("--y-step", cyl_spec.y_step, "axial spacing (m)")->capture_default_str();
    synth->add_option("--step", synth_step, "surrogate sampling step (m)")->capture_default_str();
    synth->add_option("--out", out_path, "output cloud (.xyz or .ply)")->required();

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        OutputSet outputs;
        const fs::path out_dir = out_path;

        if (interp->parsed()) {
            const Sections secs = build_sections(cloud_path, sections_path, std::nullopt, *log);
            for (const SimSection& s : secs.sim) {
                outputs.add(out_dir / (s.grid.name() + ".grid.csv"), format_grid_csv(s.grid));
                out << "section=" << s.grid.name() << " rows=" << s.grid.rows() << " cols=" << s.grid.cols()
                    << " present=" << s.grid.present_count() << '\n';
            }
        } else if (plan_cmd->parsed()) {
            const CameraPose est = est_pose.resolve("estimated pose");
            const ScanConfig cfg = scan.config();
            const Sections secs = build_sections(cloud_path, sections_path, std::nullopt, *log);
            warn_alpha(quadrant, est, *log);
            const ScanPlan plan = plan_for_pose(secs.sim, est, cfg, quadrant);
            for (const auto& w : plan.warnings) {
                log->warn("{}", w);
            }
            add_plan_outputs(outputs, out_dir, plan, secs.sim, est, quadrant);
            for (const SectionPlan& s : plan.sections) {
                out << "section=" << s.name << " points=" << s.points.size() << '\n';
            }
            out << "total_points=" << plan.size() << '\n';
        } else if (sim->parsed() || pipe->parsed()) {
            const ScanConfig cfg = scan.config();
            std::optional<CameraPose> est;
            if (est_pose.given()) {
                est = est_pose.resolve("estimated pose");
            }
            if (!est && !true_pose.given()) {
                throw Error(ErrorCategory::invalid_argument, "a true or estimated pose is required");
            }
            const CameraPose truth = true_pose.given() ? true_pose.resolve("true pose") : *est;
            if (!est) {
                est = truth;
            }
            std::optional<std::vector<double>> cyl;
            if (!cylinder.empty()) {
                cyl = cylinder;
            }
            const Sections secs = build_sections(cloud_path, sections_path, cyl, *log);
            warn_alpha(quadrant, *est, *log);
            ScanPlan plan;
            if (!plan_path.empty()) {
                plan = load_plan(plan_path);
                if (plan.quadrant != quadrant) {
                    log->warn("plan was generated for quadrant {}, simulating quadrant {}", plan.quadrant, quadrant);
                }
            } else {
                plan = plan_for_pose(secs.sim, *est, cfg, quadrant);
                for (const auto& w : plan.warnings) {
                    log->warn("{}", w);
                }
            }
            if (pipe->parsed()) {
                for (const SimSection& s : secs.sim) {
                    outputs.add(out_dir / (s.grid.name() + ".grid.csv"), format_grid_csv(s.grid));
                }
                add_plan_outputs(outputs, out_dir, plan, secs.sim, *est, quadrant);
            }
            const SimulationReport report = execute_plan(plan, truth, *est, secs.sim, cfg, quadrant);
            outputs.add(out_dir / "report.json", format_report_json(report));
            outputs.add(out_dir / "shots.csv", format_shots_csv(report));
            out << "images=" << report.images << " missed=" << report.missed_shots
                << " coverage=" << fmt_num(report.coverage)
                << " labelling_error_median_m=" << fmt_num(report.labelling_error.median)
                << " labelling_error_max_m=" << fmt_num(report.labelling_error.max) << '\n';
            if (mc_draws > 0) {
                const MonteCarloReport mc =
                    run_monte_carlo(secs.sim, truth, cfg, quadrant, sigma_pos, sigma_yaw, mc_draws, seed);
                outputs.add(out_dir / "montecarlo.json", format_monte_carlo_json(mc));
                out << "monte_carlo_draws=" << mc.draws.size()
                    << " pooled_labelling_error_median_m=" << fmt_num(mc.pooled_labelling_error.median)
                    << " pooled_labelling_error_rmse_m=" << fmt_num(mc.pooled_labelling_error.rmse) << '\n';
            }
        } else if (rnd->parsed()) {
            DeploymentBoundary boundary = default_boundary(quadrant);
            if (!boundary_path.empty()) {
                boundary = boundary_for(load_boundaries(boundary_path), quadrant);
            }
            const DatasetManifest m = generate_manifest(boundary, sizes, seed);
            std::size_t failures = 0;
            for (const ManifestEntry& e : m.entries) {
                failures += !validate_deployment(e.sample.pose(), boundary).pass;
            }
            if (failures > 0) {
                throw Error(ErrorCategory::internal_consistency,
                            std::to_string(failures) + " manifest samples fall outside the deployment boundary");
            }
            outputs.add(out_path, format_manifest_json(m));
            out << "samples=" << m.entries.size() << " train=" << sizes.train << " val=" << sizes.val
                << " test=" << sizes.test << " seed=" << seed << '\n';
        } else if (eval->parsed()) {
            const std::vector<PoseEstimate> preds = load_external_predictions(predictions_path);
            const std::vector<PoseRecord> truth_recs = load_pose_records(truth_path);
            std::vector<CameraPose> truths;
            for (const auto& r : truth_recs) {
                truths.push_back(r.pose);
            }
            const ErrorStats st = evaluate(preds, truths);
            std::ostringstream kv;
            kv << "n=" << st.n << '\n'
               << "median_position_m=" << fmt_num(st.median_position) << '\n'
               << "rmse_position_m=" << fmt_num(st.rmse_position) << '\n'
               << "median_orientation_deg=" << fmt_num(st.median_orientation) << '\n'
               << "rmse_orientation_deg=" << fmt_num(st.rmse_orientation) << '\n';
            out << kv.str();
            if (!out_path.empty()) {
                outputs.add(out_path, kv.str());
            }
            if (!csv_path.empty()) {
                std::string csv = "id,position_error_m,orientation_error_deg\n";
                for (std::size_t k = 0; k < preds.size(); ++k) {
                    csv += truth_recs[k].id + ',' +
                           format_double(distance(preds[k].position, truths[k].position)) + ',' +
                           format_double(angular_distance_deg(preds[k].orientation, truths[k].orientation)) + '\n';
                }
                outputs.add(csv_path, csv);
            }
        } else if (loss->parsed()) {
            const auto fallback = fallback_name == "error" ? IcscFallback::error : IcscFallback::skip_component;
            const CylinderModel cyl(h0, r0);
            const std::vector<LossRecord> recs = load_loss_records(batch_path);
            std::vector<LossBreakdown> rows;
            double worst_grad = 0.0;
            nlohmann::ordered_json samples = nlohmann::ordered_json::array();
            for (const LossRecord& r : recs) {
                const LossWeights w = r.weights.value_or(LossWeights{});
                const LossBreakdown b = combined_loss(r.sample, w, cyl, include_icsc, fallback);
                const LossGradient g = finite_difference_grad(r.sample, w, cyl, include_icsc, fallback, step);
                worst_grad = std::max(worst_grad, std::abs(g.s_x - log_variance_derivative(b.l_x, w.s_x)));
                worst_grad = std::max(worst_grad, std::abs(g.s_q - log_variance_derivative(b.l_q, w.s_q)));
                if (b.l_c) {
                    worst_grad = std::max(worst_grad, std::abs(g.s_c - log_variance_derivative(*b.l_c, w.s_c)));
                }
                nlohmann::ordered_json s = {{"id", r.id}, {"l_x", b.l_x}, {"l_q", b.l_q}};
                s["l_c"] = b.l_c ? nlohmann::ordered_json(*b.l_c) : nlohmann::ordered_json(nullptr);
                s["icsc_status"] = status_name(b.icsc_status);
                s["total"] = b.total;
                samples.push_back(std::move(s));
                rows.push_back(b);
            }
            const BatchSummary sum = summarize(rows);
            nlohmann::ordered_json doc;
            doc["samples"] = sum.samples;
            doc["icsc_skipped"] = sum.icsc_skipped;
            doc["mean_l_x"] = sum.mean_l_x;
            doc["mean_l_q"] = sum.mean_l_q;
            doc["mean_l_c"] = sum.mean_l_c ? nlohmann::ordered_json(*sum.mean_l_c) : nlohmann::ordered_json(nullptr);
            doc["mean_total"] = sum.mean_total;
            const auto opt = [](double m) {
                return m > 0.0 ? nlohmann::ordered_json(optimal_log_variance(m)) : nlohmann::ordered_json(nullptr);
            };
            doc["optimal_s"] = {{"s_x", opt(sum.mean_l_x)},
                                {"s_q", opt(sum.mean_l_q)},
                                {"s_c", sum.mean_l_c ? opt(*sum.mean_l_c) : nlohmann::ordered_json(nullptr)}};
            doc["gradient_check_max_abs_error"] = worst_grad;
            doc["per_sample"] = std::move(samples);
            if (!out_path.empty()) {
                outputs.add(out_path, doc.dump(2) + "\n");
            }
            out << "samples=" << sum.samples << " icsc_skipped=" << sum.icsc_skipped
                << " mean_total=" << fmt_num(sum.mean_total) << " gradient_check_max_abs_error=" << fmt_num(worst_grad)
                << '\n';
            if (!(worst_grad <= 1e-5)) {
                throw Error(ErrorCategory::internal_consistency, "finite-difference gradient disagrees with the analytic one");
            }
        } else if (synth->parsed()) {
            const PointCloud cloud = model == "surrogate" ? surrogate_aircraft_cloud(synth_step) : cylinder_cloud(cyl_spec);
            outputs.add(out_path, format_from_path(out_path) == CloudFormat::ply_ascii ? format_ply(cloud)
                                                                                       : format_xyz(cloud));
            out << "points=" << cloud.size() << '\n';
        }
        outputs.commit();
        return kOk;
    } catch (const Error& e) {
        err << "error[" << category_name(e.category()) << "]: " << e.what() << '\n';
        return exit_code_for(e.category());
    } catch (const std::exception& e) {
        err << "error[internal-consistency]: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace ptzinspect::cli
