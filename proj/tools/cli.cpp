#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dendrite/battery.hpp"

namespace dendrite::cli {

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DENDRITE_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw ParseError("DENDRITE_SEED is not an unsigned integer");
        }
    }
    return 1;
}

void emit(std::ostream& out, const Report& report, bool no_timestamp) {
    if (!no_timestamp) {
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        out << "timestamp: " << std::chrono::duration_cast<std::chrono::seconds>(now).count() << "\n";
    }
    out << report.str();
}

std::string class_name(KneadingKind kind) {
    switch (kind) {
        case KneadingKind::Periodic: return "periodic";
        case KneadingKind::NonRecurrent: return "non-recurrent";
        case KneadingKind::RecurrentNonperiodic: return "recurrent-nonperiodic";
    }
    return "?";
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file \"" + path + "\"");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open output file \"" + path + "\"");
    return out;
}

DeltaPseudoOrbit load_orbit(const std::string& path, SymSeq* tau_out) {
    auto in = open_input(path);
    OrbitFile file = read_orbit_file(in);
    if (tau_out) *tau_out = file.tau;
    return validate(std::move(file.points), file.scale, file.tau);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Baldwin itinerary spaces: shadowing and omega-limit machinery for dendrite maps"};
    app.require_subcommand(1);
    bool no_timestamp = false;
    app.add_flag("--no-timestamp", no_timestamp, "suppress the timestamp report line");

    // check-tau
    auto* check_tau = app.add_subcommand("check-tau", "verify Lambda-acceptability of a kneading sequence");
    std::string ct_tau;
    std::int64_t ct_depth = 64;
    check_tau->add_option("--tau", ct_tau, "sequence literal or generator name")->required();
    check_tau->add_option("--depth", ct_depth, "verification depth for generator-backed sequences");

    // classify-tau
    auto* classify_tau = app.add_subcommand("classify-tau", "periodic / non-recurrent / recurrent");
    std::string cl_tau;
    std::int64_t cl_depth = 4096;
    classify_tau->add_option("--tau", cl_tau)->required();
    classify_tau->add_option("--depth", cl_depth, "return-time scan depth for generator-backed sequences");

    // distance
    auto* distance = app.add_subcommand("distance", "cylinder proximity of two points");
    std::string d_tau, d_x, d_y;
    std::int64_t d_cap = 64;
    distance->add_option("--tau", d_tau)->required();
    distance->add_option("--x", d_x)->required();
    distance->add_option("--y", d_y)->required();
    distance->add_option("--cap", d_cap, "agreement scan cap");

    // simeq
    auto* simeq_cmd = app.add_subcommand("simeq", "test truncation equivalence of two finite words");
    std::string s_tau, s_x, s_y;
    simeq_cmd->add_option("--tau", s_tau)->required();
    simeq_cmd->add_option("--x", s_x, "finite word over {0,1,*}")->required();
    simeq_cmd->add_option("--y", s_y, "finite word over {0,1,*}")->required();

    // orbit gen | check
    auto* orbit = app.add_subcommand("orbit", "pseudo-orbit utilities");
    orbit->require_subcommand(1);
    auto* orbit_gen = orbit->add_subcommand("gen", "generate a seeded random delta pseudo-orbit");
    std::string og_tau, og_out;
    std::int64_t og_delta_exp = -1, og_length = 100;
    std::uint64_t og_seed = 0;
    bool og_seed_set = false;
    double og_flip_rate = 0.3;
    orbit_gen->add_option("--tau", og_tau)->required();
    orbit_gen->add_option("--delta-exp", og_delta_exp, "N_delta; delta = 2^-N")->required();
    orbit_gen->add_option("--length", og_length);
    orbit_gen->add_option("--seed", og_seed)->each([&](const std::string&) { og_seed_set = true; });
    orbit_gen->add_option("--flip-rate", og_flip_rate);
    orbit_gen->add_option("--out", og_out, "orbit file path")->required();
    auto* orbit_check = orbit->add_subcommand("check", "validate a pseudo-orbit file");
    std::string oc_in;
    orbit_check->add_option("--in", oc_in)->required();

    // delta-for-eps
    auto* dfe = app.add_subcommand("delta-for-eps", "the shadowing delta for a requested eps");
    std::string dfe_tau;
    std::int64_t dfe_eps = 4, dfe_depth = 49200;
    dfe->add_option("--tau", dfe_tau)->required();
    dfe->add_option("--eps-exp", dfe_eps, "N_eps; eps = 2^-N")->required();
    dfe->add_option("--depth", dfe_depth, "classification depth for generator-backed sequences");

    // shadow
    auto* shadow_cmd = app.add_subcommand("shadow", "canonical shadow of an orbit file, assigned and verified");
    std::string sh_in, sh_policy = "prefer-orbit";
    std::int64_t sh_eps = 4;
    std::uint64_t sh_seed = 0;
    bool sh_seed_set = false;
    shadow_cmd->add_option("--in", sh_in)->required();
    shadow_cmd->add_option("--eps-exp", sh_eps)->required();
    shadow_cmd->add_option("--policy", sh_policy, "all-zero | all-one | prefer-orbit | random");
    shadow_cmd->add_option("--seed", sh_seed)->each([&](const std::string&) { sh_seed_set = true; });

    // ict check
    auto* ict = app.add_subcommand("ict", "internal chain transitivity");
    ict->require_subcommand(1);
    auto* ict_check = ict->add_subcommand("check", "strong connectivity of the eps transition graph");
    std::string ic_in;
    std::int64_t ic_eps = 4;
    ict_check->add_option("--in", ic_in, "set file")->required();
    ict_check->add_option("--eps-exp", ic_eps)->required();

    // omega build | approx | verify
    auto* omega = app.add_subcommand("omega", "omega-limit machinery");
    omega->require_subcommand(1);
    auto* omega_build = omega->add_subcommand("build", "build a point whose omega-limit set is the given set");
    std::string ob_in;
    std::int64_t ob_depth = 10000, ob_eps = 4;
    omega_build->add_option("--in", ob_in, "set file")->required();
    omega_build->add_option("--depth", ob_depth);
    omega_build->add_option("--eps-exp", ob_eps, "verification scale");
    auto* omega_approx = omega->add_subcommand("approx", "finite-horizon omega-limit approximation");
    std::string oa_tau, oa_z;
    std::int64_t oa_eps = 4, oa_horizon = 10000, oa_burnin = 100, oa_depth = 4096;
    omega_approx->add_option("--tau", oa_tau)->required();
    omega_approx->add_option("--z", oa_z, "point literal or generator name")->required();
    omega_approx->add_option("--eps-exp", oa_eps);
    omega_approx->add_option("--horizon", oa_horizon);
    omega_approx->add_option("--burn-in", oa_burnin);
    omega_approx->add_option("--depth", oa_depth, "classification depth for generator-backed tau");
    auto* omega_verify = omega->add_subcommand("verify", "check omega(z) = B at finite resolution");
    std::string ov_in, ov_z;
    std::int64_t ov_eps = 4, ov_horizon = 10000, ov_burnin = 100, ov_min_visits = 10;
    omega_verify->add_option("--in", ov_in, "set file")->required();
    omega_verify->add_option("--z", ov_z)->required();
    omega_verify->add_option("--eps-exp", ov_eps);
    omega_verify->add_option("--horizon", ov_horizon);
    omega_verify->add_option("--burn-in", ov_burnin);
    omega_verify->add_option("--min-visits", ov_min_visits);

    // julia detect | kneading | render
    auto* julia = app.add_subcommand("julia", "numeric quadratic-map bridge");
    julia->require_subcommand(1);
    auto* julia_detect = julia->add_subcommand("detect", "Misiurewicz classification of c");
    double jd_re = 0.0, jd_im = 0.0, jd_tol = 1e-9;
    std::int64_t jd_steps = 1000;
    julia_detect->add_option("--re", jd_re)->required();
    julia_detect->add_option("--im", jd_im)->required();
    julia_detect->add_option("--tol", jd_tol);
    julia_detect->add_option("--steps", jd_steps);
    auto* julia_kneading = julia->add_subcommand("kneading", "extract the kneading sequence of c");
    double jk_re = 0.0, jk_im = 0.0, jk_theta = 0.0, jk_star_tol = 1e-6, jk_tol = 1e-9;
    std::int64_t jk_depth = 64;
    julia_kneading->add_option("--re", jk_re)->required();
    julia_kneading->add_option("--im", jk_im)->required();
    julia_kneading->add_option("--theta", jk_theta, "partition half-plane angle");
    julia_kneading->add_option("--star-tol", jk_star_tol);
    julia_kneading->add_option("--tol", jk_tol);
    julia_kneading->add_option("--depth", jk_depth);
    auto* julia_render = julia->add_subcommand("render", "escape-time PPM image");
    double jr_re = 0.0, jr_im = 0.0, jr_center_re = 0.0, jr_center_im = 0.0, jr_span = 4.0;
    std::int64_t jr_width = 256, jr_height = 256, jr_max_iter = 64;
    std::string jr_out;
    julia_render->add_option("--re", jr_re)->required();
    julia_render->add_option("--im", jr_im)->required();
    julia_render->add_option("--width", jr_width);
    julia_render->add_option("--height", jr_height);
    julia_render->add_option("--center-re", jr_center_re);
    julia_render->add_option("--center-im", jr_center_im);
    julia_render->add_option("--span", jr_span);
    julia_render->add_option("--max-iter", jr_max_iter);
    julia_render->add_option("--out", jr_out, "PPM file path")->required();

    // battery
    auto* battery = app.add_subcommand("battery", "run the acceptance battery from a config file");
    std::string bt_config;
    battery->add_option("--config", bt_config, "key: value config file")->required();

    std::vector<const char*> argv;
    argv.push_back("dendrite");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        Report report;
        int exit_code = 0;

        if (*check_tau) {
            const SymSeq tau = parse_point(ct_tau);
            const Verification v = is_lambda_acceptable(tau, ct_depth);
            report.add("tau", tau.describe());
            report.add("verdict", v.verdict ? "acceptable" : "not-acceptable");
            report.add("exact", v.exact);
            report.add("depth", v.depth);
            if (v.witness) report.add("n", *v.witness);
            exit_code = v.verdict ? 0 : 1;
        } else if (*classify_tau) {
            const SymSeq tau = parse_point(cl_tau);
            const KneadingClass cls = classify(tau, cl_depth);
            report.add("tau", tau.describe());
            report.add("class", class_name(cls.kind));
            report.add("exact", cls.exact);
            if (cls.kind == KneadingKind::Periodic) report.add("period", cls.period);
            if (cls.kind == KneadingKind::NonRecurrent) report.add("horizon_m", cls.horizon);
            if (cls.kind == KneadingKind::RecurrentNonperiodic) {
                std::ostringstream ms;
                for (std::size_t i = 0; i < cls.milestone_seq.values.size(); ++i) {
                    if (i) ms << " ";
                    ms << cls.milestone_seq.values[i];
                }
                report.add("milestones", ms.str());
                report.add("milestones_certified_to", cls.milestone_seq.certified_to);
            }
        } else if (*distance) {
            const SymSeq tau = parse_point(d_tau);
            const SymSeq x = parse_point(d_x);
            const SymSeq y = parse_point(d_y);
            const AgreementResult a = agreement_depth(x, y, tau, d_cap);
            const Proximity p = proximity(x, y, tau, d_cap);
            report.add("agreement", a.failed ? "fail_at " + std::to_string(a.value)
                                             : "at_least " + std::to_string(a.value));
            report.add("proximity_exponent", p.exponent);
            report.add("proximity_is_upper_bound", p.is_upper_bound);
            report.add("proximity", (p.is_upper_bound ? std::string("<= ") : std::string()) + "2^-" +
                                        std::to_string(p.exponent));
        } else if (*simeq_cmd) {
            const SymSeq tau = parse_point(s_tau);
            const FiniteWord x = word_from_string(s_x);
            const FiniteWord y = word_from_string(s_y);
            const SimeqResult res = simeq(x, y, tau);
            report.add("holds", res.holds);
            if (res.witness) {
                report.add("witness_star_position", res.witness->star_position);
                report.add("witness_word", to_string(res.witness->word));
            }
            exit_code = res.holds ? 0 : 1;
        } else if (*orbit_gen) {
            const SymSeq tau = parse_point(og_tau);
            const DendriteSpace space = make_space(tau, tau.is_exact() ? 64 : 49200);
            const DeltaScale scale = DeltaScale::from_exponent(og_delta_exp);
            const DeltaPseudoOrbit o = random_pseudo_orbit(space, scale, og_length,
                                                           og_seed_set ? og_seed : default_seed(),
                                                           og_flip_rate);
            auto file = open_output(og_out);
            write_orbit_file(file, o);
            report.add("file", og_out);
            report.add("points", o.size());
            report.add("delta_exponent", scale.n_delta);
            report.add("validated", true);
        } else if (*orbit_check) {
            auto in = open_input(oc_in);
            const OrbitFile file = read_orbit_file(in);
            const auto violation = first_violation(file.points, file.scale, file.tau);
            report.add("points", static_cast<std::int64_t>(file.points.size()));
            report.add("delta_exponent", file.scale.n_delta);
            report.add("validated", !violation.has_value());
            if (violation) report.add("violation_index", *violation);
            exit_code = violation ? 1 : 0;
        } else if (*dfe) {
            const SymSeq tau = parse_point(dfe_tau);
            const DendriteSpace space = make_space(tau, tau.is_exact() ? 64 : dfe_depth);
            const DeltaScale d = delta_for_epsilon(space, EpsilonScale::from_exponent(dfe_eps));
            report.add("class", class_name(space.classification.kind));
            report.add("eps_exponent", dfe_eps);
            report.add("n_delta", d.n_delta);
        } else if (*shadow_cmd) {
            SymSeq tau;
            const DeltaPseudoOrbit o = load_orbit(sh_in, &tau);
            const DendriteSpace space = make_space(tau, 64);
            const EpsilonScale eps = EpsilonScale::from_exponent(sh_eps);
            const AssignmentPolicy policy =
                AssignmentPolicy::from_name(sh_policy, sh_seed_set ? sh_seed : default_seed());
            const CanonicalShadow shadow = canonical_shadow(o, eps, space);
            const SymSeq z = assign_shadow(shadow, policy, space, o.scale().n_delta + 64);
            const ShadowVerifyReport verify = verify_shadowing(o, z, eps, space);
            report.add("eps_exponent", eps.n_eps);
            report.add("delta_exponent", o.scale().n_delta);
            report.add("diamonds", static_cast<std::int64_t>(shadow.diamonds.size()));
            report.add("policy", policy.name());
            report.add("verified", verify.verified);
            report.add("first_failure",
                       verify.first_failure ? std::to_string(*verify.first_failure) : std::string("none"));
            if (z.is_exact()) report.add("z", z.format());
            exit_code = verify.verified ? 0 : 1;
        } else if (*ict_check) {
            auto in = open_input(ic_in);
            const SetFile file = read_set_file(in);
            const DendriteSpace space = make_space(file.tau, 64);
            const FinitePointSet set = make_point_set(file.points, space);
            const EpsilonScale eps = EpsilonScale::from_exponent(ic_eps);
            const IctResult res = is_ict(set, eps, space);
            const bool wi = is_weakly_incompressible(set, eps, space);
            report.add("points", set.size());
            report.add("eps_exponent", eps.n_eps);
            report.add("ict", res.ict);
            report.add("weakly_incompressible", wi);
            report.add("notions_agree", res.ict == wi);
            if (res.disconnected) {
                report.add("witness_from", res.disconnected->first);
                report.add("witness_to", res.disconnected->second);
            } else {
                std::ostringstream walk;
                for (std::size_t i = 0; i < res.closed_walk.size(); ++i) {
                    if (i) walk << " ";
                    walk << res.closed_walk[i];
                }
                report.add("closed_walk", walk.str());
            }
            exit_code = res.ict ? 0 : 1;
        } else if (*omega_build) {
            auto in = open_input(ob_in);
            const SetFile file = read_set_file(in);
            const DendriteSpace space = make_space(file.tau, 64);
            const FinitePointSet set = make_point_set(file.points, space);
            const OmegaBuildResult built = build_omega_point(set, space, ob_depth);
            const EpsilonScale eps = EpsilonScale::from_exponent(ob_eps);
            std::int64_t burn_in = 0;
            for (const OmegaSegment& seg : built.plan.segments)
                if (seg.index >= eps.n_eps + 1) {
                    burn_in = seg.start_offset;
                    break;
                }
            const OmegaVerifyReport verify = verify_omega_equals(
                set, built.z, eps, space, ob_depth - 1 - eps.n_eps, 10, burn_in);
            report.add("depth", ob_depth);
            report.add("segments", static_cast<std::int64_t>(built.plan.segments.size()));
            report.add("z_prefix", to_string(built.z.truncated(std::min<std::int64_t>(63, ob_depth - 1))));
            report.add("burn_in", burn_in);
            report.add("superset_ok", verify.superset_ok);
            report.add("subset_ok", verify.subset_ok);
            for (std::size_t b = 0; b < verify.visits.size(); ++b)
                report.add("visits_" + std::to_string(b), verify.visits[b]);
            exit_code = (verify.superset_ok && verify.subset_ok) ? 0 : 1;
        } else if (*omega_approx) {
            const SymSeq tau = parse_point(oa_tau);
            const DendriteSpace space = make_space(tau, tau.is_exact() ? 64 : oa_depth);
            const SymSeq z = parse_point(oa_z);
            const EpsilonScale eps = EpsilonScale::from_exponent(oa_eps);
            const OmegaApproximation omega = approximate_omega(z, eps, space, oa_horizon, oa_burnin);
            report.add("representatives", omega.set.size());
            for (std::int64_t i = 0; i < omega.set.size(); ++i) {
                const SymSeq& p = omega.set.points[static_cast<std::size_t>(i)];
                report.add("point_" + std::to_string(i), p.is_exact() ? p.format() : p.describe());
                report.add("visits_" + std::to_string(i), omega.visit_counts[static_cast<std::size_t>(i)]);
            }
        } else if (*omega_verify) {
            auto in = open_input(ov_in);
            const SetFile file = read_set_file(in);
            const DendriteSpace space = make_space(file.tau, 64);
            const FinitePointSet set = make_point_set(file.points, space);
            const SymSeq z = parse_point(ov_z);
            const EpsilonScale eps = EpsilonScale::from_exponent(ov_eps);
            const OmegaVerifyReport verify =
                verify_omega_equals(set, z, eps, space, ov_horizon, ov_min_visits, ov_burnin);
            report.add("superset_ok", verify.superset_ok);
            report.add("subset_ok", verify.subset_ok);
            for (std::size_t b = 0; b < verify.visits.size(); ++b)
                report.add("visits_" + std::to_string(b), verify.visits[b]);
            if (verify.stray_iterate) report.add("stray_iterate", *verify.stray_iterate);
            if (verify.unvisited_member) report.add("unvisited_member", *verify.unvisited_member);
            exit_code = (verify.superset_ok && verify.subset_ok) ? 0 : 1;
        } else if (*julia_detect) {
            const ComplexParam param{{jd_re, jd_im}, jd_tol};
            const MisiurewiczVerdict v = misiurewicz_detect(param, jd_steps);
            switch (v.kind) {
                case MisiurewiczKind::Misiurewicz: report.add("verdict", "misiurewicz"); break;
                case MisiurewiczKind::PeriodicCritical: report.add("verdict", "periodic-critical"); break;
                case MisiurewiczKind::Escapes: report.add("verdict", "escapes"); break;
                case MisiurewiczKind::Undecided: report.add("verdict", "undecided"); break;
            }
            if (v.kind == MisiurewiczKind::Misiurewicz || v.kind == MisiurewiczKind::PeriodicCritical) {
                report.add("preperiod", v.preperiod);
                report.add("period", v.period);
            }
            report.add("tolerance", v.tolerance);
        } else if (*julia_kneading) {
            const ComplexParam param{{jk_re, jk_im}, jk_tol};
            const PartitionSpec partition{jk_theta, jk_star_tol};
            const SymSeq tau = extract_kneading(param, partition, jk_depth);
            const Verification v = is_lambda_acceptable(tau, 30);
            report.add("tau", tau.format());
            report.add("strictly_preperiodic", !tau.preperiod().empty());
            report.add("acceptable", v.verdict);
            exit_code = v.verdict ? 0 : 1;
        } else if (*julia_render) {
            const ComplexParam param{{jr_re, jr_im}, 1e-9};
            ImageSpec spec;
            spec.width = jr_width;
            spec.height = jr_height;
            spec.center = {jr_center_re, jr_center_im};
            spec.span = jr_span;
            spec.max_iter = jr_max_iter;
            const JuliaImage image = render(param, spec);
            auto file = open_output(jr_out);
            write_ppm(file, image);
            report.add("file", jr_out);
            report.add("width", image.width);
            report.add("height", image.height);
            report.add("max_iter", image.max_iter);
        } else if (*battery) {
            auto in = open_input(bt_config);
            const BatteryConfig config = parse_battery_config(in);
            const auto results = run_battery(config, &out);
            report = battery_report(results);
            for (const CriterionResult& r : results) exit_code = exit_code == 0 && r.pass ? 0 : 1;
        }

        emit(out, report, no_timestamp);
        return exit_code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace dendrite::cli
