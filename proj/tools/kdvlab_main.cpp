// Command-line frontend: derivation of coefficient-condition systems,
// parameter solving, numeric verification, and time evolution.

#include "kdvlab/elimination.hpp"
#include "kdvlab/evolver.hpp"
#include "kdvlab/json_io.hpp"
#include "kdvlab/numeric_verifier.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace kdvlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitInconsistent = 4;

double precision_default(double fallback) {
    if (const char* env = std::getenv("KDVLAB_PRECISION")) {
        try {
            double v = std::stod(env);
            if (v > 0) return v;
        } catch (...) {
        }
    }
    return fallback;
}

void emit(const JsonValue& doc, const std::string& out_path) {
    std::string text = doc.dump();
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        if (!os) throw std::runtime_error("cannot open " + out_path + " for writing");
        os << text;
    }
    std::cout << text;
}

struct CommonArgs {
    int order = 1;
    std::string ansatz = "soliton";
    double alpha = 0.1;
    double beta = 0.1;
    double m = 0.5;
    bool m_given = false;
    std::optional<double> amplitude;
    std::string out;
    bool parallel = false;
};

void add_model_flags(CLI::App* cmd, CommonArgs& a, bool need_physics) {
    cmd->add_option("--order", a.order, "perturbation order (1, 2 or 3)")
        ->check(CLI::Range(1, 3))
        ->required();
    cmd->add_option("--ansatz", a.ansatz,
                    "profile family: soliton|cnoidal|superposition-plus|superposition-minus")
        ->required();
    if (need_physics) {
        cmd->add_option("--alpha", a.alpha, "amplitude small parameter (> 0)")->required();
        cmd->add_option("--beta", a.beta, "dispersion small parameter (> 0)")->required();
        auto* mopt = cmd->add_option("--m", a.m, "elliptic parameter in (0,1), periodic families");
        cmd->callback([mopt, &a]() { a.m_given = mopt->count() > 0; });
        cmd->add_option_function<double>(
            "--amplitude", [&a](double v) { a.amplitude = v; },
            "amplitude A (free parameter of first-order families)");
    }
    cmd->add_option("--out", a.out, "write the JSON document here as well as stdout");
    cmd->add_flag("--parallel", a.parallel, "use the OpenMP kernels");
}

ConsistencyVerdict run_solve(const CommonArgs& a) {
    AnsatzFamily fam = family_from_name(a.ansatz);
    Exec exec = a.parallel ? Exec::parallel : Exec::serial;
    switch (fam) {
        case AnsatzFamily::soliton:
            return solve_soliton(a.order, a.alpha, a.beta, a.amplitude, exec);
        case AnsatzFamily::cnoidal:
            if (a.order < 3 && !a.m_given)
                throw std::invalid_argument("periodic families need --m");
            return solve_cnoidal(a.order, a.alpha, a.beta, a.m, a.amplitude, exec);
        case AnsatzFamily::superposition_plus:
        case AnsatzFamily::superposition_minus:
            if (a.order < 3 && !a.m_given)
                throw std::invalid_argument("periodic families need --m");
            return solve_superposition(a.order, fam == AnsatzFamily::superposition_plus, a.alpha,
                                       a.beta, a.m, a.amplitude, exec);
    }
    throw std::invalid_argument("unknown ansatz");
}

int cmd_derive(const CommonArgs& a) {
    ConditionSystem sys = derive_conditions(family_from_name(a.ansatz), a.order);
    emit(system_to_json(sys), a.out);
    return kExitOk;
}

int cmd_equation(int order, const std::string& out) {
    emit(equation_to_json(get_equation(order)), out);
    return kExitOk;
}

int cmd_solve(const CommonArgs& a) {
    ConsistencyVerdict v = run_solve(a);
    emit(verdict_to_json(v, a.alpha, a.beta), a.out);
    return v.kind == VerdictKind::inconsistent ? kExitInconsistent : kExitOk;
}

int cmd_verify(const CommonArgs& a, const std::string& params_file, int grid_n, double domain_l,
               double threshold) {
    std::vector<SolutionParams> sols;
    if (!params_file.empty()) {
        sols = params_from_json_file(params_file);
    } else {
        ConsistencyVerdict v = run_solve(a);
        if (v.kind == VerdictKind::inconsistent) {
            emit(verdict_to_json(v, a.alpha, a.beta), a.out);
            return kExitInconsistent;
        }
        sols = v.solutions;
    }
    if (sols.empty()) throw std::invalid_argument("nothing to verify: no solutions");

    Exec exec = a.parallel ? Exec::parallel : Exec::serial;
    JsonValue report = JsonValue::object();
    report.set("threshold", JsonValue::number(threshold));
    JsonValue items = JsonValue::array();
    bool all_pass = true;
    for (const auto& s : sols) {
        double L = domain_l > 0 ? domain_l : 32.0 / s.inverse_width;
        GridSpec grid{-L / 2, L, grid_n};
        int order = s.order > 0 ? s.order : a.order;
        double res = residual_max(s, order, a.alpha, a.beta, grid, 0.0, exec);
        JsonValue item = JsonValue::object();
        item.set("params", params_to_json(s));
        item.set("residual_max", JsonValue::number(res));
        bool pass = res <= threshold;
        if (is_elliptic(s.family)) {
            double mean = volume_mean(s);
            item.set("volume_mean", JsonValue::number(mean));
            pass = pass && std::abs(mean) <= 1e-10;
        }
        item.set("status", JsonValue::string(pass ? "PASS" : "FAIL"));
        all_pass = all_pass && pass;
        items.push(std::move(item));
    }
    report.set("results", std::move(items));
    report.set("status", JsonValue::string(all_pass ? "PASS" : "FAIL"));
    emit(report, a.out);
    return kExitOk;
}

int cmd_evolve(const CommonArgs& a, int grid_n, double domain_l, double dt, double t_final,
               int snapshots, const std::string& out_dir, bool collide, double a1, double a2,
               double separation) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    Exec exec = a.parallel ? Exec::parallel : Exec::serial;

    JsonValue manifest = JsonValue::object();
    if (collide) {
        CollisionReport rep = collision_experiment(a.order, a.alpha, a.beta, a1, a2, separation,
                                                   t_final, grid_n, exec);
        write_field_csv(rep.initial_field, out_dir + "/collision_initial.csv");
        write_field_csv(rep.final_field, out_dir + "/collision_final.csv");
        manifest.set("experiment", JsonValue::string("collision"));
        manifest.set("order", JsonValue::integer(a.order));
        manifest.set("alpha", JsonValue::number(a.alpha));
        manifest.set("beta", JsonValue::number(a.beta));
        manifest.set("A1", JsonValue::number(a1));
        manifest.set("A2", JsonValue::number(a2));
        manifest.set("separation", JsonValue::number(separation));
        manifest.set("dt", JsonValue::number(rep.run.dt_used));
        manifest.set("reseparated", JsonValue::boolean(rep.reseparated));
        manifest.set("inconclusive", JsonValue::boolean(!rep.reseparated));
        manifest.set("t_reseparation", JsonValue::number(rep.t_reseparation));
        manifest.set("radiation_rel", JsonValue::number(rep.radiation_rel));
        manifest.set("shape_misfit", JsonValue::number(rep.shape_misfit));
        manifest.set("fitted_A1", JsonValue::number(rep.fitted_A1));
        manifest.set("fitted_A2", JsonValue::number(rep.fitted_A2));
        manifest.set("initial_csv", JsonValue::string("collision_initial.csv"));
        manifest.set("final_csv", JsonValue::string("collision_final.csv"));
        emit(manifest, out_dir + "/manifest.json");
        return kExitOk;
    }

    ConsistencyVerdict v = run_solve(a);
    if (v.kind == VerdictKind::inconsistent) {
        emit(verdict_to_json(v, a.alpha, a.beta), a.out);
        return kExitInconsistent;
    }
    if (v.solutions.empty()) throw std::invalid_argument("no concrete solution to evolve");
    SolutionParams s = v.solutions.front();

    double L = domain_l > 0 ? domain_l : 32.0 / s.inverse_width;
    GridSpec grid{-L / 2, L, grid_n};
    WaveField init = eval_field(s, grid, 0.0, exec);

    EvolveOptions opts;
    opts.order = a.order;
    opts.alpha = a.alpha;
    opts.beta = a.beta;
    opts.t_final = t_final;
    opts.dt = dt;
    opts.snapshot_count = snapshots;
    opts.exec = exec;
    EvolutionRun run = evolve(init, opts);

    manifest.set("experiment", JsonValue::string("single"));
    manifest.set("params", params_to_json(s));
    manifest.set("order", JsonValue::integer(a.order));
    manifest.set("alpha", JsonValue::number(a.alpha));
    manifest.set("beta", JsonValue::number(a.beta));
    manifest.set("grid_n", JsonValue::integer(grid_n));
    manifest.set("domain_l", JsonValue::number(L));
    manifest.set("dt", JsonValue::number(run.dt_used));
    manifest.set("t_final", JsonValue::number(t_final));

    JsonValue snaps = JsonValue::array();
    for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
        char name[48];
        std::snprintf(name, sizeof name, "snap_%04zu.csv", i);
        write_field_csv(run.snapshots[i].field, out_dir + "/" + name);
        JsonValue rec = JsonValue::object();
        rec.set("t", JsonValue::number(run.snapshots[i].t));
        rec.set("file", JsonValue::string(name));
        snaps.push(std::move(rec));
    }
    manifest.set("snapshots", std::move(snaps));

    JsonValue mass = JsonValue::array();
    for (double x : run.mass_series) mass.push(JsonValue::number(x));
    manifest.set("mass_series", std::move(mass));
    manifest.set("mass_drift",
                 JsonValue::number(std::abs(run.mass_series.back() - run.mass_series.front())));
    manifest.set("measured_velocity", JsonValue::number(measure_velocity(run)));
    manifest.set("predicted_velocity", JsonValue::number(s.velocity));

    // gnuplot-friendly two-column dump of the final state
    {
        const WaveField& f = run.snapshots.back().field;
        std::ofstream os(out_dir + "/final_profile.dat");
        for (std::size_t i = 0; i < f.samples.size(); ++i)
            os << format_double(f.x_at(i)) << " " << format_double(f.samples[i]) << "\n";
    }
    emit(manifest, out_dir + "/manifest.json");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "kdvlab: traveling-wave condition systems, solutions, certificates and\n"
        "pseudo-spectral evolution for the first-, second- and third-order weakly\n"
        "nonlinear shallow-water wave equations.\n\n"
        "Exit codes: 0 success, 2 usage error, 3 domain error,\n"
        "4 solution requested but the system is inconsistent.\n"
        "KDVLAB_PRECISION overrides the default verification tolerance."};
    app.require_subcommand(1);

    CommonArgs da, sa, va, ea;
    auto* derive = app.add_subcommand("derive", "derive the coefficient-condition system");
    add_model_flags(derive, da, false);

    int eq_order = 1;
    std::string eq_out;
    auto* equation = app.add_subcommand("equation", "print a catalog equation as JSON");
    equation->add_option("--order", eq_order, "perturbation order")->check(CLI::Range(1, 3))->required();
    equation->add_option("--out", eq_out, "also write to this path");

    auto* solve = app.add_subcommand("solve", "solve for (A, B, v, D) or certify inconsistency");
    add_model_flags(solve, sa, true);

    auto* verify = app.add_subcommand("verify", "grid residual / volume check of solutions");
    add_model_flags(verify, va, true);
    std::string params_file;
    int v_grid_n = 2048;
    double v_domain_l = 0;
    double v_threshold = precision_default(1e-9);
    verify->add_option("--params-file", params_file, "solve output JSON to verify");
    verify->add_option("--grid-n", v_grid_n, "grid size (power of two)");
    verify->add_option("--domain-l", v_domain_l, "domain length (default 32 widths)");
    verify->add_option("--threshold", v_threshold, "residual PASS threshold");

    auto* evolve_cmd = app.add_subcommand("evolve", "pseudo-spectral time evolution");
    add_model_flags(evolve_cmd, ea, true);
    int e_grid_n = 1024, e_snapshots = 41;
    double e_domain_l = 0, e_dt = 0, e_t_final = 20.0;
    std::string e_out_dir = "kdvlab_run";
    bool collide = false;
    double c_a1 = 1.0, c_a2 = 0.4, c_sep = 8.0;
    evolve_cmd->add_option("--grid-n", e_grid_n, "grid size (power of two)");
    evolve_cmd->add_option("--domain-l", e_domain_l, "domain length (default 32 widths)");
    evolve_cmd->add_option("--dt", e_dt, "time step (default from the stability rule)");
    evolve_cmd->add_option("--t-final", e_t_final, "final time");
    evolve_cmd->add_option("--snapshots", e_snapshots, "snapshot count");
    evolve_cmd->add_option("--out-dir", e_out_dir, "output directory");
    evolve_cmd->add_flag("--collide", collide, "two-soliton overtaking experiment");
    evolve_cmd->add_option("--a1", c_a1, "taller (rear) amplitude");
    evolve_cmd->add_option("--a2", c_a2, "shorter (front) amplitude");
    evolve_cmd->add_option("--separation", c_sep, "initial peak separation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (derive->parsed()) return cmd_derive(da);
        if (equation->parsed()) return cmd_equation(eq_order, eq_out);
        if (solve->parsed()) return cmd_solve(sa);
        if (verify->parsed()) return cmd_verify(va, params_file, v_grid_n, v_domain_l, v_threshold);
        if (evolve_cmd->parsed())
            return cmd_evolve(ea, e_grid_n, e_domain_l, e_dt, e_t_final, e_snapshots, e_out_dir,
                              collide, c_a1, c_a2, c_sep);
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
