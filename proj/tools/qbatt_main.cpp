// qbatt — command-line front end: cycle reports, exact fluctuation
// distributions, parameter sweeps with figure presets, and the
// composite-space oracle check.
//
// Exit codes: 0 success, 1 usage, 2 validation, 3 verification failure.

#include "CLI11.hpp"
#include "json.hpp"
#include "qbatt/battery.hpp"
#include "qbatt/csv.hpp"
#include "qbatt/figures.hpp"
#include "qbatt/model_file.hpp"
#include "qbatt/models.hpp"
#include "qbatt/oracle.hpp"
#include "qbatt/trajectory.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace qbatt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitVerification = 3;

struct PhysicalParams {
    double beta = 1.0;
    double h = 1.0;
    double a = 1.0;
    double j = 1.0;
    double jp = 1.0;
    double tau = 1.0;
    double hbar = 1.0;
};

struct OutputOpts {
    std::string format = "csv";
    std::string path;  // empty = stdout
};

struct ModelChoice {
    std::string name = "1q";
    std::string file;
};

void add_physical_options(CLI::App* cmd, PhysicalParams& p) {
    cmd->set_help_flag("--help", "print help and exit");
    cmd->add_option("--beta", p.beta, "inverse temperature");
    cmd->add_option("--h", p.h, "level splitting");
    cmd->add_option("--a", p.a, "1q coupling strength");
    cmd->add_option("--J", p.j, "2q intra-battery exchange");
    cmd->add_option("--Jp", p.jp, "2q battery-ancilla exchange");
    cmd->add_option("--tau", p.tau, "collision time");
    cmd->add_option("--hbar", p.hbar, "reduced Planck constant (energies are in units "
                                      "where only tau/hbar matters)");
}

void add_model_options(CLI::App* cmd, ModelChoice& m) {
    cmd->add_option("--model", m.name, "1q | thermal-1q | 2q | custom")
        ->check(CLI::IsMember({"1q", "thermal-1q", "2q", "custom"}));
    cmd->add_option("--file", m.file, "model file for --model custom");
}

void add_output_options(CLI::App* cmd, OutputOpts& o) {
    cmd->add_option("--format", o.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", o.path, "output file (default: stdout)");
}

Model make_model(const ModelChoice& choice, const PhysicalParams& p, double& beta_out) {
    beta_out = p.beta;
    if (choice.name == "1q") {
        return build_1q({p.h, p.a, p.tau, p.hbar, p.beta});
    }
    if (choice.name == "thermal-1q") {
        return build_thermal_1q({p.h, p.a, p.tau, p.hbar, p.beta});
    }
    if (choice.name == "2q") {
        return build_2q({p.h, p.j, p.jp, p.tau, p.hbar, p.beta});
    }
    if (choice.file.empty()) {
        throw std::invalid_argument("--model custom requires --file");
    }
    Model m = load_custom_model(choice.file);
    beta_out = m.spec.beta();
    return m;
}

std::vector<std::pair<std::string, std::string>> param_meta(const ModelChoice& choice,
                                                            const PhysicalParams& p) {
    std::vector<std::pair<std::string, std::string>> meta{{"model", choice.name}};
    if (choice.name == "custom") {
        meta.emplace_back("file", choice.file);
        return meta;
    }
    meta.emplace_back("beta", format_number(p.beta));
    meta.emplace_back("h", format_number(p.h));
    if (choice.name == "2q") {
        meta.emplace_back("J", format_number(p.j));
        meta.emplace_back("Jp", format_number(p.jp));
    } else {
        meta.emplace_back("a", format_number(p.a));
    }
    meta.emplace_back("tau", format_number(p.tau));
    meta.emplace_back("hbar", format_number(p.hbar));
    return meta;
}

// Streams either to stdout or to --output.
class OutputStream {
public:
    explicit OutputStream(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::invalid_argument("cannot open output file '" + path + "'");
        }
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

json meta_json(const std::vector<std::pair<std::string, std::string>>& meta) {
    json out;
    out["tool"] = std::string("qbatt ") + kVersion;
    for (const auto& [k, v] : meta) out[k] = v;
    return out;
}

// ---------------------------------- cycle -----------------------------------

int run_cycle(const ModelChoice& choice, const PhysicalParams& p, const OutputOpts& o) {
    double beta = 0.0;
    const Model m = make_model(choice, p, beta);
    const CycleReport r = cycle_report(m.es, beta);

    OutputStream out(o.path);
    const auto meta = param_meta(choice, p);
    if (o.format == "json") {
        json doc;
        doc["meta"] = meta_json(meta);
        doc["ergotropy"] = r.ergotropy;
        doc["recharging_work"] = r.recharging_work;
        if (r.eta_th) {
            doc["eta_th"] = *r.eta_th;
        } else {
            doc["eta_th"] = nullptr;
        }
        out.get() << doc.dump(2) << "\n";
    } else {
        write_csv_metadata(out.get(), meta);
        out.get() << "ergotropy,recharging_work,eta_th\n";
        out.get() << format_number(r.ergotropy) << "," << format_number(r.recharging_work)
                  << "," << (r.eta_th ? format_number(*r.eta_th) : std::string("inactive"))
                  << "\n";
    }
    return kExitOk;
}

// ------------------------------- distributions -------------------------------

int run_distributions(const ModelChoice& choice, const PhysicalParams& p, const OutputOpts& o,
                      const std::string& kind, const std::string& steps_arg,
                      const std::string& start) {
    double beta = 0.0;
    const Model m = make_model(choice, p, beta);

    const bool infinite = steps_arg == "inf";
    int steps = 0;
    if (!infinite) {
        try {
            std::size_t used = 0;
            steps = std::stoi(steps_arg, &used);
            if (used != steps_arg.size() || steps < 0) throw std::invalid_argument(steps_arg);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("--L must be a non-negative integer or 'inf', got '" +
                                        steps_arg + "'");
        }
    }
    if (kind == "efficiency" && !infinite) {
        throw std::invalid_argument(
            "--kind efficiency requires --L inf: only the completed recharge defines a "
            "cycle, a finite-L process leaves the passive state unrestored");
    }

    DiscreteDistribution dist = [&] {
        if (kind == "efficiency") return efficiency_distribution(m.es, beta);
        const RealVector p_ini = start == "equilibrium"
                                     ? m.es.equilibrium_populations(beta)
                                     : m.es.passive_populations(beta);
        const TrajectoryTable table =
            infinite ? stationary_table(m.es, beta)
                     : trajectory_table(transition_matrix(m.spec, m.es), p_ini, steps);
        const FluctuationDistributions d = energy_work_heat_distributions(table, m.es);
        if (kind == "work") return d.work;
        if (kind == "heat") return d.heat;
        return d.energy;
    }();

    auto meta = param_meta(choice, p);
    meta.emplace_back("kind", kind);
    meta.emplace_back("L", steps_arg);
    if (kind != "efficiency") meta.emplace_back("start", start);

    OutputStream out(o.path);
    if (o.format == "json") {
        json doc;
        doc["meta"] = meta_json(meta);
        doc["atoms"] = json::array();
        for (const auto& atom : dist.atoms()) {
            doc["atoms"].push_back({{"value", atom.value}, {"prob", atom.prob}});
        }
        doc["inf_prob"] = dist.inf_prob();
        out.get() << doc.dump(2) << "\n";
    } else {
        write_csv_metadata(out.get(), meta);
        write_distribution_csv(out.get(), dist);
    }
    return kExitOk;
}

// ---------------------------------- sweep ------------------------------------

int run_sweep(const ModelChoice& choice, const PhysicalParams& p, const OutputOpts& o,
              const std::string& preset, int steps, const std::string& outdir,
              const std::string& var, double from, double to, int points) {
    OutputStream out(o.path);

    if (preset == "fig1" || preset == "fig2") {
        const SweepGrid grid{0.05, 6.0, 120};
        if (!outdir.empty()) {
            std::ofstream a(outdir + (preset == "fig1" ? "/fig1a.csv" : "/fig2a.csv"));
            std::ofstream b(outdir + (preset == "fig1" ? "/fig1b.csv" : "/fig2b.csv"));
            if (!a || !b) throw std::invalid_argument("cannot write into '" + outdir + "'");
            preset == "fig1" ? write_fig1a_csv(a, grid) : write_fig2a_csv(a, grid);
            preset == "fig1" ? write_fig1b_csv(b, grid) : write_fig2b_csv(b, grid);
        }
        // merged table on the main stream
        std::ostringstream a_csv, b_csv;
        preset == "fig1" ? write_fig1a_csv(a_csv, grid) : write_fig2a_csv(a_csv, grid);
        preset == "fig1" ? write_fig1b_csv(b_csv, grid) : write_fig2b_csv(b_csv, grid);
        std::istringstream a_in(a_csv.str()), b_in(b_csv.str());
        std::string a_line, b_line;
        bool meta_done = false;
        while (std::getline(a_in, a_line) && std::getline(b_in, b_line)) {
            if (a_line.rfind('#', 0) == 0) {
                if (!meta_done) out.get() << a_line << "\n";
                continue;
            }
            meta_done = true;
            // drop the duplicated leading beta_h column of the second file
            out.get() << a_line << b_line.substr(b_line.find(',')) << "\n";
        }
        return kExitOk;
    }

    if (preset == "fig3") {
        const SweepGrid grid{0.1, 3.0, 300};
        if (!outdir.empty()) {
            std::ofstream f(outdir + "/fig3_L" + std::to_string(steps) + ".csv");
            if (!f) throw std::invalid_argument("cannot write into '" + outdir + "'");
            write_fig3_csv(f, grid, steps);
        }
        write_fig3_csv(out.get(), grid, steps);
        return kExitOk;
    }

    // generic sweep over one physical variable
    if (var.empty()) {
        throw std::invalid_argument("sweep without --preset requires --var/--from/--to/--points");
    }
    if (points < 1) throw std::invalid_argument("--points must be >= 1");

    auto meta = param_meta(choice, p);
    meta.emplace_back("var", var);
    meta.emplace_back("from", format_number(from));
    meta.emplace_back("to", format_number(to));
    meta.emplace_back("points", std::to_string(points));
    write_csv_metadata(out.get(), meta);
    out.get() << var << ",ergotropy,recharging_work,eta_th,lambda2,regular\n";

    for (int k = 0; k < points; ++k) {
        const double value = points == 1 ? from : from + (to - from) * k / (points - 1);
        PhysicalParams varied = p;
        if (var == "beta") varied.beta = value;
        else if (var == "h") varied.h = value;
        else if (var == "a") varied.a = value;
        else if (var == "J") varied.j = value;
        else if (var == "Jp") varied.jp = value;
        else if (var == "tau") varied.tau = value;
        else throw std::invalid_argument("unknown sweep variable '" + var + "'");

        double beta = 0.0;
        const Model m = make_model(choice, varied, beta);
        const CycleReport r = cycle_report(m.es, beta);
        const RegularityReport reg = is_regular(transition_matrix(m.spec, m.es));
        out.get() << format_number(value) << "," << format_number(r.ergotropy) << ","
                  << format_number(r.recharging_work) << ","
                  << (r.eta_th ? format_number(*r.eta_th) : std::string("inactive")) << ","
                  << format_number(reg.second_eigenvalue_modulus) << ","
                  << (reg.regular ? 1 : 0) << "\n";
    }
    return kExitOk;
}

// -------------------------------- oracle-check -------------------------------

int run_oracle_check(const ModelChoice& choice, const PhysicalParams& p, const OutputOpts& o,
                     int steps) {
    if (steps < 0 || steps > 3) {
        throw std::invalid_argument("oracle-check caps --L at 3 for the bundled models "
                                    "(composite enumeration grows as d^L), got " +
                                    std::to_string(steps));
    }
    double beta = 0.0;
    const Model m = make_model(choice, p, beta);

    const ReductionReport report = verify_reduction(m.spec, m.es, steps);
    const RealVector p_ini = m.es.passive_populations(beta);
    const FluctuationDistributions oracle =
        oracle_distributions(enumerate_trajectories(m.spec, p_ini, steps));
    const FluctuationDistributions reduced = energy_work_heat_distributions(
        trajectory_table(transition_matrix(m.spec, m.es), p_ini, steps), m.es);

    auto distance = [](const DiscreteDistribution& a, const DiscreteDistribution& b) {
        double d = std::abs(a.inf_prob() - b.inf_prob());
        for (const auto& atom : a.atoms())
            d = std::max(d, std::abs(atom.prob - b.prob_at(atom.value)));
        for (const auto& atom : b.atoms())
            d = std::max(d, std::abs(atom.prob - a.prob_at(atom.value)));
        return d;
    };
    const double dist = std::max({distance(oracle.energy, reduced.energy),
                                  distance(oracle.work, reduced.work),
                                  distance(oracle.heat, reduced.heat)});

    const double threshold = 1e-9;
    const bool pass = report.max() < threshold && dist < threshold;

    OutputStream out(o.path);
    auto meta = param_meta(choice, p);
    meta.emplace_back("L", std::to_string(steps));
    if (o.format == "json") {
        json doc;
        doc["meta"] = meta_json(meta);
        doc["q_violation"] = report.max_q_violation;
        doc["marginal_discrepancy"] = report.max_prob_discrepancy;
        doc["distribution_distance"] = dist;
        doc["threshold"] = threshold;
        doc["pass"] = pass;
        out.get() << doc.dump(2) << "\n";
    } else {
        write_csv_metadata(out.get(), meta);
        out.get() << "q_violation,marginal_discrepancy,distribution_distance,pass\n";
        out.get() << format_number(report.max_q_violation) << ","
                  << format_number(report.max_prob_discrepancy) << "," << format_number(dist)
                  << "," << (pass ? 1 : 0) << "\n";
    }
    return pass ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collision-model quantum battery toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));
    // --h is a physical parameter; keep only the long help flag
    app.set_help_flag("--help", "print help and exit");

    PhysicalParams params;
    ModelChoice model;
    OutputOpts output;

    auto* cycle = app.add_subcommand("cycle", "ergotropy, recharging work, and efficiency");
    add_model_options(cycle, model);
    add_physical_options(cycle, params);
    add_output_options(cycle, output);

    auto* dist = app.add_subcommand("distributions", "exact fluctuation distributions");
    std::string kind = "work";
    std::string steps_arg = "inf";
    std::string start = "passive";
    dist->add_option("--kind", kind, "work | heat | energy | efficiency")
        ->check(CLI::IsMember({"work", "heat", "energy", "efficiency"}));
    dist->add_option("--L", steps_arg, "collision count or 'inf' for the stationary limit");
    dist->add_option("--start", start, "initial populations: passive | equilibrium")
        ->check(CLI::IsMember({"passive", "equilibrium"}));
    add_model_options(dist, model);
    add_physical_options(dist, params);
    add_output_options(dist, output);

    auto* sweep = app.add_subcommand("sweep", "parameter sweeps and figure-data presets");
    std::string preset = "none";
    std::string outdir;
    std::string var;
    double from = 0.0, to = 1.0;
    int points = 10;
    int sweep_steps = 20;
    sweep->add_option("--preset", preset, "fig1 | fig2 | fig3 | none")
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "none"}));
    sweep->add_option("--L", sweep_steps, "finite collision count for the fig3 preset");
    sweep->add_option("--outdir", outdir, "also write the canonical figure csv files here");
    sweep->add_option("--var", var, "variable for --preset none: beta|h|a|J|Jp|tau");
    sweep->add_option("--from", from, "sweep start");
    sweep->add_option("--to", to, "sweep end");
    sweep->add_option("--points", points, "grid size");
    add_model_options(sweep, model);
    add_physical_options(sweep, params);
    add_output_options(sweep, output);

    auto* oracle = app.add_subcommand("oracle-check",
                                      "composite-space enumeration vs the reduced pipeline");
    int oracle_steps = 1;
    oracle->add_option("--L", oracle_steps, "collision count (max 3)");
    add_model_options(oracle, model);
    add_physical_options(oracle, params);
    add_output_options(oracle, output);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cycle->parsed()) return run_cycle(model, params, output);
        if (dist->parsed()) {
            return run_distributions(model, params, output, kind, steps_arg, start);
        }
        if (sweep->parsed()) {
            return run_sweep(model, params, output, preset, sweep_steps, outdir, var, from, to,
                             points);
        }
        if (oracle->parsed()) return run_oracle_check(model, params, output, oracle_steps);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}
