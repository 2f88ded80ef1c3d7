// macsel: evaluate, select, sweep, simulate, validate and manage the registry.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "macsel/config.hpp"
#include "macsel/errors.hpp"
#include "macsel/format.hpp"
#include "macsel/selector.hpp"
#include "macsel/service.hpp"

using namespace macsel;

namespace {

enum Exit { kOk = 0, kDomain = 1, kUsage = 2, kThreshold = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelOptions {
    std::string context_file;
    std::string profile_file;
    double alpha = Weights{}.alpha;
    double beta = Weights{}.beta;
    bool json = false;

    void add(CLI::App* cmd) {
        cmd->add_option("--context", context_file, "context JSON (bare object or full document)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--profile", profile_file, "radio profile JSON (bare object or full document)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--alpha", alpha, "energy weight")->capture_default_str();
        cmd->add_option("--beta", beta, "delay weight")->capture_default_str();
        cmd->add_flag("--json", json, "full-precision JSON output");
    }
    NetworkContext context() const { return context_file.empty() ? NetworkContext{} : load_context_file(context_file); }
    RadioProfile profile() const { return profile_file.empty() ? RadioProfile{} : load_profile_file(profile_file); }
    Weights weights() const { return {alpha, beta}; }
};

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

void print_table(const std::vector<CategoryEvaluation>& evals) {
    std::cout << pad("category", 10) << pad("collision", 13) << pad("overhearing", 13) << pad("idle", 13)
              << pad("overhead", 13) << pad("total_W", 13) << pad("delay_s", 13) << "cpf\n";
    for (const auto& e : evals) {
        std::cout << pad(e.category, 10);
        if (!e.ok()) {
            std::cout << "error: " << *e.error << '\n';
            continue;
        }
        std::cout << pad(format_sig6(e.energy.collision), 13) << pad(format_sig6(e.energy.overhearing), 13)
                  << pad(format_sig6(e.energy.idle_listening), 13) << pad(format_sig6(e.energy.overhead), 13)
                  << pad(format_sig6(e.energy.total), 13) << pad(format_sig6(e.delay.seconds), 13)
                  << format_sig6(e.cpf) << '\n';
    }
}

void print_notes(const std::vector<CategoryEvaluation>& evals) {
    for (const auto& e : evals)
        for (const auto& n : e.notes) std::cerr << "warning: " << e.category << ": " << n << '\n';
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

std::string registry_path(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("MACSEL_REGISTRY"); env && *env) return env;
    throw UsageError("no registry: pass --registry or set MACSEL_REGISTRY");
}

// ---- verbs ------------------------------------------------------------------

int cmd_evaluate(const ModelOptions& o) {
    const auto evals = evaluate_all(o.context(), o.profile(), o.weights());
    if (o.json) {
        std::cout << service::evaluation_data(evals).dump(2) << '\n';
        return kOk;
    }
    print_notes(evals);
    print_table(evals);
    const auto ranked = rank(evals);
    if (ranked.empty()) {
        std::cout << "best: none (every category failed)\n";
        return kDomain;
    }
    const auto ties = top_ties(evals);
    std::cout << "best: " << ranked.front()->category;
    if (ties.size() > 1) std::cout << " (tie: " << join(ties, ", ") << "; category order decides)";
    std::cout << '\n';
    return kOk;
}

int cmd_select(const ModelOptions& o, const std::string& reg_flag, const std::vector<std::string>& require) {
    const auto reg = service::read_registry_file(registry_path(reg_flag));
    const std::set<std::string> req(require.begin(), require.end());
    const auto res = select(reg, o.context(), o.profile(), req, o.weights());
    if (o.json) {
        std::cout << to_json(res).dump(2) << '\n';
        return kOk;
    }
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "feasible categories (by CPF): " << join(res.feasible_categories, " > ") << '\n';
    print_table(res.evaluations);
    std::cout << "best category: " << res.best_category << '\n';
    std::cout << "protocols: " << join(res.protocols, ", ") << '\n';
    return kOk;
}

int cmd_sweep(const ModelOptions& o, const std::string& axis_name, double from, double to, int steps,
              const std::string& out) {
    const auto axis = parse_axis(axis_name);
    if (!axis) throw UsageError("--axis must be pkt_rate, n_nodes or network_radius");
    if (!(from < to)) throw UsageError("--from must be smaller than --to");
    if (steps < 2) throw UsageError("--steps must be >= 2");
    const auto ctx = o.context();
    const auto prof = o.profile();
    const auto w = o.weights();
    check_weights(w);
    const auto values = linspace(from, to, steps);
    const auto rows = sweep(ctx, prof, w, *axis, values);
    if (out.empty() || out == "-") {
        write_sweep_csv(std::cout, rows);
        return kOk;
    }
    std::ofstream f(out, std::ios::trunc);
    if (!f) throw Error(ErrorCode::domain, "cannot write '" + out + "'");
    write_sweep_csv(f, rows);
    f.flush();
    if (!f) throw Error(ErrorCode::domain, "write to '" + out + "' failed");
    return kOk;
}

void print_stats(const desim::SimStats& s) {
    std::cout << "energy_W: " << format_sig6(s.energy_per_second.mean) << " +/- "
              << format_sig6(s.energy_per_second.half_width) << '\n';
    if (s.delay_tracked)
        std::cout << "delay_s: " << format_sig6(s.delay.mean) << " +/- " << format_sig6(s.delay.half_width) << '\n';
    else
        std::cout << "delay_s: n/a (nothing delivered)\n";
    std::cout << "tallies_W: collision " << format_sig6(s.collision) << ", overhearing " << format_sig6(s.overhearing)
              << ", idle " << format_sig6(s.idle) << ", overhead " << format_sig6(s.overhead) << ", total "
              << format_sig6(s.total) << '\n';
    std::cout << "payload_W: " << format_sig6(s.payload) << '\n';
    std::cout << "packets: generated " << s.packets_generated << ", delivered " << s.packets_delivered
              << ", dropped " << s.packets_dropped << ", in flight " << s.packets_in_flight << '\n';
    std::cout << "collisions: " << s.collisions << ", overheard frames: " << s.overheard << '\n';
    std::cout << "replications: " << s.replications << (s.converged ? " (converged)" : " (max_reps reached)") << '\n';
    std::cout << "seed: " << s.seed << ", prng: " << s.prng << '\n';
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw Error(ErrorCode::domain, "cannot write '" + path + "'");
    f << text;
    f.flush();
    if (!f) throw Error(ErrorCode::domain, "write to '" + path + "' failed");
}

desim::SimConfig sim_config(const std::string& file) {
    return file.empty() ? desim::SimConfig{} : load_config_file(file).simulation;
}

int cmd_simulate(const std::string& proto, const std::string& config, const std::string& csv,
                 const std::string& json_out, bool json) {
    const auto p = *desim::parse_protocol(proto);
    const auto cfg = sim_config(config);
    const auto stats = desim::run(p, cfg);
    if (!stats.converged)
        std::cerr << "warning: confidence target not met after " << stats.replications << " replications\n";
    if (json)
        std::cout << to_json(stats).dump(2) << '\n';
    else
        print_stats(stats);
    if (!csv.empty()) {
        std::ostringstream os;
        desim::write_stats_csv(os, stats);
        write_file(csv, os.str());
    }
    if (!json_out.empty()) write_file(json_out, to_json(stats).dump(2) + "\n");
    return kOk;
}

int cmd_validate(const std::string& proto, const std::string& config, double tolerance, const std::string& metric,
                 const std::string& csv, const std::string& json_out, bool json) {
    const auto p = *desim::parse_protocol(proto);
    const auto cfg = sim_config(config);
    const auto rep = desim::compare_model_sim(cfg, p);
    if (!rep.all_converged) std::cerr << "warning: some points stopped at max_reps without meeting the CI target\n";
    if (json) {
        std::cout << to_json(rep).dump(2) << '\n';
    } else {
        std::cout << pad("pkt_rate", 10) << pad("model_W", 13) << pad("sim_W", 13) << pad("+/-", 13)
                  << pad("div_E", 11) << pad("model_s", 13) << pad("sim_s", 13) << "div_T\n";
        for (const auto& pt : rep.points) {
            std::cout << pad(format_sig6(pt.pkt_rate), 10) << pad(format_sig6(pt.model_energy.total), 13)
                      << pad(format_sig6(pt.sim.energy_per_second.mean), 13)
                      << pad(format_sig6(pt.sim.energy_per_second.half_width), 13)
                      << pad(format_sig6(pt.energy_divergence), 11) << pad(format_sig6(pt.model_delay), 13)
                      << pad(pt.sim.delay_tracked ? format_sig6(pt.sim.delay.mean) : "n/a", 13)
                      << format_sig6(pt.delay_divergence) << '\n';
        }
        std::cout << "max energy divergence: " << format_sig6(rep.max_energy_divergence) << '\n';
        std::cout << "max delay divergence: " << format_sig6(rep.max_delay_divergence) << '\n';
    }
    if (!csv.empty()) {
        std::ostringstream os;
        desim::write_report_csv(os, rep);
        write_file(csv, os.str());
    }
    if (!json_out.empty()) write_file(json_out, to_json(rep).dump(2) + "\n");

    double worst = 0;
    if (metric == "energy" || metric == "both") worst = std::max(worst, rep.max_energy_divergence);
    if (metric == "delay" || metric == "both") worst = std::max(worst, rep.max_delay_divergence);
    if (worst > tolerance) {
        std::cerr << "divergence " << format_sig6(worst) << " exceeds tolerance " << format_sig6(tolerance) << '\n';
        return kThreshold;
    }
    return kOk;
}

void print_registry(const Registry& reg) {
    std::cout << "categories:\n";
    for (const auto& c : reg.categories)
        std::cout << "  " << c.id << " (representative " << (c.representative.empty() ? "-" : c.representative)
                  << ")" << (c.note.empty() ? "" : ": " + c.note) << '\n';
    std::cout << "requirements:\n";
    for (const auto& r : reg.requirements)
        std::cout << "  " << r.id << (r.description.empty() ? "" : ": " + r.description) << '\n';
    std::cout << "protocols:\n";
    for (const auto& p : reg.protocols) {
        std::vector<std::string> sat(p.satisfies.begin(), p.satisfies.end());
        std::vector<std::string> rev(p.reviewed_against.begin(), p.reviewed_against.end());
        std::cout << "  " << p.name << " [" << p.category << "] satisfies {" << join(sat, ", ") << "} reviewed {"
                  << join(rev, ", ") << "}\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MAC protocol category evaluation, selection and simulation"};
    app.require_subcommand(1);

    ModelOptions eval_opts;
    auto* evaluate = app.add_subcommand("evaluate", "energy, delay and CPF per category");
    eval_opts.add(evaluate);

    ModelOptions sel_opts;
    std::string sel_registry;
    std::vector<std::string> require;
    auto* selectc = app.add_subcommand("select", "filter categories by requirements and pick protocols");
    sel_opts.add(selectc);
    selectc->add_option("--registry", sel_registry, "registry JSON (default: $MACSEL_REGISTRY)");
    selectc->add_option("--require", require, "requirement ids")->delimiter(',');

    ModelOptions sw_opts;
    std::string axis, out;
    double from = 0, to = 0;
    int steps = 0;
    auto* sweepc = app.add_subcommand("sweep", "CSV sweep over one context axis");
    sw_opts.add(sweepc);
    sweepc->add_option("--axis", axis)->required()->check(CLI::IsMember({"pkt_rate", "n_nodes", "network_radius"}));
    sweepc->add_option("--from", from)->required();
    sweepc->add_option("--to", to)->required();
    sweepc->add_option("--steps", steps)->required();
    sweepc->add_option("--out", out, "output CSV (default: standard output)");

    const std::vector<std::string> protocols{"psa", "smac", "tsmp"};
    std::string sim_proto, sim_config_file, sim_csv, sim_json_out;
    bool sim_json = false;
    auto* simulate = app.add_subcommand("simulate", "run the discrete-event simulator");
    simulate->add_option("--protocol", sim_proto)->required()->check(CLI::IsMember(protocols));
    simulate->add_option("--config", sim_config_file, "configuration document")->check(CLI::ExistingFile);
    simulate->add_option("--csv", sim_csv, "also write the statistics as CSV");
    simulate->add_option("--json-out", sim_json_out, "also write the statistics as JSON");
    simulate->add_flag("--json", sim_json, "JSON on standard output");

    std::string val_proto, val_config_file, val_csv, val_json_out, metric = "energy";
    double tolerance = 0.10;
    bool val_json = false;
    auto* validatec = app.add_subcommand("validate", "compare the analytical model with simulation");
    validatec->add_option("--protocol", val_proto)->required()->check(CLI::IsMember(protocols));
    validatec->add_option("--config", val_config_file, "configuration document")->check(CLI::ExistingFile);
    validatec->add_option("--tolerance", tolerance, "maximum relative divergence")->capture_default_str();
    validatec->add_option("--metric", metric, "divergence checked against the tolerance")
        ->check(CLI::IsMember({"energy", "delay", "both"}))
        ->capture_default_str();
    validatec->add_option("--csv", val_csv, "also write the report as CSV");
    validatec->add_option("--json-out", val_json_out, "also write the report as JSON");
    validatec->add_flag("--json", val_json, "JSON on standard output");

    std::string reg_path;
    auto* registry = app.add_subcommand("registry", "inspect or extend the protocol registry");
    registry->add_option("--registry", reg_path, "registry JSON (default: $MACSEL_REGISTRY)");
    registry->require_subcommand(1);
    auto* list = registry->add_subcommand("list", "print the registry");
    auto* init = registry->add_subcommand("init", "write the seed registry (refuses to overwrite)");
    std::string p_name, p_category;
    std::vector<std::string> p_sat, p_rev;
    auto* add_p = registry->add_subcommand("add-protocol", "append a protocol");
    add_p->add_option("--name", p_name)->required();
    add_p->add_option("--category", p_category)->required();
    add_p->add_option("--satisfies", p_sat, "requirement ids")->delimiter(',');
    add_p->add_option("--reviewed", p_rev, "requirement ids checked (default: --satisfies)")->delimiter(',');
    std::string c_id, c_rep, c_note;
    auto* add_c = registry->add_subcommand("add-category", "append a category");
    add_c->add_option("--id", c_id)->required();
    add_c->add_option("--representative", c_rep);
    add_c->add_option("--note", c_note);
    std::string r_id, r_desc;
    auto* add_r = registry->add_subcommand("add-requirement", "append a requirement and print the review worklist");
    add_r->add_option("--id", r_id)->required();
    add_r->add_option("--description", r_desc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*evaluate) return cmd_evaluate(eval_opts);
        if (*selectc) return cmd_select(sel_opts, sel_registry, require);
        if (*sweepc) return cmd_sweep(sw_opts, axis, from, to, steps, out);
        if (*simulate) return cmd_simulate(sim_proto, sim_config_file, sim_csv, sim_json_out, sim_json);
        if (*validatec)
            return cmd_validate(val_proto, val_config_file, tolerance, metric, val_csv, val_json_out, val_json);
        if (*registry) {
            const auto path = registry_path(reg_path);
            if (*init) {
                if (std::filesystem::exists(path)) throw Error(ErrorCode::duplicate, "'" + path + "' already exists");
                save_registry_file(path, seed_registry());
                std::cout << "wrote seed registry to " << path << '\n';
                return kOk;
            }
            const auto reg = service::read_registry_file(path);
            if (*list) {
                print_registry(reg);
                return kOk;
            }
            if (*add_p) {
                ProtocolRecord rec{p_name, p_category, {p_sat.begin(), p_sat.end()}, {}};
                rec.reviewed_against = p_rev.empty() ? rec.satisfies : std::set<std::string>(p_rev.begin(), p_rev.end());
                save_registry_file(path, add_protocol(reg, rec));
                std::cout << "added protocol " << p_name << " to " << p_category << '\n';
                return kOk;
            }
            if (*add_c) {
                save_registry_file(path, add_category(reg, {c_id, c_rep, c_note}));
                std::cout << "added category " << c_id << " (no performance model registered)\n";
                return kOk;
            }
            if (*add_r) {
                const auto res = add_requirement(reg, {r_id, r_desc});
                save_registry_file(path, res.registry);
                std::cout << "added requirement " << r_id << "; review worklist:\n";
                for (std::size_t i = 0; i < res.worklist.size(); ++i)
                    std::cout << "  " << (i + 1) << ". " << res.worklist[i] << '\n';
                return kOk;
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::invalid_document ? kUsage : kDomain;
    }
    return kUsage;
}
