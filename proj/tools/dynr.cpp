// Command-line front end: algebra validation, r-matrix evaluation,
// residual verification and domain sweeps.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dynr/reports.hpp"

namespace {

using dynr::ConfigError;
using dynr::RunConfig;

struct FlagSpec {
    const char* key;
    const char* help;
};

const FlagSpec kFlags[] = {
    {"algebra", "built-in id sl2..sl5 or path to an algebra file (default sl2)"},
    {"rmatrix", "f0, f0:eigen, from-q:zero|random|canonical, dirac, cartan-coth, constant:dj, constant:zero, casimir"},
    {"subalgebra", "cartan, block:<p1>+<p2>..., or basis:<i>,<j>,..."},
    {"kappa", "coupling constant (default 1)"},
    {"samples", "number of random points (default 10)"},
    {"seed", "RNG seed; required by sampled checks"},
    {"fd-step", "finite-difference step in [1e-9, 1e-2] (default 1e-5)"},
    {"richardson", "Richardson levels 1..6, 0 for plain central differences (default 2)"},
    {"tol", "pass threshold (default depends on the scheme)"},
    {"out", "output file; a .meta.json sidecar is written next to it"},
    {"grid", "sweep grid idx:lo:hi:count[,idx:lo:hi:count]"},
    {"point", "comma-separated basis coordinates"},
    {"quantity", "sweep quantity: pivot-condition, gcdyb, lie-cdyb, h-cdyb, mcybe"},
    {"radius", "sampling radius, 0 for the per-equation default"},
    {"threads", "worker threads, 0 for hardware concurrency"},
};

struct Flags {
    std::string config_file;
    std::map<std::string, std::string> values;

    void attach(CLI::App* app) {
        app->add_option("--config", config_file, "key = value config file; flags override it");
        for (const auto& flag : kFlags) {
            app->add_option(std::string("--") + flag.key, values[flag.key], flag.help);
        }
    }

    [[nodiscard]] RunConfig resolve(const CLI::App* app) const {
        RunConfig c;
        if (!config_file.empty()) dynr::apply_config_file(c, config_file);
        for (const auto& flag : kFlags) {
            if (app->count(std::string("--") + flag.key) > 0) {
                dynr::set_config_value(c, flag.key, values.at(flag.key));
            }
        }
        return c;
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

std::string stem_of(const std::string& path, const std::string& ext) {
    if (path.size() > ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
        return path.substr(0, path.size() - ext.size());
    }
    return path;
}

// Payload to --out (with a metadata sidecar) or stdout.
void emit(const RunConfig& c, const nlohmann::json& payload) {
    const std::string text = payload.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    write_text(c.out, text);
    write_text(stem_of(c.out, ".json") + ".meta.json", dynr::run_metadata(c).dump(2) + "\n");
}

int cmd_validate(const RunConfig& c) {
    const auto ctx = dynr::make_context([&] {
        RunConfig v = c;
        v.rmatrix.clear();
        return v;
    }());
    const auto report = dynr::validate(*ctx.algebra, c.tol.value_or(1e-12));
    emit(c, dynr::validation_to_json(*ctx.algebra, report));
    return report.pass ? dynr::kExitPass : dynr::kExitResidual;
}

int cmd_eval(const RunConfig& c) {
    emit(c, dynr::run_eval(c));
    return dynr::kExitPass;
}

int cmd_verify(const std::string& equation, const RunConfig& c) {
    const auto outcome = dynr::run_verify(equation, c);
    emit(c, outcome.payload_json());
    std::size_t pass = 0;
    std::size_t domain = 0;
    double worst = 0.0;
    for (const auto& r : outcome.reports) {
        if (!r.error.empty()) {
            ++domain;
            continue;
        }
        if (r.pass) ++pass;
        worst = std::max(worst, r.norm);
    }
    std::cerr << equation << ": " << pass << "/" << outcome.reports.size() << " pass, max norm " << worst;
    if (domain > 0) std::cerr << ", " << domain << " outside the domain";
    std::cerr << "\n";
    return outcome.exit_code();
}

int cmd_sweep(const RunConfig& c) {
    const auto result = dynr::run_sweep(c);
    if (c.out.empty()) {
        std::cout << result.to_csv();
    } else {
        const std::string stem = stem_of(stem_of(c.out, ".csv"), ".json");
        write_text(stem + ".csv", result.to_csv());
        write_text(stem + ".json", result.to_json().dump(2) + "\n");
        write_text(stem + ".meta.json", dynr::run_metadata(c).dump(2) + "\n");
    }
    std::cerr << "sweep " << result.quantity << ": " << result.points.size() << " points, " << result.fail_count
              << " failing, " << result.domain_count << " outside the domain, max " << result.max << "\n";
    return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical dynamical r-matrices: construction and verification"};
    app.require_subcommand(1);

    std::map<std::string, Flags> flags;
    std::map<std::string, CLI::App*> leaves;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, const std::string& key) {
        CLI::App* sub = parent->add_subcommand(name, help);
        flags[key].attach(sub);
        leaves[key] = sub;
        return sub;
    };

    CLI::App* algebra = app.add_subcommand("algebra", "Algebra utilities");
    algebra->require_subcommand(1);
    leaf(algebra, "validate", "Check structure constants, Jacobi identity and the invariant form", "validate");
    leaf(&app, "eval", "Evaluate an r-matrix at --point", "eval");
    CLI::App* verify = app.add_subcommand("verify", "Residual checks on seeded random samples");
    verify->require_subcommand(1);
    const std::string equations[] = {"gcdyb", "lie-cdyb", "h-cdyb", "equivariance", "mcybe", "groupoid-jacobi"};
    for (const auto& eq : equations) leaf(verify, eq, eq + " residual", eq);
    leaf(&app, "sweep", "Evaluate a quantity on a grid in log coordinates", "sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return dynr::kExitConfig;
    }

    try {
        for (const auto& [key, sub] : leaves) {
            if (!sub->parsed()) continue;
            const RunConfig c = flags.at(key).resolve(sub);
            if (key == "validate") return cmd_validate(c);
            if (key == "eval") return cmd_eval(c);
            if (key == "sweep") return cmd_sweep(c);
            return cmd_verify(key, c);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return dynr::kExitConfig;
    } catch (const dynr::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return dynr::kExitDomain;
    } catch (const dynr::AlgebraError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return dynr::kExitResidual;
    }
    return dynr::kExitConfig;
}
