#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "trajlab/integrator.hpp"
#include "trajlab/reports.hpp"
#include "trajlab/scenarios.hpp"

namespace {

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void emit(const nlohmann::json& report, const std::string& out_dir, const std::string& name,
          bool quiet) {
    if (!out_dir.empty()) {
        std::ofstream f(out_dir + "/" + name + ".json");
        f << report.dump(2) << "\n";
    }
    if (!quiet) std::cout << report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic-solution laboratory for spectral evolution equations"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir;
    trajlab::reports::Options opts;
    app.add_option("--config", config_path, "JSON scenario/config file");
    app.add_option("--out", out_dir, "directory for report files");
    app.add_option("--modes", opts.modes, "override spectral mode count");
    app.add_option("--steps", opts.steps, "override steps per period");
    app.add_option("--seed", opts.seed, "rng seed for multistart jitter");
    app.add_flag("--quiet", opts.quiet, "suppress stdout report");

    const std::vector<std::pair<std::string, std::string>> subs = {
        {"simulate", "integrate a scenario and write the trajectory"},
        {"periodic", "solve for a periodic orbit"},
        {"average", "averaging error sweep e(lambda)"},
        {"branch", "branch periodic orbits from averaged equilibria"},
        {"resonance", "resonance index formula vs direct index"},
        {"krasnoselskii", "fixed point index vs semilinear degree"},
        {"degree", "standalone semilinear degree queries"},
        {"conley", "isolating block identities"},
        {"cone", "nonnegative periodic solution check"},
        {"all", "full acceptance suite"}};
    for (const auto& [name, desc] : subs) app.add_subcommand(name, desc);

    CLI11_PARSE(app, argc, argv);
    const std::string cmd = app.get_subcommands().front()->get_name();

    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) {
            std::cerr << "cannot open config file: " << config_path << "\n";
            return 2;
        }
        try {
            f >> opts.config;
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "config parse error: " << e.what() << "\n";
            return 2;
        }
        // validate the problem description up front: schema errors are exit 2
        if (opts.config.is_object() &&
            (opts.config.contains("scenario") || opts.config.contains("variant"))) {
            try {
                trajlab::scenario_from_json(opts.config);
            } catch (const std::exception& e) {
                std::cerr << "config invalid: " << e.what() << "\n";
                return 2;
            }
        }
    }

    try {
        using namespace trajlab::reports;
        json report;
        if (cmd == "simulate")
            report = simulate(opts);
        else if (cmd == "periodic")
            report = periodic(opts);
        else if (cmd == "average")
            report = average(opts);
        else if (cmd == "branch")
            report = branch(opts);
        else if (cmd == "resonance")
            report = resonance(opts);
        else if (cmd == "krasnoselskii")
            report = krasnoselskii(opts);
        else if (cmd == "degree")
            report = degree(opts);
        else if (cmd == "conley")
            report = conley(opts);
        else if (cmd == "cone")
            report = cone(opts);
        else
            report = all(opts);
        report["timestamp"] = timestamp_now();

        if (cmd == "average" && !out_dir.empty()) {
            std::ofstream csv(out_dir + "/average.csv");
            csv << "lambda,error\n";
            for (const auto& row : report["sweep"])
                csv << row["lambda"].get<double>() << "," << row["error"].get<double>() << "\n";
        }
        emit(report, out_dir, cmd, opts.quiet);
        return 0;
    } catch (const trajlab::Error& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
