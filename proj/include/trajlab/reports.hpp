// Shared implementation of the CLI subcommands and the acceptance suite:
// every experiment produces a JSON report so runs are reproducible and
// diffable.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace trajlab::reports {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct Options {
    unsigned seed = 12345;
    int modes = 0;  // 0 -> scenario default
    int steps = 0;
    bool quiet = false;
    json config;  // parsed --config payload, may be null
};

json simulate(const Options& opts);
json periodic(const Options& opts);
json average(const Options& opts);
json branch(const Options& opts);
json resonance(const Options& opts);
json krasnoselskii(const Options& opts);
json degree(const Options& opts);
json conley(const Options& opts);
json cone(const Options& opts);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    json details;
};

// Acceptance criteria 1-11 (12, determinism, is a re-run comparison done by
// the caller).
std::vector<CriterionResult> run_suite(const Options& opts);

json suite_json(const std::vector<CriterionResult>& results);

// Full suite including the determinism re-run.
json all(const Options& opts);

}  // namespace trajlab::reports
