#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "invlab/solver.hpp"

namespace invlab {

struct ExperimentParams {
    int n_max = -1;        // -1: per-experiment default
    SearchOptions search;  // per-instance solver settings; threads is ignored
    int threads = 0;       // instance workers, 0 = OpenMP default
};

enum class Outcome { Pass, Fail, Unknown };

std::string_view outcome_name(Outcome o);

struct InstanceResult {
    std::string encoding;  // enough to re-run the instance from the CLI
    Outcome outcome = Outcome::Pass;
    std::string detail;    // key=value pairs
    std::string witness;   // set on failures
};

struct ExperimentReport {
    std::string name;
    std::string params;
    std::vector<InstanceResult> instances; // sorted by encoding
    std::vector<std::string> summary;      // experiment specific lines
    std::chrono::nanoseconds runtime{0};

    std::size_t count(Outcome o) const;
    // 3 on any failure, else 2 on any unknown, else 0.
    int exit_code() const;
};

const std::vector<std::string>& experiment_names();

// Throws UsageError for an unknown name or out-of-range parameters.
ExperimentReport run_experiment(std::string_view name, const ExperimentParams& params);

// Line grammar:
//   experiment <name> <params>
//   instance <encoding> <pass|fail|unknown> <detail>
//   finding <encoding> <detail> witness=<sets>
//   <summary lines>
//   totals instances=<n> pass=<n> fail=<n> unknown=<n>
//   runtime_ms=<t>            (omitted when deterministic)
std::string render_report(const ExperimentReport& r, bool with_runtime);

// `{1 2}{0 3}`
std::string family_inline(const InversionFamily& f);

} // namespace invlab
