#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "axiomlab/core.hpp"

namespace axiomlab {

struct ExperimentConfig {
    std::uint64_t seed = 42;
    std::size_t trials = 0;      // 0 selects each suite's default trial count
    std::size_t restarts = 10;   // k-means restarts where a suite or table needs them
    double tolerance = 1e-9;
    std::string output;          // path, empty for stdout
};

struct CheckResult {
    std::string name;
    bool passed = true;
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::string detail;   // one-line summary of what was measured
    std::string witness;  // JSON replay data for the first violation (or the witness object)
};

struct SuiteReport {
    std::string suite;
    ExperimentConfig config;
    std::vector<CheckResult> checks;
    double runtime_seconds = 0.0;
    std::string environment;

    bool passed() const;
    const CheckResult& check(const std::string& name) const;
};

const std::vector<std::string>& suite_names();

/// Runs one named property suite. Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const ExperimentConfig& config);

struct Table3Cell {
    std::size_t k;
    std::string column;  // original, kleinberg, centric
    double measured;     // percent
    double published;    // percent
    double tolerance;    // percent points
    bool within() const;
};

struct Table3Report {
    ExperimentConfig config;
    std::vector<Table3Cell> cells;
    bool kleinberg_gamma_valid = false;  // the Kleinberg-style data is a Gamma-transform
    std::vector<std::size_t> moved_clusters;

    bool passed() const;
    const Table3Cell& cell(std::size_t k, const std::string& column) const;
};

/// Explained variance of k-means for k = 2..6 on the default mixture, a
/// Kleinberg-style transform of it (two far groups) and a centric transform.
Table3Report reproduce_table3(const ExperimentConfig& config);

enum class ReportFormat { json, csv, markdown };

ReportFormat parse_report_format(const std::string& name);

/// Runtime is left out unless asked for, so equal seeds give equal bytes.
std::string render(const SuiteReport& report, ReportFormat format, bool include_runtime = false);
std::string render(const std::vector<SuiteReport>& reports, ReportFormat format, bool include_runtime = false);
std::string render(const Table3Report& report, ReportFormat format);

std::string environment_fingerprint();

}  // namespace axiomlab
