#include <sstream>

#include "axiomlab/harness.hpp"
#include "json.hpp"

namespace axiomlab {

namespace {

using json = nlohmann::json;

json config_json(const ExperimentConfig& c) {
    return {{"seed", c.seed}, {"trials", c.trials}, {"restarts", c.restarts}, {"tolerance", c.tolerance}};
}

json suite_json(const SuiteReport& r, bool include_runtime) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json entry{{"name", c.name}, {"passed", c.passed}, {"trials", c.trials}, {"violations", c.violations},
                   {"detail", c.detail}};
        if (!c.witness.empty()) entry["witness"] = json::parse(c.witness);
        checks.push_back(std::move(entry));
    }
    json j{{"suite", r.suite}, {"seed", r.config.seed}, {"config", config_json(r.config)},
           {"passed", r.passed()}, {"checks", checks}, {"environment", r.environment}};
    if (include_runtime) j["runtime_seconds"] = r.runtime_seconds;
    return j;
}

// CSV fields here never contain newlines; quote only when a comma or quote appears.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string markdown_cell(std::string s) {
    for (std::size_t pos = 0; (pos = s.find('|', pos)) != std::string::npos; pos += 2) s.replace(pos, 1, "\\|");
    return s;
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    if (name == "markdown" || name == "md") return ReportFormat::markdown;
    throw std::invalid_argument("unknown report format '" + name + "'");
}

std::string render(const std::vector<SuiteReport>& reports, ReportFormat format, bool include_runtime) {
    std::ostringstream os;
    switch (format) {
        case ReportFormat::json: {
            json suites = json::array();
            for (const auto& r : reports) suites.push_back(suite_json(r, include_runtime));
            json j{{"suites", suites}};
            if (!reports.empty()) j["seed"] = reports.front().config.seed;
            os << j.dump(2) << '\n';
            break;
        }
        case ReportFormat::csv:
            os << "suite,check,passed,trials,violations,seed,detail\n";
            for (const auto& r : reports) {
                for (const auto& c : r.checks) {
                    os << r.suite << ',' << c.name << ',' << (c.passed ? "true" : "false") << ',' << c.trials << ','
                       << c.violations << ',' << r.config.seed << ',' << csv_field(c.detail) << '\n';
                }
            }
            break;
        case ReportFormat::markdown:
            if (!reports.empty()) os << "Master seed: " << reports.front().config.seed << "\n\n";
            os << "| suite | check | result | trials | violations | detail |\n";
            os << "|---|---|---|---|---|---|\n";
            for (const auto& r : reports) {
                for (const auto& c : r.checks) {
                    os << "| " << r.suite << " | " << c.name << " | " << (c.passed ? "pass" : "FAIL") << " | " << c.trials
                       << " | " << c.violations << " | " << markdown_cell(c.detail) << " |\n";
                }
            }
            break;
    }
    return os.str();
}

std::string render(const SuiteReport& report, ReportFormat format, bool include_runtime) {
    if (format == ReportFormat::json) return suite_json(report, include_runtime).dump(2) + "\n";
    return render(std::vector<SuiteReport>{report}, format, include_runtime);
}

std::string render(const Table3Report& report, ReportFormat format) {
    std::ostringstream os;
    const char* columns[] = {"original", "kleinberg", "centric"};
    switch (format) {
        case ReportFormat::json: {
            json cells = json::array();
            for (const auto& c : report.cells) {
                cells.push_back({{"k", c.k}, {"column", c.column}, {"measured", c.measured}, {"published", c.published},
                                 {"deviation", c.measured - c.published}, {"tolerance", c.tolerance},
                                 {"within", c.within()}});
            }
            json j{{"seed", report.config.seed}, {"config", config_json(report.config)}, {"passed", report.passed()},
                   {"kleinberg_gamma_valid", report.kleinberg_gamma_valid},
                   {"moved_clusters", report.moved_clusters}, {"cells", cells}};
            os << j.dump(2) << '\n';
            break;
        }
        case ReportFormat::csv:
            os << "k,original,kleinberg,centric\n";
            for (std::size_t k = 2; k <= 6; ++k) {
                os << k;
                for (const char* col : columns) os << ',' << report.cell(k, col).measured;
                os << '\n';
            }
            break;
        case ReportFormat::markdown:
            os << "Master seed: " << report.config.seed << "\n\n";
            os << "| k | original | kleinberg | centric |\n|---|---|---|---|\n";
            os.setf(std::ios::fixed);
            os.precision(2);
            for (std::size_t k = 2; k <= 6; ++k) {
                os << "| " << k;
                for (const char* col : columns) {
                    const auto& c = report.cell(k, col);
                    os << " | " << c.measured << " (" << c.published << (c.within() ? "" : ", outside tolerance") << ")";
                }
                os << " |\n";
            }
            break;
    }
    return os.str();
}

}  // namespace axiomlab
