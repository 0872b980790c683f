#include "axiomlab/io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace axiomlab {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_real(const std::string& field, std::size_t row) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &used);
    } catch (const std::exception&) {
        throw std::runtime_error("row " + std::to_string(row) + ": not a number: '" + field + "'");
    }
    while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
    if (used != field.size()) {
        throw std::runtime_error("row " + std::to_string(row) + ": trailing characters in '" +
                                 field + "'");
    }
    return v;
}

std::vector<std::vector<double>> read_rows(std::istream& in, bool skip_header) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t row = 0;
    bool header_pending = skip_header;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        std::vector<double> values;
        for (const auto& f : split_csv_line(line)) values.push_back(parse_real(f, row));
        rows.push_back(std::move(values));
    }
    return rows;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

}  // namespace

Dataset read_dataset_csv(std::istream& in) { return Dataset::from_rows(read_rows(in, true)); }

void write_dataset_csv(std::ostream& out, const Dataset& dataset) {
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t a = 0; a < dataset.dim(); ++a) out << (a ? "," : "") << 'x' << a + 1;
    out << '\n';
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        for (std::size_t a = 0; a < dataset.dim(); ++a) {
            out << (a ? "," : "") << dataset.point(i)(static_cast<Eigen::Index>(a));
        }
        out << '\n';
    }
}

DistanceMatrix read_distance_csv(std::istream& in) {
    const auto rows = read_rows(in, false);
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
            throw std::runtime_error("distance CSV is not square");
        }
        for (Eigen::Index j = 0; j < n; ++j) d(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return DistanceMatrix(std::move(d));
}

void write_distance_csv(std::ostream& out, const DistanceMatrix& d) {
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) out << (j ? "," : "") << d(i, j);
        out << '\n';
    }
}

std::string partition_to_json(const Partition& partition) {
    return nlohmann::json{{"clusters", partition.clusters()}}.dump();
}

Partition partition_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (!j.contains("clusters")) throw std::runtime_error("partition JSON lacks \"clusters\"");
    return Partition(j.at("clusters").get<std::vector<std::vector<std::size_t>>>());
}

Dataset load_dataset(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_dataset_csv(in);
}

DistanceMatrix load_distance(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_distance_csv(in);
}

Partition load_partition(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return partition_from_json(buffer.str());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace axiomlab
