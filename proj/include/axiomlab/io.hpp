#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "axiomlab/core.hpp"

namespace axiomlab {

/// Dataset CSV: header row `x1,...,xm`, then one point per row.
Dataset read_dataset_csv(std::istream& in);
void write_dataset_csv(std::ostream& out, const Dataset& dataset);

/// Distance CSV: n rows of n comma-separated reals, no header.
DistanceMatrix read_distance_csv(std::istream& in);
void write_distance_csv(std::ostream& out, const DistanceMatrix& d);

/// `{"clusters": [[0,1],[2,3]]}`
std::string partition_to_json(const Partition& partition);
Partition partition_from_json(const std::string& text);

Dataset load_dataset(const std::filesystem::path& path);
DistanceMatrix load_distance(const std::filesystem::path& path);
Partition load_partition(const std::filesystem::path& path);

/// Writes text to path, or to stdout when path is empty or "-".
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace axiomlab
