#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "optilik/classify.hpp"

namespace optilik {

// Shortest decimal string that parses back to the same double, capped at 12
// significant digits.
std::string format_double(double value);

// Labeled CSV: first row is a header, last column is the class label (string
// or 0/1), remaining columns are numeric features. Label names are mapped to
// indices in sorted order.
LabeledDataset read_labeled_csv(const std::string& path);

// Unlabeled numeric CSV; a non-numeric first row is treated as a header.
std::vector<Vector> read_points_csv(const std::string& path);

// Experiment output: one row per (configuration, metric) pair. The CSV form
// uses the experiment's fixed column order; the JSON form repeats the full
// configuration (seed included) in every row object.
struct ExperimentReport {
    std::vector<std::string> columns;               // CSV header, in order
    std::vector<std::vector<std::string>> rows;     // stringified cells
    nlohmann::json config;                          // full configuration incl. seed

    std::string to_csv() const;
    nlohmann::json to_json() const;
};

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace optilik
