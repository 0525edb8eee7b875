#include "optilik/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace optilik {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace and quotes
        const auto begin = cell.find_first_not_of(" \t\r\"");
        const auto end = cell.find_last_not_of(" \t\r\"");
        cells.push_back(begin == std::string::npos ? std::string() : cell.substr(begin, end - begin + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_number(const std::string& text, double& out) {
    if (text.empty()) return false;
    errno = 0;
    char* tail = nullptr;
    out = std::strtod(text.c_str(), &tail);
    return errno == 0 && tail == text.c_str() + text.size();
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    for (int precision = 1; precision <= 12; ++precision) {
        std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
        if (std::strtod(buffer, nullptr) == value) return buffer;
    }
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

LabeledDataset read_labeled_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.size() < 2) throw std::invalid_argument(path + ": expected a header row and data rows");
    const std::size_t columns = split_csv_line(lines.front()).size();
    if (columns < 2) throw std::invalid_argument(path + ": expected at least one feature column and a label column");

    LabeledDataset dataset;
    std::map<std::string, int> label_index;
    std::vector<std::string> raw_labels;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split_csv_line(lines[r]);
        if (cells.size() != columns) {
            throw std::invalid_argument(path + ": row " + std::to_string(r + 1) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(columns));
        }
        Vector features(columns - 1);
        for (std::size_t c = 0; c + 1 < columns; ++c) {
            if (!parse_number(cells[c], features[c])) {
                throw std::invalid_argument(path + ": row " + std::to_string(r + 1) + ", column " +
                                            std::to_string(c + 1) + ": not a number: '" + cells[c] + "'");
            }
        }
        dataset.features.push_back(std::move(features));
        raw_labels.push_back(cells.back());
        label_index.emplace(cells.back(), 0);
    }

    int next = 0;
    for (auto& [name, index] : label_index) index = next++;  // sorted label order
    dataset.label_names.resize(label_index.size());
    for (const auto& [name, index] : label_index) dataset.label_names[static_cast<std::size_t>(index)] = name;
    dataset.labels.reserve(raw_labels.size());
    for (const auto& name : raw_labels) dataset.labels.push_back(label_index.at(name));
    validate_dataset(dataset);
    return dataset;
}

std::vector<Vector> read_points_csv(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw std::invalid_argument(path + ": empty file");
    std::vector<Vector> points;
    for (std::size_t r = 0; r < lines.size(); ++r) {
        const auto cells = split_csv_line(lines[r]);
        Vector point(cells.size());
        bool numeric = true;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!parse_number(cells[c], point[c])) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (r == 0) continue;  // header row
            throw std::invalid_argument(path + ": row " + std::to_string(r + 1) + ": not numeric");
        }
        if (!points.empty() && point.size() != points.front().size()) {
            throw std::invalid_argument(path + ": row " + std::to_string(r + 1) + ": ragged dimensions");
        }
        points.push_back(std::move(point));
    }
    if (points.empty()) throw std::invalid_argument(path + ": no data rows");
    return points;
}

std::string ExperimentReport::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out += columns[c];
        out += (c + 1 < columns.size()) ? ',' : '\n';
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            out += (c + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json array = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json item = config;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            double numeric = 0.0;
            if (parse_number(row[c], numeric)) {
                item[columns[c]] = numeric;
            } else {
                item[columns[c]] = row[c];
            }
        }
        array.push_back(std::move(item));
    }
    return array;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << contents;
}

}  // namespace optilik
