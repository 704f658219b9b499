#include "spacing/table.hpp"

#include "spacing/error.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace spacing {

SpacingTable SpacingTable::uniform(double s_min, double s_max, double step) {
    if (!(step > 0.0)) throw ArgumentError("grid step must be positive");
    if (!(s_min >= 0.0)) throw ArgumentError("s_min must be non-negative");
    if (!(s_max >= s_min)) throw ArgumentError("s_max must not be below s_min");
    const auto count = static_cast<std::size_t>(std::floor((s_max - s_min) / step + 1e-6)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) grid[i] = s_min + static_cast<double>(i) * step;
    return SpacingTable(std::move(grid));
}

void SpacingTable::add_column(const std::string& name, std::vector<double> values) {
    if (values.size() != s_.size()) {
        throw ArgumentError("column '" + name + "' has length " + std::to_string(values.size()) +
                            ", grid has " + std::to_string(s_.size()));
    }
    if (has_column(name)) throw ArgumentError("duplicate column '" + name + "'");
    columns_.emplace_back(name, std::move(values));
}

bool SpacingTable::has_column(const std::string& name) const {
    for (const auto& c : columns_) {
        if (c.first == name) return true;
    }
    return false;
}

const std::vector<double>& SpacingTable::column(const std::string& name) const {
    for (const auto& c : columns_) {
        if (c.first == name) return c.second;
    }
    throw ArgumentError("missing column '" + name + "'");
}

void SpacingTable::add_metadata(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
}

double SpacingTable::uniform_step() const {
    if (s_.size() < 2) return 0.0;
    const double h = (s_.back() - s_.front()) / static_cast<double>(s_.size() - 1);
    for (std::size_t i = 1; i < s_.size(); ++i) {
        if (std::abs(s_[i] - s_[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h))) return 0.0;
    }
    return h;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void SpacingTable::write_csv(std::ostream& os) const {
    for (const auto& [k, v] : meta_) os << "# " << k << ": " << v << "\n";
    os << "s";
    for (const auto& c : columns_) os << "," << c.first;
    os << "\n";
    for (std::size_t i = 0; i < s_.size(); ++i) {
        os << format_double(s_[i]);
        for (const auto& c : columns_) os << "," << format_double(c.second[i]);
        os << "\n";
    }
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_cell(const std::string& cell, int line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != cell.size()) {
        throw FormatError("line " + std::to_string(line_no) + ": cannot parse '" + cell + "'");
    }
    return v;
}

}  // namespace

SpacingTable SpacingTable::read_csv(std::istream& is) {
    SpacingTable table;
    std::vector<std::string> names;
    std::vector<std::vector<double>> values;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(": ");
            if (colon != std::string::npos && line.size() > 2) {
                table.meta_.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
            }
            continue;
        }
        auto cells = split_commas(line);
        if (names.empty()) {
            if (cells.empty() || cells[0] != "s") {
                throw FormatError("line " + std::to_string(line_no) + ": header must start with 's'");
            }
            names = cells;
            values.resize(names.size());
            continue;
        }
        if (cells.size() != names.size()) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(names.size()) + " fields");
        }
        for (std::size_t j = 0; j < cells.size(); ++j) values[j].push_back(parse_cell(cells[j], line_no));
    }
    if (names.empty()) throw FormatError("no header row");
    table.s_ = std::move(values[0]);
    for (std::size_t j = 1; j < names.size(); ++j) table.add_column(names[j], std::move(values[j]));
    return table;
}

}  // namespace spacing
