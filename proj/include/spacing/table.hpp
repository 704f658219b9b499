#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace spacing {

/// A grid of s values with one named column per (quantity, method) pair.
class SpacingTable {
public:
    SpacingTable() = default;
    explicit SpacingTable(std::vector<double> s_grid) : s_(std::move(s_grid)) {}

    /// Uniform grid s_min, s_min + step, ... up to s_max (inclusive within step/1e6).
    static SpacingTable uniform(double s_min, double s_max, double step);

    const std::vector<double>& s_grid() const { return s_; }
    std::size_t size() const { return s_.size(); }

    void add_column(const std::string& name, std::vector<double> values);
    bool has_column(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;
    const std::vector<std::pair<std::string, std::vector<double>>>& columns() const {
        return columns_;
    }

    void add_metadata(const std::string& key, const std::string& value);
    const std::vector<std::pair<std::string, std::string>>& metadata() const { return meta_; }

    /// Grid step if the grid is uniform to 1e-9 relative, otherwise 0.
    double uniform_step() const;

    /// '#key: value' metadata lines, a header row, then 17-significant-digit rows.
    void write_csv(std::ostream& os) const;
    static SpacingTable read_csv(std::istream& is);

private:
    std::vector<double> s_;
    std::vector<std::pair<std::string, std::vector<double>>> columns_;
    std::vector<std::pair<std::string, std::string>> meta_;
};

/// Formats a value with 17 significant digits.
std::string format_double(double v);

}  // namespace spacing
