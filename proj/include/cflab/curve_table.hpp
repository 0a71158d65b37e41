#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cflab {

/// Column-oriented numeric table: one abscissa column plus named curves.
/// Rows are appended in strictly increasing abscissa order.
class CurveTable {
public:
    CurveTable(std::string abscissa_name, std::vector<std::string> column_names);

    void add_row(double abscissa, std::vector<double> values);

    const std::string& abscissa_name() const { return abscissa_name_; }
    const std::vector<std::string>& column_names() const { return column_names_; }
    std::size_t rows() const { return abscissa_.size(); }
    std::size_t columns() const { return column_names_.size() + 1; }

    double abscissa(std::size_t row) const { return abscissa_.at(row); }
    const std::vector<double>& abscissa_values() const { return abscissa_; }
    /// Column by name; the abscissa name is accepted too.
    const std::vector<double>& column(const std::string& name) const;

    /// CSV: header row, shortest round-trip reals, `inf` for infinities, LF.
    void write_csv(std::ostream& out) const;
    std::string to_csv() const;

    /// Writes through a temporary file and renames it into place.
    void save_csv(const std::filesystem::path& path) const;

    static CurveTable parse_csv(const std::string& text);

private:
    std::string abscissa_name_;
    std::vector<std::string> column_names_;
    std::vector<double> abscissa_;
    std::vector<std::vector<double>> columns_;
};

/// Shortest string that parses back to the same double; `inf`/`-inf`/`nan`
/// for non-finite values.
std::string format_real(double value);

/// Writes `contents` to `path` via a sibling temporary and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace cflab
