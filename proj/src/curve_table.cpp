#include "cflab/curve_table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "cflab/errors.hpp"

namespace cflab {

CurveTable::CurveTable(std::string abscissa_name, std::vector<std::string> column_names)
    : abscissa_name_(std::move(abscissa_name)),
      column_names_(std::move(column_names)),
      columns_(column_names_.size()) {}

void CurveTable::add_row(double abscissa, std::vector<double> values) {
    if (values.size() != column_names_.size()) {
        throw DimensionError("curve table row has " + std::to_string(values.size()) +
                             " values, expected " + std::to_string(column_names_.size()));
    }
    if (!abscissa_.empty() && !(abscissa > abscissa_.back())) {
        throw InvalidInputError("curve table abscissa must be strictly increasing");
    }
    abscissa_.push_back(abscissa);
    for (std::size_t c = 0; c < values.size(); ++c) columns_[c].push_back(values[c]);
}

const std::vector<double>& CurveTable::column(const std::string& name) const {
    if (name == abscissa_name_) return abscissa_;
    for (std::size_t c = 0; c < column_names_.size(); ++c) {
        if (column_names_[c] == name) return columns_[c];
    }
    throw InvalidInputError("curve table has no column '" + name + "'");
}

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void CurveTable::write_csv(std::ostream& out) const {
    out << abscissa_name_;
    for (const auto& name : column_names_) out << ',' << name;
    out << '\n';
    for (std::size_t r = 0; r < abscissa_.size(); ++r) {
        out << format_real(abscissa_[r]);
        for (const auto& col : columns_) out << ',' << format_real(col[r]);
        out << '\n';
    }
}

std::string CurveTable::to_csv() const {
    std::ostringstream out;
    write_csv(out);
    return out.str();
}

void CurveTable::save_csv(const std::filesystem::path& path) const {
    write_file_atomic(path, to_csv());
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_real(const std::string& cell, std::size_t line_no) {
    if (cell == "inf") return INFINITY;
    if (cell == "-inf") return -INFINITY;
    if (cell == "nan") return NAN;
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
        throw DataError("csv line " + std::to_string(line_no) + ": cannot parse '" + cell + "'");
    }
    return v;
}

}  // namespace

CurveTable CurveTable::parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw DataError("csv is empty");
    auto header = split_commas(line);
    if (header.empty()) throw DataError("csv header is empty");
    CurveTable table(header.front(), std::vector<std::string>(header.begin() + 1, header.end()));
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split_commas(line);
        if (cells.size() != header.size()) {
            throw DataError("csv line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields");
        }
        std::vector<double> values;
        for (std::size_t c = 1; c < cells.size(); ++c) values.push_back(parse_real(cells[c], line_no));
        table.add_row(parse_real(cells[0], line_no), std::move(values));
    }
    return table;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open '" + tmp.string() + "' for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw DataError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw DataError("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

}  // namespace cflab
