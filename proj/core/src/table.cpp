#include "qsa/table.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qsa {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.12g}", v);
}

Table::Table(std::vector<std::string> columns, std::vector<std::string> units)
    : columns_(std::move(columns)), units_(std::move(units)) {
    if (units_.size() != columns_.size()) throw std::invalid_argument("units row length mismatch");
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) throw std::invalid_argument("row length mismatch");
    rows_.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i] == name) return i;
    throw std::out_of_range("no column " + name);
}

double Table::number(std::size_t r, const std::string& column) const {
    const auto& c = at(r, column_index(column));
    if (auto d = std::get_if<double>(&c)) return *d;
    if (auto i = std::get_if<long long>(&c)) return static_cast<double>(*i);
    throw std::invalid_argument("column " + column + " is not numeric");
}

static void put_cell(std::ostream& os, const Table::Cell& c) {
    if (auto d = std::get_if<double>(&c))
        os << format_double(*d);
    else if (auto i = std::get_if<long long>(&c))
        os << *i;
    else
        os << std::get<std::string>(c);
}

void Table::write_csv(std::ostream& os) const {
    auto line = [&](const std::vector<std::string>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << '\n';
    };
    line(columns_);
    line(units_);
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) os << ',';
            put_cell(os, r[i]);
        }
        os << '\n';
    }
}

std::string Table::to_csv() const {
    std::ostringstream os;
    write_csv(os);
    return os.str();
}

}  // namespace qsa
