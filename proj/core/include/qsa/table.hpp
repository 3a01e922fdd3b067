#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qsa {

// Column table with a units row, written as CSV. Doubles use a fixed
// round-trippable format so identical inputs give identical bytes.
class Table {
public:
    using Cell = std::variant<double, long long, std::string>;

    Table() = default;
    Table(std::vector<std::string> columns, std::vector<std::string> units);

    void add_row(std::vector<Cell> row);
    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return columns_.size(); }
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::string>& units() const { return units_; }
    const Cell& at(std::size_t r, std::size_t c) const { return rows_.at(r).at(c); }
    double number(std::size_t r, const std::string& column) const;
    std::size_t column_index(const std::string& name) const;

    void write_csv(std::ostream& os) const;
    std::string to_csv() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::string> units_;
    std::vector<std::vector<Cell>> rows_;
};

std::string format_double(double v);

}  // namespace qsa
