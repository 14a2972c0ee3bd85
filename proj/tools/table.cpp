#include "table.hpp"

#include <algorithm>
#include <stdexcept>

namespace emden::cli
{

table_format parse_table_format(std::string_view s)
{
    if (s == "text") {
        return table_format::text;
    }
    if (s == "csv") {
        return table_format::csv;
    }
    throw std::invalid_argument("unknown format '" + std::string(s) + "' (expected csv or text)");
}

namespace
{

std::string csv_cell(const std::string &cell)
{
    if (cell.find_first_of(",\"\n\r") == std::string::npos) {
        return cell;
    }
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string output_table::render(table_format fmt) const
{
    std::string out;
    if (fmt == table_format::csv) {
        const auto emit = [&](const std::vector<std::string> &row) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i > 0) {
                    out += ',';
                }
                out += csv_cell(row[i]);
            }
            out += '\n';
        };
        emit(headers);
        for (const auto &r : rows) {
            emit(r);
        }
        return out;
    }

    std::vector<std::size_t> width(headers.size(), 0);
    const auto measure = [&](const std::vector<std::string> &row) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
            width[i] = std::max(width[i], row[i].size());
        }
    };
    measure(headers);
    for (const auto &r : rows) {
        measure(r);
    }

    const auto emit = [&](const std::vector<std::string> &row) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto &cell = row[i];
            if (i == 0) {
                line += std::string(width[0] - std::min(width[0], cell.size()), ' ') + cell;
            } else {
                // Pad after the separator so every column starts at a fixed offset.
                const auto &prev = row[i - 1];
                const auto pad = i == 1 ? 0u : width[i - 1] - std::min(width[i - 1], prev.size());
                line += "," + std::string(pad + 1u, ' ') + cell;
            }
        }
        out += line + '\n';
    };
    emit(headers);
    for (const auto &r : rows) {
        emit(r);
    }
    return out;
}

} // namespace emden::cli
