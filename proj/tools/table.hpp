#ifndef EMDEN_TOOLS_TABLE_HPP
#define EMDEN_TOOLS_TABLE_HPP

#include <string>
#include <string_view>
#include <vector>

namespace emden::cli
{

enum class table_format { text, csv };

table_format parse_table_format(std::string_view);

// Header row plus data rows. CSV output is comma-separated with LF line
// endings; text output separates cells with ", " and pads columns so they
// line up (the first column right-aligned).
struct output_table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;

    std::string render(table_format) const;
};

} // namespace emden::cli

#endif
