#ifndef EMDEN_PROBLEM_HPP
#define EMDEN_PROBLEM_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include <emden/coefficient.hpp>
#include <emden/expr.hpp>
#include <emden/series.hpp>

namespace emden
{

// An invalid problem statement (bad shape parameter, nonzero y'(0), ...).
class problem_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// y'' + (p/x) y' + a f(x) g(y) = 0,  y(0) = y0,  y'(0) = dy0 = 0,
// solved to truncation order `order` in arithmetic mode `arith`.
struct emden_problem {
    coefficient p;
    coefficient a;
    series f_poly;
    expr g;
    coefficient y0;
    coefficient dy0;
    std::size_t order = 10;
    mode arith = mode::rational;

    emden_problem converted(mode m) const;
    emden_problem with_order(std::size_t n) const;
};

// Structural invariants: p > 0, dy0 == 0, order >= 2, deg f <= order and a
// single mode throughout. Throws problem_error.
void check_problem(const emden_problem &);

enum class preset_kind { lane_emden, isothermal, sinh_case, sin_case, example5, example6 };

struct preset_id {
    preset_kind kind = preset_kind::isothermal;
    // m for lane_emden, a for example5/example6; unused otherwise.
    rational param{0};

    // `params` holds key=value pairs such as {"m", "5"}; a defaults to 1,
    // lane_emden requires m.
    static preset_id make(std::string_view name, const std::map<std::string, std::string> &params = {});

    std::string label() const;
};

struct preset_info {
    preset_kind kind;
    std::string_view name;
    std::string_view equation;
    std::string_view parameter; // empty when the preset takes none
    mode documented_mode;
    std::string_view shape; // p, a, f, g and y0 as the solver sees them
};

std::span<const preset_info> preset_catalog();
const preset_info &info(preset_kind);
std::optional<preset_kind> preset_from_name(std::string_view);
std::string_view to_string(preset_kind);

// Throws problem_error on out-of-range parameters (m < 0, a == 0).
emden_problem preset(const preset_id &id, std::size_t order, mode m);

// Polynomial in x, e.g. "1", "1 + 2*x^2", "1/2*x - x^3".
series parse_polynomial(std::string_view text, mode m, std::size_t line = 1);
std::string format_polynomial(const series &);

// INI-style problem file:
//
//   [equation]  p, a, f, g
//   [initial]   y0, dy0
//   [solve]     order, mode
//
// `#` starts a comment. p, g and y0 are required; a = 1, f = 1, dy0 = 0,
// order = 10 and mode = rational are the defaults. Throws parse_error with
// the offending line and column.
emden_problem parse_problem_file(std::string_view text);

// Canonical file text; parse_problem_file(format_problem_file(p)) == p.
std::string format_problem_file(const emden_problem &, std::string_view title = {});

bool operator==(const emden_problem &, const emden_problem &);

} // namespace emden

#endif
