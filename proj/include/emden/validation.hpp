#ifndef EMDEN_VALIDATION_HPP
#define EMDEN_VALIDATION_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <emden/problem.hpp>
#include <emden/series.hpp>

namespace emden
{

// Thrown when an oracle does not exist for the requested preset.
class no_oracle : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

bool has_exact_solution(const preset_id &);

// Closed forms: lane_emden m = 0, 1, 5 (1 - x^2/6, sin(x)/x,
// (1 + x^2/3)^(-1/2)), example5 (-2 ln(1 + a x^2)), example6 (e^(-a x^2)).
double exact_solution(const preset_id &, double x);

// A literature series stored as symbolic strings such as "61/1632960" or
// "(e^4-1)/(480*e^2)". Constants: e = exp(1), k1 = sin(1), k2 = cos(1).
struct reference_fixture {
    preset_kind kind;
    std::size_t order;
    std::vector<std::string> text; // per power, "0" where the source lists no term
    series values;                  // float mode
};

bool has_reference_series(preset_kind);
const reference_fixture &reference(preset_kind);
series reference_series(preset_kind);

// Parses a fixture file body; exposed for tests.
reference_fixture parse_reference_fixture(std::string_view text, preset_kind kind);

// Evaluates a constant expression over numbers, e, k1, k2, + - * / ^ and
// parentheses (integer exponents only).
double evaluate_constant(std::string_view text);

struct rk_options {
    double x_start = 1e-3;
    double tol = 1e-10;
    // Order of the series used to seed (y, y') at x_start; 0 means the
    // problem's own order.
    std::size_t seed_order = 0;
    std::size_t max_steps = 1000000;
};

// Adaptive Dormand-Prince 5(4) integration of
//   y'' = -(p/x) y' - a f(x) g(y)
// from x_start to x_target, seeded from the series solution at x_start.
// Throws std::runtime_error on step-size underflow and domain_violation if
// the trajectory leaves the domain of g.
double rk_oracle(const emden_problem &problem, double x_target, const rk_options &options = {});

struct coefficient_delta {
    std::size_t k;
    double a;
    double b;
    double abs_delta;
    double rel_delta;
    // Set when both inputs are exact.
    std::optional<bool> exact_equal;
};

struct point_delta {
    double x;
    double a;
    double b;
    double abs_delta;
};

struct comparison_report {
    std::vector<coefficient_delta> coefficients;
    std::vector<point_delta> points;
    double max_abs_coefficient_delta = 0.0;
    double max_abs_point_delta = 0.0;
    double tolerance = 0.0;
    bool within_tolerance = true;

    // Powers whose relative coefficient delta exceeds rel_tol.
    std::vector<std::size_t> mismatches(double rel_tol = 1e-12) const;
};

// Coefficient-wise and pointwise deltas between two series of equal order.
// The verdict holds when every pointwise delta (or, with no sample points,
// every coefficient delta) is within tol.
comparison_report compare(const series &a, const series &b, std::span<const double> sample_points, double tol = 1e-12);

// Pointwise deltas between a series and an arbitrary oracle.
comparison_report compare_pointwise(const series &a, const std::function<double(double)> &oracle,
                                    std::span<const double> sample_points, double tol);

// lo, lo + step, ..., hi (inclusive, to within rounding of the step count).
std::vector<double> sample_range(double lo, double hi, double step);

// The abscissae 0, 0.1, ..., 2 of the isothermal comparison plot.
std::vector<double> comparison_plot_points();

} // namespace emden

#endif
