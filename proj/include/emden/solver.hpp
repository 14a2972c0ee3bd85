#ifndef EMDEN_SOLVER_HPP
#define EMDEN_SOLVER_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <emden/coefficient.hpp>
#include <emden/problem.hpp>
#include <emden/series.hpp>

namespace emden
{

// A kernel or domain failure part-way through the recurrence.
class solve_error : public std::runtime_error
{
public:
    solve_error(const std::string &message, std::size_t index);

    // Index k of the step that failed (the step producing Y(k+1)).
    std::size_t index() const noexcept
    {
        return m_index;
    }

private:
    std::size_t m_index;
};

struct solve_report {
    series coefficients;
    emden_problem problem;
    std::size_t kernel_evaluations = 0;
    std::vector<std::string> warnings;
};

// (Y(0), Y(1)) from y(0) and y'(0); y'(0) must be zero.
std::pair<coefficient, coefficient> transform_initial_conditions(const coefficient &y0, const coefficient &dy0);

// Runs
//   (k+1)(k+p) Y(k+1) = -a sum_{r=0..k} XF(r) G(k-r),   k = 1 .. N-1,
// where XF is the transform of x f(x) and G the transform of g(y). This is
// the x-multiplied equation x y'' + p y' + a x f(x) g(y) = 0 read
// coefficient by coefficient.
//
// Throws problem_error when the problem is invalid (including a failed
// validate_expr) and solve_error when a kernel fails mid-recurrence. In
// float mode a warning is recorded when a step loses more than six digits to
// cancellation.
solve_report solve(const emden_problem &problem);

// Transform of x y'' + p y' + a x f(x) g(y) on a candidate series. The
// candidate is zero-padded to `arithmetic_order` (default: its own order)
// before any arithmetic.
series residual_series(const emden_problem &problem, const series &candidate,
                       std::optional<std::size_t> arithmetic_order = std::nullopt);

} // namespace emden

#endif
