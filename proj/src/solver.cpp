#include <emden/solver.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include <emden/expr.hpp>

namespace emden
{

solve_error::solve_error(const std::string &message, std::size_t index)
    : std::runtime_error("step k=" + std::to_string(index) + ": " + message), m_index(index)
{
}

std::pair<coefficient, coefficient> transform_initial_conditions(const coefficient &y0, const coefficient &dy0)
{
    require_same_mode(y0, dy0);
    if (!dy0.is_zero()) {
        throw problem_error("y'(0) must be 0, got " + dy0.str());
    }
    // Y(k) = y^(k)(0) / k!
    return {y0, dy0};
}

namespace
{

// x f(x) at the solve order.
series shifted_forcing(const emden_problem &pr, std::size_t order)
{
    return pr.f_poly.resized(order).shifted_up();
}

} // namespace

solve_report solve(const emden_problem &pr)
{
    check_problem(pr);
    const auto report = validate_expr(pr.g, pr.y0, pr.arith);
    if (!report.ok()) {
        throw problem_error(report.str());
    }

    const auto md = pr.arith;
    const std::size_t n = pr.order;
    const auto xf = shifted_forcing(pr, n);
    const auto minus_a = -pr.a;

    auto [y0, y1] = transform_initial_conditions(pr.y0, pr.dy0);
    std::vector<coefficient> y{std::move(y0), std::move(y1)};
    expr_transform g(pr.g);
    std::vector<std::string> warnings;

    for (std::size_t k = 0; k < n; ++k) {
        try {
            g.advance(std::span<const coefficient>(y).first(k + 1u));
        } catch (const std::domain_error &ex) {
            throw solve_error(ex.what(), k);
        } catch (const std::invalid_argument &ex) {
            throw solve_error(ex.what(), k);
        }
        const auto gk = g.values();

        auto acc = coefficient::zero(md);
        double largest = 0.0;
        for (std::size_t r = 0; r <= k; ++r) {
            if (xf[r].is_zero() || gk[k - r].is_zero()) {
                continue;
            }
            const auto term = xf[r] * gk[k - r];
            if (md == mode::floating) {
                largest = std::max(largest, std::fabs(term.as_double()));
            }
            acc += term;
        }
        if (md == mode::floating && largest > 0.0 && std::fabs(acc.as_double()) * 1e6 < largest) {
            warnings.push_back("step k=" + std::to_string(k) + ": cancellation exceeds 1e6 in the convolution for Y("
                               + std::to_string(k + 1u) + ")");
        }

        // (k+1)(k+p) > 0 because p > 0.
        const auto denom = coefficient::from_int(static_cast<long long>(k + 1u), md)
                           * (coefficient::from_int(static_cast<long long>(k), md) + pr.p);
        auto next = minus_a * acc / denom;
        if (k == 0) {
            // x f(x) vanishes at the origin, which forces Y(1) = 0.
            y[1] = std::move(next);
        } else {
            y.push_back(std::move(next));
        }
    }
    y.resize(n + 1u, coefficient::zero(md));

    return solve_report{series(std::move(y)), pr, g.kernel_evaluations(), std::move(warnings)};
}

series residual_series(const emden_problem &pr, const series &candidate, std::optional<std::size_t> arithmetic_order)
{
    const std::size_t m = arithmetic_order.value_or(candidate.order());
    if (m < candidate.order()) {
        throw std::invalid_argument("residual_series: arithmetic order below the candidate order");
    }
    if (m < 2) {
        throw std::invalid_argument("residual_series: order must be at least 2");
    }
    if (candidate.get_mode() != pr.arith) {
        throw mode_error("residual_series: candidate mode differs from the problem mode");
    }
    const auto y = candidate.resized(m);
    const auto md = pr.arith;

    // x y'' has coefficients k (k+1) Y(k+1); p y' has p (k+1) Y(k+1).
    const auto x_ypp = derivative_transform(y, 2).resized(m).shifted_up();
    const auto yp = derivative_transform(y, 1).resized(m);
    const auto lhs = add_scaled(coefficient::one(md), x_ypp, pr.p, yp);

    const auto g = expr_series_transform(pr.g, y);
    const auto forcing = cauchy_product(shifted_forcing(pr, m), g);
    return add_scaled(coefficient::one(md), lhs, pr.a, forcing);
}

} // namespace emden
