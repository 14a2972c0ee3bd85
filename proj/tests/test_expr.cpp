#include <doctest.h>

#include <cmath>
#include <random>

#include <emden/expr.hpp>

#include "oracles.hpp"

using namespace emden;

namespace
{

coefficient q(const char *text)
{
    return coefficient::parse(text, mode::rational);
}

series rs(std::initializer_list<std::string_view> c)
{
    return series::parse(c, mode::rational);
}

bool has_violation(const validation_report &r, std::string_view needle)
{
    for (const auto &v : r.violations) {
        if (v.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

std::vector<coefficient> advance_all(const expr &e, const series &y)
{
    expr_transform t(e);
    std::vector<coefficient> out;
    for (std::size_t k = 0; k <= y.order(); ++k) {
        out.push_back(t.advance(y.coeffs().subspan(0, k + 1)));
    }
    return out;
}

} // namespace

TEST_CASE("validate_expr reports kernel preconditions at y(0)")
{
    const auto ln_at_zero = validate_expr(expr::log(q("1"), q("0")), q("0"), mode::rational);
    CHECK_FALSE(ln_at_zero.ok());
    CHECK(has_violation(ln_at_zero, "ln domain"));

    CHECK(validate_expr(expr::exp(q("1")), q("0"), mode::rational).ok());

    const auto sinh_seed = validate_expr(expr::sinh(q("1")), q("1"), mode::rational);
    CHECK(has_violation(sinh_seed, "transcendental seed"));
    CHECK(validate_expr(expr::sinh(coefficient(1.0)), coefficient(1.0), mode::floating).ok());

    CHECK(has_violation(validate_expr(expr::power(q("1/2")), q("0"), mode::rational), "singular"));
    CHECK_FALSE(validate_expr(expr::power(coefficient(0.5)), coefficient(-1.0), mode::floating).ok());
    CHECK(validate_expr(expr::power(q("3")), q("0"), mode::rational).ok());
}

TEST_CASE("validate_expr collects every violation and checks modes")
{
    const auto e = expr::sum({expr::log(q("1"), q("-2")), expr::sin(q("1"))});
    const auto r = validate_expr(e, q("1"), mode::rational);
    CHECK(r.violations.size() >= 2);
    CHECK_FALSE(validate_expr(expr::exp(q("1")), q("0"), mode::floating).ok());
}

TEST_CASE("identity expression passes Y through")
{
    const auto y = rs({"1", "0", "-1/6"});
    CHECK(series(advance_all(expr::var(), y)) == y);
}

TEST_CASE("e^y + 2 e^(y/2) starts at 3")
{
    const auto e = expr::sum({expr::exp(q("1")), expr::scale(q("2"), expr::exp(q("1/2")))});
    expr_transform t(e);
    const auto y = rs({"0", "0"});
    CHECK(t.advance(y.coeffs().subspan(0, 1)) == q("3"));
}

TEST_CASE("y ln y on y = 1 - x^2")
{
    const auto e = expr::product({expr::var(), expr::log(q("1"), q("0"))});
    const auto g = advance_all(e, rs({"1", "0", "-1"}));
    CHECK(g[0] == q("0"));
    CHECK(g[1] == q("0"));
    CHECK(g[2] == q("-1"));
}

TEST_CASE("y ln y matches the composition oracle")
{
    // y ln y around y0 = 1: sum_j c_j h^j with c_0 = 0, c_1 = 1,
    // c_j = (-1)^j / (j (j - 1)) for j >= 2.
    std::vector<rational> taylor{0, 1};
    for (long j = 2; j <= 8; ++j) {
        taylor.push_back(rational(j % 2 == 0 ? 1 : -1, j * (j - 1)));
    }
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto y = oracle::random_polynomial(rng, 6, 8);
        y[0] = 1;
        const auto e = expr::product({expr::var(), expr::log(q("1"), q("0"))});
        CHECK(oracle::exact_values(expr_series_transform(e, oracle::to_series(y))) == oracle::compose(taylor, y, 8));
    }
}

TEST_CASE("power leaf equals the bare kernel")
{
    const auto y = rs({"2", "1", "-1", "3", "0", "1/2"});
    CHECK(expr_series_transform(expr::power(q("-3/2")).converted(mode::floating), y.converted(mode::floating))
          == power_transform(y.converted(mode::floating), coefficient(-1.5)));
    CHECK(expr_series_transform(expr::power(q("5")), y) == power_transform(y, q("5")));
}

TEST_CASE("transform is linear over Sum and Scale")
{
    std::mt19937 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        auto yq = oracle::random_polynomial(rng, 6, 8);
        yq[0] = 0;
        const auto y = oracle::to_series(yq);
        const auto e1 = expr::exp(q("2"));
        const auto e2 = expr::product({expr::var(), expr::cos(q("1/3"))});
        const auto combined = expr::sum({expr::scale(q("3/7"), e1), expr::scale(q("-5"), e2)});
        const auto expected =
            add_scaled(q("3/7"), expr_series_transform(e1, y), q("-5"), expr_series_transform(e2, y));
        CHECK(expr_series_transform(combined, y) == expected);
    }
}

TEST_CASE("expression transform is causal")
{
    const auto e = parse_expression("18*y + 4*y*ln(y)");
    const auto y = rs({"1", "0", "-1", "0", "1/2", "0", "-1/6"});
    const auto full = expr_series_transform(e, y);
    CHECK(expr_series_transform(e, y.resized(3)) == full.resized(3));
}

TEST_CASE("kernel evaluations are counted")
{
    expr_transform t(parse_expression("exp(y) + 2*exp(y/2)"));
    const auto y = rs({"0", "0", "-1"});
    for (std::size_t k = 0; k <= 2; ++k) {
        t.advance(y.coeffs().subspan(0, k + 1));
    }
    CHECK(t.kernel_evaluations() == 6);
    CHECK(t.next_index() == 3);
    CHECK_THROWS(t.advance(y.coeffs().subspan(0, 2)));
}

TEST_CASE("parser builds the documented trees")
{
    CHECK(parse_expression("y") == expr::var());
    CHECK(parse_expression("y^5") == expr::power(q("5")));
    CHECK(parse_expression("exp(y)") == expr::exp(q("1")));
    CHECK(parse_expression("exp(y/2)") == expr::exp(q("1/2")));
    CHECK(parse_expression("ln(2*y + 1)") == expr::log(q("2"), q("1")));
    CHECK(parse_expression("log(y)") == expr::log(q("1"), q("0")));
    CHECK(parse_expression("-sin(y)") == expr::scale(q("-1"), expr::sin(q("1"))));
    CHECK(parse_expression("sinh(-y)") == expr::sinh(q("-1")));
    CHECK(parse_expression("3") == expr::constant(q("3")));
    CHECK(parse_expression("y^-1/2") == expr::power(q("-1/2")));
}

TEST_CASE("canonical text round-trips")
{
    for (const char *text :
         {"y", "y^5", "exp(y) + 2*exp(1/2*y)", "18*y + 4*y*ln(y)", "sin(y)", "cos(2*y) - cosh(y)", "ln(3*y + 1/2)",
          "y*(1 + y)", "-(y + sinh(y))", "2*y^-3/2", "(y + 1)*(y - 1)*exp(-y)", "1/2 + y"}) {
        CAPTURE(text);
        const auto e = parse_expression(text);
        const auto printed = e.str();
        CAPTURE(printed);
        const auto again = parse_expression(printed);
        CHECK(again == e);
        CHECK(again.str() == printed);
    }
}

TEST_CASE("parse errors carry positions")
{
    try {
        parse_expression("exp(sin(y))");
        FAIL("expected a parse error");
    } catch (const parse_error &e) {
        CHECK(e.message().find("nesting") != std::string::npos);
        CHECK(e.line() == 1);
        CHECK(e.column() >= 5);
    }
    try {
        parse_expression("y +\n", mode::rational, 4);
        FAIL("expected a parse error");
    } catch (const parse_error &e) {
        CHECK(e.line() == 4);
        CHECK(std::string(e.what()).rfind("line 4, column", 0) == 0);
    }
    CHECK_THROWS_AS(parse_expression("tan(y)"), parse_error);
    CHECK_THROWS_AS(parse_expression("exp(y + 1)"), parse_error);
    CHECK_THROWS_AS(parse_expression("x"), parse_error);
    CHECK_THROWS_AS(parse_expression("(y"), parse_error);
    CHECK_THROWS_AS(parse_expression("y^y"), parse_error);
    CHECK_THROWS_AS(parse_expression(""), parse_error);
}

TEST_CASE("float mode parsing and scalar evaluation")
{
    const auto e = parse_expression("18*y + 4*y*ln(y)", mode::floating);
    CHECK(e.children()[0].value().get_mode() == mode::floating);
    CHECK(evaluate_scalar(e, 1.0) == doctest::Approx(18.0));
    CHECK(evaluate_scalar(e, std::exp(1.0)) == doctest::Approx(22.0 * std::exp(1.0)));
    CHECK_THROWS_AS(evaluate_scalar(parse_expression("ln(y)"), -1.0), domain_violation);
    CHECK_THROWS_AS(evaluate_scalar(parse_expression("y^1/2"), -1.0), domain_violation);
}
