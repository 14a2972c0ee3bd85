#include <doctest.h>

#include <cmath>

#include <emden/kernels.hpp>

#include "kernel_checks.hpp"
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

} // namespace

TEST_CASE("exp of x is the exponential series")
{
    const auto e = exp_transform(monomial(1, 6), q("1"));
    CHECK(e == rs({"1", "1", "1/2", "1/6", "1/24", "1/120", "1/720"}));
}

TEST_CASE("sin and cos of x")
{
    const auto [s, c] = sincos_transform(monomial(1, 5), q("1"));
    CHECK(s == rs({"0", "1", "0", "-1/6", "0", "1/120"}));
    CHECK(c == rs({"1", "0", "-1/2", "0", "1/24", "0"}));
    const auto [sh, ch] = sinhcosh_transform(monomial(1, 5), q("1"));
    CHECK(sh == rs({"0", "1", "0", "1/6", "0", "1/120"}));
    CHECK(ch == rs({"1", "0", "1/2", "0", "1/24", "0"}));
}

TEST_CASE("ln(1 + x) and ln(y) with y = 1 + x")
{
    CHECK(log_transform(monomial(1, 4), q("1"), q("1")) == rs({"0", "1", "-1/2", "1/3", "-1/4"}));
    CHECK(log_transform(rs({"1", "1", "0", "0", "0"}), q("1"), q("0")) == rs({"0", "1", "-1/2", "1/3", "-1/4"}));
}

TEST_CASE("power kernel: square root of 1 + x and the product fallback")
{
    const auto root = power_transform(rs({"1", "1", "0", "0"}), q("1/2"));
    CHECK(root == rs({"1", "1/2", "-1/8", "1/16"}));

    power_kernel k(q("3"));
    const auto y = rs({"0", "1", "1", "0", "0"});
    std::vector<coefficient> out;
    for (std::size_t i = 0; i <= y.order(); ++i) {
        out.push_back(k.advance(y.coeffs().subspan(0, i + 1)));
    }
    CHECK(k.uses_product_fallback());
    // (x + x^2)^3 = x^3 + 3x^4 + ...
    CHECK(series(out) == rs({"0", "0", "0", "1", "3"}));
    CHECK(power_transform(rs({"0", "1", "0"}), q("0")) == rs({"1", "0", "0"}));
}

TEST_CASE("power seeds stay exact when they can")
{
    CHECK(power_seed(q("4"), q("1/2")) == q("2"));
    CHECK(power_seed(q("8/27"), q("-2/3")) == q("9/4"));
    CHECK(power_seed(q("2"), q("-3")) == q("1/8"));
    CHECK_THROWS_AS(power_seed(q("2"), q("1/2")), transcendental_seed);
    CHECK_THROWS_AS(power_seed(q("-4"), q("1/2")), domain_violation);
    CHECK(power_seed(coefficient(2.0), coefficient(0.5)).as_double() == std::sqrt(2.0));
}

TEST_CASE("kernel error paths")
{
    SUBCASE("ln outside its domain")
    {
        CHECK_THROWS_AS(log_transform(rs({"-1", "1"}), q("1"), q("0")), domain_violation);
        CHECK_THROWS_AS(log_transform(series::parse({"0", "1"}, mode::floating), coefficient(1.0), coefficient(0.0)),
                        domain_violation);
    }
    SUBCASE("transcendental seeds in rational mode")
    {
        CHECK_THROWS_AS(exp_transform(rs({"1", "1"}), q("1")), transcendental_seed);
        CHECK_THROWS_AS(sincos_transform(rs({"1", "1"}), q("1")), transcendental_seed);
        CHECK_THROWS_AS(log_transform(rs({"2", "1"}), q("1"), q("0")), transcendental_seed);
    }
    SUBCASE("singular power recurrence")
    {
        CHECK_THROWS_AS(power_transform(rs({"0", "1"}), q("1/2")), domain_violation);
        CHECK_THROWS_AS(power_transform(rs({"0", "1"}), q("-1")), domain_violation);
    }
    SUBCASE("prefix of the wrong length")
    {
        exp_kernel k(q("1"));
        const auto y = rs({"0", "1", "2"});
        CHECK_THROWS_AS(k.advance(y.coeffs()), std::invalid_argument);
    }
}

TEST_CASE("kernels are causal: emitted values never change")
{
    std::mt19937 rng(3);
    const auto y = oracle::to_series(oracle::random_polynomial(rng, 6, 8));
    const auto head = oracle::to_series([&] {
        auto v = oracle::exact_values(y);
        v.resize(5);
        return v;
    }());
    const auto beta = coefficient(rational(1) - y[0].as_rational());
    const auto full = log_transform(y, q("1"), beta);
    CHECK(full.resized(4) == log_transform(head, q("1"), beta));
}

TEST_CASE("float kernels on the e^(1 + x) seed")
{
    const auto y = series::parse({"1", "1", "0", "0"}, mode::floating);
    const auto e = exp_transform(y, coefficient(1.0));
    CHECK(e[0].as_double() == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(e[3].as_double() == doctest::Approx(std::exp(1.0) / 6.0).epsilon(1e-14));
}

TEST_CASE("every kernel agrees with the composition oracle (small sample)")
{
    using oracle::fn;
    for (fn f : {fn::power, fn::exp, fn::log, fn::sin, fn::cos, fn::sinh, fn::cosh}) {
        CAPTURE(oracle::name(f));
        const auto exact = oracle::rational_suite(f, 15, 101);
        CHECK(exact.exact_mismatches == 0);
        const auto approx = oracle::float_suite(f, 15, 202);
        CHECK(approx.worst_relative <= 1e-10);
    }
}
