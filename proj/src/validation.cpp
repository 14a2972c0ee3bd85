#include <emden/validation.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/numeric/odeint.hpp>

#include <emden/kernels.hpp>
#include <emden/solver.hpp>

#include "reference_data.hpp"

namespace emden
{

bool has_exact_solution(const preset_id &id)
{
    switch (id.kind) {
        case preset_kind::lane_emden:
            return id.param == 0 || id.param == 1 || id.param == 5;
        case preset_kind::example5:
        case preset_kind::example6:
            return true;
        default:
            return false;
    }
}

double exact_solution(const preset_id &id, double x)
{
    if (!has_exact_solution(id)) {
        throw no_oracle("no closed form for preset " + id.label());
    }
    const double par = id.param.convert_to<double>();
    switch (id.kind) {
        case preset_kind::lane_emden:
            if (id.param == 0) {
                return 1.0 - x * x / 6.0;
            }
            if (id.param == 1) {
                return x == 0.0 ? 1.0 : std::sin(x) / x;
            }
            return 1.0 / std::sqrt(1.0 + x * x / 3.0);
        case preset_kind::example5: {
            const double arg = 1.0 + par * x * x;
            if (arg <= 0.0) {
                throw domain_violation("-2 ln(1 + a x^2) is undefined at x = " + format_float(x));
            }
            return -2.0 * std::log(arg);
        }
        case preset_kind::example6:
            return std::exp(-par * x * x);
        default:
            break;
    }
    throw no_oracle("no closed form for preset " + id.label());
}

namespace
{

class constant_parser
{
public:
    explicit constant_parser(std::string_view text) : m_text(text) {}

    double run()
    {
        const double v = parse_sum();
        skip();
        if (m_pos != m_text.size()) {
            fail("unexpected trailing text");
        }
        return v;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw std::invalid_argument("constant expression '" + std::string(m_text) + "': " + msg + " at column "
                                    + std::to_string(m_pos + 1u));
    }

    void skip()
    {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }

    bool accept(char c)
    {
        skip();
        if (m_pos < m_text.size() && m_text[m_pos] == c) {
            ++m_pos;
            return true;
        }
        return false;
    }

    double parse_sum()
    {
        double v = parse_product();
        while (true) {
            if (accept('+')) {
                v += parse_product();
            } else if (accept('-')) {
                v -= parse_product();
            } else {
                return v;
            }
        }
    }

    double parse_product()
    {
        double v = parse_unary();
        while (true) {
            if (accept('*')) {
                v *= parse_unary();
            } else if (accept('/')) {
                v /= parse_unary();
            } else {
                return v;
            }
        }
    }

    double parse_unary()
    {
        if (accept('-')) {
            return -parse_unary();
        }
        return parse_power();
    }

    double parse_power()
    {
        const double base = parse_atom();
        if (!accept('^')) {
            return base;
        }
        skip();
        const auto start = m_pos;
        while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
        if (start == m_pos) {
            fail("expected an integer exponent");
        }
        const int e = std::stoi(std::string(m_text.substr(start, m_pos - start)));
        double acc = 1.0;
        for (int i = 0; i < e; ++i) {
            acc *= base;
        }
        return acc;
    }

    double parse_atom()
    {
        skip();
        if (accept('(')) {
            const double v = parse_sum();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return v;
        }
        const auto start = m_pos;
        if (m_pos < m_text.size() && std::isalpha(static_cast<unsigned char>(m_text[m_pos]))) {
            while (m_pos < m_text.size() && std::isalnum(static_cast<unsigned char>(m_text[m_pos]))) {
                ++m_pos;
            }
            const auto name = m_text.substr(start, m_pos - start);
            if (name == "e") {
                return std::exp(1.0);
            }
            if (name == "k1") {
                return std::sin(1.0);
            }
            if (name == "k2") {
                return std::cos(1.0);
            }
            m_pos = start;
            fail("unknown constant '" + std::string(name) + "'");
        }
        while (m_pos < m_text.size() && (std::isdigit(static_cast<unsigned char>(m_text[m_pos])) || m_text[m_pos] == '.')) {
            ++m_pos;
        }
        if (start == m_pos) {
            fail("expected a number, constant or '('");
        }
        return coefficient::parse(m_text.substr(start, m_pos - start), mode::floating).as_double();
    }

    std::string_view m_text;
    std::size_t m_pos = 0;
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::string_view reference_text(preset_kind kind)
{
    switch (kind) {
        case preset_kind::isothermal:
            return detail::isothermal_reference;
        case preset_kind::sinh_case:
            return detail::sinh_case_reference;
        case preset_kind::sin_case:
            return detail::sin_case_reference;
        default:
            throw no_oracle("no reference series for preset " + std::string(to_string(kind)));
    }
}

} // namespace

double evaluate_constant(std::string_view text)
{
    return constant_parser(text).run();
}

reference_fixture parse_reference_fixture(std::string_view text, preset_kind kind)
{
    std::optional<std::size_t> order;
    std::vector<std::pair<std::size_t, std::string>> entries;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1u : eol + 1u;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("reference fixture line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1u));
        const auto where = "reference fixture line " + std::to_string(line_no);
        const auto index = [&](std::string_view digits) {
            std::size_t v = 0;
            const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), v);
            if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size()) {
                throw std::invalid_argument(where + ": expected an integer, got '" + std::string(digits) + "'");
            }
            return v;
        };
        if (key == "order") {
            if (order) {
                throw std::invalid_argument(where + ": duplicate order");
            }
            order = index(value);
        } else {
            const auto k = index(key);
            for (const auto &entry : entries) {
                if (entry.first == k) {
                    throw std::invalid_argument(where + ": duplicate term x^" + std::to_string(k));
                }
            }
            entries.emplace_back(k, std::string(value));
        }
    }
    if (!order) {
        throw std::invalid_argument("reference fixture without an order line");
    }
    reference_fixture out{kind, *order, std::vector<std::string>(*order + 1u, "0"), series::zeros(*order, mode::floating)};
    std::vector<coefficient> values(*order + 1u, coefficient(0.0));
    for (const auto &[k, expr_text] : entries) {
        if (k > *order) {
            throw std::invalid_argument("reference fixture term x^" + std::to_string(k) + " above its order");
        }
        out.text[k] = expr_text;
        values[k] = coefficient(evaluate_constant(expr_text));
    }
    out.values = series(std::move(values));
    return out;
}

bool has_reference_series(preset_kind kind)
{
    return kind == preset_kind::isothermal || kind == preset_kind::sinh_case || kind == preset_kind::sin_case;
}

const reference_fixture &reference(preset_kind kind)
{
    static const reference_fixture isothermal = parse_reference_fixture(reference_text(preset_kind::isothermal),
                                                                        preset_kind::isothermal);
    static const reference_fixture sinh_case = parse_reference_fixture(reference_text(preset_kind::sinh_case),
                                                                       preset_kind::sinh_case);
    static const reference_fixture sin_case = parse_reference_fixture(reference_text(preset_kind::sin_case),
                                                                      preset_kind::sin_case);
    switch (kind) {
        case preset_kind::isothermal:
            return isothermal;
        case preset_kind::sinh_case:
            return sinh_case;
        case preset_kind::sin_case:
            return sin_case;
        default:
            throw no_oracle("no reference series for preset " + std::string(to_string(kind)));
    }
}

series reference_series(preset_kind kind)
{
    return reference(kind).values;
}

double rk_oracle(const emden_problem &problem, double x_target, const rk_options &options)
{
    namespace odeint = boost::numeric::odeint;
    using state = std::array<double, 2>;

    if (!(options.x_start > 0.0)) {
        throw std::invalid_argument("rk_oracle: x_start must be positive");
    }
    if (!(x_target > options.x_start)) {
        throw std::invalid_argument("rk_oracle: x_target must exceed x_start");
    }

    const auto seed_problem = problem.with_order(options.seed_order == 0 ? problem.order : options.seed_order);
    const auto seed = solve(seed_problem).coefficients;
    const auto slope = derivative_transform(seed, 1);

    const double p = problem.p.to_double();
    const double a = problem.a.to_double();
    const auto f = problem.f_poly.converted(mode::floating);
    const auto &g = problem.g;

    const auto rhs = [&](const state &s, state &ds, double x) {
        ds[0] = s[1];
        ds[1] = -(p / x) * s[1] - a * evaluate(f, x) * evaluate_scalar(g, s[0]);
    };

    state s{evaluate(seed, options.x_start), evaluate(slope, options.x_start)};
    auto stepper = odeint::make_controlled(options.tol, options.tol, odeint::runge_kutta_dopri5<state>());

    double x = options.x_start;
    double dt = std::min(1e-3, (x_target - x) / 16.0);
    std::size_t steps = 0;
    while (x < x_target) {
        if (++steps > options.max_steps) {
            throw std::runtime_error("rk_oracle: step limit exceeded");
        }
        const bool last = x + dt >= x_target;
        if (last) {
            dt = x_target - x;
        }
        const auto result = stepper.try_step(rhs, s, x, dt);
        if (result == odeint::fail) {
            if (dt < 1e-14 * (std::fabs(x) + 1.0)) {
                throw std::runtime_error("rk_oracle: step-size underflow at x = " + format_float(x));
            }
            continue;
        }
        if (last) {
            x = x_target;
        }
    }
    return s[0];
}

std::vector<std::size_t> comparison_report::mismatches(double rel_tol) const
{
    std::vector<std::size_t> out;
    for (const auto &d : coefficients) {
        if (d.rel_delta > rel_tol) {
            out.push_back(d.k);
        }
    }
    return out;
}

namespace
{

double relative(double a, double b)
{
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

} // namespace

comparison_report compare(const series &a, const series &b, std::span<const double> sample_points, double tol)
{
    if (a.order() != b.order()) {
        throw std::invalid_argument("compare: order mismatch (" + std::to_string(a.order()) + " vs "
                                    + std::to_string(b.order()) + ")");
    }
    comparison_report report;
    report.tolerance = tol;
    const bool exact = a.get_mode() == mode::rational && b.get_mode() == mode::rational;
    for (std::size_t k = 0; k <= a.order(); ++k) {
        const double av = a[k].to_double();
        const double bv = b[k].to_double();
        coefficient_delta d{k, av, bv, std::fabs(av - bv), relative(av, bv), std::nullopt};
        if (exact) {
            d.exact_equal = a[k] == b[k];
        }
        report.max_abs_coefficient_delta = std::max(report.max_abs_coefficient_delta, d.abs_delta);
        report.coefficients.push_back(d);
    }
    const auto fa = a.converted(mode::floating);
    const auto fb = b.converted(mode::floating);
    for (double x : sample_points) {
        const double av = evaluate(fa, x);
        const double bv = evaluate(fb, x);
        report.points.push_back({x, av, bv, std::fabs(av - bv)});
        report.max_abs_point_delta = std::max(report.max_abs_point_delta, std::fabs(av - bv));
    }
    report.within_tolerance = sample_points.empty() ? report.max_abs_coefficient_delta <= tol
                                                    : report.max_abs_point_delta <= tol;
    return report;
}

comparison_report compare_pointwise(const series &a, const std::function<double(double)> &oracle,
                                    std::span<const double> sample_points, double tol)
{
    comparison_report report;
    report.tolerance = tol;
    const auto fa = a.converted(mode::floating);
    for (double x : sample_points) {
        const double av = evaluate(fa, x);
        const double bv = oracle(x);
        report.points.push_back({x, av, bv, std::fabs(av - bv)});
        report.max_abs_point_delta = std::max(report.max_abs_point_delta, std::fabs(av - bv));
    }
    report.within_tolerance = report.max_abs_point_delta <= tol;
    return report;
}

std::vector<double> sample_range(double lo, double hi, double step)
{
    if (!(step > 0.0) || !(hi >= lo)) {
        throw std::invalid_argument("range needs lo <= hi and step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1u;
    if (count > 1000000u) {
        throw std::invalid_argument("range has too many points");
    }
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        // Snap to 15 significant digits so 0.1-steps land on 0.3, not 0.30000000000000004.
        const double x = lo + static_cast<double>(i) * step;
        std::array<char, 32> buf{};
        const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 15);
        double snapped = x;
        std::from_chars(buf.data(), res.ptr, snapped);
        out.push_back(snapped);
    }
    return out;
}

std::vector<double> comparison_plot_points()
{
    std::vector<double> out;
    for (int i = 0; i <= 20; ++i) {
        out.push_back(i / 10.0);
    }
    return out;
}

} // namespace emden
