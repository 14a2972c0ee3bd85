#include <emden/expr.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace emden
{

struct expr::node {
    kind k;
    std::vector<coefficient> params;
    std::vector<expr> children;
};

namespace
{

bool same_coefficient(const coefficient &a, const coefficient &b)
{
    return a.get_mode() == b.get_mode() && a == b;
}

} // namespace

expr expr::var()
{
    return expr(std::make_shared<const node>(node{kind::var, {}, {}}));
}

expr expr::constant(coefficient c)
{
    return expr(std::make_shared<const node>(node{kind::constant, {std::move(c)}, {}}));
}

expr expr::scale(coefficient c, expr child)
{
    return expr(std::make_shared<const node>(node{kind::scale, {std::move(c)}, {std::move(child)}}));
}

expr expr::sum(std::vector<expr> children)
{
    if (children.empty()) {
        throw std::invalid_argument("sum needs at least one term");
    }
    return expr(std::make_shared<const node>(node{kind::sum, {}, std::move(children)}));
}

expr expr::product(std::vector<expr> children)
{
    if (children.empty()) {
        throw std::invalid_argument("product needs at least one factor");
    }
    return expr(std::make_shared<const node>(node{kind::product, {}, std::move(children)}));
}

expr expr::power(coefficient exponent)
{
    return expr(std::make_shared<const node>(node{kind::power, {std::move(exponent)}, {}}));
}

expr expr::exp(coefficient alpha)
{
    return expr(std::make_shared<const node>(node{kind::exp, {std::move(alpha)}, {}}));
}

expr expr::log(coefficient alpha, coefficient beta)
{
    return expr(std::make_shared<const node>(node{kind::log, {std::move(alpha), std::move(beta)}, {}}));
}

expr expr::sin(coefficient alpha)
{
    return expr(std::make_shared<const node>(node{kind::sin, {std::move(alpha)}, {}}));
}

expr expr::cos(coefficient alpha)
{
    return expr(std::make_shared<const node>(node{kind::cos, {std::move(alpha)}, {}}));
}

expr expr::sinh(coefficient alpha)
{
    return expr(std::make_shared<const node>(node{kind::sinh, {std::move(alpha)}, {}}));
}

expr expr::cosh(coefficient alpha)
{
    return expr(std::make_shared<const node>(node{kind::cosh, {std::move(alpha)}, {}}));
}

expr::kind expr::get_kind() const noexcept
{
    return m_node->k;
}

bool expr::is_nonlinear_leaf() const noexcept
{
    switch (m_node->k) {
        case kind::power:
        case kind::exp:
        case kind::log:
        case kind::sin:
        case kind::cos:
        case kind::sinh:
        case kind::cosh:
            return true;
        default:
            return false;
    }
}

const coefficient &expr::value() const
{
    if (m_node->params.empty()) {
        throw std::logic_error(std::string(to_string(m_node->k)) + " node has no value");
    }
    return m_node->params.front();
}

const coefficient &expr::offset() const
{
    if (m_node->k != kind::log) {
        throw std::logic_error("only ln nodes carry an offset");
    }
    return m_node->params[1];
}

std::span<const expr> expr::children() const noexcept
{
    return m_node->children;
}

expr expr::converted(mode m) const
{
    node copy{m_node->k, {}, {}};
    for (const auto &p : m_node->params) {
        copy.params.push_back(p.converted(m));
    }
    for (const auto &c : m_node->children) {
        copy.children.push_back(c.converted(m));
    }
    return expr(std::make_shared<const node>(std::move(copy)));
}

std::string_view to_string(expr::kind k)
{
    switch (k) {
        case expr::kind::var:
            return "var";
        case expr::kind::constant:
            return "const";
        case expr::kind::scale:
            return "scale";
        case expr::kind::sum:
            return "sum";
        case expr::kind::product:
            return "product";
        case expr::kind::power:
            return "power";
        case expr::kind::exp:
            return "exp";
        case expr::kind::log:
            return "ln";
        case expr::kind::sin:
            return "sin";
        case expr::kind::cos:
            return "cos";
        case expr::kind::sinh:
            return "sinh";
        case expr::kind::cosh:
            return "cosh";
    }
    return "?";
}

namespace
{

std::string linear_text(const coefficient &alpha)
{
    if (alpha == coefficient::one(alpha.get_mode())) {
        return "y";
    }
    return alpha.str() + "*y";
}

std::string wrapped(const expr &e, bool wrap_product)
{
    const auto k = e.get_kind();
    if (k == expr::kind::sum || k == expr::kind::scale || (wrap_product && k == expr::kind::product)) {
        return "(" + e.str() + ")";
    }
    return e.str();
}

} // namespace

std::string expr::str() const
{
    const auto &n = *m_node;
    switch (n.k) {
        case kind::var:
            return "y";
        case kind::constant:
            return n.params[0].str();
        case kind::scale: {
            return n.params[0].str() + "*" + wrapped(n.children[0], false);
        }
        case kind::sum: {
            std::string out;
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i > 0) {
                    out += " + ";
                }
                out += n.children[i].get_kind() == kind::sum ? "(" + n.children[i].str() + ")" : n.children[i].str();
            }
            return out;
        }
        case kind::product: {
            std::string out;
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i > 0) {
                    out += "*";
                }
                out += wrapped(n.children[i], true);
            }
            return out;
        }
        case kind::power:
            return "y^" + n.params[0].str();
        case kind::exp:
        case kind::sin:
        case kind::cos:
        case kind::sinh:
        case kind::cosh:
            return std::string(to_string(n.k)) + "(" + linear_text(n.params[0]) + ")";
        case kind::log: {
            std::string out = "ln(" + linear_text(n.params[0]);
            if (!n.params[1].is_zero()) {
                out += " + " + n.params[1].str();
            }
            return out + ")";
        }
    }
    return {};
}

bool operator==(const expr &a, const expr &b)
{
    if (a.m_node == b.m_node) {
        return true;
    }
    const auto &x = *a.m_node;
    const auto &y = *b.m_node;
    if (x.k != y.k || x.params.size() != y.params.size() || x.children.size() != y.children.size()) {
        return false;
    }
    for (std::size_t i = 0; i < x.params.size(); ++i) {
        if (!same_coefficient(x.params[i], y.params[i])) {
            return false;
        }
    }
    for (std::size_t i = 0; i < x.children.size(); ++i) {
        if (!(x.children[i] == y.children[i])) {
            return false;
        }
    }
    return true;
}

std::string validation_report::str() const
{
    std::string out;
    for (const auto &v : violations) {
        if (!out.empty()) {
            out += "; ";
        }
        out += v;
    }
    return out;
}

namespace
{

void validate_node(const expr &e, const coefficient &y0, mode m, validation_report &report)
{
    const auto k = e.get_kind();
    if (k != expr::kind::var && k != expr::kind::sum && k != expr::kind::product) {
        if (e.value().get_mode() != m) {
            report.violations.push_back("coefficient " + e.value().str() + " of " + std::string(to_string(k))
                                        + " is not in " + std::string(to_string(m)) + " mode");
            return;
        }
        if (k == expr::kind::log && e.offset().get_mode() != m) {
            report.violations.push_back("ln offset " + e.offset().str() + " is not in " + std::string(to_string(m))
                                        + " mode");
            return;
        }
    }
    for (const auto &c : e.children()) {
        validate_node(c, y0, m, report);
    }
    if (!e.is_nonlinear_leaf() || y0.get_mode() != m) {
        return;
    }

    const auto &alpha = e.value();
    switch (k) {
        case expr::kind::power: {
            if (y0.is_zero() && (!alpha.is_integer() || alpha.sign() < 0)) {
                report.violations.push_back("y^" + alpha.str()
                                            + " with Y(0) = 0: singular recurrence (needs a nonnegative integer m)");
            } else if (!alpha.is_integer() && y0.sign() < 0) {
                report.violations.push_back("y^" + alpha.str() + " needs Y(0) > 0 for a non-integer exponent");
            } else if (m == mode::rational) {
                try {
                    (void)power_seed(y0, alpha);
                } catch (const transcendental_seed &) {
                    report.violations.push_back("transcendental seed: " + y0.str() + "^(" + alpha.str()
                                                + ") is irrational in rational mode");
                }
            }
            break;
        }
        case expr::kind::exp:
            if (m == mode::rational && !(alpha * y0).is_zero()) {
                report.violations.push_back("transcendental seed: e^(" + (alpha * y0).str()
                                            + ") in rational mode");
            }
            break;
        case expr::kind::log: {
            const auto base = alpha * y0 + e.offset();
            if (base.sign() <= 0) {
                report.violations.push_back("ln domain: alpha*Y(0)+beta <= 0 (got " + base.str() + ")");
            } else if (m == mode::rational && !(base == coefficient::one(m))) {
                report.violations.push_back("transcendental seed: ln(" + base.str() + ") in rational mode");
            }
            break;
        }
        case expr::kind::sin:
        case expr::kind::cos:
        case expr::kind::sinh:
        case expr::kind::cosh:
            if (m == mode::rational && !(alpha * y0).is_zero()) {
                report.violations.push_back("transcendental seed: " + std::string(to_string(k)) + "("
                                            + (alpha * y0).str() + ") in rational mode");
            }
            break;
        default:
            break;
    }
}

} // namespace

validation_report validate_expr(const expr &e, const coefficient &y0, mode m)
{
    validation_report report;
    if (y0.get_mode() != m) {
        report.violations.push_back("initial value " + y0.str() + " is not in " + std::string(to_string(m)) + " mode");
    }
    validate_node(e, y0, m, report);
    return report;
}

expr_transform::expr_transform(const expr &e)
{
    flatten(e);
}

std::size_t expr_transform::flatten(const expr &e)
{
    slot s{e.get_kind(), coefficient{}, {}, {}, std::monostate{}, {}};
    for (const auto &c : e.children()) {
        s.children.push_back(flatten(c));
    }
    switch (e.get_kind()) {
        case expr::kind::constant:
        case expr::kind::scale:
            s.param = e.value();
            break;
        case expr::kind::power:
            s.kernel = power_kernel(e.value());
            break;
        case expr::kind::exp:
            s.kernel = exp_kernel(e.value());
            break;
        case expr::kind::log:
            s.kernel = log_kernel(e.value(), e.offset());
            break;
        case expr::kind::sin:
        case expr::kind::cos:
            s.kernel = trig_pair_kernel(e.value(), false);
            break;
        case expr::kind::sinh:
        case expr::kind::cosh:
            s.kernel = trig_pair_kernel(e.value(), true);
            break;
        case expr::kind::product:
            s.partial.resize(s.children.size() > 1u ? s.children.size() - 1u : 0u);
            break;
        default:
            break;
    }
    m_slots.push_back(std::move(s));
    return m_slots.size() - 1u;
}

coefficient expr_transform::advance(std::span<const coefficient> y)
{
    if (y.size() != m_next + 1u) {
        throw std::invalid_argument("expression transform: expected a prefix of length " + std::to_string(m_next + 1u)
                                    + ", got " + std::to_string(y.size()));
    }
    const std::size_t k = m_next;
    const auto md = y[0].get_mode();

    // Slots are in post-order, so children are always ready first.
    for (auto &s : m_slots) {
        coefficient out;
        switch (s.kind) {
            case expr::kind::var:
                out = y[k];
                break;
            case expr::kind::constant:
                out = k == 0 ? s.param : coefficient::zero(md);
                break;
            case expr::kind::scale:
                out = s.param * m_slots[s.children[0]].values[k];
                break;
            case expr::kind::sum: {
                out = coefficient::zero(md);
                for (auto c : s.children) {
                    out += m_slots[c].values[k];
                }
                break;
            }
            case expr::kind::product: {
                const auto *prev = &m_slots[s.children[0]].values;
                for (std::size_t j = 1; j < s.children.size(); ++j) {
                    const auto &next = m_slots[s.children[j]].values;
                    auto acc = coefficient::zero(md);
                    for (std::size_t r = 0; r <= k; ++r) {
                        acc += (*prev)[r] * next[k - r];
                    }
                    s.partial[j - 1u].push_back(std::move(acc));
                    prev = &s.partial[j - 1u];
                }
                out = (*prev)[k];
                break;
            }
            case expr::kind::power:
                out = std::get<power_kernel>(s.kernel).advance(y);
                ++m_kernel_evaluations;
                break;
            case expr::kind::exp:
                out = std::get<exp_kernel>(s.kernel).advance(y);
                ++m_kernel_evaluations;
                break;
            case expr::kind::log:
                out = std::get<log_kernel>(s.kernel).advance(y);
                ++m_kernel_evaluations;
                break;
            case expr::kind::sin:
            case expr::kind::sinh:
                out = std::get<trig_pair_kernel>(s.kernel).advance(y).first;
                ++m_kernel_evaluations;
                break;
            case expr::kind::cos:
            case expr::kind::cosh:
                out = std::get<trig_pair_kernel>(s.kernel).advance(y).second;
                ++m_kernel_evaluations;
                break;
        }
        s.values.push_back(std::move(out));
    }
    ++m_next;
    return m_slots.back().values.back();
}

series expr_series_transform(const expr &e, const series &y)
{
    expr_transform t(e);
    for (std::size_t k = 0; k <= y.order(); ++k) {
        t.advance(y.coeffs().first(k + 1u));
    }
    return series(std::vector<coefficient>(t.values().begin(), t.values().end()));
}

double evaluate_scalar(const expr &e, double y)
{
    switch (e.get_kind()) {
        case expr::kind::var:
            return y;
        case expr::kind::constant:
            return e.value().to_double();
        case expr::kind::scale:
            return e.value().to_double() * evaluate_scalar(e.children()[0], y);
        case expr::kind::sum: {
            double acc = 0.0;
            for (const auto &c : e.children()) {
                acc += evaluate_scalar(c, y);
            }
            return acc;
        }
        case expr::kind::product: {
            double acc = 1.0;
            for (const auto &c : e.children()) {
                acc *= evaluate_scalar(c, y);
            }
            return acc;
        }
        case expr::kind::power: {
            if (!e.value().is_integer() && y < 0.0) {
                throw domain_violation("non-integer power of negative y = " + format_float(y));
            }
            return std::pow(y, e.value().to_double());
        }
        case expr::kind::exp:
            return std::exp(e.value().to_double() * y);
        case expr::kind::log: {
            const double arg = e.value().to_double() * y + e.offset().to_double();
            if (arg <= 0.0) {
                throw domain_violation("ln of nonpositive argument " + format_float(arg));
            }
            return std::log(arg);
        }
        case expr::kind::sin:
            return std::sin(e.value().to_double() * y);
        case expr::kind::cos:
            return std::cos(e.value().to_double() * y);
        case expr::kind::sinh:
            return std::sinh(e.value().to_double() * y);
        case expr::kind::cosh:
            return std::cosh(e.value().to_double() * y);
    }
    return 0.0;
}

} // namespace emden
