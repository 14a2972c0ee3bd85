#ifndef EMDEN_EXPR_HPP
#define EMDEN_EXPR_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <emden/coefficient.hpp>
#include <emden/kernels.hpp>

namespace emden
{

// Expression tree for the nonlinearity g(y). Nonlinear leaves act directly
// on y (y^m, e^(a y), ln(a y + b), sin/cos/sinh/cosh(a y)) and cannot be
// nested inside one another. Immutable, cheap to copy.
class expr
{
public:
    enum class kind { var, constant, scale, sum, product, power, exp, log, sin, cos, sinh, cosh };

    static expr var();
    static expr constant(coefficient c);
    static expr scale(coefficient c, expr child);
    static expr sum(std::vector<expr> children);
    static expr product(std::vector<expr> children);
    static expr power(coefficient exponent);
    static expr exp(coefficient alpha);
    static expr log(coefficient alpha, coefficient beta);
    static expr sin(coefficient alpha);
    static expr cos(coefficient alpha);
    static expr sinh(coefficient alpha);
    static expr cosh(coefficient alpha);

    kind get_kind() const noexcept;
    bool is_nonlinear_leaf() const noexcept;

    // Constant value, scale factor, power exponent or function argument
    // factor alpha, depending on the kind.
    const coefficient &value() const;
    // The offset beta of ln(alpha y + beta).
    const coefficient &offset() const;
    std::span<const expr> children() const noexcept;

    expr converted(mode) const;

    // Canonical text form, accepted back by parse_expression.
    std::string str() const;

    friend bool operator==(const expr &, const expr &);

private:
    struct node;
    explicit expr(std::shared_ptr<const node> n) : m_node(std::move(n)) {}

    std::shared_ptr<const node> m_node;
};

std::string_view to_string(expr::kind);

// Syntax error in user-supplied text, with a 1-based position.
class parse_error : public std::runtime_error
{
public:
    parse_error(const std::string &message, std::size_t line, std::size_t column);

    std::size_t line() const noexcept
    {
        return m_line;
    }
    std::size_t column() const noexcept
    {
        return m_column;
    }
    const std::string &message() const noexcept
    {
        return m_message;
    }

private:
    std::string m_message;
    std::size_t m_line;
    std::size_t m_column;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := ['-'] factor ('*' factor)*
//   factor := number | func '(' linear ')' | 'y' ['^' ['-'] number] | '(' expr ')'
//   func   := exp | ln | log | sin | cos | sinh | cosh
//   linear := affine combination of y and numbers, e.g. "2*y + 1", "y/2"
// Numbers are integers, decimals or fractions p/q. Only ln accepts a
// constant offset. `line` is used for error positions.
expr parse_expression(std::string_view text, mode m = mode::rational, std::size_t line = 1);

struct validation_report {
    std::vector<std::string> violations;

    bool ok() const noexcept
    {
        return violations.empty();
    }
    std::string str() const;
};

// Collects every kernel precondition violated at y(0) = y0 in the given mode.
validation_report validate_expr(const expr &e, const coefficient &y0, mode m);

// Incremental transform of a whole expression: advance() takes Y(0..k) and
// returns G(k), memoizing every subexpression prefix.
class expr_transform
{
public:
    explicit expr_transform(const expr &e);

    coefficient advance(std::span<const coefficient> y_prefix);

    std::size_t next_index() const noexcept
    {
        return m_next;
    }
    std::span<const coefficient> values() const noexcept
    {
        return m_slots.back().values;
    }
    std::size_t kernel_evaluations() const noexcept
    {
        return m_kernel_evaluations;
    }

private:
    using kernel_variant = std::variant<std::monostate, power_kernel, exp_kernel, log_kernel, trig_pair_kernel>;

    struct slot {
        expr::kind kind;
        coefficient param;
        std::vector<std::size_t> children;
        std::vector<coefficient> values;
        kernel_variant kernel;
        // Running products child0*child1*...*child_j for product nodes.
        std::vector<std::vector<coefficient>> partial;
    };

    std::size_t flatten(const expr &e);

    std::vector<slot> m_slots;
    std::size_t m_next = 0;
    std::size_t m_kernel_evaluations = 0;
};

// Whole-series transform of g(y).
series expr_series_transform(const expr &e, const series &y);

// Pointwise value of g at a real y; throws domain_violation outside the
// function's domain.
double evaluate_scalar(const expr &e, double y);

} // namespace emden

#endif
