#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include <emden/expr.hpp>
#include <emden/kernels.hpp>
#include <emden/problem.hpp>
#include <emden/solver.hpp>
#include <emden/validation.hpp>

#include "table.hpp"

namespace emden::cli
{

namespace
{

// Raised for anything the user got wrong; maps to exit_usage.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct source_options {
    std::string file;
    std::string preset_name;
    std::vector<std::string> params;
    std::size_t order = 0; // 0: the file's order, or 10 for presets
    std::string mode_name;
    std::string format = "text";

    void attach(CLI::App &cmd)
    {
        cmd.add_option("--file", file, "Problem file");
        cmd.add_option("--preset", preset_name, "Built-in problem");
        cmd.add_option("--param", params, "Preset parameter k=v (repeatable)");
        cmd.add_option("--order", order, "Truncation order N");
        cmd.add_option("--mode", mode_name, "rational or float");
        cmd.add_option("--format", format, "text or csv");
    }
};

struct loaded_problem {
    emden_problem problem;
    std::optional<preset_id> id;
};

double parse_double(std::string_view s, std::string_view what)
{
    double v = 0.0;
    const auto *end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw usage_error("bad " + std::string(what) + " '" + std::string(s) + "'");
    }
    return v;
}

std::vector<double> parse_range(const std::string &text)
{
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string::npos) {
        throw usage_error("range must be lo:hi:step, got '" + text + "'");
    }
    const double lo = parse_double(std::string_view(text).substr(0, c1), "range start");
    const double hi = parse_double(std::string_view(text).substr(c1 + 1, c2 - c1 - 1), "range end");
    const double step = parse_double(std::string_view(text).substr(c2 + 1), "range step");
    if (!(step > 0.0) || hi < lo) {
        throw usage_error("range needs lo <= hi and step > 0, got '" + text + "'");
    }
    return sample_range(lo, hi, step);
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw usage_error("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

loaded_problem load(const source_options &o)
{
    if (o.file.empty() == o.preset_name.empty()) {
        throw usage_error("give exactly one of --file or --preset");
    }
    std::optional<mode> m;
    if (!o.mode_name.empty()) {
        m = parse_mode(o.mode_name);
    }
    if (!o.file.empty()) {
        if (!o.params.empty()) {
            throw usage_error("--param applies to presets only");
        }
        const auto text = read_file(o.file);
        auto pr = [&] {
            try {
                return parse_problem_file(text);
            } catch (const parse_error &e) {
                throw usage_error(o.file + ": " + e.what());
            }
        }();
        if (m) {
            pr = pr.converted(*m);
        }
        if (o.order != 0) {
            pr = pr.with_order(o.order);
        }
        return {pr, std::nullopt};
    }

    std::map<std::string, std::string> params;
    for (const auto &kv : o.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw usage_error("--param expects k=v, got '" + kv + "'");
        }
        if (!params.emplace(kv.substr(0, eq), kv.substr(eq + 1)).second) {
            throw usage_error("parameter '" + kv.substr(0, eq) + "' given twice");
        }
    }
    const auto id = preset_id::make(o.preset_name, params);
    const auto pr = preset(id, o.order == 0 ? 10 : o.order, m.value_or(info(id.kind).documented_mode));
    return {pr, id};
}

solve_report run_solve(const emden_problem &pr, std::ostream &err)
{
    auto report = solve(pr);
    for (const auto &w : report.warnings) {
        err << "warning: " << w << '\n';
    }
    return report;
}

int cmd_solve(const source_options &o, std::ostream &out, std::ostream &err)
{
    const auto fmt = parse_table_format(o.format);
    const auto loaded = load(o);
    const auto report = run_solve(loaded.problem, err);
    output_table t{{"k", "coefficient"}, {}};
    for (std::size_t k = 0; k <= report.coefficients.order(); ++k) {
        t.rows.push_back({std::to_string(k), report.coefficients[k].str()});
    }
    out << t.render(fmt);
    return exit_ok;
}

int cmd_eval(const source_options &o, const std::string &at, const std::string &range, std::ostream &out,
             std::ostream &err)
{
    const auto fmt = parse_table_format(o.format);
    if (at.empty() == range.empty()) {
        throw usage_error("give exactly one of --at or --range");
    }
    const auto xs = at.empty() ? parse_range(range) : std::vector<double>{parse_double(at, "abscissa")};
    const auto loaded = load(o);
    const auto report = run_solve(loaded.problem, err);
    output_table t{{"x", "y"}, {}};
    for (double x : xs) {
        t.rows.push_back({format_shortest(x), format_float(evaluate(report.coefficients, x))});
    }
    out << t.render(fmt);
    return exit_ok;
}

struct compare_options {
    std::string against;
    std::string range = "0:2:0.1";
    std::optional<double> tol;
    std::string table = "points";
};

int cmd_compare(const source_options &o, const compare_options &c, std::ostream &out, std::ostream &err)
{
    const auto fmt = parse_table_format(o.format);
    if (c.table != "points" && c.table != "coefficients") {
        throw usage_error("--table must be points or coefficients, got '" + c.table + "'");
    }
    const bool coefficient_table = c.table == "coefficients";
    const auto xs = parse_range(c.range);
    const auto loaded = load(o);
    const auto &pr = loaded.problem;
    const double tol = c.tol.value_or(0.0);

    const auto need_preset = [&] {
        if (!loaded.id) {
            throw no_oracle("--against " + c.against + " needs a preset");
        }
        return *loaded.id;
    };

    comparison_report report;
    if (c.against == "exact") {
        const auto id = need_preset();
        if (!has_exact_solution(id)) {
            throw no_oracle("no closed form for " + id.label());
        }
        if (coefficient_table) {
            throw usage_error("--table coefficients needs --against reference");
        }
        const auto dtm = run_solve(pr, err).coefficients;
        report = compare_pointwise(dtm, [&](double x) { return exact_solution(id, x); }, xs, tol);
    } else if (c.against == "reference") {
        const auto id = need_preset();
        if (!has_reference_series(id.kind)) {
            throw no_oracle("no reference series for " + id.label());
        }
        const auto dtm = run_solve(pr, err).coefficients;
        const auto ref = reference_series(id.kind).resized(dtm.order());
        report = compare(dtm, ref, coefficient_table ? std::span<const double>{} : std::span<const double>(xs), tol);
    } else if (c.against == "numeric") {
        if (coefficient_table) {
            throw usage_error("--table coefficients needs --against reference");
        }
        const rk_options rk;
        const auto dtm = run_solve(pr, err).coefficients;
        report = compare_pointwise(
            dtm,
            [&](double x) {
                // The integrator starts at x_start; below it the seed is the answer.
                return x <= rk.x_start ? evaluate(dtm.converted(mode::floating), x) : rk_oracle(pr, x, rk);
            },
            xs, tol);
    } else {
        throw usage_error("--against must be exact, reference or numeric, got '" + c.against + "'");
    }

    output_table t;
    if (coefficient_table) {
        t.headers = {"k", "dtm", "oracle", "abs_delta", "rel_delta"};
        for (const auto &d : report.coefficients) {
            t.rows.push_back({std::to_string(d.k), format_float(d.a), format_float(d.b), format_float(d.abs_delta),
                              format_float(d.rel_delta)});
        }
    } else {
        t.headers = {"x", "dtm", "oracle", "abs_delta"};
        for (const auto &d : report.points) {
            t.rows.push_back({format_shortest(d.x), format_float(d.a), format_float(d.b), format_float(d.abs_delta)});
        }
    }
    out << t.render(fmt);

    // Without --tol the command only reports.
    if (c.tol && !report.within_tolerance) {
        const double worst = coefficient_table ? report.max_abs_coefficient_delta : report.max_abs_point_delta;
        err << "max |delta| " << format_float(worst) << " exceeds tolerance " << format_float(*c.tol) << '\n';
        return exit_tolerance;
    }
    return exit_ok;
}

int cmd_presets(std::ostream &out)
{
    for (const auto &p : preset_catalog()) {
        out << p.name << "  " << p.equation << "  [" << to_string(p.documented_mode) << "]";
        if (!p.parameter.empty()) {
            out << "  (" << p.parameter << ")";
        }
        out << '\n';
    }
    out << '\n';
    for (const auto &p : preset_catalog()) {
        out << p.name << "  " << p.shape << '\n';
    }
    return exit_ok;
}

int cmd_export(const source_options &o, std::ostream &out)
{
    const auto loaded = load(o);
    check_problem(loaded.problem);
    out << format_problem_file(loaded.problem, loaded.id ? loaded.id->label() : std::string{});
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Differential transform solver for singular Emden-Fowler problems", "emden"};
    app.require_subcommand(1);

    source_options src;
    std::string at;
    std::string range;
    compare_options cmp;

    auto *solve_cmd = app.add_subcommand("solve", "Print the coefficients Y(0..N)");
    src.attach(*solve_cmd);

    auto *eval_cmd = app.add_subcommand("eval", "Evaluate the truncated series");
    src.attach(*eval_cmd);
    eval_cmd->add_option("--at", at, "Single abscissa");
    eval_cmd->add_option("--range", range, "lo:hi:step");

    auto *compare_cmd = app.add_subcommand("compare", "Compare against an oracle");
    src.attach(*compare_cmd);
    compare_cmd->add_option("--against", cmp.against, "exact, reference or numeric")->required();
    compare_cmd->add_option("--range", cmp.range, "lo:hi:step (default 0:2:0.1)");
    compare_cmd->add_option("--tol", cmp.tol, "Fail with exit 3 above this delta");
    compare_cmd->add_option("--table", cmp.table, "points or coefficients");

    auto *presets_cmd = app.add_subcommand("presets", "List built-in problems");

    auto *export_cmd = app.add_subcommand("export", "Write a problem file");
    src.attach(*export_cmd);

    std::vector<const char *> argv{"emden"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*solve_cmd) {
            return cmd_solve(src, out, err);
        }
        if (*eval_cmd) {
            return cmd_eval(src, at, range, out, err);
        }
        if (*compare_cmd) {
            return cmd_compare(src, cmp, out, err);
        }
        if (*presets_cmd) {
            return cmd_presets(out);
        }
        return cmd_export(src, out);
    } catch (const solve_error &e) {
        err << "error: " << e.what() << '\n';
        return exit_domain;
    } catch (const domain_violation &e) {
        err << "error: " << e.what() << '\n';
        return exit_domain;
    } catch (const std::runtime_error &e) {
        // usage_error, parse_error, or an integrator failure.
        err << "error: " << e.what() << '\n';
        return dynamic_cast<const usage_error *>(&e) || dynamic_cast<const parse_error *>(&e) ? exit_usage
                                                                                              : exit_domain;
    } catch (const std::exception &e) {
        // problem_error, no_oracle, mode_error and friends.
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace emden::cli
