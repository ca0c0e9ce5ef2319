#ifndef QDE_CLI_HPP
#define QDE_CLI_HPP

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"

#include "qde/classgroup.hpp"
#include "qde/error.hpp"
#include "qde/harness.hpp"
#include "qde/ktheory.hpp"
#include "qde/lattice.hpp"
#include "qde/parse.hpp"
#include "qde/predict.hpp"
#include "qde/quadratic.hpp"
#include "qde/report.hpp"

namespace qde::cli {

enum exit_code : int { ok = 0, domain_failure = 1, usage_failure = 2 };

class usage_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct options
{
    std::string theta;
    std::optional<std::string> D;
    std::string f = "1";
    std::string input;
    std::string format;
    std::optional<std::string> max_disc;
    std::size_t jobs = 1;
    bool json = false;
};

inline Integer parse_integer_flag(std::string const & name, std::string const & text)
{
    auto v = detail::parse_decimal(detail::trim(text));
    if (!v)
        throw usage_error(name + ": expected a base-10 integer, got '" + text + "'");
    return *v;
}

// --max-disc, then QDE_MAX_DISC, then the built-in default.
inline Integer resolve_max_disc(options const & o)
{
    if (o.max_disc)
        return parse_integer_flag("--max-disc", *o.max_disc);
    if (char const * env = std::getenv("QDE_MAX_DISC"); env && *env)
        return parse_integer_flag("QDE_MAX_DISC", env);
    return default_max_disc;
}

inline QuadraticIrrational require_theta(options const & o)
{
    if (o.theta.empty())
        throw usage_error("--theta is required");
    return parse_theta(o.theta);
}

inline QuadraticOrder require_order(options const & o)
{
    if (!o.theta.empty() && o.D)
        throw usage_error("give either --theta or --D/--f, not both");
    if (!o.theta.empty())
        return endomorphism_ring(parse_theta(o.theta));
    if (!o.D)
        throw usage_error("--theta or --D is required");
    return QuadraticOrder(parse_integer_flag("--D", *o.D), parse_integer_flag("--f", o.f));
}

inline void emit(std::ostream & out, report::json const & j) { out << j.dump() << '\n'; }

inline int run_command(std::string const & cmd, options const & o, std::ostream & out,
                       std::ostream & err)
{
    Integer max_disc = resolve_max_disc(o);
    if (cmd == "cf") {
        auto theta = require_theta(o);
        auto cf = cf_expand(theta);
        if (o.json)
            emit(out, report::continued_fraction(theta, cf));
        else
            out << cf.str() << '\n';
    } else if (cmd == "unit") {
        if (!o.D)
            throw usage_error("--D is required");
        Integer D = parse_integer_flag("--D", *o.D);
        auto u = fundamental_unit(D);
        if (o.json)
            emit(out, report::unit(D, u));
        else
            out << "eps = " << u.unit.value() << "  norm = " << u.norm << '\n';
    } else if (cmd == "order") {
        auto order = require_order(o);
        Integer h = class_number_maximal(order.D());
        Integer e = unit_index(order);
        Integer hl = class_number_order(order);
        if (o.json)
            emit(out, report::order_info(order, h, e, hl));
        else
            out << "order " << order << "  discriminant " << order.discriminant() << '\n'
                << "h(k) = " << h << "  e_f = " << e << "  h_Lambda = " << hl << '\n';
    } else if (cmd == "classgroup") {
        auto order = require_order(o);
        auto g = class_group_structure(order, max_disc);
        FormClasses classes(order.discriminant());
        if (o.json) {
            emit(out, report::class_group(order, g, classes));
        } else {
            out << "Cl" << order << " = " << g << "  (h = " << g.order()
                << ", narrow h = " << classes.narrow_class_number() << ")\n";
            for (auto const & f : classes.representatives())
                out << "  " << f << '\n';
        }
    } else if (cmd == "companions") {
        auto order = require_order(o);
        auto thetas = companion_tori(order, max_disc);
        if (o.json) {
            emit(out, report::companions(order, thetas));
        } else {
            for (auto const & t : thetas)
                out << t << '\n';
        }
    } else if (cmd == "k0") {
        auto d = crossed_product_k0(require_theta(o), max_disc);
        if (o.json) {
            emit(out, report::k0(d));
        } else {
            out << "K0 rank = " << d.k0_rank << '\n' << "trace image = ";
            auto labels = d.labels();
            for (std::size_t i = 0; i < labels.size(); ++i)
                out << (i ? " + " : "") << labels[i] << "Z";
            out << '\n' << "Gal(K_ab|k) = " << d.galois_group << '\n';
        }
    } else if (cmd == "predict") {
        auto p = predict(require_order(o), max_disc);
        if (o.json)
            emit(out, report::prediction(p));
        else
            out << "order " << p.order << "  h_Lambda = " << p.h_lambda << '\n'
                << "rank = " << p.rank << '\n'
                << "Sha = " << p.sha_structure << "  |Sha| = " << p.sha_order << '\n'
                << "K0 rank = " << p.k0_rank << '\n';
    } else if (cmd == "validate") {
        if (o.input.empty())
            throw usage_error("--input is required");
        curve_format fmt;
        if (!o.format.empty())
            fmt = parse_curve_format(o.format);
        else
            fmt = std::filesystem::path(o.input).extension() == ".json" ? curve_format::json
                                                                        : curve_format::csv;
        auto parsed = parse_curves(o.input, fmt);
        for (auto const & w : parsed.warnings)
            err << "warning: " << w << '\n';
        auto rep = validate(parsed.records, o.jobs);
        if (o.json) {
            emit(out, report::validation(rep));
        } else {
            out << "total = " << rep.total << "  consistent = " << rep.consistent
                << "  violations = " << rep.violations << '\n';
            for (auto const & v : rep.violation_rows)
                out << "  " << v.label << ": rank " << v.rank << ", |Sha| = " << v.sha_order
                    << ", predicted " << v.predicted << '\n';
        }
    }
    return ok;
}

/// Entry point of the qde tool. Exit status 0 on success, 1 on a domain
/// error, 2 on a usage error.
inline int run(int argc, char const * const * argv, std::ostream & out, std::ostream & err)
{
    CLI::App app{"qde: real quadratic orders, class groups and K-theory descriptors"};
    app.require_subcommand(1);
    options o;

    auto add_theta = [&](CLI::App * s) {
        s->add_option("--theta", o.theta, "quadratic irrational, e.g. \"(1+sqrt(5))/2\"");
    };
    auto add_order = [&](CLI::App * s) {
        add_theta(s);
        s->add_option("--D", o.D, "squarefree radicand D > 1");
        s->add_option("--f", o.f, "conductor f >= 1 (default 1)");
    };
    auto add_common = [&](CLI::App * s) {
        s->add_flag("--json", o.json, "emit JSON");
        s->add_option("--max-disc", o.max_disc, "desk-scale discriminant bound (env QDE_MAX_DISC)");
    };

    auto * cf = app.add_subcommand("cf", "continued fraction of theta");
    add_theta(cf);
    auto * unit = app.add_subcommand("unit", "fundamental unit of Q(sqrt(D))");
    unit->add_option("--D", o.D, "squarefree radicand D > 1");
    auto * order = app.add_subcommand("order", "endomorphism order, unit index and h_Lambda");
    add_order(order);
    auto * cg = app.add_subcommand("classgroup", "class group structure of the order");
    add_order(cg);
    auto * comp = app.add_subcommand("companions", "one theta per ideal class of the order");
    add_order(comp);
    auto * k0 = app.add_subcommand("k0", "K_0 descriptor of the crossed product");
    add_theta(k0);
    auto * pred = app.add_subcommand("predict", "predicted rank and Shafarevich-Tate group");
    add_order(pred);
    auto * val = app.add_subcommand("validate", "check |Sha| = (1+rank)^2 over curve data");
    val->add_option("--input", o.input, "curve file (CSV or JSON)");
    val->add_option("--format", o.format, "csv|json (default: from file extension)");
    val->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    for (auto * s : {cf, unit, order, cg, comp, k0, pred, val})
        add_common(s);

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const & e) {
        return app.exit(e, out, err) == 0 ? ok : usage_failure;
    } catch (CLI::ParseError const & e) {
        app.exit(e, out, err);
        return usage_failure;
    }

    std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run_command(cmd, o, out, err);
    } catch (usage_error const & e) {
        err << "usage error: " << e.what() << '\n' << app.get_subcommands().front()->help();
        return usage_failure;
    } catch (curve_data_error const & e) {
        for (auto const & p : e.problems())
            err << "error: " << p << '\n';
        return domain_failure;
    } catch (error const & e) {
        err << "error: " << e.what() << '\n';
        return domain_failure;
    }
}

} // namespace qde::cli

#endif // QDE_CLI_HPP
