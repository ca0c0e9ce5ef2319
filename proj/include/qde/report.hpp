#ifndef QDE_REPORT_HPP
#define QDE_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "qde/classgroup.hpp"
#include "qde/harness.hpp"
#include "qde/integer.hpp"
#include "qde/ktheory.hpp"
#include "qde/lattice.hpp"
#include "qde/predict.hpp"
#include "qde/quadratic.hpp"

// JSON encodings of every CLI result. Key order is part of the output format
// (docs/schemas); integers that do not fit in 64 bits are written as decimal strings.
namespace qde::report {

using json = nlohmann::ordered_json;

inline json integer(Integer const & x)
{
    if (fits_int64(x))
        return x.convert_to<std::int64_t>();
    return x.str();
}

inline json integers(std::vector<Integer> const & xs)
{
    json arr = json::array();
    for (auto const & x : xs)
        arr.push_back(integer(x));
    return arr;
}

inline json group(AbelianGroupStructure const & g)
{
    return json{{"invariant_factors", integers(g.invariant_factors())},
                {"order", integer(g.order())}};
}

inline json form(BinaryQuadraticForm const & f)
{
    return json::array({integer(f.a), integer(f.b), integer(f.c)});
}

inline json continued_fraction(QuadraticIrrational const & theta, ContinuedFraction const & cf)
{
    return json{{"theta", theta.str()},
                {"preperiod", integers(cf.preperiod)},
                {"period", integers(cf.period)}};
}

inline json unit(Integer const & D, FundamentalUnit const & u)
{
    return json{{"D", integer(D)},
                {"basis", mod(D, 4) == 1 ? "(1+sqrt(D))/2" : "sqrt(D)"},
                {"x", integer(u.unit.x)},
                {"y", integer(u.unit.y)},
                {"value", u.unit.value().str()},
                {"norm", u.norm}};
}

inline json order_info(QuadraticOrder const & order, Integer const & h_field,
                       Integer const & e_f, Integer const & h_lambda)
{
    return json{{"D", integer(order.D())},
                {"f", integer(order.conductor())},
                {"discriminant", integer(order.discriminant())},
                {"field_discriminant", integer(order.fundamental_discriminant())},
                {"h_field", integer(h_field)},
                {"unit_index", integer(e_f)},
                {"h", integer(h_lambda)}};
}

inline json class_group(QuadraticOrder const & order, AbelianGroupStructure const & g,
                        FormClasses const & classes)
{
    json reps = json::array();
    for (auto const & f : classes.representatives())
        reps.push_back(form(f));
    return json{{"D", integer(order.D())},
                {"f", integer(order.conductor())},
                {"discriminant", integer(order.discriminant())},
                {"h", integer(g.order())},
                {"narrow_h", classes.narrow_class_number()},
                {"group", group(g)},
                {"representatives", reps}};
}

inline json companions(QuadraticOrder const & order, std::vector<QuadraticIrrational> const & thetas)
{
    json arr = json::array();
    for (auto const & t : thetas)
        arr.push_back(json{{"theta", t.str()}, {"form", form(form_of(t))}});
    return json{{"D", integer(order.D())},
                {"f", integer(order.conductor())},
                {"discriminant", integer(order.discriminant())},
                {"count", thetas.size()},
                {"companions", arr}};
}

inline json k0(KTheoryDescriptor const & d)
{
    json gens = json::array();
    for (auto const & g : d.trace_generators) {
        json entry{{"label", g.label()}};
        if (g.type == TraceGenerator::kind::lambda)
            entry["ideal_class"] = form(g.ideal_class);
        gens.push_back(entry);
    }
    return json{{"theta", d.theta.str()},
                {"D", integer(d.order.D())},
                {"f", integer(d.order.conductor())},
                {"k0_rank", integer(d.k0_rank)},
                {"trace_generators", gens},
                {"galois_group", group(d.galois_group)}};
}

inline json prediction(Prediction const & p)
{
    return json{{"D", integer(p.order.D())},
                {"f", integer(p.order.conductor())},
                {"h", integer(p.h_lambda)},
                {"rank", integer(p.rank)},
                {"sha", group(p.sha_structure)},
                {"k0_rank", integer(p.k0_rank)}};
}

inline json validation(ValidationReport const & r)
{
    json rows = json::array();
    for (auto const & v : r.violation_rows)
        rows.push_back(json{{"label", v.label},
                            {"rank", integer(v.rank)},
                            {"sha_order", integer(v.sha_order)},
                            {"predicted", integer(v.predicted)}});
    json by_rank = json::array();
    for (auto const & [rank, t] : r.by_rank)
        by_rank.push_back(json{{"rank", integer(rank)},
                               {"total", integer(t.total)},
                               {"consistent", integer(t.consistent)},
                               {"violations", integer(t.violations)}});
    return json{{"total", integer(r.total)},
                {"consistent", integer(r.consistent)},
                {"violations", integer(r.violations)},
                {"violation_rows", rows},
                {"by_rank", by_rank}};
}

} // namespace qde::report

#endif // QDE_REPORT_HPP
