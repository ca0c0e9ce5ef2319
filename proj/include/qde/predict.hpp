#ifndef QDE_PREDICT_HPP
#define QDE_PREDICT_HPP

#include <vector>

#include "qde/classgroup.hpp"
#include "qde/error.hpp"
#include "qde/integer.hpp"
#include "qde/lattice.hpp"
#include "qde/order.hpp"
#include "qde/quadratic.hpp"

namespace qde {

/// Cl + Cl as a divisibility chain.
inline AbelianGroupStructure sha_doubling(AbelianGroupStructure const & cl)
{
    std::vector<Integer> orders = cl.invariant_factors();
    orders.insert(orders.end(), cl.invariant_factors().begin(), cl.invariant_factors().end());
    return AbelianGroupStructure::from_cyclic_orders(orders);
}

struct Prediction
{
    QuadraticOrder order;
    Integer h_lambda;
    Integer rank;
    AbelianGroupStructure class_group;
    AbelianGroupStructure sha_structure;
    Integer sha_order;
    Integer k0_rank;
};

inline void check_prediction(Prediction const & p)
{
    auto fail = [&](char const * what) {
        throw invariant_violation(std::string("prediction for ") + p.order.str() + ": " + what);
    };
    if (p.h_lambda < 1)
        fail("h_Lambda < 1");
    if (p.rank != p.h_lambda - 1 || p.rank < 0)
        fail("rank != h_Lambda - 1");
    if (p.sha_order != p.h_lambda * p.h_lambda)
        fail("|Sha| != h_Lambda^2");
    if (p.sha_order != (1 + p.rank) * (1 + p.rank))
        fail("|Sha| != (1 + rank)^2");
    if (p.sha_structure != sha_doubling(p.class_group) || p.sha_structure.order() != p.sha_order)
        fail("Sha != Cl + Cl");
    if (p.k0_rank != p.h_lambda + 1)
        fail("K_0 rank != h_Lambda + 1");
}

inline Prediction predict(QuadraticOrder const & order, Integer const & max_disc = default_max_disc)
{
    AbelianGroupStructure cl = class_group_structure(order, max_disc);
    Integer h = class_number_order(order);
    AbelianGroupStructure sha = sha_doubling(cl);
    Integer sha_order = sha.order();
    Prediction p{order, h, h - 1, cl, std::move(sha), std::move(sha_order), h + 1};
    check_prediction(p);
    return p;
}

/// Rank h_Lambda - 1 and Sha = Cl(Lambda) + Cl(Lambda) for Lambda = End(Z + theta Z).
inline Prediction predict(QuadraticIrrational const & theta,
                          Integer const & max_disc = default_max_disc)
{
    return predict(endomorphism_ring(theta), max_disc);
}

} // namespace qde

#endif // QDE_PREDICT_HPP
