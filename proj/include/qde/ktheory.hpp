#ifndef QDE_KTHEORY_HPP
#define QDE_KTHEORY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qde/classgroup.hpp"
#include "qde/error.hpp"
#include "qde/integer.hpp"
#include "qde/lattice.hpp"
#include "qde/order.hpp"
#include "qde/quadratic.hpp"

namespace qde {

/*
 * One generator of the trace image Z + theta Z + lambda_1 Z + ... of K_0 of
 * the crossed product. The lambdas are never given numeric values; each is a
 * symbolic tag tied to one nonprincipal ideal class, identified by the
 * class representative form.
 */
struct TraceGenerator
{
    enum class kind { one, theta, lambda };

    kind type;
    std::size_t index = 0;            // lambda_index, 1-based; 0 otherwise
    BinaryQuadraticForm ideal_class{}; // lambda only

    std::string label() const
    {
        switch (type) {
        case kind::one:
            return "1";
        case kind::theta:
            return "theta";
        case kind::lambda:
            return "lambda_" + std::to_string(index);
        }
        return {};
    }

    friend bool operator==(TraceGenerator const &, TraceGenerator const &) = default;
};

struct KTheoryDescriptor
{
    QuadraticIrrational theta;
    QuadraticOrder order;
    Integer k0_rank;
    std::vector<TraceGenerator> trace_generators;
    AbelianGroupStructure galois_group;

    std::vector<std::string> labels() const
    {
        std::vector<std::string> out;
        for (auto const & g : trace_generators)
            out.push_back(g.label());
        return out;
    }
};

/// K_0 of the crossed product by E(K): rank h_Lambda + 1, trace image
/// generated by 1, theta and h_Lambda - 1 class-indexed lambdas.
inline KTheoryDescriptor crossed_product_k0(QuadraticIrrational const & theta,
                                            Integer const & max_disc = default_max_disc)
{
    QuadraticOrder order = endomorphism_ring(theta);
    detail::require_desk_scale(order, max_disc);
    AbelianGroupStructure gal = galois_group_Kab(order, max_disc);
    Integer h = class_number_order(order);

    FormClasses classes(order.discriminant());
    std::size_t principal = classes.principal_class();

    std::vector<TraceGenerator> gens{{TraceGenerator::kind::one},
                                     {TraceGenerator::kind::theta}};
    std::size_t next = 1;
    for (std::size_t i = 0; i < classes.class_number(); ++i) {
        if (i == principal)
            continue;
        gens.push_back({TraceGenerator::kind::lambda, next++, classes.representatives()[i]});
    }

    KTheoryDescriptor d{theta, order, h + 1, std::move(gens), std::move(gal)};
    if (d.k0_rank != d.trace_generators.size())
        throw invariant_violation("K_0 rank " + d.k0_rank.str() + " != generator count "
                                  + std::to_string(d.trace_generators.size()));
    if (d.galois_group.order() != h)
        throw invariant_violation("|Gal(K_ab|k)| != h_Lambda for " + order.str());
    return d;
}

/// Block dimensions of C[G] = sum of matrix algebras; for abelian G every
/// block is 1-dimensional. Returned as dimension -> multiplicity.
inline std::map<Integer, Integer> group_algebra_decomposition(AbelianGroupStructure const & g)
{
    return {{Integer(1), g.order()}};
}

/*
 * Finite tower G_0 -> G_1 -> ... of finite abelian groups. inclusions[i][j]
 * is the image of the j-th standard generator of levels[i] (the generator of
 * its j-th cyclic factor), written in coordinates of levels[i + 1].
 */
struct FiniteGroupTower
{
    std::vector<AbelianGroupStructure> levels;
    std::vector<std::vector<std::vector<Integer>>> inclusions;
};

namespace detail {

// Order of the subgroup of G generated by gens (coordinate vectors), by enumeration.
inline std::uint64_t generated_subgroup_order(AbelianGroupStructure const & g,
                                              std::vector<std::vector<Integer>> const & gens)
{
    auto const & mods = g.invariant_factors();
    auto normalize = [&](std::vector<Integer> v) {
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] = mod(v[k], mods[k]);
        return v;
    };
    std::set<std::vector<Integer>> seen{std::vector<Integer>(mods.size(), Integer(0))};
    std::vector<std::vector<Integer>> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<std::vector<Integer>> next;
        for (auto const & x : frontier)
            for (auto const & s : gens) {
                std::vector<Integer> y(x);
                for (std::size_t k = 0; k < y.size(); ++k)
                    y[k] += s[k];
                y = normalize(std::move(y));
                if (seen.insert(y).second)
                    next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    return seen.size();
}

} // namespace detail

inline void validate_tower(FiniteGroupTower const & tower)
{
    if (tower.levels.empty())
        throw domain_error("group tower needs at least one level");
    if (tower.inclusions.size() + 1 != tower.levels.size())
        throw domain_error("group tower needs one inclusion per adjacent pair of levels");
    for (std::size_t i = 0; i + 1 < tower.levels.size(); ++i) {
        auto const & src = tower.levels[i];
        auto const & dst = tower.levels[i + 1];
        auto const & images = tower.inclusions[i];
        if (images.size() != src.invariant_factors().size())
            throw domain_error("inclusion " + std::to_string(i) + " needs one image per generator");
        for (std::size_t j = 0; j < images.size(); ++j) {
            if (images[j].size() != dst.invariant_factors().size())
                throw domain_error("image coordinates do not match the target level");
            // d_j * image_j must vanish for the map to be well defined
            for (std::size_t k = 0; k < images[j].size(); ++k)
                if (mod(src.invariant_factors()[j] * images[j][k], dst.invariant_factors()[k]) != 0)
                    throw invariant_violation("inclusion " + std::to_string(i)
                                              + " is not a homomorphism");
        }
        if (detail::generated_subgroup_order(dst, images) != src.order())
            throw invariant_violation("inclusion " + std::to_string(i) + " is not injective");
    }
}

/// Finite-depth model of the direct limit: the top level of an injective tower.
inline AbelianGroupStructure af_k0_truncated(FiniteGroupTower const & tower)
{
    validate_tower(tower);
    return tower.levels.back();
}

} // namespace qde

#endif // QDE_KTHEORY_HPP
