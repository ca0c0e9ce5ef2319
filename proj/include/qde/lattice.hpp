#ifndef QDE_LATTICE_HPP
#define QDE_LATTICE_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qde/classgroup.hpp"
#include "qde/error.hpp"
#include "qde/integer.hpp"
#include "qde/order.hpp"
#include "qde/quadratic.hpp"

namespace qde {

/// Primitive integral minimal polynomial A x^2 + B x + C (A > 0), or B x + C for rationals.
struct MinimalPolynomial
{
    Integer A, B, C;
    unsigned degree;

    Integer discriminant() const { return B * B - 4 * A * C; }
};

inline MinimalPolynomial minimal_polynomial(FieldElement const & x)
{
    if (x.is_rational())
        return {0, x.c(), -x.a(), 1};
    // c x - a = b sqrt(D)  =>  c^2 x^2 - 2 a c x + a^2 - b^2 D = 0
    Integer A = x.c() * x.c();
    Integer B = -2 * x.a() * x.c();
    Integer C = x.a() * x.a() - x.b() * x.b() * x.D();
    Integer g = gcd(A, B, C);
    return {A / g, B / g, C / g, 2};
}

inline bool is_algebraic_integer(FieldElement const & x)
{
    auto p = minimal_polynomial(x);
    return p.degree == 2 ? p.A == 1 : p.B == 1;
}

/// The primitive form whose root (-b + sqrt(disc)) / (2a) is theta.
inline BinaryQuadraticForm form_of(QuadraticIrrational const & theta)
{
    auto p = minimal_polynomial(theta.value());
    // roots are (-B +- sqrt(disc)) / (2A); theta takes '+' iff b and A agree in sign
    if (theta.b() > 0)
        return {p.A, p.B, p.C};
    return {-p.A, -p.B, -p.C};
}

/// The root (-b + sqrt(disc)) / (2a) of a form of nonsquare discriminant.
inline QuadraticIrrational root_of(BinaryQuadraticForm const & f)
{
    return QuadraticIrrational(-f.b, 1, 2 * f.a, f.discriminant());
}

/// End(Z + theta Z): the order whose discriminant is that of theta's minimal polynomial.
inline QuadraticOrder endomorphism_ring(QuadraticIrrational const & theta)
{
    return QuadraticOrder::from_discriminant(minimal_polynomial(theta.value()).discriminant());
}

/*
 * Z g_0 + ... + Z g_{n-1} inside one real quadratic field, generators kept
 * in the recorded order and required to be Z-linearly independent. Since
 * the field is 2-dimensional over Q, the rank is at most 2.
 */
class PseudoLattice
{
    std::vector<FieldElement> gens_;

  public:
    explicit PseudoLattice(std::vector<FieldElement> gens) : gens_(std::move(gens))
    {
        if (gens_.empty())
            throw domain_error("pseudo-lattice needs at least one generator");
        for (auto const & g : gens_)
            gens_.front().require_same_field(g);
        if (rank_over_q(gens_) != gens_.size())
            throw domain_error("pseudo-lattice generators are Z-linearly dependent");
    }

    std::vector<FieldElement> const & generators() const { return gens_; }
    std::size_t rank() const { return gens_.size(); }
    Integer const & D() const { return gens_.front().D(); }

    friend bool operator==(PseudoLattice const &, PseudoLattice const &) = default;

    std::string str() const
    {
        std::string s;
        for (std::size_t i = 0; i < gens_.size(); ++i)
            s += (i ? " + " : "") + ("(" + gens_[i].str() + ")Z");
        return s;
    }

    // Rank over Q of the coordinate vectors (a/c, b/c).
    static std::size_t rank_over_q(std::vector<FieldElement> const & xs)
    {
        std::vector<std::pair<Rational, Rational>> rows;
        for (auto const & x : xs)
            rows.emplace_back(Rational(x.a(), x.c()), Rational(x.b(), x.c()));
        std::size_t rank = 0;
        for (int col = 0; col < 2 && rank < rows.size(); ++col) {
            auto get = [col](auto & r) -> Rational & { return col == 0 ? r.first : r.second; };
            std::size_t pivot = rank;
            while (pivot < rows.size() && get(rows[pivot]) == 0)
                ++pivot;
            if (pivot == rows.size())
                continue;
            std::swap(rows[rank], rows[pivot]);
            for (std::size_t i = rank + 1; i < rows.size(); ++i) {
                Rational factor = get(rows[i]) / get(rows[rank]);
                rows[i].first -= factor * rows[rank].first;
                rows[i].second -= factor * rows[rank].second;
            }
            ++rank;
        }
        return rank;
    }
};

/// Scales the generators so the first becomes 1.
inline PseudoLattice normalize_pseudolattice(std::vector<FieldElement> const & gens)
{
    if (gens.empty())
        throw domain_error("cannot normalize an empty generator list");
    if (gens.front().is_zero())
        throw domain_error("scaling generator is zero");
    std::vector<FieldElement> out;
    out.reserve(gens.size());
    for (auto const & g : gens)
        out.push_back(g / gens.front());
    return PseudoLattice(std::move(out));
}

/// One theta per ideal class of the order: the root of the class representative
/// (least reduced form with a > 0), in representative order.
inline std::vector<QuadraticIrrational> companion_tori(QuadraticOrder const & order,
                                                       Integer const & max_disc = default_max_disc)
{
    detail::require_desk_scale(order, max_disc);
    FormClasses classes(order.discriminant());
    std::vector<QuadraticIrrational> out;
    for (auto const & f : classes.representatives())
        out.push_back(root_of(f));
    return out;
}

/// Index of theta's own ideal class among companion_tori(endomorphism_ring(theta)).
inline std::size_t companion_index(QuadraticIrrational const & theta,
                                   Integer const & max_disc = default_max_disc)
{
    QuadraticOrder order = endomorphism_ring(theta);
    detail::require_desk_scale(order, max_disc);
    return FormClasses(order.discriminant()).class_index(form_of(theta));
}

} // namespace qde

#endif // QDE_LATTICE_HPP
