#ifndef QDE_ORDER_HPP
#define QDE_ORDER_HPP

#include <ostream>
#include <string>

#include "qde/error.hpp"
#include "qde/integer.hpp"

namespace qde {

// Fundamental discriminant of Q(sqrt(D)): D if D = 1 mod 4, else 4D.
inline Integer field_discriminant(Integer const & D)
{
    return mod(D, 4) == 1 ? D : Integer(4 * D);
}

/// The order Z + f O_k of k = Q(sqrt(D)), with discriminant f^2 d_K.
class QuadraticOrder
{
    Integer D_, f_;

  public:
    QuadraticOrder(Integer D, Integer f) : D_(std::move(D)), f_(std::move(f))
    {
        if (D_ < 2 || !is_squarefree(D_))
            throw domain_error("order needs squarefree D > 1, got D=" + D_.str());
        if (f_ < 1)
            throw domain_error("conductor must be >= 1, got f=" + f_.str());
    }

    // The unique order of the given (positive, nonsquare) discriminant.
    static QuadraticOrder from_discriminant(Integer const & disc)
    {
        if (disc <= 0 || is_square(disc) || !(mod(disc, 4) == 0 || mod(disc, 4) == 1))
            throw domain_error("not a real quadratic discriminant: " + disc.str());
        auto sq = split_square(disc);
        Integer D = sq.core;
        Integer dk = field_discriminant(D);
        Integer f2 = disc / dk;
        if (f2 * dk != disc || !is_square(f2))
            throw invariant_violation("discriminant " + disc.str() + " is not f^2 d_K");
        return {D, isqrt(f2)};
    }

    Integer const & D() const { return D_; }
    Integer const & conductor() const { return f_; }
    Integer fundamental_discriminant() const { return field_discriminant(D_); }
    Integer discriminant() const { return f_ * f_ * fundamental_discriminant(); }
    bool is_maximal() const { return f_ == 1; }

    friend bool operator==(QuadraticOrder const &, QuadraticOrder const &) = default;

    std::string str() const { return "(D=" + D_.str() + ", f=" + f_.str() + ")"; }

    friend std::ostream & operator<<(std::ostream & o, QuadraticOrder const & x)
    {
        return o << x.str();
    }
};

} // namespace qde

#endif // QDE_ORDER_HPP
