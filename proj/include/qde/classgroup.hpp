#ifndef QDE_CLASSGROUP_HPP
#define QDE_CLASSGROUP_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qde/error.hpp"
#include "qde/integer.hpp"
#include "qde/order.hpp"
#include "qde/quadratic.hpp"

namespace qde {

// Largest discriminant the brute-force class-group routines accept by default.
inline constexpr std::int64_t default_max_disc = 1'000'000;

/*
 * Finite abelian group Z/d1 + ... + Z/dr with d1 | d2 | ... | dr, each
 * d >= 2. The empty list is the trivial group.
 */
class AbelianGroupStructure
{
    std::vector<Integer> factors_;

  public:
    AbelianGroupStructure() = default;

    explicit AbelianGroupStructure(std::vector<Integer> invariant_factors)
        : factors_(std::move(invariant_factors))
    {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i] < 2)
                throw domain_error("invariant factors must be >= 2");
            if (i && factors_[i] % factors_[i - 1] != 0)
                throw domain_error("invariant factors must form a divisibility chain");
        }
    }

    // Normalizes an arbitrary direct sum of cyclic groups Z/n_i (n_i >= 1).
    static AbelianGroupStructure from_cyclic_orders(std::vector<Integer> const & orders)
    {
        std::map<Integer, std::vector<Integer>> by_prime; // p -> prime powers
        for (auto const & n : orders) {
            if (n < 1)
                throw domain_error("cyclic group order must be >= 1");
            for (auto const & [p, e] : factor(n))
                by_prime[p].push_back(boost::multiprecision::pow(p, e));
        }
        std::size_t len = 0;
        for (auto & [p, powers] : by_prime) {
            std::sort(powers.begin(), powers.end(), std::greater<>());
            len = std::max(len, powers.size());
        }
        // largest factor collects every prime's largest power, and so on
        std::vector<Integer> out(len, Integer(1));
        for (auto const & [p, powers] : by_prime)
            for (std::size_t i = 0; i < powers.size(); ++i)
                out[len - 1 - i] *= powers[i];
        return AbelianGroupStructure(std::move(out));
    }

    std::vector<Integer> const & invariant_factors() const { return factors_; }

    Integer order() const
    {
        Integer n = 1;
        for (auto const & d : factors_)
            n *= d;
        return n;
    }

    bool is_trivial() const { return factors_.empty(); }

    friend bool operator==(AbelianGroupStructure const &, AbelianGroupStructure const &) = default;

    std::string str() const
    {
        if (factors_.empty())
            return "trivial";
        std::string s;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            s += (i ? " + Z/" : "Z/") + factors_[i].str();
        return s;
    }

    friend std::ostream & operator<<(std::ostream & o, AbelianGroupStructure const & g)
    {
        return o << g.str();
    }
};

/// a x^2 + b x y + c y^2 with positive nonsquare discriminant.
struct BinaryQuadraticForm
{
    Integer a, b, c;

    Integer discriminant() const { return b * b - 4 * a * c; }
    Integer content() const { return gcd(a, b, c); }
    bool is_primitive() const { return content() == 1; }

    // 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, with s = floor(sqrt(D)).
    bool is_reduced(Integer const & s) const
    {
        if (b <= 0 || b > s)
            return false;
        Integer two_a = 2 * abs(a);
        return two_a + b > s && two_a <= s + b;
    }

    bool is_reduced() const { return is_reduced(isqrt(discriminant())); }

    // Class inverse under composition.
    BinaryQuadraticForm inverse() const { return {a, -b, c}; }

    // (a, b, c) -> (-a, b, -c): the same ideal class up to multiplication by an
    // element of negative norm. Preserves reducedness.
    BinaryQuadraticForm sign_flip() const { return {-a, b, -c}; }

    friend bool operator==(BinaryQuadraticForm const &, BinaryQuadraticForm const &) = default;

    friend bool operator<(BinaryQuadraticForm const & x, BinaryQuadraticForm const & y)
    {
        return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    }

    std::string str() const { return "(" + a.str() + ", " + b.str() + ", " + c.str() + ")"; }

    friend std::ostream & operator<<(std::ostream & o, BinaryQuadraticForm const & f)
    {
        return o << f.str();
    }
};

inline BinaryQuadraticForm principal_form(Integer const & disc)
{
    Integer b = mod(disc, 2);
    return {1, b, (b * b - disc) / 4};
}

namespace detail {

inline void require_indefinite(Integer const & disc)
{
    if (disc <= 0)
        throw domain_error("discriminant " + disc.str() + " is not positive");
    if (is_square(disc))
        throw domain_error("discriminant " + disc.str() + " is a perfect square");
}

// One step of the reduction operator rho.
inline BinaryQuadraticForm rho(BinaryQuadraticForm const & f, Integer const & disc,
                               Integer const & s)
{
    Integer ac = abs(f.c);
    Integer two_c = 2 * ac;
    Integer r;
    if (ac > s) {
        r = mod(-f.b, two_c);
        if (r > ac)
            r -= two_c;
    } else {
        r = s - mod(s + f.b, two_c);
    }
    return {f.c, r, (r * r - disc) / (4 * f.c)};
}

inline BinaryQuadraticForm reduce(BinaryQuadraticForm f, Integer const & disc, Integer const & s)
{
    while (!f.is_reduced(s))
        f = rho(f, disc, s);
    return f;
}

template <class Int>
void enumerate_reduced(Int disc, Int s, std::vector<BinaryQuadraticForm> & out)
{
    using std::gcd;
    using boost::multiprecision::gcd;
    for (Int b = (disc % 2 == 0) ? Int(2) : Int(1); b <= s; b += 2) {
        Int m = (disc - b * b) / 4;
        Int lo = (s + 2 - b) / 2;
        Int hi = (s + b) / 2;
        for (Int A = lo; A <= hi; ++A) {
            if (m % A != 0)
                continue;
            Int c = m / A;
            if (gcd(gcd(A, b), c) != 1)
                continue;
            out.push_back({Integer(A), Integer(b), Integer(-c)});
            out.push_back({Integer(-A), Integer(b), Integer(c)});
        }
    }
}

} // namespace detail

/// All primitive reduced forms of the discriminant, sorted lexicographically.
inline std::vector<BinaryQuadraticForm> reduced_forms(Integer const & disc)
{
    detail::require_indefinite(disc);
    Integer s = isqrt(disc);
    std::vector<BinaryQuadraticForm> out;
    if (disc < (Integer(1) << 60))
        detail::enumerate_reduced<std::int64_t>(disc.convert_to<std::int64_t>(),
                                                s.convert_to<std::int64_t>(), out);
    else
        detail::enumerate_reduced<Integer>(disc, s, out);
    std::sort(out.begin(), out.end());
    return out;
}

/// A reduced form properly equivalent to f (f primitive, indefinite).
inline BinaryQuadraticForm reduce(BinaryQuadraticForm const & f)
{
    Integer disc = f.discriminant();
    detail::require_indefinite(disc);
    if (!f.is_primitive())
        throw domain_error("form " + f.str() + " is not primitive");
    return detail::reduce(f, disc, isqrt(disc));
}

/// The full rho-cycle of reduced forms properly equivalent to f, starting
/// from its lexicographically least member.
inline std::vector<BinaryQuadraticForm> reduce_cycle(BinaryQuadraticForm const & f)
{
    Integer disc = f.discriminant();
    detail::require_indefinite(disc);
    if (!f.is_primitive())
        throw domain_error("form " + f.str() + " is not primitive");
    Integer s = isqrt(disc);
    BinaryQuadraticForm start = detail::reduce(f, disc, s);
    std::vector<BinaryQuadraticForm> cycle{start};
    for (auto g = detail::rho(start, disc, s); !(g == start); g = detail::rho(g, disc, s))
        cycle.push_back(g);
    auto least = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), least, cycle.end());
    return cycle;
}

namespace detail {

// Gauss composition via united forms; the result is not reduced.
inline BinaryQuadraticForm compose_raw(BinaryQuadraticForm const & f, BinaryQuadraticForm const & g,
                                       Integer const & disc)
{
    Integer h = (f.b + g.b) / 2;
    Integer u1, v1, x, w;
    Integer g1 = xgcd(f.a, g.a, u1, v1);
    Integer e = xgcd(g1, h, x, w);
    Integer u = x * u1, v = x * v1;
    Integer a3 = f.a * g.a / (e * e);
    Integer num = u * f.a * g.b + v * g.a * f.b + w * (f.b * g.b + disc) / 2;
    if (num % e != 0)
        throw invariant_violation("composition: non-integral middle coefficient");
    Integer b3 = mod(num / e, 2 * a3);
    Integer c_num = b3 * b3 - disc;
    if (c_num % (4 * a3) != 0)
        throw invariant_violation("composition of " + f.str() + " and " + g.str()
                                  + " produced a non-integral form");
    return {a3, b3, c_num / (4 * a3)};
}

} // namespace detail

/// Gauss composition. Returns the least member of the reduced cycle of the product class.
inline BinaryQuadraticForm compose(BinaryQuadraticForm const & f, BinaryQuadraticForm const & g)
{
    Integer disc = f.discriminant();
    if (disc != g.discriminant())
        throw domain_error("compose: discriminants " + disc.str() + " and "
                           + g.discriminant().str() + " differ");
    detail::require_indefinite(disc);
    if (!f.is_primitive() || !g.is_primitive())
        throw domain_error("compose needs primitive forms");
    return reduce_cycle(detail::compose_raw(f, g, disc)).front();
}

/*
 * Reduced forms of one discriminant partitioned into rho-cycles (proper
 * equivalence classes, i.e. the narrow class group) and into ordinary ideal
 * classes, which join each cycle with the cycle of its sign flip.
 */
class FormClasses
{
    Integer disc_, root_;
    std::vector<std::vector<BinaryQuadraticForm>> cycles_;
    std::map<std::pair<Integer, Integer>, std::size_t> cycle_of_;
    std::vector<std::vector<std::size_t>> wide_;
    std::vector<std::size_t> wide_of_cycle_;
    std::vector<BinaryQuadraticForm> wide_rep_;

  public:
    explicit FormClasses(Integer const & disc) : disc_(disc), root_(isqrt(disc))
    {
        auto forms = reduced_forms(disc);
        std::vector<bool> seen(forms.size(), false);
        std::map<std::pair<Integer, Integer>, std::size_t> index;
        for (std::size_t i = 0; i < forms.size(); ++i)
            index.emplace(std::make_pair(forms[i].a, forms[i].b), i);
        // forms are sorted, so each cycle is discovered from its least member
        for (std::size_t i = 0; i < forms.size(); ++i) {
            if (seen[i])
                continue;
            std::vector<BinaryQuadraticForm> cycle;
            auto g = forms[i];
            do {
                auto it = index.find({g.a, g.b});
                if (it == index.end() || seen[it->second])
                    throw invariant_violation("rho left the reduced set at " + g.str());
                seen[it->second] = true;
                cycle_of_.emplace(std::make_pair(g.a, g.b), cycles_.size());
                cycle.push_back(g);
                g = detail::rho(g, disc_, root_);
            } while (!(g == forms[i]));
            cycles_.push_back(std::move(cycle));
        }

        wide_of_cycle_.assign(cycles_.size(), SIZE_MAX);
        for (std::size_t i = 0; i < cycles_.size(); ++i) {
            if (wide_of_cycle_[i] != SIZE_MAX)
                continue;
            std::size_t j = cycle_index(cycles_[i].front().sign_flip());
            std::vector<std::size_t> members{i};
            if (j != i)
                members.push_back(j);
            for (auto k : members)
                wide_of_cycle_[k] = wide_.size();
            // least reduced form with a > 0; every class has one since flips are merged
            BinaryQuadraticForm const * best = nullptr;
            for (auto k : members)
                for (auto const & f : cycles_[k])
                    if (f.a > 0 && (!best || f < *best))
                        best = &f;
            wide_rep_.push_back(*best);
            wide_.push_back(std::move(members));
        }
        // order classes by their representative
        std::vector<std::size_t> perm(wide_.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(),
                  [&](std::size_t x, std::size_t y) { return wide_rep_[x] < wide_rep_[y]; });
        std::vector<std::vector<std::size_t>> wide2;
        std::vector<BinaryQuadraticForm> rep2;
        for (auto p : perm) {
            wide2.push_back(wide_[p]);
            rep2.push_back(wide_rep_[p]);
        }
        wide_ = std::move(wide2);
        wide_rep_ = std::move(rep2);
        for (std::size_t w = 0; w < wide_.size(); ++w)
            for (auto k : wide_[w])
                wide_of_cycle_[k] = w;
    }

    Integer const & discriminant() const { return disc_; }

    std::vector<std::vector<BinaryQuadraticForm>> const & cycles() const { return cycles_; }
    std::size_t narrow_class_number() const { return cycles_.size(); }
    std::size_t class_number() const { return wide_.size(); }

    // Cycle ids making up each ordinary class, and the class representatives
    // (lexicographically least reduced form with a > 0), both sorted by representative.
    std::vector<std::vector<std::size_t>> const & classes() const { return wide_; }
    std::vector<BinaryQuadraticForm> const & representatives() const { return wide_rep_; }

    std::size_t cycle_index(BinaryQuadraticForm const & f) const
    {
        auto r = f.is_reduced(root_) ? f : detail::reduce(f, disc_, root_);
        auto it = cycle_of_.find({r.a, r.b});
        if (it == cycle_of_.end())
            throw invariant_violation("form " + r.str() + " missing from class table");
        return it->second;
    }

    std::size_t class_index(BinaryQuadraticForm const & f) const
    {
        return wide_of_cycle_[cycle_index(f)];
    }

    std::size_t principal_class() const { return class_index(principal_form(disc_)); }

    std::size_t multiply(std::size_t i, std::size_t j) const
    {
        return class_index(detail::compose_raw(wide_rep_[i], wide_rep_[j], disc_));
    }

    // Invariant factors of the ordinary class group, from element orders.
    AbelianGroupStructure structure() const
    {
        std::size_t h = class_number();
        std::size_t e = principal_class();
        std::vector<std::uint64_t> orders(h, 1);
        for (std::size_t g = 0; g < h; ++g) {
            std::size_t x = g;
            while (x != e) {
                x = multiply(x, g);
                ++orders[g];
                if (orders[g] > h)
                    throw invariant_violation("element order exceeds class number");
            }
        }
        std::vector<Integer> cyclic;
        for (auto const & [p, v] : factor(Integer(h))) {
            std::uint64_t pp = p.convert_to<std::uint64_t>();
            // rank[k] = number of p-primary cyclic factors of exponent >= k
            std::vector<unsigned> ranks;
            std::uint64_t prev = 1, pk = 1;
            for (unsigned k = 1;; ++k) {
                pk *= pp;
                std::uint64_t n = std::count_if(orders.begin(), orders.end(),
                                                [&](std::uint64_t o) { return pk % o == 0; });
                if (n == prev)
                    break;
                std::uint64_t ratio = n / prev;
                unsigned r = 0;
                while (ratio > 1) {
                    if (ratio % pp)
                        throw invariant_violation("p-torsion count is not a power of p");
                    ratio /= pp;
                    ++r;
                }
                ranks.push_back(r);
                prev = n;
            }
            unsigned count = ranks.empty() ? 0 : ranks.front();
            for (unsigned j = 1; j <= count; ++j) {
                unsigned exp = 0;
                for (auto r : ranks)
                    exp += r >= j ? 1 : 0;
                cyclic.push_back(boost::multiprecision::pow(p, exp));
            }
        }
        auto g = AbelianGroupStructure::from_cyclic_orders(cyclic);
        if (g.order() != h)
            throw invariant_violation("group structure order " + g.order().str()
                                      + " != class count " + std::to_string(h));
        return g;
    }
};

inline Integer narrow_class_number(Integer const & disc)
{
    return FormClasses(disc).narrow_class_number();
}

/// Ordinary class number of the maximal order of Q(sqrt(D)), from the number
/// of proper form cycles at d_K and the norm of the fundamental unit.
inline Integer class_number_maximal(Integer const & D)
{
    if (D < 2 || !is_squarefree(D))
        throw domain_error("class_number_maximal needs squarefree D > 1, got " + D.str());
    Integer narrow = narrow_class_number(field_discriminant(D));
    if (fundamental_unit(D).norm == -1)
        return narrow;
    if (narrow % 2 != 0)
        throw invariant_violation("odd narrow class number with a norm +1 fundamental unit");
    return narrow / 2;
}

// |(O_k / f O_k)^* / (Z / f Z)^*| = f prod_{p | f} (1 - (d_K|p)/p); e_f divides it.
inline Integer unit_index_bound(QuadraticOrder const & order)
{
    Integer dk = order.fundamental_discriminant();
    Integer f = order.conductor();
    Integer n = f;
    for (auto const & p : prime_divisors(f))
        n = n / p * (p - kronecker(dk, p));
    return n;
}

/// Least n >= 1 with eps^n in Z + f O_k.
inline Integer unit_index(QuadraticOrder const & order)
{
    Integer f = order.conductor();
    if (f == 1)
        return 1;
    QuadraticInteger eps = fundamental_unit(order.D()).unit;
    eps.x = mod(eps.x, f);
    eps.y = mod(eps.y, f);
    Integer bound = unit_index_bound(order);
    QuadraticInteger pw = eps;
    for (Integer n = 1; n <= bound; ++n) {
        if (pw.y == 0)
            return n;
        pw = pw * eps;
        pw.x = mod(pw.x, f);
        pw.y = mod(pw.y, f);
    }
    throw invariant_violation("unit index of " + order.str() + " exceeds bound " + bound.str());
}

/// h_Lambda = h (f / e_f) prod_{p | f} (1 - (d_K|p) / p), evaluated exactly.
inline Integer class_number_order(QuadraticOrder const & order)
{
    Integer h = class_number_maximal(order.D());
    Integer dk = order.fundamental_discriminant();
    Rational value = Rational(h * order.conductor(), unit_index(order));
    for (auto const & p : prime_divisors(order.conductor()))
        value *= Rational(1) - Rational(kronecker(dk, p), p);
    if (denominator(value) != 1 || numerator(value) < 1)
        throw invariant_violation("class number formula gave " + value.str() + " for "
                                  + order.str());
    Integer out = numerator(value);
    if (out % h != 0)
        throw invariant_violation("h = " + h.str() + " does not divide h_Lambda = " + out.str());
    return out;
}

namespace detail {

inline void require_desk_scale(QuadraticOrder const & order, Integer const & max_disc)
{
    if (order.discriminant() > max_disc)
        throw bound_error("discriminant " + order.discriminant().str() + " of " + order.str()
                          + " exceeds the desk-scale bound " + max_disc.str());
}

} // namespace detail

/// Cl(Lambda) by brute-force composition; its order is checked against class_number_order.
inline AbelianGroupStructure class_group_structure(QuadraticOrder const & order,
                                                   Integer const & max_disc = default_max_disc)
{
    detail::require_desk_scale(order, max_disc);
    auto g = FormClasses(order.discriminant()).structure();
    Integer h = class_number_order(order);
    if (g.order() != h)
        throw invariant_violation("composition group of " + order.str() + " has order "
                                  + g.order().str() + " but the conductor formula gives "
                                  + h.str());
    return g;
}

/// Gal(K_ab | k), isomorphic to Cl(Lambda).
inline AbelianGroupStructure galois_group_Kab(QuadraticOrder const & order,
                                              Integer const & max_disc = default_max_disc)
{
    return class_group_structure(order, max_disc);
}

} // namespace qde

#endif // QDE_CLASSGROUP_HPP
