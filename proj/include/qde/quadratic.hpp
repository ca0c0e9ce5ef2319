#ifndef QDE_QUADRATIC_HPP
#define QDE_QUADRATIC_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qde/error.hpp"
#include "qde/integer.hpp"

namespace qde {

/*
 * An element (a + b sqrt(D)) / c of the real quadratic field Q(sqrt(D)),
 * D squarefree and > 1. Always stored in canonical form: c > 0 and
 * gcd(a, b, c) = 1. b may be zero (rational elements are allowed here;
 * QuadraticIrrational below is the irrational-only type).
 */
class FieldElement
{
    Integer a_, b_, c_, D_;

    void canonicalize()
    {
        if (c_ == 0)
            throw domain_error("field element with zero denominator");
        if (c_ < 0) {
            a_ = -a_;
            b_ = -b_;
            c_ = -c_;
        }
        Integer g = gcd(a_, b_, c_);
        if (g > 1) {
            a_ /= g;
            b_ /= g;
            c_ /= g;
        }
    }

    struct raw_tag
    {
    };

    FieldElement(raw_tag, Integer a, Integer b, Integer c, Integer D)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), D_(std::move(D))
    {
        canonicalize();
    }

  public:
    // D may carry square factors; they are absorbed into b.
    FieldElement(Integer a, Integer b, Integer c, Integer const & D)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c))
    {
        if (D < 2)
            throw domain_error("radicand must be >= 2, got " + D.str());
        auto sq = split_square(D);
        if (sq.core == 1)
            throw domain_error("radicand " + D.str() + " is a perfect square");
        b_ *= sq.square;
        D_ = sq.core;
        canonicalize();
    }

    static FieldElement rational(Integer num, Integer den, Integer const & D)
    {
        return FieldElement(std::move(num), 0, std::move(den), D);
    }

    Integer const & a() const { return a_; }
    Integer const & b() const { return b_; }
    Integer const & c() const { return c_; }
    Integer const & D() const { return D_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    FieldElement conjugate() const { return {raw_tag{}, a_, -b_, c_, D_}; }

    // N(x) = (a^2 - b^2 D) / c^2
    Rational norm() const { return Rational(a_ * a_ - b_ * b_ * D_, c_ * c_); }
    Rational trace() const { return Rational(2 * a_, c_); }

    friend bool operator==(FieldElement const &, FieldElement const &) = default;

    FieldElement operator-() const { return {raw_tag{}, -a_, -b_, c_, D_}; }

    friend FieldElement operator+(FieldElement const & x, FieldElement const & y)
    {
        x.require_same_field(y);
        return {raw_tag{}, x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_,
                x.c_ * y.c_, x.D_};
    }

    friend FieldElement operator-(FieldElement const & x, FieldElement const & y)
    {
        return x + (-y);
    }

    friend FieldElement operator*(FieldElement const & x, FieldElement const & y)
    {
        x.require_same_field(y);
        return {raw_tag{}, x.a_ * y.a_ + x.b_ * y.b_ * x.D_,
                x.a_ * y.b_ + x.b_ * y.a_, x.c_ * y.c_, x.D_};
    }

    friend FieldElement operator/(FieldElement const & x, FieldElement const & y)
    {
        x.require_same_field(y);
        if (y.is_zero())
            throw domain_error("division by zero field element");
        // x / y = x * conj(y) * c_y^2 / (a_y^2 - b_y^2 D) / c_y ... collapsed:
        // 1/y = c_y (a_y - b_y sqrt D) / (a_y^2 - b_y^2 D)
        Integer n = y.a_ * y.a_ - y.b_ * y.b_ * y.D_;
        FieldElement inv{raw_tag{}, y.c_ * y.a_, -y.c_ * y.b_, n, y.D_};
        return x * inv;
    }

    friend FieldElement operator+(FieldElement const & x, Integer const & k)
    {
        return {raw_tag{}, x.a_ + k * x.c_, x.b_, x.c_, x.D_};
    }

    friend FieldElement operator*(Integer const & k, FieldElement const & x)
    {
        return {raw_tag{}, k * x.a_, k * x.b_, x.c_, x.D_};
    }

    void require_same_field(FieldElement const & o) const
    {
        if (D_ != o.D_)
            throw domain_error("elements of Q(sqrt(" + D_.str() + ")) and Q(sqrt("
                               + o.D_.str() + ")) are incomparable");
    }

    // Sign of the real number (a + b sqrt D) / c, computed exactly.
    int sign() const
    {
        auto sgn = [](Integer const & v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
        int sa = sgn(a_), sb = sgn(b_);
        if (sb == 0)
            return sa;
        if (sa == 0 || sa == sb)
            return sb;
        // opposite signs: compare a^2 with b^2 D
        Integer lhs = a_ * a_, rhs = b_ * b_ * D_;
        return lhs > rhs ? sa : sb;
    }

    std::string str() const
    {
        if (b_ == 0)
            return c_ == 1 ? a_.str() : a_.str() + "/" + c_.str();
        std::string num;
        std::string rad = "sqrt(" + D_.str() + ")";
        std::string bterm;
        Integer ab = abs(b_);
        bterm = (ab == 1 ? rad : ab.str() + "*" + rad);
        if (a_ == 0)
            num = (b_ < 0 ? "-" : "") + bterm;
        else
            num = a_.str() + (b_ < 0 ? "-" : "+") + bterm;
        if (c_ == 1)
            return num;
        return "(" + num + ")/" + c_.str();
    }

    friend std::ostream & operator<<(std::ostream & o, FieldElement const & x)
    {
        return o << x.str();
    }
};

/*
 * A real quadratic irrational (a + b sqrt(D)) / c: D squarefree > 1,
 * b != 0, c > 0, gcd(a, b, c) = 1. Two values are equal iff their fields
 * are equal.
 */
class QuadraticIrrational
{
    FieldElement value_;

  public:
    explicit QuadraticIrrational(FieldElement v) : value_(std::move(v))
    {
        if (value_.is_rational())
            throw domain_error("value " + value_.str() + " is rational");
    }

    QuadraticIrrational(Integer a, Integer b, Integer c, Integer const & D)
        : QuadraticIrrational(FieldElement(std::move(a), std::move(b), std::move(c), D))
    {
    }

    Integer const & a() const { return value_.a(); }
    Integer const & b() const { return value_.b(); }
    Integer const & c() const { return value_.c(); }
    Integer const & D() const { return value_.D(); }

    FieldElement const & value() const { return value_; }
    operator FieldElement const &() const { return value_; }

    QuadraticIrrational conjugate() const { return QuadraticIrrational(value_.conjugate()); }

    std::string str() const { return value_.str(); }

    friend bool operator==(QuadraticIrrational const &, QuadraticIrrational const &) = default;

    friend std::ostream & operator<<(std::ostream & o, QuadraticIrrational const & x)
    {
        return o << x.str();
    }
};

struct ContinuedFraction
{
    std::vector<Integer> preperiod;
    std::vector<Integer> period;

    friend bool operator==(ContinuedFraction const &, ContinuedFraction const &) = default;

    std::string str() const
    {
        auto list = [](std::vector<Integer> const & v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i)
                s += (i ? "," : "") + v[i].str();
            return s + "]";
        };
        return "preperiod=" + list(preperiod) + " period=" + list(period);
    }
};

/// x + y w with w = sqrt(D) for D = 2,3 mod 4 and w = (1 + sqrt(D))/2 for D = 1 mod 4.
struct QuadraticInteger
{
    Integer x, y, D;

    bool omega_is_half() const { return mod(D, 4) == 1; }

    Integer norm() const
    {
        if (omega_is_half())
            return x * x + x * y - ((D - 1) / 4) * y * y;
        return x * x - D * y * y;
    }

    Integer trace() const { return omega_is_half() ? Integer(2 * x + y) : Integer(2 * x); }

    FieldElement value() const
    {
        if (omega_is_half())
            return FieldElement(2 * x + y, y, 2, D);
        return FieldElement(x, y, 1, D);
    }

    friend QuadraticInteger operator*(QuadraticInteger const & u, QuadraticInteger const & v)
    {
        if (u.D != v.D)
            throw domain_error("quadratic integers from different fields");
        if (u.omega_is_half()) {
            // w^2 = w + (D-1)/4
            Integer m = (u.D - 1) / 4;
            Integer yy = u.y * v.y;
            return {u.x * v.x + m * yy, u.x * v.y + u.y * v.x + yy, u.D};
        }
        return {u.x * v.x + u.D * u.y * v.y, u.x * v.y + u.y * v.x, u.D};
    }

    friend bool operator==(QuadraticInteger const &, QuadraticInteger const &) = default;

    std::string str() const
    {
        return "(" + x.str() + ")+(" + y.str() + ")*"
            + (omega_is_half() ? "(1+sqrt(" + D.str() + "))/2" : "sqrt(" + D.str() + ")");
    }
};

namespace detail {

/*
 * Exact continued-fraction engine. A quadratic irrational is written as
 * (P + sqrt(N)) / Q with Q | N - P^2; the complete quotients then follow
 *   a = floor((P + sqrt N) / Q),  P' = a Q - P,  Q' = (N - P'^2) / Q
 * with N fixed, so (P, Q) identifies each complete quotient uniquely.
 */
class cf_engine
{
    Integer P_, Q_, N_, root_;

  public:
    explicit cf_engine(FieldElement const & x)
    {
        if (x.is_rational())
            throw domain_error("continued fraction of a rational value");
        Integer a = x.a(), c = x.c();
        if (x.b() < 0) {
            a = -a;
            c = -c;
        }
        Integer n = x.b() * x.b() * x.D();
        Integer ac = abs(c);
        P_ = a * ac;
        N_ = n * c * c;
        Q_ = c * ac;
        root_ = isqrt(N_);
    }

    Integer const & P() const { return P_; }
    Integer const & Q() const { return Q_; }
    Integer const & N() const { return N_; }
    Integer const & root() const { return root_; }

    Integer quotient() const
    {
        if (Q_ > 0)
            return floor_div(P_ + root_, Q_);
        return -floor_div(P_ + root_, -Q_) - 1;
    }

    Integer next()
    {
        Integer a = quotient();
        P_ = a * Q_ - P_;
        Q_ = (N_ - P_ * P_) / Q_;
        return a;
    }
};

} // namespace detail

inline ContinuedFraction cf_expand(FieldElement const & theta)
{
    detail::cf_engine eng(theta);
    std::map<std::pair<Integer, Integer>, std::size_t> seen;
    std::vector<Integer> quotients;
    for (;;) {
        auto key = std::make_pair(eng.P(), eng.Q());
        auto it = seen.find(key);
        if (it != seen.end()) {
            std::size_t start = it->second;
            ContinuedFraction cf;
            cf.preperiod.assign(quotients.begin(), quotients.begin() + start);
            cf.period.assign(quotients.begin() + start, quotients.end());
            return cf;
        }
        seen.emplace(std::move(key), quotients.size());
        quotients.push_back(eng.next());
    }
}

inline ContinuedFraction cf_expand(QuadraticIrrational const & theta)
{
    return cf_expand(theta.value());
}

namespace detail {

// Product of [[q, 1], [1, 0]] over the quotients: {p, p', q, q'}.
struct mobius
{
    Integer p = 1, pp = 0, q = 0, qp = 1;

    void push(Integer const & a)
    {
        Integer np = a * p + pp;
        Integer nq = a * q + qp;
        pp = std::move(p);
        qp = std::move(q);
        p = std::move(np);
        q = std::move(nq);
    }

    FieldElement apply(FieldElement const & x) const
    {
        FieldElement num = p * x + pp;
        FieldElement den = q * x + qp;
        return num / den;
    }
};

} // namespace detail

inline QuadraticIrrational cf_value(ContinuedFraction const & cf)
{
    if (cf.period.empty())
        throw domain_error("continued fraction period must be nonempty");
    for (auto const & q : cf.period)
        if (q < 1)
            throw domain_error("periodic partial quotients must be >= 1");
    for (std::size_t i = 1; i < cf.preperiod.size(); ++i)
        if (cf.preperiod[i] < 1)
            throw domain_error("partial quotients after the first must be >= 1");

    detail::mobius tail;
    for (auto const & q : cf.period)
        tail.push(q);
    // x = (p x + p') / (q x + q')  <=>  q x^2 + (q' - p) x - p' = 0.
    // Dividing out the content first keeps the radicand small enough to factor.
    Integer A = tail.q, B = tail.qp - tail.p, C = -tail.pp;
    Integer g = gcd(A, gcd(B, C));
    A /= g;
    B /= g;
    C /= g;
    Integer disc = B * B - 4 * A * C;
    if (is_square(disc))
        throw domain_error("degenerate period: fixed point is rational");
    FieldElement x(-B, 1, 2 * A, disc);

    detail::mobius head;
    for (auto const & q : cf.preperiod)
        head.push(q);
    return QuadraticIrrational(head.apply(x));
}

// Kronecker symbol (a|n), n != 0.
inline int kronecker_symbol(Integer const & a, Integer const & n) { return kronecker(a, n); }

struct FundamentalUnit
{
    QuadraticInteger unit;
    int norm;
};

/*
 * Fundamental unit eps > 1 of the ring of integers of Q(sqrt(D)). Scans
 * the convergents p/q of w: for D = 1 mod 4 the candidate is (p - q) + q w,
 * otherwise p + q sqrt(D); the first candidate of norm +-1 is eps.
 */
inline FundamentalUnit fundamental_unit(Integer const & D)
{
    if (D < 2 || !is_squarefree(D))
        throw domain_error("fundamental_unit needs squarefree D > 1, got " + D.str());
    bool half = mod(D, 4) == 1;
    FieldElement omega = half ? FieldElement(1, 1, 2, D) : FieldElement(0, 1, 1, D);
    detail::cf_engine eng(omega);
    detail::mobius conv;
    for (;;) {
        conv.push(eng.next());
        QuadraticInteger cand = half ? QuadraticInteger{conv.p - conv.q, conv.q, D}
                                     : QuadraticInteger{conv.p, conv.q, D};
        Integer n = cand.norm();
        if (n == 1 || n == -1)
            return {cand, n == 1 ? 1 : -1};
    }
}

namespace detail {

inline bool is_rotation(std::vector<Integer> const & x, std::vector<Integer> const & y)
{
    if (x.size() != y.size())
        return false;
    std::size_t n = x.size();
    for (std::size_t shift = 0; shift < n; ++shift) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            ok = x[i] == y[(i + shift) % n];
        if (ok)
            return true;
    }
    return false;
}

} // namespace detail

/// True iff t1 = (p t2 + q)/(r t2 + s) for an integral matrix of determinant
/// +-1, i.e. the continued fractions share a tail (periods agree up to rotation).
inline bool gl2z_equivalent(FieldElement const & t1, FieldElement const & t2)
{
    if (t1.D() != t2.D())
        throw domain_error("gl2z_equivalent: fields Q(sqrt(" + t1.D().str() + ")) and Q(sqrt("
                           + t2.D().str() + ")) differ");
    return detail::is_rotation(cf_expand(t1).period, cf_expand(t2).period);
}

inline bool gl2z_equivalent(QuadraticIrrational const & t1, QuadraticIrrational const & t2)
{
    return gl2z_equivalent(t1.value(), t2.value());
}

} // namespace qde

#endif // QDE_QUADRATIC_HPP
