#ifndef QDE_INTEGER_HPP
#define QDE_INTEGER_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qde/error.hpp"

namespace qde {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer abs(Integer const & x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(Integer const & a, Integer const & b)
{
    return boost::multiprecision::gcd(a, b);
}

inline Integer gcd(Integer const & a, Integer const & b, Integer const & c)
{
    return gcd(gcd(a, b), c);
}

// Floor of a / b for b != 0 (C++ '/' truncates toward zero).
inline Integer floor_div(Integer const & a, Integer const & b)
{
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

// Least nonnegative residue of a modulo |m|.
inline Integer mod(Integer const & a, Integer const & m)
{
    Integer r = a % m;
    if (r < 0)
        r += abs(m);
    return r;
}

// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(Integer const & n)
{
    if (n < 0)
        throw domain_error("isqrt of negative integer");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(Integer const & n)
{
    if (n < 0)
        return false;
    Integer s = isqrt(n);
    return s * s == n;
}

// Extended gcd: returns g = gcd(a, b) >= 0 and sets x, y with a x + b y = g.
inline Integer xgcd(Integer const & a, Integer const & b, Integer & x, Integer & y)
{
    Integer old_r = a, r = b;
    Integer old_s = 1, s = 0;
    Integer old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

// Prime factorization of |n| by trial division, primes ascending with
// multiplicity exponents. Intended for desk-scale inputs.
inline std::vector<std::pair<Integer, unsigned>> factor(Integer n)
{
    std::vector<std::pair<Integer, unsigned>> out;
    n = abs(n);
    if (n < 2)
        return out;
    auto strip = [&](Integer const & p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (Integer p = 5; p * p <= n; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

inline std::vector<Integer> prime_divisors(Integer const & n)
{
    std::vector<Integer> out;
    for (auto const & [p, e] : factor(n))
        out.push_back(p);
    return out;
}

// Writes n = square^2 * core with core squarefree (sign kept on core).
struct square_decomposition
{
    Integer square;
    Integer core;
};

namespace detail {

// Strips primes p with p^3 <= m. What is left has at most two prime factors,
// so it is 1, a prime, a product of two primes, or the square of a prime.
template <class Int>
void strip_small_primes(Int & m, Integer & square, Integer & core)
{
    auto strip = [&](Int const & p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        for (unsigned i = 0; i < e / 2; ++i)
            square *= p;
        if (e % 2)
            core *= p;
    };
    strip(Int(2));
    strip(Int(3));
    for (Int p = 5; p * p * p <= m; p += 6) {
        strip(p);
        strip(p + 2);
    }
}

} // namespace detail

inline square_decomposition split_square(Integer const & n)
{
    if (n == 0)
        return {1, 0};
    square_decomposition out{1, n < 0 ? Integer(-1) : Integer(1)};
    Integer m = abs(n);
    if (m <= std::numeric_limits<std::uint64_t>::max() / 2) {
        auto small = m.convert_to<std::uint64_t>();
        detail::strip_small_primes(small, out.square, out.core);
        m = small;
    } else {
        detail::strip_small_primes(m, out.square, out.core);
    }
    if (m > 1) {
        if (is_square(m))
            out.square *= isqrt(m);
        else
            out.core *= m;
    }
    return out;
}

inline bool is_squarefree(Integer const & n) { return n != 0 && split_square(n).square == 1; }

inline bool fits_int64(Integer const & x)
{
    return x >= std::numeric_limits<std::int64_t>::min()
        && x <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(Integer const & x)
{
    if (!fits_int64(x))
        throw domain_error("integer " + x.str() + " does not fit in 64 bits");
    return x.convert_to<std::int64_t>();
}

inline std::string to_string(Integer const & x) { return x.str(); }

// Kronecker symbol (a|n) for n != 0.
inline int kronecker(Integer a, Integer n)
{
    if (n == 0)
        throw domain_error("kronecker symbol (a|0) is not defined here");
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    // factor out powers of two from n using (a|2)
    unsigned twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos) {
        if (a % 2 == 0)
            return 0;
        if (twos % 2) {
            int r8 = static_cast<int>(mod(a, 8));
            if (r8 == 3 || r8 == 5)
                result = -result;
        }
    }
    // n odd positive: Jacobi symbol
    a = mod(a, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            int r8 = static_cast<int>(n % 8);
            if (r8 == 3 || r8 == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

} // namespace qde

#endif // QDE_INTEGER_HPP
