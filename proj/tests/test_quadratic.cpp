#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qde/parse.hpp"
#include "qde/quadratic.hpp"

using namespace qde;

namespace {

std::vector<Integer> ints(std::initializer_list<long long> xs)
{
    std::vector<Integer> out;
    for (auto x : xs)
        out.emplace_back(x);
    return out;
}

std::vector<long long> squarefree_upto(long long n)
{
    std::vector<long long> out;
    for (long long d = 2; d < n; ++d)
        if (is_squarefree(Integer(d)))
            out.push_back(d);
    return out;
}

QuadraticIrrational random_theta(std::mt19937_64 & rng, long long max_d)
{
    auto ds = squarefree_upto(max_d);
    std::uniform_int_distribution<std::size_t> pick(0, ds.size() - 1);
    std::uniform_int_distribution<long long> coef(-60, 60), den(1, 40);
    for (;;) {
        long long b = coef(rng);
        if (b == 0)
            continue;
        return QuadraticIrrational(coef(rng), b, den(rng), Integer(ds[pick(rng)]));
    }
}

} // namespace

TEST(ParseTheta, CanonicalForms)
{
    auto g = parse_theta("(1+sqrt(5))/2");
    EXPECT_EQ(g.a(), 1);
    EXPECT_EQ(g.b(), 1);
    EXPECT_EQ(g.c(), 2);
    EXPECT_EQ(g.D(), 5);

    auto r8 = parse_theta("sqrt(8)");
    EXPECT_EQ(r8.a(), 0);
    EXPECT_EQ(r8.b(), 2);
    EXPECT_EQ(r8.c(), 1);
    EXPECT_EQ(r8.D(), 2);

    EXPECT_EQ(parse_theta(" ( 2 + 2*sqrt( 5 ) ) / 4 "), g);
    EXPECT_EQ(parse_theta("(-3 - 2 sqrt(12))/6"), QuadraticIrrational(-3, -4, 6, 3));
    EXPECT_EQ(parse_theta("-sqrt(2)"), QuadraticIrrational(0, -1, 1, 2));
    EXPECT_EQ(parse_theta("7 - 3*sqrt(10)"), QuadraticIrrational(7, -3, 1, 10));
    EXPECT_EQ(parse_theta("(sqrt(5))/2"), QuadraticIrrational(0, 1, 2, 5));
}

TEST(ParseTheta, Errors)
{
    EXPECT_THROW(parse_theta("(3+sqrt(9))/2"), domain_error);
    EXPECT_THROW(parse_theta("1+0*sqrt(7)"), domain_error);
    EXPECT_THROW(parse_theta("(1+sqrt(5))/0"), parse_error);
    EXPECT_THROW(parse_theta("sqrt(1)"), parse_error);
    EXPECT_THROW(parse_theta("Sqrt(5)"), parse_error);

    try {
        parse_theta("(1+sqrt(5)/2");
        FAIL() << "expected parse_error";
    } catch (parse_error const & e) {
        EXPECT_EQ(e.position(), 10u);
    }
    try {
        parse_theta("1 + sqrt(5) x");
        FAIL() << "expected parse_error";
    } catch (parse_error const & e) {
        EXPECT_EQ(e.position(), 12u);
    }
}

TEST(QuadraticIrrational, NormalizationIsIdempotentAndValuePreserving)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> coef(-500, 500), den(1, 300), dd(2, 400);
    for (int i = 0; i < 1000; ++i) {
        long long a = coef(rng), b = coef(rng), c = den(rng) * (i % 2 ? 1 : -1), D = dd(rng);
        if (b == 0 || is_square(Integer(D)))
            continue;
        QuadraticIrrational x(a, b, c, D);
        QuadraticIrrational again(x.a(), x.b(), x.c(), x.D());
        EXPECT_EQ(x, again);
        EXPECT_GT(x.c(), 0);
        EXPECT_EQ(gcd(x.a(), x.b(), x.c()), 1);
        EXPECT_TRUE(is_squarefree(x.D()));
        // (a + b sqrt D)/c == (a' + b' sqrt D')/c' with D = s^2 D':
        // a c' = a' c and b s c' = b' c
        auto sq = split_square(Integer(D));
        EXPECT_EQ(sq.core, x.D());
        EXPECT_EQ(Integer(a) * x.c(), x.a() * Integer(c));
        EXPECT_EQ(Integer(b) * sq.square * x.c(), x.b() * Integer(c));
    }
}

TEST(ContinuedFraction, ExpandSpotValues)
{
    auto golden = parse_theta("(1+sqrt(5))/2");
    auto cf = cf_expand(golden);
    EXPECT_EQ(cf, oracle::expand(golden));
    EXPECT_TRUE(cf.preperiod.empty());
    EXPECT_EQ(cf.period, ints({1}));

    auto r2 = cf_expand(parse_theta("sqrt(2)"));
    EXPECT_EQ(r2, oracle::expand(parse_theta("sqrt(2)")));
    EXPECT_EQ(r2.preperiod, ints({1}));
    EXPECT_EQ(r2.period, ints({2}));

    auto r10 = cf_expand(parse_theta("sqrt(10)"));
    EXPECT_EQ(r10, oracle::expand(parse_theta("sqrt(10)")));
    EXPECT_EQ(r10.preperiod, ints({3}));
    EXPECT_EQ(r10.period, ints({6}));

    EXPECT_EQ(cf.str(), "preperiod=[] period=[1]");
}

TEST(ContinuedFraction, MatchesValueIterationOracle)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto t = random_theta(rng, 60);
        EXPECT_EQ(cf_expand(t), oracle::expand(t)) << t;
    }
}

TEST(ContinuedFraction, ValueSpotValues)
{
    EXPECT_EQ(cf_value({{}, ints({1})}), parse_theta("(1+sqrt(5))/2"));
    EXPECT_EQ(cf_value({ints({1}), ints({2})}), parse_theta("sqrt(2)"));
    ContinuedFraction r10{ints({3}), ints({6})};
    EXPECT_EQ(cf_expand(cf_value(r10)), r10);
    EXPECT_EQ(cf_value(r10), parse_theta("sqrt(10)"));
    EXPECT_EQ(cf_value({ints({-2, 1}), ints({1, 2})}).D(), 3);
}

TEST(ContinuedFraction, ValueRejectsBadInput)
{
    EXPECT_THROW(cf_value({ints({1}), {}}), domain_error);
    EXPECT_THROW(cf_value({{}, ints({0})}), domain_error);
    EXPECT_THROW(cf_value({ints({1, 0}), ints({1})}), domain_error);
}

TEST(ContinuedFraction, RoundTripAndLagrangeBounds)
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 500; ++i) {
        auto t = random_theta(rng, 200);
        auto cf = cf_expand(t);
        ASSERT_FALSE(cf.period.empty());
        EXPECT_EQ(cf_value(cf), t);

        // once inside the period, the state is reduced: 0 < P < sqrt N, 0 < Q < 2 sqrt N
        detail::cf_engine eng(t.value());
        for (std::size_t k = 0; k < cf.preperiod.size(); ++k)
            eng.next();
        for (std::size_t k = 0; k < cf.period.size(); ++k) {
            EXPECT_GT(eng.P(), 0);
            EXPECT_LE(eng.P(), eng.root());
            EXPECT_GT(eng.Q(), 0);
            EXPECT_LE(eng.Q(), 2 * eng.root());
            EXPECT_EQ(eng.next(), cf.period[k]);
        }
    }
}

TEST(ContinuedFraction, PeriodIsMinimal)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        auto cf = cf_expand(random_theta(rng, 100));
        std::size_t n = cf.period.size();
        for (std::size_t d = 1; d < n; ++d) {
            if (n % d)
                continue;
            bool repeats = true;
            for (std::size_t k = 0; k < n && repeats; ++k)
                repeats = cf.period[k] == cf.period[k % d];
            EXPECT_FALSE(repeats);
        }
        if (!cf.preperiod.empty()) {
            EXPECT_NE(cf.preperiod.back(), cf.period.back());
        }
    }
}

TEST(FundamentalUnit, SpotValues)
{
    auto u5 = fundamental_unit(5);
    EXPECT_EQ(u5.unit.x, 0);
    EXPECT_EQ(u5.unit.y, 1);
    EXPECT_EQ(u5.norm, -1);

    auto u2 = fundamental_unit(2);
    EXPECT_EQ(u2.unit.value(), parse_theta("1+sqrt(2)").value());
    EXPECT_EQ(u2.norm, -1);

    auto u3 = fundamental_unit(3);
    EXPECT_EQ(u3.unit.value(), parse_theta("2+sqrt(3)").value());
    EXPECT_EQ(u3.norm, 1);

    EXPECT_EQ(fundamental_unit(10).unit.value(), parse_theta("3+sqrt(10)").value());
    EXPECT_EQ(fundamental_unit(10).norm, -1);
    EXPECT_THROW(fundamental_unit(12), domain_error);
}

TEST(FundamentalUnit, AgreesWithEnumerationForSmallD)
{
    // the full D < 200 sweep lives in the acceptance suite
    for (long long D : squarefree_upto(60)) {
        auto u = fundamental_unit(D);
        auto ref = oracle::smallest_unit(D);
        Integer X = mod(Integer(D), 4) == 1 ? Integer(2 * u.unit.x + u.unit.y) : u.unit.x;
        EXPECT_EQ(X, ref.X) << D;
        EXPECT_EQ(u.unit.y, ref.Y) << D;
        EXPECT_EQ(u.norm, ref.norm) << D;
        EXPECT_EQ(u.unit.norm(), u.norm) << D;
    }
}

TEST(Kronecker, SpotValues)
{
    EXPECT_EQ(kronecker(5, 11), 1);
    EXPECT_EQ(oracle::kronecker(5, 11), 1);
    EXPECT_EQ(kronecker(5, 2), -1);
    EXPECT_EQ(oracle::kronecker(5, 2), -1);
    EXPECT_EQ(kronecker(10, 5), 0);
    EXPECT_EQ(kronecker(12, 2), 0);
    EXPECT_EQ(kronecker(-1, -1), -1);
    EXPECT_THROW(kronecker(3, 0), domain_error);
}

TEST(Kronecker, AgreesWithDefinitionAndIsMultiplicative)
{
    for (long long a = -40; a <= 40; ++a)
        for (long long n = -40; n <= 40; ++n)
            if (n != 0) {
                ASSERT_EQ(kronecker(a, n), oracle::kronecker(a, n)) << a << " " << n;
            }

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> dist(-5000, 5000);
    for (int i = 0; i < 1000; ++i) {
        long long a = dist(rng), b = dist(rng), m = dist(rng), n = dist(rng);
        if (m == 0 || n == 0)
            continue;
        EXPECT_EQ(kronecker(Integer(a) * b, n), kronecker(a, n) * kronecker(b, n));
        EXPECT_EQ(kronecker(a, Integer(m) * n), kronecker(a, m) * kronecker(a, n));
    }
}

TEST(Gl2zEquivalence, SpotValues)
{
    auto golden = parse_theta("(1+sqrt(5))/2");
    auto r5 = parse_theta("sqrt(5)");
    // sqrt(5) = [2; 4] generates the order of discriminant 20, the golden ratio that of 5:
    // no unimodular matrix can relate them
    EXPECT_FALSE(gl2z_equivalent(golden, r5));
    EXPECT_FALSE(oracle::find_gl2z_matrix(golden, r5, 4).has_value());

    EXPECT_TRUE(gl2z_equivalent(golden, golden));
    auto shifted = parse_theta("(-1+sqrt(5))/2"); // golden - 1
    EXPECT_TRUE(gl2z_equivalent(golden, shifted));
    EXPECT_TRUE(oracle::find_gl2z_matrix(golden, shifted, 1).has_value());

    // the two form classes of discriminant 40
    auto t1 = parse_theta("sqrt(10)");
    auto t2 = parse_theta("(-2+sqrt(10))/2"); // root of (2, 4, -3)
    EXPECT_FALSE(gl2z_equivalent(t1, t2));
    EXPECT_FALSE(oracle::find_gl2z_matrix(t1, t2, 4).has_value());

    EXPECT_THROW(gl2z_equivalent(golden, parse_theta("sqrt(2)")), domain_error);
}

TEST(Gl2zEquivalence, MatrixImagesAreEquivalent)
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> e(-6, 6);
    int checked = 0;
    while (checked < 200) {
        long long p = e(rng), q = e(rng), r = e(rng), s = e(rng);
        long long det = p * s - q * r;
        if (det != 1 && det != -1)
            continue;
        auto t = random_theta(rng, 50);
        FieldElement den = Integer(r) * t.value() + Integer(s);
        QuadraticIrrational image((Integer(p) * t.value() + Integer(q)) / den);
        EXPECT_TRUE(gl2z_equivalent(t, image)) << t << " vs " << image;
        ++checked;
    }
}

TEST(Gl2zEquivalence, IsAnEquivalenceRelation)
{
    // roots of all reduced forms of one discriminant plus some translates
    std::vector<QuadraticIrrational> sample;
    for (auto const & f : oracle::reduced_forms(316))
        sample.push_back(QuadraticIrrational(-f.b, 1, 2 * f.a, Integer(316)));
    for (std::size_t i = 0; i < 6; ++i)
        sample.push_back(QuadraticIrrational(sample[i].value() + Integer(i + 1)));
    for (auto const & x : sample) {
        EXPECT_TRUE(gl2z_equivalent(x, x));
        for (auto const & y : sample) {
            bool xy = gl2z_equivalent(x, y);
            EXPECT_EQ(xy, gl2z_equivalent(y, x));
            if (!xy)
                continue;
            for (auto const & z : sample)
                if (gl2z_equivalent(y, z)) {
                    EXPECT_TRUE(gl2z_equivalent(x, z));
                }
        }
    }
}
