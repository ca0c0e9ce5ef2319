#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qde/lattice.hpp"
#include "qde/parse.hpp"

using namespace qde;

TEST(EndomorphismRing, SpotValues)
{
    auto golden = parse_theta("(1+sqrt(5))/2");
    auto p = minimal_polynomial(golden.value());
    EXPECT_EQ(p.A, 1);
    EXPECT_EQ(p.B, -1);
    EXPECT_EQ(p.C, -1);
    EXPECT_EQ(endomorphism_ring(golden), QuadraticOrder(5, 1));

    auto r8 = parse_theta("sqrt(8)");
    auto q = minimal_polynomial(r8.value());
    EXPECT_EQ(q.A, 1);
    EXPECT_EQ(q.B, 0);
    EXPECT_EQ(q.C, -8);
    EXPECT_EQ(q.discriminant(), 32);
    EXPECT_EQ(endomorphism_ring(r8), QuadraticOrder(2, 2));

    EXPECT_EQ(endomorphism_ring(parse_theta("sqrt(2)")), QuadraticOrder(2, 1));
    EXPECT_EQ(endomorphism_ring(parse_theta("sqrt(5)")), QuadraticOrder(5, 2));
    // scaling by an integer shrinks the order: 3 sqrt(2) has conductor 3
    EXPECT_EQ(endomorphism_ring(parse_theta("3*sqrt(2)")), QuadraticOrder(2, 3));
    // translation by an integer does not change it
    EXPECT_EQ(endomorphism_ring(parse_theta("7+sqrt(2)")), QuadraticOrder(2, 1));
}

TEST(EndomorphismRing, FormAndRootAreInverse)
{
    for (auto const & f : oracle::reduced_forms(1365)) {
        auto t = root_of(f);
        EXPECT_EQ(form_of(t), f);
        EXPECT_EQ(endomorphism_ring(t).discriminant(), 1365);
    }
}

TEST(QuadraticOrder, Validation)
{
    EXPECT_EQ(QuadraticOrder(5, 2).discriminant(), 20);
    EXPECT_EQ(QuadraticOrder(2, 3).discriminant(), 72);
    EXPECT_EQ(QuadraticOrder::from_discriminant(72), QuadraticOrder(2, 3));
    EXPECT_THROW(QuadraticOrder(4, 1), domain_error);
    EXPECT_THROW(QuadraticOrder(5, 0), domain_error);
    EXPECT_THROW(QuadraticOrder::from_discriminant(23), domain_error);
    EXPECT_THROW(QuadraticOrder::from_discriminant(16), domain_error);
}

TEST(NormalizePseudoLattice, SpotValues)
{
    auto theta = parse_theta("(1+sqrt(5))/2").value();
    auto one = FieldElement::rational(1, 1, 5);
    PseudoLattice expected({one, theta});

    EXPECT_EQ(normalize_pseudolattice({theta, theta * theta}), expected);
    EXPECT_EQ(normalize_pseudolattice({Integer(2) * one, Integer(2) * theta}), expected);
    EXPECT_THROW(normalize_pseudolattice({one, theta, theta + Integer(1)}), domain_error);
    EXPECT_THROW(normalize_pseudolattice({FieldElement::rational(0, 1, 5), theta}), domain_error);
    EXPECT_THROW(normalize_pseudolattice({}), domain_error);
    EXPECT_THROW(normalize_pseudolattice({one, parse_theta("sqrt(2)").value()}), domain_error);
    EXPECT_EQ(normalize_pseudolattice({theta}).rank(), 1u);
}

TEST(NormalizePseudoLattice, IdempotentAndScaleInvariant)
{
    std::vector<FieldElement> scalars{FieldElement(3, -2, 7, 6), FieldElement::rational(-5, 3, 6),
                                      FieldElement(0, 1, 1, 6), FieldElement(11, 4, 1, 6)};
    std::vector<std::vector<FieldElement>> gens{
        {FieldElement::rational(1, 1, 6), FieldElement(1, 1, 2, 6)},
        {FieldElement(2, 1, 1, 6), FieldElement(-1, 3, 5, 6)},
        {FieldElement(4, -1, 3, 6)},
    };
    for (auto const & g : gens) {
        auto n = normalize_pseudolattice(g);
        EXPECT_EQ(n.generators().front(), FieldElement::rational(1, 1, 6));
        EXPECT_EQ(normalize_pseudolattice(n.generators()), n);
        for (auto const & s : scalars) {
            std::vector<FieldElement> scaled;
            for (auto const & x : g)
                scaled.push_back(s * x);
            EXPECT_EQ(normalize_pseudolattice(scaled), n);
        }
    }
}

TEST(CompanionTori, SpotValues)
{
    auto c5 = companion_tori(QuadraticOrder(5, 1));
    ASSERT_EQ(c5.size(), 1u);
    EXPECT_EQ(c5[0], parse_theta("(-1+sqrt(5))/2"));

    auto c10 = companion_tori(QuadraticOrder(10, 1));
    ASSERT_EQ(c10.size(), 2u);
    EXPECT_FALSE(gl2z_equivalent(c10[0], c10[1]));

    EXPECT_EQ(companion_tori(QuadraticOrder(2, 1)).size(), 1u);
    EXPECT_THROW(companion_tori(QuadraticOrder(10, 1), Integer(39)), bound_error);
}

TEST(CompanionTori, InvariantsBelow2000)
{
    for (long long d = 5; d < 2000; ++d) {
        if (!(d % 4 == 0 || d % 4 == 1) || is_square(Integer(d)))
            continue;
        auto order = QuadraticOrder::from_discriminant(d);
        auto thetas = companion_tori(order);
        EXPECT_EQ(Integer(thetas.size()), class_number_order(order)) << order;
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            EXPECT_EQ(endomorphism_ring(thetas[i]), order);
            // a * theta is an algebraic integer
            auto f = form_of(thetas[i]);
            EXPECT_GT(f.a, 0);
            EXPECT_TRUE(is_algebraic_integer(f.a * thetas[i].value()));
            EXPECT_EQ(companion_index(thetas[i]), i);
            for (std::size_t j = i + 1; j < thetas.size(); ++j)
                EXPECT_FALSE(gl2z_equivalent(thetas[i], thetas[j])) << order;
        }
    }
}
