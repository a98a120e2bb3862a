#include <gtest/gtest.h>

#include <random>

#include "cartan_forge/field.hpp"

namespace cf = cartan_forge;

TEST(Field, MakePrimeField) {
    const auto f = cf::Field::make(5, 1);
    EXPECT_EQ(f.name(), "GF(5)");
    EXPECT_EQ(f.order(), 5);
    EXPECT_TRUE(f.modulus().empty());
}

TEST(Field, Gf4UsesXSquaredPlusXPlusOne) {
    const auto f = cf::Field::make(2, 2);
    EXPECT_EQ(f.order(), 4);
    EXPECT_EQ(f.modulus(), (std::vector<int>{1, 1}));
}

TEST(Field, QuadraticModuliAreSmallestIrreducible) {
    EXPECT_EQ(cf::Field::make(3, 2).modulus(), (std::vector<int>{1, 0}));
    EXPECT_EQ(cf::Field::make(5, 2).modulus(), (std::vector<int>{1, 1}));
    EXPECT_EQ(cf::Field::make(7, 2).modulus(), (std::vector<int>{1, 0}));
}

TEST(Field, RejectsBadParameters) {
    try {
        cf::Field::make(4, 1);
        FAIL();
    } catch (const cf::Error& e) {
        EXPECT_EQ(e.code(), cf::Errc::non_prime);
    }
    try {
        cf::Field::make(3, 3);
        FAIL();
    } catch (const cf::Error& e) {
        EXPECT_EQ(e.code(), cf::Errc::unsupported_degree);
    }
    try {
        cf::Field::make(11, 1);
        FAIL();
    } catch (const cf::Error& e) {
        EXPECT_EQ(e.code(), cf::Errc::invalid_argument);
    }
}

TEST(Field, Examples) {
    const auto f5 = cf::Field::make(5, 1);
    EXPECT_EQ(f5.inv(f5.elem(3)), f5.elem(2));

    const auto f4 = cf::Field::make(2, 2);
    const auto w = f4.elem(f4.generator());
    EXPECT_EQ(f4.mul(w, w), f4.add(w, f4.one()));
    EXPECT_EQ(f4.format(f4.mul(w, w)), "1*w+1");

    const auto f3 = cf::Field::make(3, 1);
    EXPECT_EQ(f3.neg(f3.neg(f3.one())), f3.one());
    EXPECT_EQ(f3.neg(f3.lift(-1)), f3.one());
}

TEST(Field, LiftInteger) {
    EXPECT_EQ(cf::Field::make(5, 1).lift(-4).value, 1);
    EXPECT_EQ(cf::Field::make(3, 1).lift(-2).value, 1);
    EXPECT_EQ(cf::Field::make(2, 1).lift(2).value, 0);
    EXPECT_EQ(cf::Field::make(2, 2).lift(3).value, 1);
}

TEST(Field, Errors) {
    const auto f5 = cf::Field::make(5, 1);
    const auto f7 = cf::Field::make(7, 1);
    try {
        f5.inv(f5.zero());
        FAIL();
    } catch (const cf::Error& e) {
        EXPECT_EQ(e.code(), cf::Errc::division_by_zero);
    }
    try {
        f5.add(f5.one(), f7.one());
        FAIL();
    } catch (const cf::Error& e) {
        EXPECT_EQ(e.code(), cf::Errc::context_mismatch);
    }
    EXPECT_THROW(f5.elem(5), cf::Error);
}

TEST(Field, FormatAndParse) {
    const auto f9 = cf::Field::make(3, 2);
    for (int r = 0; r < 9; ++r) {
        const auto s = f9.format(static_cast<cf::Residue>(r));
        ASSERT_EQ(f9.parse(s), std::optional<cf::Residue>(static_cast<cf::Residue>(r))) << s;
    }
    EXPECT_EQ(f9.format(cf::Residue{4}), "1*w+1");
    EXPECT_EQ(f9.parse("w"), std::optional<cf::Residue>(3));
    EXPECT_EQ(f9.parse("2*w"), std::optional<cf::Residue>(6));
    EXPECT_EQ(f9.parse("w+2"), std::optional<cf::Residue>(5));
    EXPECT_EQ(f9.parse("-1"), std::optional<cf::Residue>(2));
    EXPECT_FALSE(f9.parse("x"));
    EXPECT_FALSE(cf::Field::make(5, 1).parse("w"));
    EXPECT_EQ(cf::Field::make(5, 1).format(cf::Residue{3}), "3");
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(FieldAxioms, HoldOnRandomSamples) {
    const auto [p, k] = GetParam();
    const auto f = cf::Field::make(p, k);
    std::mt19937 rng(1234u + static_cast<unsigned>(p * 16 + k));
    std::uniform_int_distribution<int> pick(0, f.order() - 1);
    for (int s = 0; s < 10000; ++s) {
        const auto a = f.elem(static_cast<cf::Residue>(pick(rng)));
        const auto b = f.elem(static_cast<cf::Residue>(pick(rng)));
        const auto c = f.elem(static_cast<cf::Residue>(pick(rng)));
        ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        ASSERT_EQ(f.add(a, b), f.add(b, a));
        ASSERT_EQ(f.mul(a, b), f.mul(b, a));
        ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        ASSERT_EQ(f.add(a, f.neg(a)), f.zero());
        ASSERT_EQ(f.mul(a, f.one()), a);
        if (a != f.zero()) {
            ASSERT_EQ(f.mul(a, f.inv(a)), f.one());
        }
    }
}

TEST_P(FieldAxioms, LiftIsOddUnderNegation) {
    const auto [p, k] = GetParam();
    const auto f = cf::Field::make(p, k);
    for (int z = -16; z <= 16; ++z)
        ASSERT_EQ(f.add(f.lift(z), f.lift(-z)), f.zero()) << z;
}

INSTANTIATE_TEST_SUITE_P(AllSupported, FieldAxioms,
                         ::testing::Values(std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}, std::pair{3, 2},
                                           std::pair{5, 1}, std::pair{5, 2}, std::pair{7, 1}, std::pair{7, 2}));
