#include <gtest/gtest.h>

#include <map>
#include <string>

#include "cartan_forge/builder.hpp"
#include "oracle.hpp"

namespace cf = cartan_forge;

namespace {

std::map<std::vector<int>, int> builder_multiplicities(const cf::ConcreteCartan& cc, int max_height) {
    cf::Limits lim;
    lim.max_height = max_height;
    lim.max_mult = 1000;
    lim.truncate = true;
    const auto m = cf::build(cc, lim);
    std::map<std::vector<int>, int> out;
    for (const auto& sp : m.spaces)
        out[sp.weight.k] = sp.multiplicity();
    return out;
}

std::string describe(const cf::ConcreteCartan& cc) {
    std::string s = cc.field.name() + " [";
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            s += std::to_string(cc.a(i, j)) + (i == 1 && j == 1 ? "" : ",");
    return s + "] parities " + std::to_string(cc.parities[0]) + std::to_string(cc.parities[1]);
}

} // namespace

TEST(Oracle, KnownSmallCases) {
    const cf::Field f5 = cf::Field::make(5, 1);
    // sl(3): 3 positive roots
    auto sl3 = oracle::FreeWordOracle(cf::make_cartan("sl3", f5, {{2, -1}, {-1, 2}}, {0, 0})).multiplicities(8);
    EXPECT_EQ(sl3.size(), 3u);
    // sl(1|2) with isotropic odd simple root: roots a1, a2, a1+a2
    auto sl12 = oracle::FreeWordOracle(cf::make_cartan("sl12", f5, {{0, 1}, {-1, 2}}, {1, 0})).multiplicities(8);
    EXPECT_EQ(sl12.size(), 3u);
}

// All 2x2 matrices with entries in {0,+-1,+-2} over GF(3) and GF(5), all parity
// vectors: the builder and the free-word oracle agree on every multiplicity up
// to height 8.
TEST(Oracle, AgreesWithBuilderOnAllSmallMatrices) {
    const int values[] = {0, 1, -1, 2, -2};
    int cases = 0;
    for (int p : {3, 5}) {
        const cf::Field f = cf::Field::make(p, 1);
        for (int a : values)
            for (int b : values)
                for (int c : values)
                    for (int d : values)
                        for (int par = 0; par < 4; ++par) {
                            const auto cc = cf::make_cartan("m", f, {{a, b}, {c, d}}, {par & 1, (par >> 1) & 1});
                            const auto expected = oracle::FreeWordOracle(cc).multiplicities(8);
                            const auto actual = builder_multiplicities(cc, 8);
                            ASSERT_EQ(actual, expected) << describe(cc);
                            ++cases;
                        }
    }
    EXPECT_EQ(cases, 2 * 625 * 4);
}
