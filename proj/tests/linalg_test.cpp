#include <gtest/gtest.h>

#include <random>

#include "cartan_forge/linalg.hpp"

namespace cf = cartan_forge;

namespace {

cf::Matrix from_rows(const cf::Field& f, const std::vector<std::vector<int>>& rows) {
    cf::Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(i, j) = f.lift_raw(rows[i][j]);
    return m;
}

cf::Vec apply(const cf::Field& f, const cf::Matrix& m, const cf::Vec& v) {
    cf::Vec out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
    return out;
}

} // namespace

TEST(Rank, Examples) {
    const auto f3 = cf::Field::make(3, 1);
    EXPECT_EQ(cf::rank(f3, from_rows(f3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 3u);
    EXPECT_EQ(cf::rank(f3, from_rows(f3, {{0, 0, -1}, {0, 0, -1}, {-1, -1, 0}})), 2u);
    EXPECT_EQ(cf::rank(f3, cf::Matrix(2, 4)), 0u);
}

TEST(Rank, EqualsRankOfTransposeOnRandomMatrices) {
    std::mt19937 rng(7);
    for (int p : {2, 3, 5, 7})
        for (int k : {1, 2}) {
            const auto f = cf::Field::make(p, k);
            std::uniform_int_distribution<int> pick(0, f.order() - 1), size(1, 32), sparsity(0, 3);
            for (int trial = 0; trial < 20; ++trial) {
                cf::Matrix m(static_cast<std::size_t>(size(rng)), static_cast<std::size_t>(size(rng)));
                const int zeros = sparsity(rng);
                for (std::size_t i = 0; i < m.rows(); ++i)
                    for (std::size_t j = 0; j < m.cols(); ++j)
                        m(i, j) = sparsity(rng) < zeros ? 0 : static_cast<cf::Residue>(pick(rng));
                ASSERT_EQ(cf::rank(f, m), cf::rank(f, m.transposed()));
            }
        }
}

TEST(Kernel, VectorsAreAnnihilatedAndCountMatches) {
    std::mt19937 rng(11);
    const auto f = cf::Field::make(5, 1);
    std::uniform_int_distribution<int> pick(0, 4), size(1, 12);
    for (int trial = 0; trial < 50; ++trial) {
        cf::Matrix m(static_cast<std::size_t>(size(rng)), static_cast<std::size_t>(size(rng)));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) = static_cast<cf::Residue>(pick(rng) < 3 ? 0 : pick(rng));
        const auto ker = cf::kernel(f, m);
        ASSERT_EQ(ker.size() + cf::rank(f, m), m.cols());
        for (const auto& v : ker)
            ASSERT_EQ(apply(f, m, v), cf::Vec(m.rows(), 0));
    }
}

TEST(IncrementalBasis, CoordinatesReconstructOfferedVectors) {
    std::mt19937 rng(3);
    const auto f = cf::Field::make(7, 1);
    std::uniform_int_distribution<int> pick(0, 6);
    const std::size_t dim = 6;
    cf::IncrementalBasis ib(f, dim);
    std::vector<cf::Vec> accepted, offered;
    std::vector<cf::Vec> coords;
    for (int t = 0; t < 30; ++t) {
        cf::Vec v(dim);
        if (t % 3 == 2 && accepted.size() >= 2) {
            // deliberately dependent
            for (std::size_t i = 0; i < dim; ++i)
                v[i] = f.add(f.mul(2, accepted[0][i]), f.mul(5, accepted[1][i]));
        } else {
            for (auto& x : v)
                x = static_cast<cf::Residue>(pick(rng));
        }
        cf::Vec c;
        if (ib.offer(v, c))
            accepted.push_back(v);
        offered.push_back(v);
        coords.push_back(c);
    }
    EXPECT_LE(accepted.size(), dim);
    EXPECT_EQ(ib.size(), accepted.size());
    for (std::size_t t = 0; t < offered.size(); ++t) {
        cf::Vec sum(dim, 0);
        for (std::size_t m = 0; m < coords[t].size(); ++m)
            for (std::size_t i = 0; i < dim; ++i)
                sum[i] = f.add(sum[i], f.mul(coords[t][m], accepted[m][i]));
        ASSERT_EQ(sum, offered[t]) << t;
    }
}

TEST(IncrementalBasis, ZeroVectorIsNeverAccepted) {
    const auto f = cf::Field::make(3, 1);
    cf::IncrementalBasis ib(f, 3);
    cf::Vec c;
    EXPECT_FALSE(ib.offer(cf::Vec(3, 0), c));
    EXPECT_TRUE(c.empty());
    EXPECT_TRUE(ib.offer(cf::Vec{0, 1, 2}, c));
    EXPECT_EQ(c, (cf::Vec{1}));
}
