#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "cartan_forge/analysis.hpp"
#include "cartan_forge/reflection.hpp"
#include "cartan_forge/registry.hpp"

namespace cf = cartan_forge;

namespace {

cf::BaseState reflect(const cf::BaseState& s, int pivot) { return cf::odd_reflect(s, cf::build(s.cartan), pivot); }

cf::ConcreteCartan named(const std::string& name) { return cf::instantiate(cf::builtin(name)); }

// (weight in seed coordinates) -> (parity, isotropic)
using RootTable = std::map<std::vector<int>, std::pair<int, int>>;

RootTable roots_in_seed_coordinates(const cf::BaseState& s) {
    RootTable out;
    const auto r = cf::root_report(cf::build(s.cartan));
    const std::size_t n = s.cartan.n();
    for (const auto& e : r.entries) {
        std::vector<int> v(n, 0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                v[l] += e.weight.k[j] * s.simple_roots[j][l];
        out[v] = {e.parity, e.isotropic};
    }
    return out;
}

cf::ConcreteCartan relabeled(const cf::ConcreteCartan& cc, const std::vector<std::size_t>& perm,
                             const std::vector<cf::Residue>& scale) {
    cf::ConcreteCartan out = cc;
    for (std::size_t i = 0; i < cc.n(); ++i) {
        out.parities[i] = cc.parities[perm[i]];
        for (std::size_t j = 0; j < cc.n(); ++j)
            out.a(i, j) = cc.field.mul(scale[i], cc.a(perm[i], perm[j]));
    }
    return out;
}

} // namespace

TEST(Reflect, Brj25AtFirstRoot) {
    const auto s = reflect(cf::BaseState::seed(named("brj(2;5)#1")), 0);
    EXPECT_EQ(s.simple_roots, (std::vector<std::vector<int>>{{-1, 0}, {1, 1}}));
    EXPECT_EQ(s.chain, (std::vector<int>{0}));
    EXPECT_EQ(s.cartan.parities, (std::vector<int>{1, 0}));
}

TEST(Reflect, G23KeepsSuperdimension) {
    const auto cc = named("g(2,3)#2");
    std::size_t i = 0;
    while (!cf::reflectable(cc, i))
        ++i;
    ASSERT_LT(i, cc.n());
    const auto s = reflect(cf::BaseState::seed(cc), static_cast<int>(i));
    EXPECT_EQ(cf::root_report(cf::build(s.cartan)).sdim, (cf::SdimPair{12, 14}));
}

TEST(Reflect, Errors) {
    const auto cc = named("brj(2;5)#1");
    const auto m = cf::build(cc);
    const auto s = cf::BaseState::seed(cc);
    try {
        cf::odd_reflect(s, m, 1); // odd but not isotropic
        FAIL();
    } catch (const cf::Error& e) {
        EXPECT_EQ(e.code(), cf::Errc::precondition);
    }
    try {
        cf::odd_reflect(s, m, 5);
        FAIL();
    } catch (const cf::Error& e) {
        EXPECT_EQ(e.code(), cf::Errc::out_of_range);
    }
    try {
        cf::odd_reflect(s, cf::build(named("brj(2;3)#1")), 0);
        FAIL();
    } catch (const cf::Error& e) {
        EXPECT_EQ(e.code(), cf::Errc::invalid_argument);
    }
}

TEST(Properties, DoubleReflectionReturnsToTheSameClass) {
    for (const auto& spec : cf::builtin_catalog().specs()) {
        const auto cc = cf::instantiate(spec);
        const auto seed = cf::BaseState::seed(cc);
        for (std::size_t i = 0; i < cc.n(); ++i) {
            if (!cf::reflectable(cc, i))
                continue;
            const auto once = reflect(seed, static_cast<int>(i));
            ASSERT_TRUE(cf::reflectable(once.cartan, i)) << spec.name;
            const auto twice = reflect(once, static_cast<int>(i));
            EXPECT_EQ(cf::canonical_form(twice.cartan), cf::canonical_form(cc)) << spec.name << " at " << i + 1;
            for (std::size_t j = 0; j < cc.n(); ++j) {
                std::vector<int> unit(cc.n(), 0);
                unit[j] = 1;
                if (j == i || cc.a(i, j) == 0) {
                    EXPECT_EQ(twice.simple_roots[j], unit) << spec.name;
                }
            }
        }
    }
}

// The reflected base sees the same roots: alpha_i turns into -alpha_i, every
// other positive root keeps its parity and isotropy.
TEST(Properties, RootsAreTransported) {
    for (const auto& spec : cf::builtin_catalog().specs()) {
        const auto cc = cf::instantiate(spec);
        if (cc.n() > 4)
            continue;
        const auto seed = cf::BaseState::seed(cc);
        const auto before = roots_in_seed_coordinates(seed);
        for (std::size_t i = 0; i < cc.n(); ++i) {
            if (!cf::reflectable(cc, i))
                continue;
            auto expected = before;
            std::vector<int> alpha(cc.n(), 0);
            alpha[i] = 1;
            const auto self = expected.at(alpha);
            expected.erase(alpha);
            alpha[i] = -1;
            expected[alpha] = self;
            EXPECT_EQ(roots_in_seed_coordinates(reflect(seed, static_cast<int>(i))), expected)
                << spec.name << " at " << i + 1;
        }
    }
}

TEST(Canonical, InvariantUnderRelabelingAndRowScaling) {
    std::mt19937 rng(5);
    for (const char* name : {"g(3,3)#7", "el(5;3)#7", "bgl(4;a)", "g(4,6)#2", "e(6,6)#cat"}) {
        const auto cc = named(name);
        const auto key = cf::canonical_form(cc);
        const auto& f = cc.field;
        std::uniform_int_distribution<int> unit(1, f.order() - 1);
        for (int t = 0; t < 10; ++t) {
            std::vector<std::size_t> perm(cc.n());
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<cf::Residue> scale(cc.n());
            for (auto& s : scale)
                s = static_cast<cf::Residue>(unit(rng));
            ASSERT_EQ(cf::canonical_form(relabeled(cc, perm, scale)), key) << name;
        }
    }
}

TEST(Canonical, Idempotent) {
    for (const char* name : {"brj(2;3)#1", "g(8,3)#13", "bgl(3;a)", "br(3)"}) {
        const auto cc = named(name);
        const auto key = cf::canonical_form(cc);
        cf::ConcreteCartan back = cc;
        back.parities = key.parities;
        for (std::size_t i = 0; i < cc.n(); ++i)
            for (std::size_t j = 0; j < cc.n(); ++j)
                back.a(i, j) = key.entries[i * cc.n() + j];
        EXPECT_EQ(cf::canonical_form(back), key) << name;
        EXPECT_EQ(key.p, cc.field.characteristic());
    }
}

TEST(Canonical, SeparatesDifferentParities) {
    const auto f = cf::Field::make(5, 1);
    const auto a = cf::make_cartan("a", f, {{2, -1}, {-1, 2}}, {0, 0});
    const auto b = cf::make_cartan("b", f, {{2, -1}, {-1, 2}}, {1, 0});
    EXPECT_NE(cf::canonical_form(a), cf::canonical_form(b));
}

TEST(Enumerate, OneByOneHasOneClass) {
    const auto g = cf::enumerate_bases(cf::make_cartan("a1", cf::Field::make(5, 1), {{2}}, {0}));
    EXPECT_EQ(g.nodes.size(), 1u);
    EXPECT_TRUE(g.edges.empty());
    EXPECT_FALSE(g.limit_hit);
    EXPECT_THROW(cf::enumerate_bases(cf::make_cartan("a1", cf::Field::make(5, 1), {{2}}, {0}), 0), cf::Error);
}

TEST(Properties, EveryClassKeepsTheSuperdimension) {
    for (const char* name : {"g(2,3)#2", "brj(2;3)#1", "brj(2;5)#1", "g(3,6)#2", "el(5;3)#7", "bgl(4;a)"}) {
        const auto cc = named(name);
        const auto sdim = cf::root_report(cf::build(cc)).sdim;
        const auto g = cf::enumerate_bases(cc, 64);
        EXPECT_FALSE(g.limit_hit) << name;
        for (const auto& nd : g.nodes)
            EXPECT_EQ(cf::root_report(cf::build(nd.state.cartan)).sdim, sdim) << name << " " << nd.key.str();
        // reflection is an involution, so every edge can be walked back
        for (const auto& e : g.edges) {
            const bool back = std::any_of(g.edges.begin(), g.edges.end(), [&e](const cf::OrbitEdge& r) {
                return r.from == e.to && r.to == e.from;
            });
            EXPECT_TRUE(back) << name << " " << e.from << "->" << e.to;
        }
    }
}

TEST(Enumerate, LimitIsReported) {
    const auto g = cf::enumerate_bases(named("g(3,6)#2"), 1);
    EXPECT_EQ(g.nodes.size(), 1u);
    EXPECT_TRUE(g.limit_hit);
}

TEST(Output, JsonAndDot) {
    const auto g = cf::enumerate_bases(named("brj(2;5)#1"));
    const auto j = cf::to_json(g);
    EXPECT_EQ(j["nodes"].size(), g.nodes.size());
    EXPECT_EQ(j["edges"].size(), g.edges.size());
    EXPECT_EQ(j["nodes"][0]["chain"].size(), 0u);
    EXPECT_EQ(j["nodes"][0]["parities"], "11");
    EXPECT_EQ(j["nodes"][0]["matrix"], "0,4;3,1");
    EXPECT_FALSE(j["limit_hit"].get<bool>());
    ASSERT_GE(g.edges.size(), 1u);
    EXPECT_EQ(j["edges"][0]["pivot"], 1);

    const auto dot = cf::to_dot(g);
    EXPECT_EQ(dot.rfind("digraph reflections {", 0), 0u);
    std::size_t arrows = 0;
    for (auto pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 1))
        ++arrows;
    EXPECT_EQ(arrows, g.edges.size());
}

// Breadth-first to depth 4 with canonical dedup, over the whole catalog.
TEST(Properties, FourReflectionsKeepTheInvariants) {
    for (const auto& spec : cf::builtin_catalog().specs()) {
        const auto cc = cf::instantiate(spec);
        const auto r0 = cf::root_report(cf::build(cc));
        std::set<cf::CanonicalKey> seen{cf::canonical_form(cc)};
        std::vector<cf::BaseState> layer{cf::BaseState::seed(cc)};
        for (int depth = 1; depth <= 4 && !layer.empty(); ++depth) {
            std::vector<cf::BaseState> next;
            for (const auto& s : layer) {
                const auto m = cf::build(s.cartan);
                for (std::size_t i = 0; i < cc.n(); ++i) {
                    if (!cf::reflectable(s.cartan, i))
                        continue;
                    auto t = cf::odd_reflect(s, m, static_cast<int>(i));
                    if (!seen.insert(cf::canonical_form(t.cartan)).second)
                        continue;
                    const auto r = cf::root_report(cf::build(t.cartan));
                    ASSERT_EQ(r.sdim, r0.sdim) << spec.name << " depth " << depth;
                    ASSERT_EQ(r.derived, r0.derived) << spec.name << " depth " << depth;
                    ASSERT_EQ(r.n_positive, r0.n_positive) << spec.name << " depth " << depth;
                    next.push_back(std::move(t));
                }
            }
            layer = std::move(next);
        }
    }
}
