#pragma once

// Odd reflections, canonical keys of Cartan matrices up to relabeling and
// row rescaling, and bounded exploration of the reflection orbit.

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartan_forge/builder.hpp"
#include "cartan_forge/catalog.hpp"

namespace cartan_forge {

struct BaseState {
    ConcreteCartan cartan;
    std::vector<std::vector<int>> simple_roots; // in the seed base's coordinates
    std::vector<int> chain;                     // pivots applied so far

    static BaseState seed(const ConcreteCartan& cc) {
        BaseState s;
        s.cartan = cc;
        const std::size_t n = cc.n();
        s.simple_roots.assign(n, std::vector<int>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            s.simple_roots[i][i] = 1;
        return s;
    }
};

// Rescales each row: zero diagonal -> first nonzero entry 1; otherwise the
// diagonal becomes 2 for even vertices (p != 2) and 1 for the rest.
inline void normalize_rows(ConcreteCartan& cc) {
    const Field& f = cc.field;
    const std::size_t n = cc.n();
    for (std::size_t i = 0; i < n; ++i) {
        Residue pivot = 0, target = 1;
        if (cc.a(i, i) != 0) {
            pivot = cc.a(i, i);
            if (cc.parities[i] == 0 && f.characteristic() != 2)
                target = 2;
        } else {
            for (std::size_t j = 0; j < n && !pivot; ++j)
                pivot = cc.a(i, j);
        }
        if (!pivot)
            continue;
        const Residue s = f.div(target, pivot);
        for (std::size_t j = 0; j < n; ++j)
            cc.a(i, j) = f.mul(cc.a(i, j), s);
    }
}

inline bool reflectable(const ConcreteCartan& cc, std::size_t i) {
    return i < cc.n() && cc.parities[i] == 1 && cc.a(i, i) == 0;
}

// `model` must be built from state.cartan.
inline BaseState odd_reflect(const BaseState& state, const AlgebraModel& model, int pivot) {
    const ConcreteCartan& cc = state.cartan;
    const std::size_t n = cc.n();
    if (pivot < 0 || static_cast<std::size_t>(pivot) >= n)
        throw Error(Errc::out_of_range, "reflection index " + std::to_string(pivot + 1) + " out of range");
    const std::size_t i = static_cast<std::size_t>(pivot);
    if (!reflectable(cc, i))
        throw Error(Errc::precondition, "simple root " + std::to_string(pivot + 1) + " is not odd isotropic");
    if (model.cartan.a != cc.a || model.cartan.parities != cc.parities)
        throw Error(Errc::invalid_argument, "model does not belong to this base");

    const Field& f = cc.field;
    BracketEngine eng(model);

    // New simple roots in the current base's coordinates, and their generators.
    std::vector<std::vector<int>> local(n, std::vector<int>(n, 0));
    std::vector<Element> e_new(n, Element(n));
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) {
            local[j][i] = -1;
            e_new[j].neg[static_cast<int>(i)] = 1;
        } else if (cc.a(i, j) != 0 || cc.a(j, i) != 0) {
            local[j][j] = 1;
            local[j][i] = 1;
            e_new[j] = eng.bracket(ElementRef::positive(static_cast<int>(j)), ElementRef::positive(static_cast<int>(i)));
        } else {
            local[j][j] = 1;
            e_new[j].pos[static_cast<int>(j)] = 1;
        }
    }

    BaseState out;
    out.cartan.name = cc.name;
    out.cartan.field = f;
    out.cartan.bindings = cc.bindings;
    out.cartan.a = Matrix(n, n);
    out.cartan.parities.assign(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        int par = 0;
        for (std::size_t m = 0; m < n; ++m)
            par += std::abs(local[j][m]) * cc.parities[m];
        out.cartan.parities[j] = par & 1;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const Element h = eng.bracket(e_new[j], eng.omega(e_new[j]));
        if (!h.pos.empty() || !h.neg.empty() || h.cartan_zero())
            throw Error(Errc::precondition, "reflected generator " + std::to_string(j + 1) + " degenerates");
        for (std::size_t k = 0; k < n; ++k) {
            // alpha'_k(h'_j) = sum_m c_m sum_l k_l A_{m l}
            Residue v = 0;
            for (std::size_t m = 0; m < n; ++m) {
                if (!h.cartan[m])
                    continue;
                Residue s = 0;
                for (std::size_t l = 0; l < n; ++l)
                    if (local[k][l])
                        s = f.add(s, f.mul(f.lift_raw(local[k][l]), cc.a(m, l)));
                v = f.add(v, f.mul(h.cartan[m], s));
            }
            out.cartan.a(j, k) = v;
        }
    }
    normalize_rows(out.cartan);

    out.simple_roots.assign(n, std::vector<int>(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t l = 0; l < n; ++l)
                out.simple_roots[j][l] += local[j][m] * state.simple_roots[m][l];
    out.chain = state.chain;
    out.chain.push_back(pivot);
    return out;
}

struct CanonicalKey {
    int p = 0;
    int k = 1;
    std::vector<int> parities;
    std::vector<Residue> entries; // row-major
    friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

    std::string str() const {
        std::string s;
        for (int b : parities)
            s += static_cast<char>('0' + b);
        s += ':';
        for (std::size_t i = 0; i < entries.size(); ++i)
            s += (i ? "," : "") + std::to_string(entries[i]);
        return s;
    }
};

// Minimum over all relabelings of (parities, row-normalized entries).
inline CanonicalKey canonical_form(const ConcreteCartan& cc) {
    const Field& f = cc.field;
    const std::size_t n = cc.n();
    const bool char2 = f.characteristic() == 2;

    // Normalized entry (r, c) of the relabeled matrix: row perm[r], column perm[c].
    auto scale_of = [&](const std::vector<std::size_t>& perm, std::size_t r) -> Residue {
        const std::size_t i = perm[r];
        if (cc.a(i, i) != 0) {
            const Residue target = (cc.parities[i] == 0 && !char2) ? 2 : 1;
            return f.div(target, cc.a(i, i));
        }
        for (std::size_t c = 0; c < n; ++c)
            if (cc.a(i, perm[c]) != 0)
                return f.inv(cc.a(i, perm[c]));
        return 1;
    };

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    // Zeros-first parity order is forced; only permutations within parity classes matter.
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return cc.parities[a] < cc.parities[b]; });
    const std::size_t n_even = static_cast<std::size_t>(std::count(cc.parities.begin(), cc.parities.end(), 0));

    CanonicalKey best;
    best.p = f.characteristic();
    best.k = f.degree();
    for (std::size_t r = 0; r < n; ++r)
        best.parities.push_back(cc.parities[perm[r]]);
    bool have = false;
    std::vector<Residue> scales(n);

    auto visit = [&]() {
        for (std::size_t r = 0; r < n; ++r)
            scales[r] = scale_of(perm, r);
        if (!have) {
            best.entries.resize(n * n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    best.entries[r * n + c] = f.mul(scales[r], cc.a(perm[r], perm[c]));
            have = true;
            return;
        }
        std::size_t pos = 0;
        for (; pos < n * n; ++pos) {
            const Residue v = f.mul(scales[pos / n], cc.a(perm[pos / n], perm[pos % n]));
            if (v != best.entries[pos]) {
                if (v > best.entries[pos])
                    return;
                break;
            }
        }
        if (pos == n * n)
            return;
        for (; pos < n * n; ++pos)
            best.entries[pos] = f.mul(scales[pos / n], cc.a(perm[pos / n], perm[pos % n]));
    };

    // Iterate the product of permutations of the even block and the odd block.
    auto even_begin = perm.begin(), even_end = perm.begin() + static_cast<std::ptrdiff_t>(n_even);
    auto odd_begin = even_end, odd_end = perm.end();
    std::sort(even_begin, even_end);
    std::sort(odd_begin, odd_end);
    do {
        do {
            visit();
        } while (std::next_permutation(odd_begin, odd_end));
    } while (std::next_permutation(even_begin, even_end));
    if (n == 0)
        best.entries.clear();
    return best;
}

struct OrbitNode {
    CanonicalKey key;
    BaseState state; // witness
};

struct OrbitEdge {
    int from = 0;
    int to = 0;
    int pivot = 0;
    friend bool operator==(const OrbitEdge&, const OrbitEdge&) = default;
};

struct OrbitGraph {
    std::vector<OrbitNode> nodes;
    std::vector<OrbitEdge> edges;
    bool limit_hit = false;
};

// Breadth-first search over odd reflections, deduplicated by canonical key.
inline OrbitGraph enumerate_bases(const ConcreteCartan& cc, int limit = 512, const Limits& build_limits = {}) {
    if (limit < 1)
        throw Error(Errc::invalid_argument, "enumeration limit must be at least 1");
    OrbitGraph g;
    std::map<CanonicalKey, int> seen;
    BaseState s0 = BaseState::seed(cc);
    CanonicalKey k0 = canonical_form(cc);
    seen[k0] = 0;
    g.nodes.push_back({k0, s0});
    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        const BaseState state = g.nodes[cur].state;
        const AlgebraModel model = build(state.cartan, build_limits);
        for (std::size_t i = 0; i < state.cartan.n(); ++i) {
            if (!reflectable(state.cartan, i))
                continue;
            BaseState next = odd_reflect(state, model, static_cast<int>(i));
            CanonicalKey key = canonical_form(next.cartan);
            auto it = seen.find(key);
            int to;
            if (it != seen.end()) {
                to = it->second;
            } else if (static_cast<int>(g.nodes.size()) >= limit) {
                g.limit_hit = true;
                continue;
            } else {
                to = static_cast<int>(g.nodes.size());
                seen.emplace(key, to);
                g.nodes.push_back({std::move(key), std::move(next)});
                queue.push_back(to);
            }
            g.edges.push_back({cur, to, static_cast<int>(i)});
        }
    }
    return g;
}

inline std::string matrix_string(const ConcreteCartan& cc) {
    std::string s;
    for (std::size_t i = 0; i < cc.n(); ++i) {
        if (i)
            s += ';';
        for (std::size_t j = 0; j < cc.n(); ++j)
            s += (j ? "," : "") + cc.field.format(cc.a(i, j));
    }
    return s;
}

inline std::string parity_string(const std::vector<int>& parities) {
    std::string s;
    for (int b : parities)
        s += static_cast<char>('0' + b);
    return s;
}

inline nlohmann::ordered_json to_json(const OrbitGraph& g) {
    nlohmann::ordered_json j;
    auto nodes = nlohmann::ordered_json::array();
    for (const auto& nd : g.nodes) {
        nlohmann::ordered_json o;
        o["key"] = nd.key.str();
        o["matrix"] = matrix_string(nd.state.cartan);
        o["parities"] = parity_string(nd.state.cartan.parities);
        auto chain = nlohmann::ordered_json::array();
        for (int c : nd.state.chain)
            chain.push_back(c + 1);
        o["chain"] = std::move(chain);
        o["simple_roots"] = nd.state.simple_roots;
        nodes.push_back(std::move(o));
    }
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"pivot", e.pivot + 1}});
    j["nodes"] = std::move(nodes);
    j["edges"] = std::move(edges);
    j["limit_hit"] = g.limit_hit;
    return j;
}

inline std::string to_dot(const OrbitGraph& g) {
    std::ostringstream o;
    o << "digraph reflections {\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        o << "  n" << i << " [label=\"" << parity_string(g.nodes[i].state.cartan.parities) << "\\n"
          << matrix_string(g.nodes[i].state.cartan) << "\"];\n";
    for (const auto& e : g.edges)
        o << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.pivot + 1 << "\"];\n";
    o << "}\n";
    return o.str();
}

} // namespace cartan_forge
