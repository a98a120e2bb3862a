#pragma once

// Construction of the contragredient Lie (super)algebra g(A).
//
// The positive part is grown height by height. At each weight the candidate
// vectors are [e_i, v] for basis vectors v one step below and, in
// characteristic 2, squares v^[2] of odd basis vectors at half the weight.
// Lower heights are already radical-free, so a combination of candidates is
// zero in g(A) exactly when all of its lowerings ad f_j vanish. A greedy
// pivot pass over the stacked lowering vectors picks the basis and expresses
// every candidate in it.
//
// The negative part is never stored: it is the image of the positive part
// under the automorphism omega(e_i) = f_i, omega(f_i) = (-1)^{p_i} e_i,
// omega(h_i) = -h_i.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cartan_forge/catalog.hpp"
#include "cartan_forge/error.hpp"
#include "cartan_forge/field.hpp"
#include "cartan_forge/linalg.hpp"

namespace cartan_forge {

struct Weight {
    std::vector<int> k;

    int height() const noexcept {
        int h = 0;
        for (int c : k)
            h += c;
        return h;
    }
    bool nonnegative() const noexcept {
        return std::all_of(k.begin(), k.end(), [](int c) { return c >= 0; });
    }
    static Weight simple(std::size_t n, std::size_t i) {
        Weight w{std::vector<int>(n, 0)};
        w.k[i] = 1;
        return w;
    }
    Weight plus_simple(std::size_t i, int times = 1) const {
        Weight w = *this;
        w.k[i] += times;
        return w;
    }
    Weight operator+(const Weight& o) const {
        Weight w = *this;
        for (std::size_t i = 0; i < k.size(); ++i)
            w.k[i] += o.k[i];
        return w;
    }
    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < k.size(); ++i)
            s += (i ? "," : "") + std::to_string(k[i]);
        return s + ")";
    }
    friend auto operator<=>(const Weight&, const Weight&) = default;
};

struct Generator {
    int i = 0;
    friend bool operator==(const Generator&, const Generator&) = default;
};
struct Bracket {
    int i = 0;   // generator index
    int src = 0; // global basis id one step below
    friend bool operator==(const Bracket&, const Bracket&) = default;
};
struct Square {
    int src = 0; // odd global basis id at half weight (char 2)
    friend bool operator==(const Square&, const Square&) = default;
};
using Provenance = std::variant<Generator, Bracket, Square>;

struct BasisVector {
    Provenance provenance;
    int parity = 0;
    int space = 0; // index into AlgebraModel::spaces
    int local = 0; // position within the space's basis
    // lowering[j]: coordinates of [f_j, v] at weight - alpha_j; empty when that
    // weight is not a positive root. Generators keep these empty and lower
    // into the Cartan subalgebra instead.
    std::vector<Vec> lowering;
};

struct RootSpace {
    Weight weight;
    int parity = 0;
    std::vector<int> basis;       // global basis ids
    std::vector<Matrix> lowering; // per j: dim(weight - alpha_j) x multiplicity
    std::map<std::pair<int, int>, Vec> bracket_coords; // (i, src) -> coordinates of [e_i, src]
    std::map<int, Vec> square_coords;                  // src -> coordinates of src^[2]

    int multiplicity() const noexcept { return static_cast<int>(basis.size()); }
};

struct Limits {
    int max_height = 64;
    int max_mult = 16;
    bool truncate = false; // stop quietly at max_height instead of failing
};

struct AlgebraModel {
    ConcreteCartan cartan;
    std::vector<RootSpace> spaces; // ordered by (height, weight)
    std::vector<BasisVector> basis;
    std::map<Weight, int> index;
    int rank_a = 0;
    int dim_h = 0;
    Limits limits_used;
    bool truncated = false;

    std::size_t n() const noexcept { return cartan.n(); }
    const Field& field() const noexcept { return cartan.field; }

    const RootSpace* space(const Weight& w) const {
        auto it = index.find(w);
        return it == index.end() ? nullptr : &spaces[it->second];
    }
    int space_id(const Weight& w) const {
        auto it = index.find(w);
        return it == index.end() ? -1 : it->second;
    }
    const Weight& weight_of(int basis_id) const { return spaces[basis[basis_id].space].weight; }

    int parity_of(const Weight& w) const {
        int s = 0;
        for (std::size_t i = 0; i < w.k.size(); ++i)
            s += w.k[i] * cartan.parities[i];
        return s & 1;
    }

    // w(h_i) = sum_m k_m A_{i m}
    Residue eval(const Weight& w, std::size_t i) const {
        const Field& f = field();
        Residue r = 0;
        for (std::size_t m = 0; m < w.k.size(); ++m)
            if (w.k[m] != 0)
                r = f.add(r, f.mul(f.lift_raw(w.k[m]), cartan.a(i, m)));
        return r;
    }

    std::size_t positive_dimension() const noexcept { return basis.size(); }
};

struct CartanDims {
    int n = 0;
    int rank_a = 0;
    int dim_h = 0;
    int corank = 0;
    friend bool operator==(const CartanDims&, const CartanDims&) = default;
};

inline CartanDims cartan_dims(const ConcreteCartan& cc) {
    CartanDims d;
    d.n = static_cast<int>(cc.n());
    d.rank_a = static_cast<int>(rank(cc.field, cc.a));
    d.dim_h = 2 * d.n - d.rank_a;
    d.corank = d.n - d.rank_a;
    return d;
}

// An element of g(A): positive root vectors, Cartan part in the h_i
// coordinates, and negative root vectors omega(b).
struct Element {
    std::map<int, Residue> pos;
    Vec cartan;
    std::map<int, Residue> neg;

    explicit Element(std::size_t n = 0) : cartan(n, 0) {}

    bool is_zero() const {
        return pos.empty() && neg.empty() && std::all_of(cartan.begin(), cartan.end(), [](Residue r) { return r == 0; });
    }
    bool cartan_zero() const {
        return std::all_of(cartan.begin(), cartan.end(), [](Residue r) { return r == 0; });
    }
    friend bool operator==(const Element&, const Element&) = default;
};

struct ElementRef {
    enum class Kind { positive, negative, cartan };
    Kind kind = Kind::positive;
    int index = 0; // basis id, or i for h_i

    static ElementRef positive(int id) { return {Kind::positive, id}; }
    static ElementRef mirror(int id) { return {Kind::negative, id}; }
    static ElementRef h(int i) { return {Kind::cartan, i}; }
};

// Structure constants of a built (or partially built) model. Holds caches,
// so use one engine per thread.
class BracketEngine {
public:
    explicit BracketEngine(const AlgebraModel& m) : m_(m), f_(m.field()) {}

    Element bracket(ElementRef x, ElementRef y) { return bracket(element(x), element(y)); }

    Element element(ElementRef r) const {
        check(r);
        Element e(m_.n());
        switch (r.kind) {
        case ElementRef::Kind::positive: e.pos[r.index] = 1; break;
        case ElementRef::Kind::negative: e.neg[r.index] = 1; break;
        case ElementRef::Kind::cartan: e.cartan[r.index] = 1; break;
        }
        return e;
    }

    Element bracket(const Element& x, const Element& y) {
        Element out(m_.n());
        auto term = [&](Residue c, const Element& t) { axpy(out, c, t); };
        for (auto [a, ca] : x.pos) {
            for (auto [b, cb] : y.pos)
                term(f_.mul(ca, cb), pos_pos(a, b));
            for (auto [b, cb] : y.neg)
                term(f_.mul(ca, cb), pos_neg(a, b));
            for (std::size_t i = 0; i < y.cartan.size(); ++i)
                if (y.cartan[i])
                    out.pos[a] = f_.add(out.pos[a], f_.neg(f_.mul(f_.mul(ca, y.cartan[i]), eval_id(a, i))));
        }
        for (auto [a, ca] : x.neg) {
            for (auto [b, cb] : y.pos) {
                const int s = parity(a) & parity(b);
                term(f_.mul(f_.neg(f_.sign(s)), f_.mul(ca, cb)), pos_neg(b, a));
            }
            for (auto [b, cb] : y.neg)
                term(f_.mul(ca, cb), omega(pos_pos(a, b)));
            for (std::size_t i = 0; i < y.cartan.size(); ++i)
                if (y.cartan[i])
                    out.neg[a] = f_.add(out.neg[a], f_.mul(f_.mul(ca, y.cartan[i]), eval_id(a, i)));
        }
        for (std::size_t i = 0; i < x.cartan.size(); ++i) {
            if (!x.cartan[i])
                continue;
            for (auto [b, cb] : y.pos)
                out.pos[b] = f_.add(out.pos[b], f_.mul(f_.mul(x.cartan[i], cb), eval_id(b, i)));
            for (auto [b, cb] : y.neg)
                out.neg[b] = f_.add(out.neg[b], f_.neg(f_.mul(f_.mul(x.cartan[i], cb), eval_id(b, i))));
        }
        prune(out);
        return out;
    }

    // [e_i, b] for a positive basis vector b.
    Element raise(int i, int b) const {
        Element e(m_.n());
        Weight t = m_.weight_of(b).plus_simple(i);
        const RootSpace* sp = m_.space(t);
        if (!sp)
            return e;
        auto it = sp->bracket_coords.find({i, b});
        if (it == sp->bracket_coords.end())
            return e;
        add_coords(e.pos, *sp, it->second, 1);
        return e;
    }

    // [f_j, a] for a positive basis vector a.
    Element lower(int j, int a) const {
        Element e(m_.n());
        const BasisVector& bv = m_.basis[a];
        if (auto* g = std::get_if<Generator>(&bv.provenance)) {
            if (g->i == j)
                e.cartan[j] = f_.neg(f_.sign(bv.parity));
            return e;
        }
        const Vec& c = bv.lowering[j];
        if (c.empty())
            return e;
        const int target = m_.space_id(m_.weight_of(a).plus_simple(j, -1));
        add_coords(e.pos, m_.spaces[target], c, 1);
        return e;
    }

    // [a, b] for positive basis vectors, by recursion on the construction of b.
    const Element& pos_pos(int a, int b) {
        auto key = std::make_pair(a, b);
        if (auto it = pos_pos_cache_.find(key); it != pos_pos_cache_.end())
            return it->second;
        Element out(m_.n());
        const int pa = parity(a);
        const BasisVector& bv = m_.basis[b];
        if (auto* g = std::get_if<Generator>(&bv.provenance)) {
            // [a, e_k] = -(-1)^{p(a) p_k} [e_k, a]
            axpy(out, f_.neg(f_.sign(pa & bv.parity)), raise(g->i, a));
        } else if (auto* br = std::get_if<Bracket>(&bv.provenance)) {
            // [a, [e_k, z]] = [[a, e_k], z] + (-1)^{p(a) p_k} [e_k, [a, z]]
            const int k = br->i;
            const Element x = pos_pos(a, k);
            for (auto [c, cc] : x.pos)
                axpy(out, cc, pos_pos(c, br->src));
            const Element y = pos_pos(a, br->src);
            const Residue s = f_.sign(pa & m_.cartan.parities[k]);
            for (auto [c, cc] : y.pos)
                axpy(out, f_.mul(s, cc), raise(k, c));
        } else {
            // char 2: [a, v^[2]] = [[a, v], v]
            const int v = std::get<Square>(bv.provenance).src;
            const Element x = pos_pos(a, v);
            for (auto [c, cc] : x.pos)
                axpy(out, cc, pos_pos(c, v));
        }
        prune(out);
        return pos_pos_cache_.emplace(key, std::move(out)).first->second;
    }

    // [a, omega(b)] for positive basis vectors a, b.
    const Element& pos_neg(int a, int b) {
        auto key = std::make_pair(a, b);
        if (auto it = pos_neg_cache_.find(key); it != pos_neg_cache_.end())
            return it->second;
        Element out(m_.n());
        const int pa = parity(a);
        const BasisVector& bv = m_.basis[b];
        if (auto* g = std::get_if<Generator>(&bv.provenance)) {
            // [a, f_k] = -(-1)^{p(a) p_k} [f_k, a]
            axpy(out, f_.neg(f_.sign(pa & bv.parity)), lower(g->i, a));
        } else if (auto* br = std::get_if<Bracket>(&bv.provenance)) {
            // [a, [f_k, w]] = [[a, f_k], w] + (-1)^{p(a) p_k} [f_k, [a, w]],  w = omega(z)
            const int k = br->i;
            Element fk(m_.n());
            fk.neg[k] = 1;
            Element wz(m_.n());
            wz.neg[br->src] = 1;
            const Element x = pos_neg(a, k);
            axpy(out, 1, bracket(x, wz));
            const Element y = pos_neg(a, br->src);
            axpy(out, f_.sign(pa & m_.cartan.parities[k]), bracket(fk, y));
        } else {
            // char 2: [a, w^[2]] = [[a, w], w],  w = omega(v)
            const int v = std::get<Square>(bv.provenance).src;
            Element wv(m_.n());
            wv.neg[v] = 1;
            const Element x = pos_neg(a, v);
            axpy(out, 1, bracket(x, wv));
        }
        prune(out);
        return pos_neg_cache_.emplace(key, std::move(out)).first->second;
    }

    Element omega(const Element& x) const {
        Element out(m_.n());
        for (auto [a, c] : x.pos)
            out.neg[a] = c;
        for (auto [a, c] : x.neg)
            out.pos[a] = f_.mul(c, f_.sign(parity(a)));
        for (std::size_t i = 0; i < x.cartan.size(); ++i)
            out.cartan[i] = f_.neg(x.cartan[i]);
        return out;
    }

private:
    int parity(int id) const { return m_.basis[id].parity; }
    Residue eval_id(int id, std::size_t i) const { return m_.eval(m_.weight_of(id), i); }

    void check(ElementRef r) const {
        const int limit = r.kind == ElementRef::Kind::cartan ? static_cast<int>(m_.n())
                                                               : static_cast<int>(m_.basis.size());
        if (r.index < 0 || r.index >= limit)
            throw Error(Errc::out_of_range, "element reference " + std::to_string(r.index) + " out of range");
    }

    void add_coords(std::map<int, Residue>& dst, const RootSpace& sp, const Vec& c, Residue scale) const {
        for (std::size_t l = 0; l < c.size(); ++l)
            if (c[l]) {
                auto& slot = dst[sp.basis[l]];
                slot = f_.add(slot, f_.mul(scale, c[l]));
            }
    }

    void axpy(Element& out, Residue c, const Element& t) const {
        if (c == 0)
            return;
        for (auto [a, v] : t.pos)
            out.pos[a] = f_.add(out.pos[a], f_.mul(c, v));
        for (auto [a, v] : t.neg)
            out.neg[a] = f_.add(out.neg[a], f_.mul(c, v));
        for (std::size_t i = 0; i < t.cartan.size(); ++i)
            out.cartan[i] = f_.add(out.cartan[i], f_.mul(c, t.cartan[i]));
    }

    static void prune(Element& e) {
        std::erase_if(e.pos, [](const auto& kv) { return kv.second == 0; });
        std::erase_if(e.neg, [](const auto& kv) { return kv.second == 0; });
    }

    const AlgebraModel& m_;
    Field f_;
    std::map<std::pair<int, int>, Element> pos_pos_cache_;
    std::map<std::pair<int, int>, Element> pos_neg_cache_;
};

inline Element bracket(const AlgebraModel& m, ElementRef x, ElementRef y) {
    BracketEngine eng(m);
    return eng.bracket(x, y);
}

using Candidate = Provenance;

// Result of ad f_j on a candidate or basis vector: coordinates at weight
// alpha - alpha_j, or a Cartan coefficient when the vector is a generator.
struct Lowering {
    int target_space = -1; // -1: weight alpha - alpha_j is not a positive root
    Vec coords;
    bool to_cartan = false;
    Residue cartan_coeff = 0; // coefficient of h_j
};

namespace detail {

class Builder {
public:
    Builder(AlgebraModel& m, BracketEngine& eng) : m_(m), eng_(eng), f_(m.field()) {}

    Weight weight_of(const Candidate& c) const {
        if (auto* g = std::get_if<Generator>(&c))
            return Weight::simple(m_.n(), g->i);
        if (auto* b = std::get_if<Bracket>(&c))
            return m_.weight_of(b->src).plus_simple(b->i);
        const Weight& w = m_.weight_of(std::get<Square>(c).src);
        return w + w;
    }

    Lowering lower(int j, const Candidate& u) {
        Lowering out;
        const std::size_t n = m_.n();
        if (auto* g = std::get_if<Generator>(&u)) {
            if (g->i == j) {
                out.to_cartan = true;
                out.cartan_coeff = f_.neg(f_.sign(m_.cartan.parities[j]));
            }
            return out;
        }
        Weight t = weight_of(u).plus_simple(j, -1);
        if (!t.nonnegative() || t.height() == 0)
            return out;
        out.target_space = m_.space_id(t);
        if (out.target_space < 0)
            return out;
        const RootSpace& ts = m_.spaces[out.target_space];
        out.coords.assign(ts.basis.size(), 0);
        Vec& res = out.coords;
        const auto& par = m_.cartan.parities;

        if (auto* br = std::get_if<Bracket>(&u)) {
            const int i = br->i, z = br->src;
            const BasisVector& zb = m_.basis[z];
            if (i == j) {
                // -(-1)^{p_i} wt(z)(h_i) z
                Residue c = f_.neg(f_.mul(f_.sign(par[i]), m_.eval(m_.weight_of(z), i)));
                res[zb.local] = f_.add(res[zb.local], c);
            }
            const Residue s = f_.sign(par[i] & par[j]);
            if (auto* gz = std::get_if<Generator>(&zb.provenance)) {
                if (gz->i == j) {
                    // [e_i, c h_k] = -c A_{k i} e_i
                    const int k = gz->i;
                    Residue c = f_.neg(f_.sign(par[k]));
                    Residue v = f_.mul(s, f_.neg(f_.mul(c, m_.cartan.a(k, i))));
                    res[0] = f_.add(res[0], v);
                }
            } else {
                const Vec& lz = zb.lowering[j];
                if (!lz.empty()) {
                    const RootSpace& mid = m_.spaces[m_.space_id(m_.weight_of(z).plus_simple(j, -1))];
                    for (std::size_t l = 0; l < lz.size(); ++l) {
                        if (!lz[l])
                            continue;
                        auto it = ts.bracket_coords.find({i, mid.basis[l]});
                        if (it == ts.bracket_coords.end())
                            continue;
                        const Residue c = f_.mul(s, lz[l]);
                        for (std::size_t q = 0; q < it->second.size(); ++q)
                            res[q] = f_.add(res[q], f_.mul(c, it->second[q]));
                    }
                }
            }
        } else {
            // char 2: [f_j, v^[2]] = [v, [f_j, v]]
            const int v = std::get<Square>(u).src;
            const BasisVector& vb = m_.basis[v];
            if (auto* gv = std::get_if<Generator>(&vb.provenance)) {
                if (gv->i == j)
                    res[0] = f_.add(res[0], m_.cartan.a(j, j));
            } else {
                const Vec& lv = vb.lowering[j];
                if (!lv.empty()) {
                    const RootSpace& mid = m_.spaces[m_.space_id(m_.weight_of(v).plus_simple(j, -1))];
                    for (std::size_t l = 0; l < lv.size(); ++l) {
                        if (!lv[l])
                            continue;
                        const Element& x = eng_.pos_pos(v, mid.basis[l]);
                        for (auto [id, c] : x.pos)
                            res[m_.basis[id].local] = f_.add(res[m_.basis[id].local], f_.mul(lv[l], c));
                    }
                }
            }
        }
        (void)n;
        return out;
    }

    // Builds every root space at height h; returns the number of new basis vectors.
    int build_height(int h, const std::vector<int>& prev_ids, const std::vector<int>& half_odd_ids) {
        const std::size_t n = m_.n();
        std::map<Weight, std::vector<Candidate>> cands;
        for (std::size_t i = 0; i < n; ++i)
            for (int v : prev_ids)
                cands[m_.weight_of(v).plus_simple(i)].push_back(Bracket{static_cast<int>(i), v});
        for (int v : half_odd_ids) {
            const Weight& w = m_.weight_of(v);
            cands[w + w].push_back(Square{v});
        }
        int created = 0;
        for (auto& [w, list] : cands) {
            std::vector<std::vector<Vec>> lowerings(list.size(), std::vector<Vec>(n));
            std::vector<Vec> stacked(list.size());
            for (std::size_t c = 0; c < list.size(); ++c)
                for (std::size_t j = 0; j < n; ++j) {
                    Lowering lw = lower(static_cast<int>(j), list[c]);
                    lowerings[c][j] = lw.coords;
                    stacked[c].insert(stacked[c].end(), lw.coords.begin(), lw.coords.end());
                }
            const std::size_t dim = stacked.empty() ? 0 : stacked[0].size();
            IncrementalBasis ib(f_, dim);
            std::vector<Vec> coords(list.size());
            std::vector<std::size_t> accepted;
            for (std::size_t c = 0; c < list.size(); ++c)
                if (ib.offer(stacked[c], coords[c]))
                    accepted.push_back(c);
            if (accepted.empty())
                continue;
            if (static_cast<int>(accepted.size()) > m_.limits_used.max_mult)
                throw Error(Errc::multiplicity, "root " + w.str() + " has multiplicity " +
                                                    std::to_string(accepted.size()) + " above max-mult " +
                                                    std::to_string(m_.limits_used.max_mult));
            RootSpace sp;
            sp.weight = w;
            sp.parity = m_.parity_of(w);
            const int sid = static_cast<int>(m_.spaces.size());
            for (std::size_t a = 0; a < accepted.size(); ++a) {
                BasisVector bv;
                bv.provenance = list[accepted[a]];
                bv.parity = sp.parity;
                bv.space = sid;
                bv.local = static_cast<int>(a);
                bv.lowering = lowerings[accepted[a]];
                sp.basis.push_back(static_cast<int>(m_.basis.size()));
                m_.basis.push_back(std::move(bv));
            }
            for (std::size_t c = 0; c < list.size(); ++c) {
                coords[c].resize(accepted.size(), 0);
                if (auto* br = std::get_if<Bracket>(&list[c]))
                    sp.bracket_coords[{br->i, br->src}] = coords[c];
                else
                    sp.square_coords[std::get<Square>(list[c]).src] = coords[c];
            }
            m_.index[w] = sid;
            m_.spaces.push_back(std::move(sp));
            created += static_cast<int>(accepted.size());
        }
        (void)h;
        return created;
    }

private:
    AlgebraModel& m_;
    BracketEngine& eng_;
    Field f_;
};

inline void fill_lowering_matrices(AlgebraModel& m) {
    const std::size_t n = m.n();
    for (auto& sp : m.spaces) {
        sp.lowering.assign(n, Matrix());
        for (std::size_t j = 0; j < n; ++j) {
            Weight t = sp.weight.plus_simple(j, -1);
            const RootSpace* ts = (t.nonnegative() && t.height() > 0) ? m.space(t) : nullptr;
            if (!ts)
                continue;
            Matrix mat(ts->basis.size(), sp.basis.size());
            for (std::size_t c = 0; c < sp.basis.size(); ++c) {
                const Vec& v = m.basis[sp.basis[c]].lowering[j];
                for (std::size_t r = 0; r < v.size(); ++r)
                    mat(r, c) = v[r];
            }
            sp.lowering[j] = std::move(mat);
        }
    }
}

} // namespace detail

inline AlgebraModel build(const ConcreteCartan& cc, const Limits& limits = {}) {
    if (limits.max_height < 1 || limits.max_mult < 1)
        throw Error(Errc::invalid_argument, "limits must be positive");
    if (cc.n() == 0)
        throw Error(Errc::invalid_argument, "empty Cartan matrix");
    if (cc.a.rows() != cc.n() || cc.a.cols() != cc.n())
        throw Error(Errc::invalid_argument, "Cartan matrix does not match parity vector");

    AlgebraModel m;
    m.cartan = cc;
    m.limits_used = limits;
    const CartanDims d = cartan_dims(cc);
    m.rank_a = d.rank_a;
    m.dim_h = d.dim_h;

    const std::size_t n = cc.n();
    std::vector<std::vector<int>> by_height(2);
    for (std::size_t i = 0; i < n; ++i) {
        RootSpace sp;
        sp.weight = Weight::simple(n, i);
        sp.parity = cc.parities[i];
        sp.basis = {static_cast<int>(i)};
        BasisVector bv;
        bv.provenance = Generator{static_cast<int>(i)};
        bv.parity = cc.parities[i];
        bv.space = static_cast<int>(i);
        bv.local = 0;
        bv.lowering.assign(n, Vec{});
        m.basis.push_back(std::move(bv));
        m.index[sp.weight] = static_cast<int>(i);
        m.spaces.push_back(std::move(sp));
        by_height[1].push_back(static_cast<int>(i));
    }

    const bool squares = cc.field.characteristic() == 2;
    int max_odd_height = 0;
    for (int b : by_height[1])
        if (m.basis[b].parity)
            max_odd_height = 1;

    BracketEngine eng(m);
    detail::Builder builder(m, eng);
    for (int h = 2;; ++h) {
        if (h > limits.max_height && limits.truncate) {
            m.truncated = true;
            break;
        }
        std::vector<int> half_odd;
        if (squares && h % 2 == 0)
            for (int b : by_height[h / 2])
                if (m.basis[b].parity)
                    half_odd.push_back(b);
        const std::size_t before = m.basis.size();
        builder.build_height(h, by_height[h - 1], half_odd);
        by_height.emplace_back();
        for (std::size_t b = before; b < m.basis.size(); ++b) {
            by_height[h].push_back(static_cast<int>(b));
            if (m.basis[b].parity)
                max_odd_height = h;
        }
        if (!by_height[h].empty() && h > limits.max_height)
            throw Error(Errc::limit_exceeded, "'" + cc.name + "': roots above max-height " +
                                                  std::to_string(limits.max_height) +
                                                  " (algebra infinite-dimensional or matrix mis-entered)");
        const bool pending_squares = squares && 2 * max_odd_height > h;
        if (by_height[h].empty() && !pending_squares)
            break;
    }
    detail::fill_lowering_matrices(m);
    return m;
}

// ad f_j applied to a candidate or basis vector of a finished model.
inline Lowering lower(const AlgebraModel& m, int j, const Candidate& u) {
    if (j < 0 || j >= static_cast<int>(m.n()))
        throw Error(Errc::out_of_range, "generator index out of range");
    BracketEngine eng(m);
    detail::Builder b(const_cast<AlgebraModel&>(m), eng);
    return b.lower(j, u);
}

} // namespace cartan_forge
