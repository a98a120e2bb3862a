#pragma once

// Observables of a built algebra: root list with parity and isotropy,
// superdimension, derived-algebra dimensions, and comparison with golden data.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartan_forge/builder.hpp"
#include "cartan_forge/catalog.hpp"

namespace cartan_forge {

struct RootEntry {
    Weight weight;
    int parity = 0;
    int isotropic = 0;
    int multiplicity = 1;
    int height = 0;
    friend bool operator==(const RootEntry&, const RootEntry&) = default;
};

struct RootReport {
    std::string name;
    int p = 0;
    std::string field;
    CartanDims cartan;
    std::vector<RootEntry> entries; // sorted by (height, weight)
    int n_positive = 0;
    SdimPair sdim;
    std::optional<SdimPair> derived; // present when corank > 0
    friend bool operator==(const RootReport&, const RootReport&) = default;
};

// h_alpha = Cartan part of [x_alpha, omega(x_alpha)]; alpha is isotropic when
// it is odd and alpha(h_alpha) = 0.
inline int isotropy(const AlgebraModel& m, BracketEngine& eng, const Weight& alpha) {
    const RootSpace* sp = m.space(alpha);
    if (!sp)
        throw Error(Errc::invalid_argument, alpha.str() + " is not a positive root");
    if (sp->multiplicity() != 1)
        throw Error(Errc::multiplicity, "isotropy undefined for root " + alpha.str() + " of multiplicity " +
                                            std::to_string(sp->multiplicity()));
    if (!sp->parity)
        return 0;
    const int x = sp->basis[0];
    const Element e = eng.bracket(ElementRef::positive(x), ElementRef::mirror(x));
    const Field& f = m.field();
    Residue r = 0;
    for (std::size_t i = 0; i < m.n(); ++i)
        r = f.add(r, f.mul(e.cartan[i], m.eval(alpha, i)));
    return r == 0 ? 1 : 0;
}

inline int isotropy(const AlgebraModel& m, const Weight& alpha) {
    BracketEngine eng(m);
    return isotropy(m, eng, alpha);
}

inline RootReport root_report(const AlgebraModel& m) {
    RootReport r;
    r.name = m.cartan.name;
    r.p = m.field().characteristic();
    r.field = m.field().name();
    r.cartan = cartan_dims(m.cartan);
    BracketEngine eng(m);
    int even = 0, odd = 0;
    for (const auto& sp : m.spaces) {
        RootEntry e;
        e.weight = sp.weight;
        e.parity = sp.parity;
        e.multiplicity = sp.multiplicity();
        e.height = sp.weight.height();
        e.isotropic = e.multiplicity == 1 ? isotropy(m, eng, sp.weight) : 0;
        (e.parity ? odd : even) += e.multiplicity;
        r.entries.push_back(std::move(e));
    }
    std::sort(r.entries.begin(), r.entries.end(), [](const RootEntry& a, const RootEntry& b) {
        return std::tie(a.height, a.weight) < std::tie(b.height, b.weight);
    });
    r.n_positive = static_cast<int>(r.entries.size());
    r.sdim = {2 * even + r.cartan.dim_h, 2 * odd};
    if (r.cartan.corank > 0)
        r.derived = SdimPair{r.sdim.even - 2 * r.cartan.corank, r.sdim.odd};
    return r;
}

struct RootDiff {
    std::vector<int> k;
    int expected_parity = -1, expected_isotropic = -1; // -1: absent from golden data
    int actual_parity = -1, actual_isotropic = -1;     // -1: not computed
};

struct CompareResult {
    std::optional<std::pair<SdimPair, SdimPair>> sdim;    // (expected, actual) on mismatch
    std::optional<std::pair<SdimPair, SdimPair>> derived; // (expected, actual) on mismatch
    std::optional<std::pair<int, int>> n_positive;        // (expected, actual) on mismatch
    std::vector<RootDiff> missing, extra, mismatched;

    bool empty() const noexcept {
        return !sdim && !derived && !n_positive && missing.empty() && extra.empty() && mismatched.empty();
    }

    std::string summary() const {
        if (empty())
            return "ok";
        std::string s;
        auto add = [&s](const std::string& t) { s += (s.empty() ? "" : "; ") + t; };
        auto pair = [](SdimPair p) { return std::to_string(p.even) + "|" + std::to_string(p.odd); };
        if (sdim)
            add("sdim " + pair(sdim->second) + " expected " + pair(sdim->first));
        if (derived)
            add("derived " + pair(derived->second) + " expected " + pair(derived->first));
        if (n_positive)
            add(std::to_string(n_positive->second) + " positive roots, expected " + std::to_string(n_positive->first));
        if (!missing.empty())
            add(std::to_string(missing.size()) + " missing");
        if (!extra.empty())
            add(std::to_string(extra.size()) + " extra");
        if (!mismatched.empty())
            add(std::to_string(mismatched.size()) + " mismatched");
        return s;
    }
};

inline CompareResult compare(const RootReport& rep, const GoldenData& golden) {
    CompareResult d;
    if (golden.sdim && *golden.sdim != rep.sdim)
        d.sdim = std::make_pair(*golden.sdim, rep.sdim);
    if (golden.derived) {
        const SdimPair actual = rep.derived.value_or(rep.sdim);
        if (actual != *golden.derived)
            d.derived = std::make_pair(*golden.derived, actual);
    }
    if (golden.n_positive && *golden.n_positive != rep.n_positive)
        d.n_positive = std::make_pair(*golden.n_positive, rep.n_positive);
    if (golden.roots.empty())
        return d;

    // Multiset comparison on weights; a weight listed twice is compared pairwise in order.
    std::map<std::vector<int>, std::vector<const GoldenRoot*>> want;
    for (const auto& g : golden.roots)
        want[g.k].push_back(&g);
    std::map<std::vector<int>, std::vector<const RootEntry*>> have;
    for (const auto& e : rep.entries)
        for (int c = 0; c < e.multiplicity; ++c)
            have[e.weight.k].push_back(&e);

    for (const auto& [k, gs] : want) {
        auto it = have.find(k);
        const std::size_t nh = it == have.end() ? 0 : it->second.size();
        for (std::size_t i = 0; i < gs.size(); ++i) {
            if (i >= nh) {
                d.missing.push_back({k, gs[i]->parity, gs[i]->isotropic, -1, -1});
                continue;
            }
            const RootEntry* e = it->second[i];
            if (e->parity != gs[i]->parity || e->isotropic != gs[i]->isotropic)
                d.mismatched.push_back({k, gs[i]->parity, gs[i]->isotropic, e->parity, e->isotropic});
        }
    }
    for (const auto& [k, es] : have) {
        auto it = want.find(k);
        const std::size_t ng = it == want.end() ? 0 : it->second.size();
        for (std::size_t i = ng; i < es.size(); ++i)
            d.extra.push_back({k, -1, -1, es[i]->parity, es[i]->isotropic});
    }
    return d;
}

inline nlohmann::ordered_json to_json(const RootReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["p"] = r.p;
    j["field"] = r.field;
    j["n"] = r.cartan.n;
    j["rank"] = r.cartan.rank_a;
    j["dim_h"] = r.cartan.dim_h;
    j["sdim"] = {{"even", r.sdim.even}, {"odd", r.sdim.odd}};
    if (r.derived)
        j["derived"] = {{"even", r.derived->even}, {"odd", r.derived->odd}};
    else
        j["derived"] = nullptr;
    auto roots = nlohmann::ordered_json::array();
    for (const auto& e : r.entries) {
        nlohmann::ordered_json x;
        x["k"] = e.weight.k;
        x["parity"] = e.parity;
        x["isotropic"] = e.isotropic;
        x["height"] = e.height;
        if (e.multiplicity != 1)
            x["multiplicity"] = e.multiplicity;
        roots.push_back(std::move(x));
    }
    j["roots"] = std::move(roots);
    return j;
}

inline nlohmann::ordered_json to_json(const CompareResult& d) {
    auto rows = [](const std::vector<RootDiff>& v) {
        auto a = nlohmann::ordered_json::array();
        for (const auto& x : v) {
            nlohmann::ordered_json o;
            o["k"] = x.k;
            if (x.expected_parity >= 0)
                o["expected"] = {{"parity", x.expected_parity}, {"isotropic", x.expected_isotropic}};
            if (x.actual_parity >= 0)
                o["actual"] = {{"parity", x.actual_parity}, {"isotropic", x.actual_isotropic}};
            a.push_back(std::move(o));
        }
        return a;
    };
    auto pair = [](SdimPair p) { return nlohmann::ordered_json{{"even", p.even}, {"odd", p.odd}}; };
    nlohmann::ordered_json j;
    if (d.sdim)
        j["sdim"] = {{"expected", pair(d.sdim->first)}, {"actual", pair(d.sdim->second)}};
    if (d.derived)
        j["derived"] = {{"expected", pair(d.derived->first)}, {"actual", pair(d.derived->second)}};
    if (d.n_positive)
        j["positive"] = {{"expected", d.n_positive->first}, {"actual", d.n_positive->second}};
    j["missing"] = rows(d.missing);
    j["extra"] = rows(d.extra);
    j["mismatched"] = rows(d.mismatched);
    return j;
}

} // namespace cartan_forge
