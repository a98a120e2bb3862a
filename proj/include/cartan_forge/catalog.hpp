#pragma once

// Cartan matrix specifications, the line-oriented catalog format, and the
// built-in registry. See docs/catalog-format.md for the grammar.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cartan_forge/error.hpp"
#include "cartan_forge/field.hpp"
#include "cartan_forge/linalg.hpp"

namespace cartan_forge {

enum class Source { paper, external };

inline const char* source_name(Source s) { return s == Source::paper ? "paper" : "external"; }

struct SdimPair {
    int even = 0;
    int odd = 0;
    friend bool operator==(const SdimPair&, const SdimPair&) = default;
};

struct GoldenRoot {
    std::vector<int> k;
    int parity = 0;
    int isotropic = 0;
    friend auto operator<=>(const GoldenRoot&, const GoldenRoot&) = default;
};

struct GoldenData {
    std::optional<SdimPair> sdim;
    std::optional<SdimPair> derived;
    std::optional<int> n_positive;
    std::vector<GoldenRoot> roots;
    std::string roots_path; // informational; empty when roots were inline
    friend bool operator==(const GoldenData& a, const GoldenData& b) {
        return a.sdim == b.sdim && a.derived == b.derived && a.n_positive == b.n_positive && a.roots == b.roots;
    }
};

// A matrix token: integer literal, parameter symbol, or barred diagonal literal.
struct Entry {
    enum class Kind { integer, symbol, barred };
    Kind kind = Kind::integer;
    long long value = 0; // integer value, or 0/1 for barred
    std::string symbol;

    static Entry integer(long long v) { return {Kind::integer, v, {}}; }
    static Entry sym(std::string s) { return {Kind::symbol, 0, std::move(s)}; }
    static Entry barred(int v) { return {Kind::barred, v, {}}; }

    std::string str() const {
        switch (kind) {
        case Kind::integer: return std::to_string(value);
        case Kind::symbol: return symbol;
        case Kind::barred: return std::to_string(value) + "bar";
        }
        return {};
    }
    friend bool operator==(const Entry&, const Entry&) = default;
};

struct ParamDecl {
    std::optional<std::string> default_value; // field literal
    std::vector<std::string> excluded;        // field literals
    friend bool operator==(const ParamDecl&, const ParamDecl&) = default;
};

struct CartanSpec {
    std::string name;
    int p = 0;
    int field_degree = 1;
    std::vector<std::vector<Entry>> entries;
    std::vector<int> parities;
    Source source = Source::paper;
    std::map<std::string, ParamDecl> params;
    std::optional<GoldenData> expected;

    std::size_t n() const noexcept { return parities.size(); }
    friend bool operator==(const CartanSpec&, const CartanSpec&) = default;
};

struct ConcreteCartan {
    std::string name;
    Field field;
    Matrix a;
    std::vector<int> parities;
    std::map<std::string, FieldElem> bindings;

    std::size_t n() const noexcept { return parities.size(); }
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r'))
        ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
        --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    return out;
}

inline bool parse_int(std::string_view s, long long& out) {
    if (s.empty())
        return false;
    std::size_t i = 0;
    bool negative = false;
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        i = 1;
    }
    if (i == s.size())
        return false;
    long long v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9' || v > 1'000'000'000'000LL)
            return false;
        v = v * 10 + (s[i] - '0');
    }
    out = negative ? -v : v;
    return true;
}

inline bool is_symbol(std::string_view s) {
    if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z'))
        return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; });
}

[[noreturn]] inline void schema_error(int line, const std::string& field, const std::string& msg) {
    throw Error(Errc::schema, "line " + std::to_string(line) + ": field '" + field + "': " + msg);
}

inline SdimPair parse_pair(int line, const std::string& field, const std::string& v) {
    auto parts = split(v, '|');
    long long e = 0, o = 0;
    if (parts.size() != 2 || !parse_int(parts[0], e) || !parse_int(parts[1], o) || e < 0 || o < 0)
        schema_error(line, field, "expected E|O, got '" + v + "'");
    return {static_cast<int>(e), static_cast<int>(o)};
}

inline GoldenRoot parse_root_row(int line, const std::string& field, const std::string& row, std::size_t n) {
    auto cols = split(row, ',');
    if (cols.size() != n + 2)
        schema_error(line, field,
                     "root row needs " + std::to_string(n + 2) + " columns, got " + std::to_string(cols.size()));
    GoldenRoot r;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        long long v = 0;
        if (!parse_int(cols[i], v) || v < 0)
            schema_error(line, field, "bad root column '" + cols[i] + "'");
        if (i < n)
            r.k.push_back(static_cast<int>(v));
        else if (v > 1)
            schema_error(line, field, "parity/isotropic flag must be 0 or 1");
        else if (i == n)
            r.parity = static_cast<int>(v);
        else
            r.isotropic = static_cast<int>(v);
    }
    if (r.isotropic && !r.parity)
        schema_error(line, field, "isotropic root marked even");
    return r;
}

} // namespace detail

using FileResolver = std::function<std::string(const std::string& path)>;

// Parses a catalog document. `resolve` loads files named by expect.roots.
inline std::vector<CartanSpec> parse_catalog(std::string_view text, const FileResolver& resolve = {}) {
    using namespace detail;
    std::vector<CartanSpec> specs;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    bool header_seen = false;

    struct Pending {
        CartanSpec spec;
        int line = 0;
        bool has_p = false, has_deg = false, has_par = false, has_matrix = false;
        int matrix_line = 0;
        std::vector<std::vector<std::string>> matrix_tokens;
        std::vector<std::pair<int, std::string>> inline_roots;
        std::optional<std::pair<int, std::string>> roots_path;
        std::optional<int> positive;
        std::optional<SdimPair> sdim, derived;
    };
    std::optional<Pending> cur;

    auto finish = [&]() {
        if (!cur)
            return;
        Pending& pd = *cur;
        CartanSpec& s = pd.spec;
        const int l = pd.line;
        if (!pd.has_p)
            schema_error(l, "p", "missing");
        if (!pd.has_deg)
            s.field_degree = 1;
        if (!pd.has_par)
            schema_error(l, "parities", "missing");
        if (!pd.has_matrix)
            schema_error(l, "matrix", "missing");
        const std::size_t n = s.parities.size();
        if (pd.matrix_tokens.size() != n)
            schema_error(pd.matrix_line, "matrix",
                         "expected " + std::to_string(n) + " rows, got " + std::to_string(pd.matrix_tokens.size()));
        for (std::size_t i = 0; i < n; ++i) {
            if (pd.matrix_tokens[i].size() != n)
                schema_error(pd.matrix_line, "matrix",
                             "row " + std::to_string(i + 1) + " has " + std::to_string(pd.matrix_tokens[i].size()) +
                                 " entries, expected " + std::to_string(n));
            std::vector<Entry> row;
            for (std::size_t j = 0; j < n; ++j) {
                const std::string& t = pd.matrix_tokens[i][j];
                long long v = 0;
                if (parse_int(t, v))
                    row.push_back(Entry::integer(v));
                else if (t == "0bar" || t == "1bar") {
                    if (i != j)
                        schema_error(pd.matrix_line, "matrix",
                                     "barred literal '" + t + "' off the diagonal at (" + std::to_string(i + 1) +
                                         "," + std::to_string(j + 1) + ")");
                    row.push_back(Entry::barred(t[0] - '0'));
                } else if (is_symbol(t)) {
                    row.push_back(Entry::sym(t));
                } else {
                    schema_error(pd.matrix_line, "matrix", "bad token '" + t + "'");
                }
            }
            s.entries.push_back(std::move(row));
        }
        const bool any_expect = pd.sdim || pd.derived || pd.positive || pd.roots_path || !pd.inline_roots.empty();
        if (any_expect) {
            GoldenData g;
            g.sdim = pd.sdim;
            g.derived = pd.derived;
            for (auto& [rl, row] : pd.inline_roots)
                g.roots.push_back(parse_root_row(rl, "expect.root", row, n));
            if (pd.roots_path) {
                auto [rl, path] = *pd.roots_path;
                if (!resolve)
                    schema_error(rl, "expect.roots", "no resolver for '" + path + "'");
                std::string body;
                try {
                    body = resolve(path);
                } catch (const Error& e) {
                    schema_error(rl, "expect.roots", e.what());
                }
                std::istringstream rs(body);
                std::string r;
                int csv_line = 0;
                while (std::getline(rs, r)) {
                    ++csv_line;
                    r = trim(r);
                    if (r.empty() || r[0] == '#')
                        continue;
                    try {
                        g.roots.push_back(parse_root_row(csv_line, "expect.roots", r, n));
                    } catch (const Error& e) {
                        schema_error(rl, "expect.roots", path + ": " + e.what());
                    }
                }
                g.roots_path = path;
            }
            if (pd.positive) {
                if (!g.roots.empty() && static_cast<std::size_t>(*pd.positive) != g.roots.size())
                    schema_error(l, "expect.positive", "count disagrees with the golden root list");
                g.n_positive = pd.positive;
            } else if (!g.roots.empty()) {
                g.n_positive = static_cast<int>(g.roots.size());
            }
            s.expected = std::move(g);
        }
        for (auto& row : s.entries)
            for (auto& e : row)
                if (e.kind == Entry::Kind::symbol && !s.params.count(e.symbol))
                    s.params[e.symbol] = ParamDecl{};
        for (auto& sp : specs)
            if (sp.name == s.name)
                schema_error(l, "name", "duplicate entry '" + s.name + "'");
        specs.push_back(std::move(s));
        cur.reset();
    };

    while (std::getline(in, raw)) {
        ++line;
        std::string t = trim(raw);
        if (t.empty() || t[0] == '#')
            continue;
        if (!header_seen) {
            if (t != "cartan-catalog v1")
                schema_error(line, "header", "expected 'cartan-catalog v1'");
            header_seen = true;
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            schema_error(line, "?", "expected key=value");
        std::string key = trim(std::string_view(t).substr(0, eq));
        std::string val = trim(std::string_view(t).substr(eq + 1));
        if (key == "name") {
            finish();
            if (val.empty())
                schema_error(line, "name", "empty");
            cur.emplace();
            cur->spec.name = val;
            cur->line = line;
            continue;
        }
        if (!cur)
            schema_error(line, key, "appears before any name=");
        Pending& pd = *cur;
        long long v = 0;
        if (key == "p") {
            if (!parse_int(val, v) || v < 2)
                schema_error(line, key, "bad characteristic '" + val + "'");
            pd.spec.p = static_cast<int>(v);
            pd.has_p = true;
        } else if (key == "fielddeg") {
            if (!parse_int(val, v) || v < 1)
                schema_error(line, key, "bad degree '" + val + "'");
            pd.spec.field_degree = static_cast<int>(v);
            pd.has_deg = true;
        } else if (key == "parities") {
            if (val.empty() || val.find_first_not_of("01") != std::string::npos)
                schema_error(line, key, "expected a bit string");
            pd.spec.parities.clear();
            for (char c : val)
                pd.spec.parities.push_back(c - '0');
            pd.has_par = true;
        } else if (key == "matrix") {
            pd.matrix_tokens.clear();
            for (auto& r : split(val, ';'))
                pd.matrix_tokens.push_back(split(r, ','));
            pd.has_matrix = true;
            pd.matrix_line = line;
        } else if (key == "source") {
            if (val == "paper")
                pd.spec.source = Source::paper;
            else if (val == "external")
                pd.spec.source = Source::external;
            else
                schema_error(line, key, "expected paper|external");
        } else if (key.rfind("param.", 0) == 0) {
            std::string sym = key.substr(6);
            if (!is_symbol(sym))
                schema_error(line, key, "bad parameter symbol");
            pd.spec.params[sym].default_value = val;
        } else if (key.rfind("exclude.", 0) == 0) {
            std::string sym = key.substr(8);
            if (!is_symbol(sym))
                schema_error(line, key, "bad parameter symbol");
            pd.spec.params[sym].excluded = split(val, ',');
        } else if (key == "expect.sdim") {
            pd.sdim = parse_pair(line, key, val);
        } else if (key == "expect.derived") {
            pd.derived = parse_pair(line, key, val);
        } else if (key == "expect.positive") {
            if (!parse_int(val, v) || v < 0)
                schema_error(line, key, "bad count");
            pd.positive = static_cast<int>(v);
        } else if (key == "expect.roots") {
            pd.roots_path = std::make_pair(line, val);
        } else if (key == "expect.root") {
            pd.inline_roots.emplace_back(line, val);
        } else {
            schema_error(line, key, "unknown key");
        }
    }
    finish();
    if (!header_seen && !specs.empty())
        schema_error(1, "header", "missing");
    return specs;
}

// Inverse of parse_catalog; golden roots are written inline.
inline std::string serialize_catalog(const std::vector<CartanSpec>& specs) {
    std::ostringstream o;
    o << "cartan-catalog v1\n";
    for (const auto& s : specs) {
        o << "\nname=" << s.name << "\n";
        o << "source=" << source_name(s.source) << "\n";
        o << "p=" << s.p << "\nfielddeg=" << s.field_degree << "\nparities=";
        for (int b : s.parities)
            o << b;
        o << "\nmatrix=";
        for (std::size_t i = 0; i < s.entries.size(); ++i) {
            if (i)
                o << ';';
            for (std::size_t j = 0; j < s.entries[i].size(); ++j)
                o << (j ? "," : "") << s.entries[i][j].str();
        }
        o << "\n";
        for (const auto& [sym, decl] : s.params) {
            if (decl.default_value)
                o << "param." << sym << "=" << *decl.default_value << "\n";
            if (!decl.excluded.empty()) {
                o << "exclude." << sym << "=";
                for (std::size_t i = 0; i < decl.excluded.size(); ++i)
                    o << (i ? "," : "") << decl.excluded[i];
                o << "\n";
            }
        }
        if (s.expected) {
            const auto& g = *s.expected;
            if (g.sdim)
                o << "expect.sdim=" << g.sdim->even << "|" << g.sdim->odd << "\n";
            if (g.derived)
                o << "expect.derived=" << g.derived->even << "|" << g.derived->odd << "\n";
            if (g.n_positive)
                o << "expect.positive=" << *g.n_positive << "\n";
            for (const auto& r : g.roots) {
                o << "expect.root=";
                for (int c : r.k)
                    o << c << ",";
                o << r.parity << "," << r.isotropic << "\n";
            }
        }
    }
    return o.str();
}

// Bindings map parameter symbols to field literals ("2", "w", "1*w+1").
inline ConcreteCartan instantiate(const CartanSpec& spec, const std::map<std::string, std::string>& bindings = {}) {
    ConcreteCartan cc;
    cc.name = spec.name;
    cc.field = Field::make(spec.p, spec.field_degree);
    cc.parities = spec.parities;
    const Field& f = cc.field;

    for (const auto& [sym, lit] : bindings)
        if (!spec.params.count(sym))
            throw Error(Errc::unbound_symbol, "'" + spec.name + "' has no parameter '" + sym + "'");

    for (const auto& [sym, decl] : spec.params) {
        std::optional<std::string> lit;
        if (auto it = bindings.find(sym); it != bindings.end())
            lit = it->second;
        else
            lit = decl.default_value;
        if (!lit)
            throw Error(Errc::unbound_symbol, "parameter '" + sym + "' of '" + spec.name + "' is unbound");
        auto r = f.parse(*lit);
        if (!r)
            throw Error(Errc::not_in_field, "'" + *lit + "' is not an element of " + f.name());
        for (const auto& ex : decl.excluded) {
            auto xr = f.parse(ex);
            if (xr && *xr == *r)
                throw Error(Errc::excluded_binding,
                            "parameter '" + sym + "' of '" + spec.name + "' must not equal " + ex);
        }
        cc.bindings[sym] = f.elem(*r);
    }

    const std::size_t n = spec.n();
    cc.a = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Entry& e = spec.entries[i][j];
            switch (e.kind) {
            case Entry::Kind::integer:
            case Entry::Kind::barred: cc.a(i, j) = f.lift_raw(e.value); break;
            case Entry::Kind::symbol: cc.a(i, j) = cc.bindings.at(e.symbol).value; break;
            }
        }
    return cc;
}

// Makes a ConcreteCartan directly from integer entries.
inline ConcreteCartan make_cartan(std::string name, const Field& f, const std::vector<std::vector<long long>>& rows,
                                  std::vector<int> parities) {
    ConcreteCartan cc;
    cc.name = std::move(name);
    cc.field = f;
    cc.parities = std::move(parities);
    const std::size_t n = cc.parities.size();
    if (rows.size() != n)
        throw Error(Errc::invalid_argument, "matrix size does not match parity vector");
    cc.a = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw Error(Errc::invalid_argument, "matrix is not square");
        for (std::size_t j = 0; j < n; ++j)
            cc.a(i, j) = f.lift_raw(rows[i][j]);
    }
    return cc;
}

class Catalog {
public:
    Catalog() = default;
    explicit Catalog(std::vector<CartanSpec> specs) : specs_(std::move(specs)) {}

    static Catalog from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw Error(Errc::io, "cannot open catalog '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        std::string dir;
        if (auto slash = path.find_last_of('/'); slash != std::string::npos)
            dir = path.substr(0, slash + 1);
        return Catalog(parse_catalog(ss.str(), [dir](const std::string& rel) {
            std::string full = (!rel.empty() && rel[0] == '/') ? rel : dir + rel;
            std::ifstream f(full);
            if (!f)
                throw Error(Errc::io, "cannot open '" + full + "'");
            std::stringstream b;
            b << f.rdbuf();
            return b.str();
        }));
    }

    const std::vector<CartanSpec>& specs() const noexcept { return specs_; }

    const CartanSpec* find(std::string_view name) const {
        for (const auto& s : specs_)
            if (s.name == name)
                return &s;
        return nullptr;
    }

    const CartanSpec& get(std::string_view name) const {
        if (auto* s = find(name))
            return *s;
        std::string msg = "unknown catalog entry '" + std::string(name) + "'";
        auto near = near_matches(name);
        if (!near.empty()) {
            msg += "; did you mean";
            for (std::size_t i = 0; i < near.size(); ++i)
                msg += (i ? ", '" : " '") + near[i] + "'";
            msg += "?";
        }
        throw Error(Errc::unknown_name, msg);
    }

    std::vector<std::string> near_matches(std::string_view name, std::size_t max = 5) const {
        auto distance = [](std::string_view a, std::string_view b) {
            std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
            for (std::size_t j = 0; j <= b.size(); ++j)
                prev[j] = j;
            for (std::size_t i = 1; i <= a.size(); ++i) {
                cur[0] = i;
                for (std::size_t j = 1; j <= b.size(); ++j)
                    cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
                std::swap(prev, cur);
            }
            return prev[b.size()];
        };
        std::vector<std::pair<std::size_t, std::string>> scored;
        for (const auto& s : specs_) {
            std::size_t d = distance(name, s.name);
            bool prefix = !name.empty() && s.name.find(name) != std::string::npos;
            if (prefix || d <= std::max<std::size_t>(3, name.size() / 3))
                scored.emplace_back(prefix ? 0 : d, s.name);
        }
        std::sort(scored.begin(), scored.end());
        std::vector<std::string> out;
        for (std::size_t i = 0; i < scored.size() && i < max; ++i)
            out.push_back(scored[i].second);
        return out;
    }

private:
    std::vector<CartanSpec> specs_;
};

} // namespace cartan_forge
