#pragma once

// Small finite fields GF(p^k), p in {2,3,5,7}, k in {1,2}.
//
// Elements are stored as a single residue index r = c0 + c1*p, where
// c0 + c1*w is the polynomial representative and w is a root of the
// field's fixed modulus. All arithmetic goes through precomputed tables.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartan_forge/error.hpp"

namespace cartan_forge {

using Residue = std::uint8_t;

struct FieldElem {
    Residue value = 0;
    std::uint16_t field_id = 0;

    friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

class Field {
    struct Tables {
        int p = 0;
        int k = 0;
        int q = 0;
        std::vector<int> modulus; // [c0, c1] of x^2 + c1 x + c0, empty for k = 1
        std::vector<Residue> add, mul, neg, inv;
    };

public:
    Field() = default;

    static Field make(int p, int k) {
        if (p != 2 && p != 3 && p != 5 && p != 7) {
            bool prime = p >= 2;
            for (int d = 2; prime && d * d <= p; ++d)
                prime = p % d != 0;
            if (!prime)
                throw Error(Errc::non_prime, "characteristic " + std::to_string(p) + " is not prime");
            throw Error(Errc::invalid_argument,
                        "characteristic " + std::to_string(p) + " unsupported (need 2, 3, 5 or 7)");
        }
        if (k != 1 && k != 2)
            throw Error(Errc::unsupported_degree, "extension degree " + std::to_string(k) + " unsupported");

        static std::mutex mu;
        static std::map<int, std::shared_ptr<const Tables>> cache;
        std::lock_guard lock(mu);
        auto& slot = cache[p * 16 + k];
        if (!slot)
            slot = build_tables(p, k);
        Field f;
        f.t_ = slot;
        return f;
    }

    bool valid() const noexcept { return t_ != nullptr; }
    int characteristic() const noexcept { return t_->p; }
    int degree() const noexcept { return t_->k; }
    int order() const noexcept { return t_->q; }
    const std::vector<int>& modulus() const noexcept { return t_->modulus; }
    std::uint16_t id() const noexcept { return static_cast<std::uint16_t>(t_->p * 16 + t_->k); }

    std::string name() const { return "GF(" + std::to_string(t_->q) + ")"; }

    // Raw residue arithmetic, unchecked.
    Residue add(Residue a, Residue b) const noexcept { return t_->add[a * t_->q + b]; }
    Residue sub(Residue a, Residue b) const noexcept { return t_->add[a * t_->q + t_->neg[b]]; }
    Residue mul(Residue a, Residue b) const noexcept { return t_->mul[a * t_->q + b]; }
    Residue neg(Residue a) const noexcept { return t_->neg[a]; }
    Residue inv(Residue a) const {
        if (a == 0)
            throw Error(Errc::division_by_zero, "inverse of zero");
        return t_->inv[a];
    }
    Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }
    Residue sign(int parity) const noexcept { return parity & 1 ? t_->neg[1] : Residue{1}; }

    Residue lift_raw(long long z) const noexcept {
        long long r = z % t_->p;
        if (r < 0)
            r += t_->p;
        return static_cast<Residue>(r);
    }

    // Generator w of GF(p^2) over GF(p).
    Residue generator() const noexcept { return t_->k == 2 ? static_cast<Residue>(t_->p) : Residue{1}; }

    // Checked element interface.
    FieldElem elem(Residue r) const {
        if (r >= t_->q)
            throw Error(Errc::not_in_field, "residue " + std::to_string(r) + " outside " + name());
        return FieldElem{r, id()};
    }
    FieldElem zero() const { return FieldElem{0, id()}; }
    FieldElem one() const { return FieldElem{1, id()}; }
    FieldElem lift(long long z) const { return FieldElem{lift_raw(z), id()}; }

    FieldElem add(FieldElem a, FieldElem b) const { check(a, b); return {add(a.value, b.value), id()}; }
    FieldElem sub(FieldElem a, FieldElem b) const { check(a, b); return {sub(a.value, b.value), id()}; }
    FieldElem mul(FieldElem a, FieldElem b) const { check(a, b); return {mul(a.value, b.value), id()}; }
    FieldElem neg(FieldElem a) const { check(a); return {neg(a.value), id()}; }
    FieldElem inv(FieldElem a) const { check(a); return {inv(a.value), id()}; }

    std::string format(Residue r) const {
        if (t_->k == 1)
            return std::to_string(r);
        return std::to_string(r / t_->p) + "*w+" + std::to_string(r % t_->p);
    }
    std::string format(FieldElem a) const { check(a); return format(a.value); }

    // Accepts signed integers, "w", "c*w", "w+b", "c*w+b" (the printed form).
    std::optional<Residue> parse(std::string_view s) const {
        auto parse_int = [](std::string_view t, long long& out) {
            if (t.empty())
                return false;
            std::size_t i = 0;
            bool negative = false;
            if (t[0] == '-' || t[0] == '+') {
                negative = t[0] == '-';
                i = 1;
            }
            if (i == t.size())
                return false;
            long long v = 0;
            for (; i < t.size(); ++i) {
                if (t[i] < '0' || t[i] > '9' || v > 1'000'000'000)
                    return false;
                v = v * 10 + (t[i] - '0');
            }
            out = negative ? -v : v;
            return true;
        };
        long long v = 0;
        if (parse_int(s, v))
            return lift_raw(v);
        if (t_->k != 2)
            return std::nullopt;
        auto wpos = s.find('w');
        if (wpos == std::string_view::npos)
            return std::nullopt;
        long long a = 1, b = 0;
        std::string_view head = s.substr(0, wpos);
        std::string_view tail = s.substr(wpos + 1);
        if (!head.empty()) {
            if (head.back() != '*' || !parse_int(head.substr(0, head.size() - 1), a))
                return std::nullopt;
        }
        if (!tail.empty()) {
            if (tail.front() != '+' && tail.front() != '-')
                return std::nullopt;
            if (!parse_int(tail, b))
                return std::nullopt;
        }
        return static_cast<Residue>(lift_raw(a) * t_->p + lift_raw(b));
    }

    friend bool operator==(const Field& a, const Field& b) { return a.t_ == b.t_; }

private:
    void check(FieldElem a) const {
        if (a.field_id != id())
            throw Error(Errc::context_mismatch, "element belongs to another field");
        if (a.value >= t_->q)
            throw Error(Errc::not_in_field, "residue outside " + name());
    }
    void check(FieldElem a, FieldElem b) const { check(a); check(b); }

    static std::shared_ptr<const Tables> build_tables(int p, int k) {
        auto t = std::make_shared<Tables>();
        t->p = p;
        t->k = k;
        t->q = k == 1 ? p : p * p;
        if (k == 2) {
            // Lexicographically smallest [c0, c1] with x^2 + c1 x + c0 rootless.
            for (int c0 = 0; c0 < p && t->modulus.empty(); ++c0)
                for (int c1 = 0; c1 < p && t->modulus.empty(); ++c1) {
                    bool root = false;
                    for (int x = 0; x < p; ++x)
                        root = root || (x * x + c1 * x + c0) % p == 0;
                    if (!root)
                        t->modulus = {c0, c1};
                }
        }
        const int q = t->q;
        t->add.resize(q * q);
        t->mul.resize(q * q);
        t->neg.resize(q);
        t->inv.assign(q, 0);
        for (int a = 0; a < q; ++a) {
            int a0 = a % p, a1 = a / p;
            t->neg[a] = static_cast<Residue>(((p - a0) % p) + ((p - a1) % p) * p);
            for (int b = 0; b < q; ++b) {
                int b0 = b % p, b1 = b / p;
                t->add[a * q + b] = static_cast<Residue>((a0 + b0) % p + ((a1 + b1) % p) * p);
                int c0 = a0 * b0, c1 = a0 * b1 + a1 * b0, c2 = a1 * b1;
                if (k == 2) {
                    // x^2 = -c1' x - c0'
                    c0 -= c2 * t->modulus[0];
                    c1 -= c2 * t->modulus[1];
                }
                c0 = ((c0 % p) + p) % p;
                c1 = ((c1 % p) + p) % p;
                t->mul[a * q + b] = static_cast<Residue>(c0 + c1 * p);
            }
        }
        for (int a = 1; a < q; ++a)
            for (int b = 1; b < q; ++b)
                if (t->mul[a * q + b] == 1)
                    t->inv[a] = static_cast<Residue>(b);
        return t;
    }

    std::shared_ptr<const Tables> t_;
};

} // namespace cartan_forge
