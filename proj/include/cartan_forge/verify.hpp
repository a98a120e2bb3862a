#pragma once

// Replays catalog entries against their golden data.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cartan_forge/analysis.hpp"
#include "cartan_forge/catalog.hpp"

namespace cartan_forge {

enum class VerifyStatus { pass, fail, skipped_external, skipped_no_golden };

inline const char* status_name(VerifyStatus s) {
    switch (s) {
    case VerifyStatus::pass: return "pass";
    case VerifyStatus::fail: return "fail";
    case VerifyStatus::skipped_external: return "skipped-external";
    case VerifyStatus::skipped_no_golden: return "skipped-no-golden";
    }
    return "?";
}

struct VerifyEntry {
    std::string name;
    VerifyStatus status = VerifyStatus::fail;
    CompareResult diff;
    std::string error; // build or instantiation failure
    double wall_ms = 0;

    std::string summary() const { return error.empty() ? diff.summary() : error; }
};

struct VerifyOutcome {
    std::vector<VerifyEntry> entries; // catalog order
    int passed = 0;
    int failed = 0;
    int skipped = 0;

    bool ok() const noexcept { return failed == 0; }
};

inline VerifyEntry verify_one(const CartanSpec& spec, const Limits& limits = {}) {
    VerifyEntry e;
    e.name = spec.name;
    if (spec.source == Source::external) {
        e.status = VerifyStatus::skipped_external;
        return e;
    }
    if (!spec.expected) {
        e.status = VerifyStatus::skipped_no_golden;
        return e;
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const RootReport rep = root_report(build(instantiate(spec), limits));
        e.diff = compare(rep, *spec.expected);
        e.status = e.diff.empty() ? VerifyStatus::pass : VerifyStatus::fail;
    } catch (const Error& err) {
        e.status = VerifyStatus::fail;
        e.error = std::string(errc_name(err.code())) + ": " + err.what();
    }
    e.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

// Entries are independent; `jobs` worker threads pull them in order.
inline VerifyOutcome verify(const std::vector<const CartanSpec*>& specs, int jobs = 1, const Limits& limits = {}) {
    VerifyOutcome out;
    out.entries.resize(specs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++)
            out.entries[i] = verify_one(*specs[i], limits);
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(specs.size())));
    std::vector<std::jthread> pool;
    for (int t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    for (const auto& e : out.entries) {
        if (e.status == VerifyStatus::pass)
            ++out.passed;
        else if (e.status == VerifyStatus::fail)
            ++out.failed;
        else
            ++out.skipped;
    }
    return out;
}

inline VerifyOutcome verify(const Catalog& cat, int jobs = 1, const Limits& limits = {}) {
    std::vector<const CartanSpec*> specs;
    for (const auto& s : cat.specs())
        specs.push_back(&s);
    return verify(specs, jobs, limits);
}

// Timing is left out so repeated runs produce identical bytes.
inline nlohmann::ordered_json to_json(const VerifyOutcome& v) {
    nlohmann::ordered_json j;
    auto entries = nlohmann::ordered_json::array();
    for (const auto& e : v.entries) {
        nlohmann::ordered_json o;
        o["name"] = e.name;
        o["status"] = status_name(e.status);
        const bool ran = e.status == VerifyStatus::pass || e.status == VerifyStatus::fail;
        o["summary"] = ran ? e.summary() : std::string();
        if (e.status == VerifyStatus::fail && e.error.empty())
            o["diff"] = to_json(e.diff);
        entries.push_back(std::move(o));
    }
    j["entries"] = std::move(entries);
    j["passed"] = v.passed;
    j["failed"] = v.failed;
    j["skipped"] = v.skipped;
    return j;
}

} // namespace cartan_forge
