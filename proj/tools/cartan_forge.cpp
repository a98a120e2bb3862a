// cartan-forge: build, inspect and verify contragredient Lie superalgebras.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cartan_forge/cartan_forge.hpp"

namespace cf = cartan_forge;

namespace {

constexpr int exit_verify = 1;
constexpr int exit_usage = 2;
constexpr int exit_limit = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::map<std::string, std::string> parse_params(const std::vector<std::string>& raw) {
    std::map<std::string, std::string> out;
    for (const auto& p : raw) {
        auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("--param expects SYMBOL=VALUE, got '" + p + "'");
        out[p.substr(0, eq)] = p.substr(eq + 1);
    }
    return out;
}

const cf::CartanSpec& select(const cf::Catalog& cat, const std::string& name) {
    if (name.empty()) {
        if (cat.specs().size() == 1)
            return cat.specs().front();
        throw UsageError("catalog has " + std::to_string(cat.specs().size()) + " entries; name one");
    }
    return cat.get(name);
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw cf::Error(cf::Errc::io, "cannot write '" + path + "'");
    out << text;
}

std::string pair_text(cf::SdimPair p) { return std::to_string(p.even) + "|" + std::to_string(p.odd); }

std::vector<int> parse_chain(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty())
            continue;
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size() || v < 1)
                throw std::invalid_argument(tok);
            out.push_back(v - 1);
        } catch (const std::exception&) {
            throw UsageError("--chain expects 1-based indices, got '" + tok + "'");
        }
    }
    return out;
}

int report_error(const std::string& code, const std::string& msg, int status) {
    std::cerr << "error: " << code << ": " << msg << "\n";
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construct and verify contragredient Lie superalgebras over small finite fields"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "List catalog entries");

    std::string build_name, build_file, build_emit = "json", build_out;
    std::vector<std::string> build_params;
    int build_height = 64;
    auto* build_cmd = app.add_subcommand("build", "Build an algebra and print its root report");
    build_cmd->add_option("name", build_name, "Catalog entry");
    build_cmd->add_option("--file", build_file, "Read the entry from a catalog file");
    build_cmd->add_option("--param", build_params, "Bind a parameter, SYMBOL=VALUE")->allow_extra_args(false);
    build_cmd->add_option("--max-height", build_height, "Height limit")->check(CLI::PositiveNumber);
    build_cmd->add_option("--emit", build_emit, "Output format")->check(CLI::IsMember({"json", "latex", "csv"}));
    build_cmd->add_option("--out", build_out, "Output file (default stdout)");

    std::string sdim_name;
    std::vector<std::string> sdim_params;
    auto* sdim_cmd = app.add_subcommand("sdim", "Print the superdimension");
    sdim_cmd->add_option("name", sdim_name, "Catalog entry")->required();
    sdim_cmd->add_option("--param", sdim_params, "Bind a parameter, SYMBOL=VALUE")->allow_extra_args(false);

    std::string refl_name, refl_chain, refl_emit = "json";
    std::vector<std::string> refl_params;
    bool refl_enumerate = false;
    int refl_limit = 512;
    auto* refl_cmd = app.add_subcommand("reflect", "Apply odd reflections or enumerate the reflection orbit");
    refl_cmd->add_option("name", refl_name, "Catalog entry")->required();
    refl_cmd->add_option("--chain", refl_chain, "Comma-separated 1-based pivots");
    refl_cmd->add_flag("--enumerate", refl_enumerate, "Breadth-first search over all odd reflections");
    refl_cmd->add_option("--limit", refl_limit, "Maximum number of classes")->check(CLI::PositiveNumber);
    refl_cmd->add_option("--param", refl_params, "Bind a parameter, SYMBOL=VALUE")->allow_extra_args(false);
    refl_cmd->add_option("--emit", refl_emit, "Output format")->check(CLI::IsMember({"json", "dot"}));

    std::string verify_name, verify_json;
    bool verify_all = false;
    int verify_jobs = 1;
    auto* verify_cmd = app.add_subcommand("verify", "Compare builds against golden data");
    verify_cmd->add_option("name", verify_name, "Catalog entry");
    verify_cmd->add_flag("--all", verify_all, "Verify every entry");
    verify_cmd->add_option("--jobs", verify_jobs, "Worker threads")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--json", verify_json, "Write the JSON outcome to a file ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("usage", e.what(), exit_usage);
    }

    try {
        if (*list_cmd) {
            const cf::Catalog cat = cf::load_catalog();
            for (const auto& s : cat.specs())
                std::cout << s.name << "\t" << cf::source_name(s.source) << "\n";
            return 0;
        }

        if (*build_cmd) {
            if (build_file.empty() && build_name.empty())
                throw UsageError("build needs NAME or --file PATH");
            const cf::Catalog cat = build_file.empty() ? cf::load_catalog() : cf::Catalog::from_file(build_file);
            const cf::CartanSpec& spec = select(cat, build_name);
            cf::Limits lim;
            lim.max_height = build_height;
            const auto report = cf::root_report(cf::build(cf::instantiate(spec, parse_params(build_params)), lim));
            std::string text;
            if (build_emit == "json")
                text = cf::to_json(report).dump(2) + "\n";
            else if (build_emit == "latex")
                text = cf::emit_latex(report);
            else
                text = cf::emit_csv(report);
            write_output(text, build_out);
            return 0;
        }

        if (*sdim_cmd) {
            const cf::Catalog cat = cf::load_catalog();
            const auto report =
                cf::root_report(cf::build(cf::instantiate(cat.get(sdim_name), parse_params(sdim_params))));
            std::cout << pair_text(report.sdim) << "\n";
            if (report.derived)
                std::cout << report.sdim.even << "/" << report.derived->even << "|" << report.derived->odd << "\n";
            return 0;
        }

        if (*refl_cmd) {
            if (refl_enumerate && !refl_chain.empty())
                throw UsageError("--chain and --enumerate are exclusive");
            const cf::Catalog cat = cf::load_catalog();
            const cf::ConcreteCartan cc = cf::instantiate(cat.get(refl_name), parse_params(refl_params));
            cf::OrbitGraph g;
            if (refl_enumerate) {
                g = cf::enumerate_bases(cc, refl_limit);
            } else {
                cf::BaseState st = cf::BaseState::seed(cc);
                g.nodes.push_back({cf::canonical_form(cc), st});
                for (int pivot : parse_chain(refl_chain)) {
                    st = cf::odd_reflect(st, cf::build(st.cartan), pivot);
                    const int from = static_cast<int>(g.nodes.size()) - 1;
                    g.nodes.push_back({cf::canonical_form(st.cartan), st});
                    g.edges.push_back({from, from + 1, pivot});
                }
            }
            std::cout << (refl_emit == "dot" ? cf::to_dot(g) : cf::to_json(g).dump(2) + "\n");
            if (g.limit_hit)
                std::cerr << "warning: limit-exceeded: stopped at " << refl_limit << " classes\n";
            return 0;
        }

        if (*verify_cmd) {
            if (verify_all == !verify_name.empty())
                throw UsageError("verify needs exactly one of NAME or --all");
            const cf::Catalog cat = cf::load_catalog();
            std::vector<const cf::CartanSpec*> specs;
            if (verify_all)
                for (const auto& s : cat.specs())
                    specs.push_back(&s);
            else
                specs.push_back(&cat.get(verify_name));
            const cf::VerifyOutcome out = cf::verify(specs, verify_jobs);
            if (verify_json != "-") {
                for (const auto& e : out.entries) {
                    std::cout << std::left << std::setw(18) << cf::status_name(e.status) << std::setw(16) << e.name;
                    if (e.status == cf::VerifyStatus::pass || e.status == cf::VerifyStatus::fail)
                        std::cout << std::right << std::fixed << std::setprecision(1) << std::setw(9) << e.wall_ms
                                  << " ms  " << e.summary();
                    std::cout << "\n";
                }
                std::cout << out.passed << " passed, " << out.failed << " failed, " << out.skipped << " skipped\n";
            }
            if (!verify_json.empty())
                write_output(cf::to_json(out).dump(2) + "\n", verify_json);
            if (!out.ok()) {
                for (const auto& e : out.entries)
                    if (e.status == cf::VerifyStatus::fail)
                        return report_error("verify-failed", e.name + ": " + e.summary(), exit_verify);
            }
            return 0;
        }
    } catch (const UsageError& e) {
        return report_error("usage", e.what(), exit_usage);
    } catch (const cf::Error& e) {
        const bool limit = e.code() == cf::Errc::limit_exceeded || e.code() == cf::Errc::multiplicity;
        return report_error(cf::errc_name(e.code()), e.what(), limit ? exit_limit : exit_usage);
    } catch (const std::exception& e) {
        return report_error("internal", e.what(), exit_usage);
    }
    return 0;
}
