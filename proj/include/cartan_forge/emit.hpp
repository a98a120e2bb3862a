#pragma once

// Text renderings of a root report.

#include <sstream>
#include <string>

#include "cartan_forge/analysis.hpp"

namespace cartan_forge {

inline std::string latex_root(const Weight& w) {
    std::string s;
    for (std::size_t i = 0; i < w.k.size(); ++i) {
        if (w.k[i] == 0)
            continue;
        if (!s.empty())
            s += "+";
        if (w.k[i] != 1)
            s += std::to_string(w.k[i]);
        s += "\\alpha_{" + std::to_string(i + 1) + "}";
    }
    return s;
}

// Two-column table, one row per root vector; odd vectors framed, isotropic
// roots underlined, a rule between heights.
inline std::string emit_latex(const RootReport& r) {
    std::ostringstream o;
    o << "\\begin{tabular}{|l|l|}\n\\hline\nthe root vectors & the roots\\\\\n\\hline\n";
    int x = 0;
    int height = -1;
    for (const auto& e : r.entries) {
        if (height != -1 && e.height != height)
            o << "\\hline\n";
        height = e.height;
        for (int c = 0; c < e.multiplicity; ++c) {
            const std::string name = "x_{" + std::to_string(++x) + "}";
            const std::string vec = e.parity ? "\\fbox{$" + name + "$}" : "$" + name + "$";
            const std::string root = e.isotropic ? "\\underline{$" + latex_root(e.weight) + "$}"
                                                 : "$" + latex_root(e.weight) + "$";
            o << vec << " & " << root << "\\\\\n";
        }
    }
    o << "\\hline\n\\end{tabular}\n";
    return o.str();
}

// Same row format as the golden tables: k1,...,kn,parity,isotropic.
inline std::string emit_csv(const RootReport& r) {
    std::ostringstream o;
    for (const auto& e : r.entries)
        for (int c = 0; c < e.multiplicity; ++c) {
            for (int k : e.weight.k)
                o << k << ",";
            o << e.parity << "," << e.isotropic << "\n";
        }
    return o.str();
}

} // namespace cartan_forge
