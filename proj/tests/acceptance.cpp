// Acceptance gate: one line per criterion, exit 0 iff all pass.
#include "cge/suites.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

struct Criterion {
    int number;
    const char *title;
    std::vector<std::string> suites;
    // restrict to checks whose names start with one of these; empty = all
    std::vector<std::string> prefixes;
};

bool covered(const std::string &name, const std::vector<std::string> &pre) {
    if (pre.empty())
        return true;
    for (const auto &p : pre)
        if (name.rfind(p, 0) == 0)
            return true;
    return false;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "Witten invariant: C5 of the instanton rotation = -1/2, eps = -1",
         {"witten"}, {"c5_rotation", "c5_imag", "c5_wall", "epsilon_instanton"}},
        {2, "eps = +1 for a degree-0 rotation", {"witten"}, {"epsilon_deg0"}},
        {3, "Polyakov-Wiegmann over seeded pairs, with the beta x2 audit",
         {"polyakov-wiegmann"}, {}},
        {4, "descent equations p = 1,2,3 with refinement reduction",
         {"descent"}, {}},
        {5, "su(2) vanishing, pointwise", {"su2-vanishing"}, {}},
        {6, "cocycle identities (gamma, beta2, alpha mod Z, chi)",
         {"mickelsson-cocycle"}, {}},
        {7, "extension group law up to equivalence", {"extension-law"}, {}},
        {8, "Lie algebra: commutator derivative, antisymmetry, Jacobi",
         {"jacobi"}, {}},
        {9, "adjoint action versus the group-law oracle", {"adjoint"}, {}},
        {10, "mapping degrees: values, additivity, homotopy", {"degrees"}, {}},
        {11, "Z2 restriction: chi on embedded su(2) pairs", {"z2-restriction"},
         {}},
    };

    // run each needed suite once
    std::vector<std::string> names;
    for (const auto &c : criteria)
        for (const auto &s : c.suites)
            if (std::find(names.begin(), names.end(), s) == names.end())
                names.push_back(s);

    std::vector<cge::Report> reports;
    for (const auto &s : names) {
        cge::SuiteConfig cfg;
        cfg.suite = s;
        std::fprintf(stderr, "running suite %s ...\n", s.c_str());
        reports.push_back(cge::run_suite(cfg));
        std::fprintf(stderr, "  done in %.1f s\n",
                     reports.back().wall_time_s);
    }
    const auto report_of = [&](const std::string &s) -> const cge::Report & {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == s)
                return reports[i];
        throw std::logic_error("missing suite " + s);
    };

    int failures = 0;
    for (const auto &c : criteria) {
        bool pass = true;
        std::string worst;
        for (const auto &s : c.suites)
            for (const auto &chk : report_of(s).checks)
                if (covered(chk.name, c.prefixes) && !chk.pass) {
                    pass = false;
                    worst = chk.name;
                }
        if (!pass)
            ++failures;
        std::printf("criterion %2d: %s  -- %s%s%s\n", c.number,
                    pass ? "PASS" : "FAIL", c.title,
                    pass ? "" : "; failing check: ",
                    pass ? "" : worst.c_str());
    }
    std::printf("%d/%zu criteria passed\n",
                (int)criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
