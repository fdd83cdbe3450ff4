#include "cge/cochains.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

using namespace cge;

namespace {

double run_c5(const GroupMap &loop, const Domain &q, double &secs) {
    const auto t0 = std::chrono::steady_clock::now();
    const double v = c5(loop, q).raw;
    secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
               .count();
    return v;
}

double run_beta(const GroupMap &f, const GroupMap &g, const Domain &m,
                double &secs) {
    const auto t0 = std::chrono::steady_clock::now();
    const double v = beta(f, g, m).value;
    secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
               .count();
    return v;
}

} // namespace

int main() {
    const Domain q = Domain::make(DomainKind::S3xD2, {12, 12, 24, 8, 32});
    const Domain m = Domain::make(DomainKind::S3xS1, {12, 12, 24, 32});
    std::mt19937 rng(2026);
    const GroupMap loop = rotation_loop(instanton(1));
    const GroupMap f = exp_loop(PolyAlg::random(3, rng, 0.8),
                                TimeProfile::random_bump(rng, 0.9));
    const GroupMap g = exp_loop(PolyAlg::random(3, rng, 0.8),
                                TimeProfile::random_bump(rng, 0.9));

    std::printf("%-22s %10s %10s %9s %s\n", "kernel", "serial[s]", "omp[s]",
                "speedup", "bit-identical");
    struct Row {
        const char *name;
        double vs, vo, ts, to;
    };
    Row rows[2] = {{"c5 rotation loop", 0, 0, 0, 0},
                   {"beta exp-loop pair", 0, 0, 0, 0}};

    parallel::set_mode(parallel::Mode::Serial);
    rows[0].vs = run_c5(loop, q, rows[0].ts);
    rows[1].vs = run_beta(f, g, m, rows[1].ts);
    parallel::set_mode(parallel::Mode::OpenMP);
    rows[0].vo = run_c5(loop, q, rows[0].to);
    rows[1].vo = run_beta(f, g, m, rows[1].to);

    bool ok = true;
    for (const Row &r : rows) {
        const bool same = r.vs == r.vo;
        ok = ok && same;
        std::printf("%-22s %10.2f %10.2f %8.2fx %s\n", r.name, r.ts, r.to,
                    r.ts / r.to, same ? "yes" : "NO");
    }
    return ok ? 0 : 1;
}
