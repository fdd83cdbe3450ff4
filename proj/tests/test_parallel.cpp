#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cge/cochains.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace cge;

TEST_CASE("for_each covers every index exactly once in both modes") {
    for (auto m : {parallel::Mode::Serial, parallel::Mode::OpenMP}) {
        parallel::set_mode(m);
        std::vector<int> hits(10000, 0);
        parallel::for_each(hits.size(), [&](std::size_t i) { hits[i] += 1; });
        for (int h : hits)
            CHECK(h == 1);
    }
    parallel::set_mode(parallel::Mode::OpenMP);
}

TEST_CASE("pairwise_sum is independent of the execution mode") {
    std::vector<double> a(123457);
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = std::sin(0.001 * (double)i) * 1e-3;
    parallel::set_mode(parallel::Mode::Serial);
    const double s1 = parallel::pairwise_sum(a);
    parallel::set_mode(parallel::Mode::OpenMP);
    const double s2 = parallel::pairwise_sum(a);
    CHECK(s1 == s2); // bit-identical
}

TEST_CASE("a full functional is bit-identical across modes") {
    const Domain q = Domain::make(DomainKind::S3xD2, {8, 8, 16, 8, 16});
    std::mt19937 rng(31);
    const GroupMap f = exp_loop(PolyAlg::random(3, rng, 0.8),
                                TimeProfile::random_bump(rng, 0.9)) *
                       exp_loop(PolyAlg::random(3, rng, 0.8),
                                TimeProfile::random_bump(rng, 0.9));
    parallel::set_mode(parallel::Mode::Serial);
    const double v1 = c5(f, q).raw;
    parallel::set_mode(parallel::Mode::OpenMP);
    const double v2 = c5(f, q).raw;
    CHECK(v1 == v2); // bit-identical
}
