#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cge/geometry.hpp"

#include <cmath>
#include <numeric>

using namespace cge;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("domain construction and validation") {
    const Domain s3 = Domain::make(DomainKind::S3, {8, 8, 16});
    CHECK(s3.dim() == 3);
    CHECK(s3.node_count() == 8u * 8u * 16u);
    CHECK_THROWS_AS(Domain::make(DomainKind::S3, {4, 8, 16}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Domain::make(DomainKind::S3, {8, 8}),
                    std::invalid_argument);
    const Domain q = Domain::make(DomainKind::S3xD2, {8, 8, 16, 8, 16});
    CHECK(q.dim() == 5);
}

TEST_CASE("unflatten/coords roundtrip and strides") {
    const Domain d = Domain::make(DomainKind::S3xI, {8, 8, 16, 8});
    int idx[8];
    d.unflatten(1234, idx);
    std::size_t flat = 0;
    for (int c = 0; c < d.dim(); ++c)
        flat += (std::size_t)idx[c] * d.stride(c);
    CHECK(flat == 1234u);
    double c[5];
    d.coords(1234, c);
    for (int k = 0; k < 4; ++k)
        CHECK(c[k] == d.axis(k).node(idx[k]));
}

TEST_CASE("chart volumes") {
    // S3 chart box (0,pi)x(0,pi)x(0,2pi)
    const Domain s3 = Domain::make(DomainKind::S3, {8, 8, 16});
    std::vector<double> one(s3.node_count(), 1.0);
    CHECK(integrate_top(one, s3) == doctest::Approx(2.0 * pi * pi * pi));
    // round-sphere volume 2 pi^2 from the metric density sin^2 psi sin theta
    const Domain s3f = Domain::make(DomainKind::S3, {32, 32, 16});
    std::vector<double> dens(s3f.node_count());
    for (std::size_t i = 0; i < s3f.node_count(); ++i) {
        double c[5];
        s3f.coords(i, c);
        dens[i] = std::sin(c[0]) * std::sin(c[0]) * std::sin(c[1]);
    }
    CHECK(integrate_top(dens, s3f) ==
          doctest::Approx(2.0 * pi * pi).epsilon(1e-3));
}

TEST_CASE("chart_to_ambient lands on the unit sphere") {
    double amb[4];
    chart_to_ambient(0.7, 1.1, 2.3, amb);
    CHECK(amb[0] * amb[0] + amb[1] * amb[1] + amb[2] * amb[2] +
              amb[3] * amb[3] ==
          doctest::Approx(1.0));
    double jac[4][3];
    chart_jacobian(0.7, 1.1, 2.3, jac);
    const double h = 1e-6;
    double amb2[4];
    chart_to_ambient(0.7 + h, 1.1, 2.3, amb2);
    for (int a = 0; a < 4; ++a)
        CHECK(jac[a][0] == doctest::Approx((amb2[a] - amb[a]) / h)
                               .epsilon(1e-4));
}

TEST_CASE("chart_derivative is 4th order on a smooth function") {
    auto residual = [](int n) {
        const Domain d = Domain::make(DomainKind::S3, {n, 8, 16});
        std::vector<double> f(d.node_count()), want(d.node_count());
        for (std::size_t i = 0; i < d.node_count(); ++i) {
            double c[5];
            d.coords(i, c);
            f[i] = std::sin(2.0 * c[0]);
            want[i] = 2.0 * std::cos(2.0 * c[0]);
        }
        const auto got = chart_derivative(f, 0, d);
        double m = 0.0;
        for (std::size_t i = 0; i < d.node_count(); ++i)
            m = std::max(m, std::abs(got[i] - want[i]));
        return m;
    };
    const double r1 = residual(16), r2 = residual(32);
    CHECK(r1 / r2 > 10.0); // ~16x for a 4th-order stencil
}

TEST_CASE("restrict_to_edge recovers boundary values") {
    const Domain d = Domain::make(DomainKind::S3xI, {8, 8, 16, 16});
    std::vector<double> f(d.node_count());
    for (std::size_t i = 0; i < d.node_count(); ++i) {
        double c[5];
        d.coords(i, c);
        f[i] = c[3] * c[3] * c[3]; // cubic in t, exact for the stencil
    }
    const auto edge = restrict_to_edge(f, 3, true, d);
    for (double v : edge)
        CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pairwise_sum matches accumulate") {
    std::vector<double> a(1001);
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = std::sin(0.1 * (double)i);
    const double want = std::accumulate(a.begin(), a.end(), 0.0);
    CHECK(parallel::pairwise_sum(a) == doctest::Approx(want).epsilon(1e-13));
}
