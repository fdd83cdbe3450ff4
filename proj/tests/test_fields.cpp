#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cge/fields.hpp"

#include <random>

using namespace cge;

TEST_CASE("instanton degrees on a small grid") {
    const Domain s3 = Domain::make(DomainKind::S3, {12, 12, 24});
    for (int k : {-1, 1})
        CHECK(mapping_degree(instanton(k), s3) ==
              doctest::Approx((double)k).epsilon(0.05).scale(1.0));
    CHECK(std::abs(mapping_degree(GroupMap(2), s3)) < 1e-12);
}

TEST_CASE("word cancellation in products") {
    std::mt19937 rng(21);
    const GroupMap f = exp_path(PolyAlg::random(3, rng, 0.8)) *
                       exp_path(PolyAlg::random(3, rng, 0.8));
    const GroupMap j = exp_loop(PolyAlg::random(3, rng, 0.8),
                                TimeProfile::random_bump(rng, 0.9));
    const GroupMap g = f * j;
    const GroupMap rel = f.inverse() * g;
    CHECK(rel.entries().size() == j.entries().size());
    CHECK(rel.disk_extendable());
    CHECK((f.inverse() * f).entries().empty());
}

TEST_CASE("inverse evaluates to the matrix inverse") {
    std::mt19937 rng(22);
    const GroupMap f = exp_map(PolyAlg::random(2, rng, 0.8)) * instanton(1);
    const EvalPt p = EvalPt::at(0.9, 1.3, 2.1);
    CHECK(max_dist(f.inverse().eval(p), f.eval(p).inverse()) < 1e-12);
}

TEST_CASE("paths start at the identity and loops close") {
    std::mt19937 rng(23);
    const PolyAlg xi = PolyAlg::random(3, rng, 0.8);
    const GroupMap p = exp_path(xi);
    const GroupMap l = exp_loop(xi, TimeProfile::random_bump(rng, 0.9));
    const EvalPt q0 = EvalPt::at(0.9, 1.3, 2.1, 0.0);
    const EvalPt q1 = EvalPt::at(0.9, 1.3, 2.1, 1.0);
    CHECK(max_dist(p.eval(q0), Mat::identity(3)) < 1e-12);
    CHECK(max_dist(l.eval(q0), Mat::identity(3)) < 1e-12);
    CHECK(max_dist(l.eval(q1), Mat::identity(3)) < 1e-12);
    CHECK(max_dist(p.at_time(1.0).eval(q0),
                   algebra::matrix_exp(xi.eval(q0.amb))) < 1e-10);
}

TEST_CASE("exact Maurer-Cartan agrees with the stencil version") {
    const Domain s3 = Domain::make(DomainKind::S3, {16, 16, 32});
    const GroupMap g = instanton(1);
    const FormField a = maurer_cartan(g, s3, Side::Left);
    const FormField b = maurer_cartan_exact(g, s3, Side::Left);
    CHECK((a - b).max_abs() < 5e-3); // stencil error only
}

TEST_CASE("mc_at matches the exact grid Maurer-Cartan form") {
    std::mt19937 rng(24);
    const Domain s3 = Domain::make(DomainKind::S3, {8, 8, 8});
    const GroupMap g = exp_map(PolyAlg::random(2, rng, 0.8)) * instanton(-1);
    const FormField v = maurer_cartan_exact(g, s3, Side::Right);
    double c[5];
    s3.coords(101, c);
    const EvalPt p = eval_point(s3, c);
    Mat val;
    PtForm w;
    mc_at(g, s3, p, Side::Right, val, w);
    CHECK(max_dist(val, g.eval(p)) < 1e-12);
    for (int ci = 0; ci < 3; ++ci)
        CHECK(max_dist(w.c[ci], v.comp(ci)[101]) < 1e-12);
}

TEST_CASE("pure gauge connections are flat") {
    std::mt19937 rng(25);
    const Domain s3 = Domain::make(DomainKind::S3, {8, 8, 8});
    const PureGaugeConn a(exp_map(PolyAlg::random(3, rng, 0.8)));
    const FormField f = sample_curvature(a, s3);
    CHECK(f.max_abs() < 1e-12);
}

TEST_CASE("TransformedConn matches the grid gauge transform") {
    std::mt19937 rng(26);
    const Domain s3 = Domain::make(DomainKind::S3, {8, 8, 8});
    const auto base =
        std::make_shared<PolyConn>(PolyConn::random(3, rng, 0.8));
    const GroupMap g = exp_map(PolyAlg::random(3, rng, 0.8));
    const TransformedConn t(g, base);
    const FormField want = gauge_transform(g, sample_connection(*base, s3));
    const FormField got = sample_connection(t, s3);
    CHECK((want - got).max_abs() < 1e-12);
}

TEST_CASE("PolyConn curvature closure matches F = dA + A^A under refinement") {
    std::mt19937 rng(27);
    const PolyConn a = PolyConn::random(3, rng, 0.8);
    auto residual = [&](int n) {
        const Domain s3 = Domain::make(DomainKind::S3, {n, n, n});
        return (curvature(sample_connection(a, s3)) -
                sample_curvature(a, s3))
            .max_abs();
    };
    CHECK(residual(16) / residual(32) > 8.0); // 4th-order stencil
}

TEST_CASE("sampled algebra differential matches the stencil under refinement") {
    std::mt19937 rng(28);
    const PolyAlg xi = PolyAlg::random(3, rng, 0.8);
    auto residual = [&](int n) {
        const Domain s3 = Domain::make(DomainKind::S3, {n, n, n});
        return (exterior_d(sample_algebra(xi, s3)) -
                sample_algebra_d(xi, s3))
            .max_abs();
    };
    CHECK(residual(16) / residual(32) > 8.0);
}

TEST_CASE("rotation loop is closed in t and extends over the disk") {
    const GroupMap l = rotation_loop(instanton(1));
    CHECK(l.disk_extendable());
    CHECK(l.periodic_in_t());
    const EvalPt q0 = EvalPt::at(0.9, 1.3, 2.1, 0.0);
    const EvalPt q1 = EvalPt::at(0.9, 1.3, 2.1, 1.0);
    CHECK(max_dist(l.eval(q0), l.eval(q1)) < 1e-12);
}

TEST_CASE("gauge action composes contravariantly") {
    // (fg).A = g.(f.A)
    std::mt19937 rng(29);
    const Domain s3 = Domain::make(DomainKind::S3, {8, 8, 8});
    const GroupMap f = exp_map(PolyAlg::random(3, rng, 0.8));
    const GroupMap g = exp_map(PolyAlg::random(3, rng, 0.8));
    const FormField A =
        sample_connection(PolyConn::random(3, rng, 0.8), s3);
    const FormField lhs = gauge_transform(f * g, A);
    const FormField rhs = gauge_transform(g, gauge_transform(f, A));
    CHECK((lhs - rhs).max_abs() < 1e-10);
}
