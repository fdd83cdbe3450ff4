#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cge/extension.hpp"

#include <random>

using namespace cge;

namespace {

const Domain &s3_small() {
    static const Domain d = Domain::make(DomainKind::S3, {8, 8, 16});
    return d;
}
const Domain &t_small() {
    static const Domain d = Domain::make(DomainKind::S3xI, {8, 8, 16, 8});
    return d;
}
const Domain &q_small() {
    static const Domain d =
        Domain::make(DomainKind::S3xD2, {8, 8, 16, 8, 16});
    return d;
}

AffineDual rand_dual(std::mt19937 &rng) {
    std::uniform_real_distribution<double> ud(-0.3, 0.3);
    return {ud(rng),
            0.3 * sample_curvature(PolyConn::random(3, rng, 0.6), s3_small())};
}

FormField rand_probe(std::mt19937 &rng) {
    return sample_connection(PolyConn::random(3, rng, 0.8), s3_small());
}

} // namespace

TEST_CASE("AffineDual arithmetic and derivative") {
    std::mt19937 rng(51);
    const AffineDual a = rand_dual(rng), b = rand_dual(rng);
    const FormField p = rand_probe(rng);
    CHECK((a + b).eval(p) ==
          doctest::Approx(a.eval(p) + b.eval(p)).epsilon(1e-13));
    CHECK((2.0 * a).eval(p) ==
          doctest::Approx(2.0 * a.eval(p)).epsilon(1e-13));
    // derivative is the linear part
    CHECK(a.eval(p) - a.base() == doctest::Approx(a.derivative(p)));
}

TEST_CASE("dual_act composes the gauge action") {
    std::mt19937 rng(52);
    const AffineDual phi = rand_dual(rng);
    const GroupMap f = exp_map(PolyAlg::random(3, rng, 0.7));
    const FormField A = rand_probe(rng);
    // (f.phi)(A) = phi(f.A)
    CHECK(dual_act(f, phi).eval(A) ==
          doctest::Approx(phi.eval(gauge_transform(f, A))).epsilon(1e-10));
    // identity acts trivially
    CHECK(dual_act(GroupMap(3), phi).eval(A) ==
          doctest::Approx(phi.eval(A)).epsilon(1e-13));
}

TEST_CASE("gamma_dual agrees with the cochain-level split") {
    std::mt19937 rng(53);
    const GroupMap f = exp_path(PolyAlg::random(3, rng, 0.7));
    const GroupMap g = exp_path(PolyAlg::random(3, rng, 0.7));
    const FormField A = rand_probe(rng);
    const AffineDual gd = gamma_dual(f, g, t_small(), s3_small());
    const GammaSplit gs = gamma_split(f, g, t_small(), s3_small());
    CHECK(gd.eval(A) == doctest::Approx(gamma_value(gs, A)).epsilon(1e-12));
}

TEST_CASE("extension identity and inverse") {
    std::mt19937 rng(54);
    const ExtElement e = ext_identity(3, s3_small());
    const ExtElement a{exp_path(PolyAlg::random(3, rng, 0.7)),
                       rand_dual(rng)};
    const FormField p = rand_probe(rng);
    const ExtElement ea = multiply(e, a, t_small(), s3_small());
    CHECK(ea.dual.eval(p) == doctest::Approx(a.dual.eval(p)).epsilon(1e-10));
    const ExtElement ai = ext_inverse(a, t_small(), s3_small());
    const ExtElement prod = multiply(a, ai, t_small(), s3_small());
    CHECK(prod.path.entries().empty());
    CHECK(std::abs(prod.dual.eval(p)) < 1e-6);
}

TEST_CASE("chi_t of equal elements is one; boundary mismatch throws") {
    std::mt19937 rng(55);
    const GroupMap f = exp_path(PolyAlg::random(3, rng, 0.7));
    const cplx chi = chi_t(f, f, t_small(), q_small());
    CHECK(std::abs(chi - cplx(1.0, 0.0)) < 1e-10);
    const GroupMap g = exp_path(PolyAlg::random(3, rng, 0.7));
    CHECK_THROWS_AS((void)chi_t(f, g, t_small(), q_small()),
                    std::invalid_argument);
}

TEST_CASE("j0_act shifts the path and the dual coherently") {
    std::mt19937 rng(56);
    const ExtElement a{exp_path(PolyAlg::random(3, rng, 0.7)),
                       rand_dual(rng)};
    const GroupMap j = exp_loop(PolyAlg::random(3, rng, 0.7),
                                TimeProfile::random_bump(rng, 0.9));
    const ExtElement b = j0_act(j, a, t_small(), s3_small(), q_small());
    const EquivReport r =
        equivalent(a, b, t_small(), s3_small(), q_small());
    CHECK(r.boundary_dist < 1e-10);
    CHECK(r.equal);
}

TEST_CASE("central term is antisymmetric and matches omega") {
    std::mt19937 rng(57);
    const PolyAlg xi = PolyAlg::random(3, rng, 0.8);
    const PolyAlg eta = PolyAlg::random(3, rng, 0.8);
    const AlgField x = alg_field(xi, s3_small());
    const AlgField y = alg_field(eta, s3_small());
    const AffineDual c = central_term(x, y);
    const AffineDual cr = central_term(y, x);
    const FormField p = rand_probe(rng);
    CHECK(c.eval(p) == doctest::Approx(-cr.eval(p)).epsilon(1e-12));
    const PolyConn a = PolyConn::random(3, rng, 0.8);
    CHECK(c.eval(sample_connection(a, s3_small())) ==
          doctest::Approx(omega(xi, eta, a, s3_small()).value)
              .epsilon(1e-10));
}

TEST_CASE("alg_bracket matches the pointwise commutator") {
    std::mt19937 rng(58);
    const PolyAlg xi = PolyAlg::random(3, rng, 0.8);
    const PolyAlg eta = PolyAlg::random(3, rng, 0.8);
    const AlgField x = alg_field(xi, s3_small());
    const AlgField y = alg_field(eta, s3_small());
    const AlgField b = alg_bracket(x, y);
    const std::size_t i = 77;
    const Mat want = comm(x.val.comp(0)[i], y.val.comp(0)[i]);
    CHECK(max_dist(b.val.comp(0)[i], want) < 1e-13);
}

TEST_CASE("adjoint of the identity is the identity") {
    std::mt19937 rng(59);
    const PolyAlg xi = PolyAlg::random(3, rng, 0.8);
    const AffineDual l = rand_dual(rng);
    const AffineDual nu = AffineDual::zero(s3_small(), 3);
    const ExtAlgebraElement ad =
        adjoint_Ad(GroupMap(3), nu, xi, l, t_small(), s3_small());
    const FormField p = rand_probe(rng);
    CHECK(ad.dual.eval(p) == doctest::Approx(l.eval(p)).epsilon(1e-10));
    CHECK(alg_dist(ad.xi, alg_field(xi, s3_small())) < 1e-10);
}
