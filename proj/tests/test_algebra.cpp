#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cge/algebra.hpp"

#include <random>

using namespace cge;

namespace {
Mat random_su(int n, std::mt19937 &rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat x = Mat::zero(n);
    for (const Mat &e : algebra::su_basis(n))
        x += nd(rng) * e;
    return x;
}
} // namespace

TEST_CASE("su basis is anti-hermitian, traceless, orthogonal") {
    for (int n = 2; n <= 4; ++n) {
        const auto basis = algebra::su_basis(n);
        CHECK(basis.size() == (std::size_t)(n * n - 1));
        for (std::size_t a = 0; a < basis.size(); ++a) {
            CHECK(max_dist(basis[a].adjoint(), -basis[a]) < 1e-14);
            CHECK(std::abs(basis[a].trace()) < 1e-14);
            for (std::size_t b = a + 1; b < basis.size(); ++b)
                CHECK(std::abs((basis[a] * basis[b]).trace()) < 1e-13);
        }
    }
}

TEST_CASE("su(2) basis satisfies the quaternion relations") {
    const auto e = algebra::su_basis(2);
    CHECK(max_dist(e[0] * e[0], -Mat::identity(2)) < 1e-14);
    CHECK(max_dist(e[0] * e[1], -e[2]) < 1e-14);
    CHECK(max_dist(e[1] * e[2], -e[0]) < 1e-14);
    CHECK(max_dist(e[2] * e[0], -e[1]) < 1e-14);
}

TEST_CASE("matrix_exp lands in the group and matches exp_su_fast") {
    std::mt19937 rng(7);
    for (int n = 2; n <= 3; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            const Mat x = random_su(n, rng);
            const Mat g = algebra::matrix_exp(x);
            CHECK(algebra::is_group_element(g));
            CHECK(max_dist(g, algebra::exp_su_fast(x)) < 1e-12);
        }
}

TEST_CASE("exp(x) exp(-x) = 1") {
    std::mt19937 rng(8);
    const Mat x = random_su(3, rng);
    CHECK(max_dist(algebra::matrix_exp(x) * algebra::matrix_exp(-x),
                   Mat::identity(3)) < 1e-13);
}

TEST_CASE("dexp_right matches a finite difference") {
    std::mt19937 rng(9);
    const Mat x = random_su(3, rng);
    const Mat dx = random_su(3, rng);
    const Mat v = algebra::dexp_right(x, dx);
    const double h = 1e-5;
    const Mat fd = (algebra::matrix_exp(x + h * dx) -
                    algebra::matrix_exp(x - h * dx)) *
                   (1.0 / (2.0 * h));
    CHECK(max_dist(v * algebra::matrix_exp(x), fd) < 1e-8);
}

TEST_CASE("project_algebra is idempotent and lands in su(n)") {
    std::mt19937 rng(10);
    Mat m(3);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m(i, j) = cplx(nd(rng), nd(rng));
    const Mat p = algebra::project_algebra(m);
    CHECK(algebra::is_algebra_element(p));
    CHECK(max_dist(algebra::project_algebra(p), p) < 1e-14);
}

TEST_CASE("inverse and det") {
    std::mt19937 rng(11);
    const Mat g = algebra::matrix_exp(random_su(3, rng));
    CHECK(max_dist(g * g.inverse(), Mat::identity(3)) < 1e-12);
    CHECK(std::abs(g.det() - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("bracket is the commutator") {
    std::mt19937 rng(12);
    const Mat x = random_su(2, rng), y = random_su(2, rng);
    CHECK(max_dist(algebra::bracket(x, y), x * y - y * x) < 1e-14);
    CHECK(algebra::is_algebra_element(algebra::bracket(x, y)));
}
