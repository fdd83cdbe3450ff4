#include "cge/algebra.hpp"

#include <cmath>

namespace cge {
namespace algebra {

std::vector<Mat> su_basis(int n) {
    if (n < 2 || n > Mat::max_rank)
        throw std::invalid_argument("su_basis: rank must be in [2,4]");
    const cplx I(0.0, 1.0);
    std::vector<Mat> basis;
    if (n == 2) {
        // e_a = i sigma_a, fixed ordering so that e1 e2 = -e3
        Mat e1(2), e2(2), e3(2);
        e1(0, 1) = I;
        e1(1, 0) = I;
        e2(0, 1) = 1.0;
        e2(1, 0) = -1.0;
        e3(0, 0) = I;
        e3(1, 1) = -I;
        return {e1, e2, e3};
    }
    // generalized Gell-Mann construction times i
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            Mat sym(n), asym(n);
            sym(j, k) = I;
            sym(k, j) = I;
            asym(j, k) = 1.0;
            asym(k, j) = -1.0;
            basis.push_back(sym);
            basis.push_back(asym);
        }
    for (int d = 1; d < n; ++d) {
        Mat diag(n);
        const double norm = std::sqrt(2.0 / (d * (d + 1.0)));
        for (int j = 0; j < d; ++j)
            diag(j, j) = I * norm;
        diag(d, d) = -I * (norm * d);
        basis.push_back(diag);
    }
    return basis;
}

Mat bracket(const Mat &x, const Mat &y) {
    if (x.rank() != y.rank())
        throw std::invalid_argument("bracket: rank mismatch");
    return x * y - y * x;
}

Mat matrix_exp(const Mat &x) {
    if (!x.finite())
        throw std::invalid_argument("matrix_exp: non-finite input");
    const int n = x.rank();
    // scale so the Pade(7) approximant is well inside its accuracy radius
    double norm = x.max_abs() * n;
    int s = 0;
    while (norm > 0.25) {
        norm *= 0.5;
        ++s;
    }
    Mat a = x;
    a *= std::ldexp(1.0, -s);

    static const double c[8] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                25200.0,    1512.0,    56.0,      1.0};
    const Mat id = Mat::identity(n);
    const Mat a2 = a * a;
    const Mat a4 = a2 * a2;
    const Mat a6 = a4 * a2;
    const Mat u = a * (c[1] * id + c[3] * a2 + c[5] * a4 + c[7] * a6);
    const Mat v = c[0] * id + c[2] * a2 + c[4] * a4 + c[6] * a6;
    Mat r = (v - u).inverse() * (v + u);
    for (int i = 0; i < s; ++i)
        r = r * r;
    return r;
}

Mat project_algebra(const Mat &m) {
    const int n = m.rank();
    Mat x = 0.5 * (m - m.adjoint());
    const cplx t = x.trace() / double(n);
    for (int i = 0; i < n; ++i)
        x(i, i) -= t;
    return x;
}

Mat exp_su_fast(const Mat &x) {
    if (x.rank() != 2)
        return matrix_exp(x);
    // X = v . e with X^2 = -|v|^2 I, so exp X = cos|v| I + sinc|v| X
    const double v1 = x(0, 1).imag();
    const double v2 = x(0, 1).real();
    const double v3 = x(0, 0).imag();
    const double r = std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);
    const double c = std::cos(r);
    const double sc = (r < 1e-8) ? 1.0 - r * r / 6.0 : std::sin(r) / r;
    Mat g = x;
    g *= sc;
    g(0, 0) += c;
    g(1, 1) += c;
    return g;
}

Mat dexp_right(const Mat &x, const Mat &dx) {
    const int n = x.rank();
    const double norm = x.max_abs() * n;
    if (norm > 0.5) {
        // d(e^X) e^{-X} = V(X/2) + e^{X/2} V(X/2) e^{-X/2}
        Mat xh = x;
        xh *= 0.5;
        Mat dxh = dx;
        dxh *= 0.5;
        const Mat vh = dexp_right(xh, dxh);
        const Mat eh = matrix_exp(xh);
        Mat mxh = xh;
        mxh *= -1.0;
        return vh + eh * vh * matrix_exp(mxh);
    }
    // phi(ad_X)(dX) = sum_k ad_X^k(dX) / (k+1)!
    Mat term = dx;
    Mat v = dx;
    const double floor = 1e-17 * (dx.max_abs() + 1e-300);
    double fact = 1.0;
    for (int k = 1; k <= 12; ++k) {
        term = x * term - term * x;
        fact *= (k + 1);
        v += (1.0 / fact) * term;
        if (term.max_abs() / fact < floor)
            break;
    }
    return v;
}

bool is_algebra_element(const Mat &x, double tol) {
    return (x + x.adjoint()).max_abs() <= tol && std::abs(x.trace()) <= tol;
}

bool is_group_element(const Mat &g, double tol) {
    const Mat gg = g * g.adjoint();
    return max_dist(gg, Mat::identity(g.rank())) <= tol &&
           std::abs(g.det() - cplx(1.0)) <= tol;
}

} // namespace algebra
} // namespace cge
