#pragma once

#include "cge/matrix.hpp"

#include <vector>

namespace cge {
namespace algebra {

/// tolerances of the su(n)/SU(n) membership checks
constexpr double algebra_tol = 1e-12;
constexpr double group_tol = 1e-10;

/// Basis of su(n): n^2-1 anti-Hermitian traceless matrices, pairwise
/// orthogonal under <X,Y> = -tr(XY).  For n = 2 the basis is e_a = i*sigma_a,
/// which satisfies the quaternionic relations e_a e_b = -eps_{abc} e_c (a != b)
/// and (e_a)^2 = -I.
std::vector<Mat> su_basis(int n);

/// XY - YX
Mat bracket(const Mat &x, const Mat &y);

/// matrix exponential, scaling-and-squaring with Pade(7)
Mat matrix_exp(const Mat &x);

/// (M - M^dag)/2 minus its trace part: projection onto su(n)
Mat project_algebra(const Mat &m);

/// exp for su(2) arguments via the quaternionic closed form; falls back to
/// matrix_exp for other ranks
Mat exp_su_fast(const Mat &x);

/// Right logarithmic derivative of the exponential: returns V with
/// d(e^X) = V e^X for a perturbation dX of X, i.e. V = phi(ad_X)(dX)
/// with phi(z) = (e^z - 1)/z.  Series with argument halving.
Mat dexp_right(const Mat &x, const Mat &dx);

bool is_algebra_element(const Mat &x, double tol = algebra_tol);
bool is_group_element(const Mat &g, double tol = group_tol);

} // namespace algebra
} // namespace cge
