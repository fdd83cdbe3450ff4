#pragma once

#include "cge/fields.hpp"

#include <functional>
#include <memory>

namespace cge {

inline constexpr double pi_v = 3.14159265358979323846;
/// 1/(48 pi^3): normalization of beta, gamma and omega.  Calibrated so that
/// C5 of the 2 pi rotation of the embedded degree-1 instanton is -1/2; the
/// consistent pair (1/48, 1/480) is fixed by the Polyakov-Wiegmann audit.
inline constexpr double norm24 = 1.0 / (48.0 * pi_v * pi_v * pi_v);
/// 1/(480 pi^3): normalization of the C5 functional
inline constexpr double norm240 = 1.0 / (480.0 * pi_v * pi_v * pi_v);

/// representative of x mod Z in (-1/2, 1/2]
double canonical_mod1(double x);
/// distance of x to the nearest integer
double integer_gap(double x);

/// L1 norm (cell-volume weighted) over all components and nodes
double form_l1(const ScalarForm &f);
/// max pointwise component magnitude
double form_max(const ScalarForm &f);

// -- point kernels (matrix-valued; trace afterwards) ------------------------

PtForm c02_pt(const PtForm &A, const PtForm &F);
PtForm c12_pt(const PtForm &V);
PtForm c11_pt(const PtForm &V, const PtForm &A, const PtForm &F);
/// A1 = g1^-1 dg1, V2 = dg2 g2^-1 (the pure-gauge reduction of c11)
PtForm c21_pt(const PtForm &A1, const PtForm &V2);
/// (1/2)[(W1 V2 - V2 W1), g1^-1 A g1] trace kernel
PtForm c20_pt(const Mat &g1, const Mat &g1inv, const PtForm &W1,
              const PtForm &V2, const PtForm &A);

// -- cochain forms on a grid (scalar, after trace) ---------------------------

ScalarForm c02_form(const ConnClosure &A, const Domain &d);
ScalarForm c12_form(const GroupMap &g, const Domain &d);
ScalarForm c11_form(const GroupMap &g, const ConnClosure &A, const Domain &d);
ScalarForm c21_form(const GroupMap &g1, const GroupMap &g2, const Domain &d);
ScalarForm c20_form(const GroupMap &g1, const GroupMap &g2,
                    const ConnClosure &A, const Domain &d);
ScalarForm c30_form(const GroupMap &g1, const GroupMap &g2, const GroupMap &g3,
                    const Domain &d);

// -- group coboundaries; the A-slot of the leading term is gauge-transformed
//    by g1 (this direction makes the p=3 descent identity hold pointwise) ----

using ConnPtr = std::shared_ptr<const ConnClosure>;

/// the A-slot of a cochain acted on by g
ConnPtr acted(const GroupMap &g, ConnPtr A);

ScalarForm delta_c02(const GroupMap &g, ConnPtr A, const Domain &d);
ScalarForm delta_c11(const GroupMap &g1, const GroupMap &g2, ConnPtr A,
                     const Domain &d);
ScalarForm delta_c12(const GroupMap &g1, const GroupMap &g2, const Domain &d);
ScalarForm delta_c20(const GroupMap &g1, const GroupMap &g2,
                     const GroupMap &g3, ConnPtr A, const Domain &d);
ScalarForm delta_c21(const GroupMap &g1, const GroupMap &g2,
                     const GroupMap &g3, const Domain &d);

// -- descent equation checks -------------------------------------------------

struct DescentReport {
    double max_pointwise = 0.0;
    double integrated = 0.0; // L1
    double scale = 0.0;      // L1 of the largest constituent term
};

/// d[c11(g;A) - (1/2)tr(VAF - VFA + V^2 F)] - [c02(g.A) - c02(A)] + c12(g)
/// on a 5-domain; the corrected boundary term makes the identity pointwise
/// exact
DescentReport descent_p1(const GroupMap &g, ConnPtr A, const Domain &q);
/// d c21(g1,g2) + delta c12(g1,g2) on a 5-domain
DescentReport descent_p2_top(const GroupMap &g1, const GroupMap &g2,
                             const Domain &q);
/// d c20(g1,g2;A) - delta c11(g1,g2;A) + c21(g1,g2) on a 4-domain
DescentReport descent_p2(const GroupMap &g1, const GroupMap &g2, ConnPtr A,
                         const Domain &t);
/// d c30(g1,g2,g3) + delta c21(g1,g2,g3) on a 4-domain
DescentReport descent_p3_top(const GroupMap &g1, const GroupMap &g2,
                             const GroupMap &g3, const Domain &t);
/// delta c20(g1,g2,g3;A) - c30(g1,g2,g3) on S3
DescentReport descent_p3(const GroupMap &g1, const GroupMap &g2,
                         const GroupMap &g3, ConnPtr A, const Domain &s3);

// -- functionals --------------------------------------------------------------

struct C5Result {
    double raw = 0.0;       // value of the normalized integral
    double canonical = 0.0; // raw mod Z in (-1/2, 1/2]
    cplx phase;             // exp(2 pi i raw)
    double imag_residual = 0.0;
};

/// (i/240 pi^3) int_Q tr(du u^-1)^5 of a disk-extendable loop
C5Result c5(const GroupMap &loop, const Domain &q);

struct EpsilonResult {
    int sign = 0;          // +1 or -1
    double distance = 0.0; // |phase - sign|
    C5Result value;
};

/// exp(2 pi i C5) of the SU(3) embedding of a rank-2 loop, resolved to +-1
EpsilonResult epsilon(const GroupMap &u, const Domain &q);

struct BetaResult {
    double value = 0.0;
    double imag_residual = 0.0;
};

/// Mickelsson functional: normalized integral of c21 over a 4-domain
BetaResult beta(const GroupMap &f, const GroupMap &g, const Domain &m);

/// gamma(f,g;A) = base + Im int_S3 tr(kernel ^ A): the affine split of the
/// Mickelsson 2-cocycle over connections on S3
struct GammaSplit {
    double base = 0.0; // beta_T(f,g); the boundary term vanishes at A = 0
    double beta_imag_residual = 0.0;
    FormField kernel; // 2-form on S3 (already normalized)
};

GammaSplit gamma_split(const GroupMap &f, const GroupMap &g,
                       const Domain &t_dom, const Domain &s3);

/// Im int_S3 tr(kernel ^ A); *residual receives the real part's magnitude
double dual_pair(const FormField &kernel, const FormField &A,
                 double *residual = nullptr);

double gamma_value(const GammaSplit &s, const FormField &A);

/// independent route: normalized int_T of delta c11(f,g;A) with A pulled
/// back from S3 (t-constant closure)
double gamma_oracle(const GroupMap &f, const GroupMap &g, ConnPtr A,
                    const Domain &t_dom);

// -- Lie algebra cochains ------------------------------------------------------

ScalarForm e11_form(const PolyAlg &xi, const ConnClosure &A, const Domain &d);
ScalarForm e20_form(const PolyAlg &xi, const PolyAlg &eta,
                    const ConnClosure &A, const Domain &d);

struct OmegaResult {
    double value = 0.0; // real value carried by the i-component of the trace
    double real_residual = 0.0;
};

/// omega(xi,eta;A) = -(1/24 pi^3) int_S3 tr[(dxi deta - deta dxi) A]
OmegaResult omega(const PolyAlg &xi, const PolyAlg &eta, const ConnClosure &A,
                  const Domain &s3);

/// unnormalized kernel 2-form dxi ^ deta - deta ^ dxi on S3
FormField omega_kernel(const PolyAlg &xi, const PolyAlg &eta,
                       const Domain &s3);

/// xi.e11(eta) - eta.e11(xi) + e11([xi,eta]) + 2 d e20(xi,eta) residual on a
/// 4-domain, with the gauge action xi.A = -d_A xi (pointwise-exact identity)
DescentReport lie_descent(const PolyAlg &xi, const PolyAlg &eta, ConnPtr A,
                          const Domain &d4);

/// Lie coboundary of the 2-form omega at the point f of the current group
double omega_closedness(const GroupMap &f, const PolyAlg &xi,
                        const PolyAlg &eta, const PolyAlg &zeta,
                        const Domain &s3);

// -- lemma-level checks --------------------------------------------------------

/// |C5(fg) - C5(f) - C5(g) - beta_M(f,g)| distance to the nearest integer;
/// f, g disk-extendable loops, beta evaluated on m, C5 on q
double pw_gap(const GroupMap &f, const GroupMap &g, const Domain &m,
              const Domain &q);

/// |C5(f0 g f0^-1) - C5(g) - beta_T(f0 g, f0^-1) - beta_T(f0, g)| mod Z for
/// t-constant f0
double mic5_gap(const GroupMap &f0, const GroupMap &g, const Domain &t,
                const Domain &q);

} // namespace cge
