#pragma once

#include "cge/cochains.hpp"

#include <vector>

namespace cge {

/// Affine functional on the space of su(n) connections over S3:
/// eval(A) = base + Im int_S3 tr(kernel ^ A).  Affinity is structural.
class AffineDual {
  public:
    AffineDual() = default;
    AffineDual(double base, FormField kernel)
        : base_(base), kernel_(std::move(kernel)) {}
    static AffineDual zero(const Domain &s3, int rank) {
        return {0.0, FormField(s3, 2, rank)};
    }

    double base() const { return base_; }
    const FormField &kernel() const { return kernel_; }
    int rank() const { return kernel_.rank(); }
    const Domain &domain() const { return kernel_.domain(); }

    double eval(const FormField &A, double *residual = nullptr) const {
        return base_ + dual_pair(kernel_, A, residual);
    }
    /// directional derivative, independent of the base point
    double derivative(const FormField &a) const {
        return dual_pair(kernel_, a);
    }

    AffineDual &operator+=(const AffineDual &o) {
        base_ += o.base_;
        kernel_ += o.kernel_;
        return *this;
    }
    AffineDual &operator-=(const AffineDual &o) {
        base_ -= o.base_;
        kernel_ -= o.kernel_;
        return *this;
    }
    friend AffineDual operator+(AffineDual a, const AffineDual &b) {
        return a += b;
    }
    friend AffineDual operator-(AffineDual a, const AffineDual &b) {
        return a -= b;
    }
    friend AffineDual operator*(double s, AffineDual a) {
        a.base_ *= s;
        a.kernel_ *= s;
        return a;
    }

  private:
    double base_ = 0.0;
    FormField kernel_;
};

/// (f.phi)(A) = phi(f.A): base gains phi's pairing with f^-1 df, the kernel
/// is conjugated.  f is evaluated on the kernel grid (use at_time for paths).
AffineDual dual_act(const GroupMap &f, const AffineDual &phi);

/// gamma(f,g;.) as an affine dual (base = beta_T, kernel from the boundary
/// c20 term)
AffineDual gamma_dual(const GroupMap &f, const GroupMap &g,
                      const Domain &t_dom, const Domain &s3);

// -- Lie algebra of the extension ---------------------------------------------

/// su(n)-valued 0-form on S3 carried together with its exact differential,
/// so that brackets stay closed under differentiation
struct AlgField {
    FormField val;  // degree 0
    FormField diff; // degree 1
};

AlgField alg_field(const PolyAlg &xi, const Domain &s3);
AlgField alg_bracket(const AlgField &x, const AlgField &y);
double alg_dist(const AlgField &x, const AlgField &y);

struct ExtAlgebraElement {
    AlgField xi;
    AffineDual dual;
};

/// the affine dual A -> D_m(d_A xi) = D_m(dxi) + D_m(A xi - xi A)
AffineDual dm_d_term(const AlgField &xi, const AffineDual &m);

/// central term kernel of the extended bracket, normalized so that eval
/// matches the commutator-cocycle finite-difference oracle
AffineDual central_term(const AlgField &xi, const AlgField &eta);

/// [(xi,l),(eta,m)] = ([xi,eta], D_m(d_A xi) - D_l(d_A eta) + central)
ExtAlgebraElement bracket_ext(const ExtAlgebraElement &x,
                              const ExtAlgebraElement &y);

/// max over probes of the Jacobi sum of dual evaluations, plus the algebra
/// slot residual
double jacobi_residual(const ExtAlgebraElement &x, const ExtAlgebraElement &y,
                       const ExtAlgebraElement &z,
                       const std::vector<FormField> &probes);

// -- the extended group --------------------------------------------------------

/// element of the extension: a path f on T = S3 x [0,1] with f(.,0) = 1,
/// and the exponent of the character lambda = exp(2 pi i dual(.))
struct ExtElement {
    GroupMap path;
    AffineDual dual;
};

ExtElement ext_identity(int rank, const Domain &s3);

ExtElement multiply(const ExtElement &a, const ExtElement &b,
                    const Domain &t_dom, const Domain &s3);

ExtElement ext_inverse(const ExtElement &a, const Domain &t_dom,
                       const Domain &s3);

/// alpha_T(f,j) = beta_T(f,j) + C5(j) for a disk-extendable loop j
double alpha_t(const GroupMap &f, const GroupMap &j, const Domain &t_dom,
               const Domain &q);

/// chi_T(f,g) = exp(2 pi i alpha_T(f, f^-1 g)); requires matching t=1
/// boundaries and a disk-extendable f^-1 g
cplx chi_t(const GroupMap &f, const GroupMap &g, const Domain &t_dom,
           const Domain &q);

/// sup distance of the t=1 boundary maps over an S3 probe grid
double boundary_distance(const GroupMap &f, const GroupMap &g,
                         const Domain &s3);

/// action of j in J0 (loops with trivial ends): j.(f,lambda) = (f j, lambda
/// chi_T(f, f j))
ExtElement j0_act(const GroupMap &j, const ExtElement &a, const Domain &t_dom,
                  const Domain &s3, const Domain &q);

struct EquivReport {
    bool equal = false;
    double boundary_dist = 0.0;
    double phase_dist = 0.0;
};

/// (f,lambda) ~ (g,mu) iff the t=1 boundaries agree and mu = lambda
/// chi_T(f,g); the phase is compared on seeded probe connections plus A = 0
EquivReport equivalent(const ExtElement &a, const ExtElement &b,
                       const Domain &t_dom, const Domain &s3, const Domain &q,
                       double phase_tol = 5e-3);

// -- adjoint action --------------------------------------------------------------

/// Ad_{(g,nu)}(xi,l): algebra slot Ad_g xi at t = 1, dual slot the O(...)
/// functional (the D4 integrals realized over T)
ExtAlgebraElement adjoint_Ad(const GroupMap &g, const AffineDual &nu,
                             const PolyAlg &xi, const AffineDual &l,
                             const Domain &t_dom, const Domain &s3);

/// finite-difference oracle for adjoint_Ad: derivative at s = 0 of the dual
/// exponent of (g,nu)(e^{s xi}, s l)(g,nu)^-1, evaluated at probe A
double adjoint_fd(const GroupMap &g, const AffineDual &nu, const PolyAlg &xi,
                  const AffineDual &l, const FormField &probe,
                  const Domain &t_dom, const Domain &s3);

/// mixed second finite difference at (0,0) of
/// psi(s,t) = gamma(e^{s xi},e^{t eta}) + gamma(e^{s xi}e^{t eta},e^{-s xi})
///          + gamma(e^{s xi}e^{t eta}e^{-s xi},e^{-t eta}) at the probe A
double commutator_mixed_fd(const PolyAlg &xi, const PolyAlg &eta,
                           const FormField &probe, const Domain &t_dom,
                           const Domain &s3);

struct CommutatorCheck {
    double fd = 0.0;       // mixed finite difference of the group cocycle
    double expected = 0.0; // omega(xi,eta;A)
    double relative = 0.0;
};

/// compares the mixed finite difference against the Lie cocycle omega
CommutatorCheck commutator_cocycle_check(const PolyAlg &xi, const PolyAlg &eta,
                                         const ConnClosure &A,
                                         const Domain &t_dom,
                                         const Domain &s3);

} // namespace cge
