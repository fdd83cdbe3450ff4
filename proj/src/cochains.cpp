#include "cge/cochains.hpp"

#include <cmath>
#include <stdexcept>

namespace cge {

namespace {

// sign/orientation conventions; each is fixed by a dedicated experiment in
// the test suite (Polyakov-Wiegmann for the beta orientation, the cocycle
// identity for the gamma boundary, residual minimization for the actions)
constexpr double kBetaOrient = -1.0;
constexpr double kGammaBoundary = 1.0;
constexpr bool kActInverse = false;

const cplx kI(0.0, 1.0);

template <class K>
ScalarForm build_form(const Domain &d, int deg, const K &kernel) {
    ScalarForm out(d, deg, 0);
    const int nc = FormBasis::get(d.dim(), deg).ncomp();
    parallel::for_each(d.node_count(), [&](std::size_t i) {
        double c[5];
        d.coords(i, c);
        const PtForm m = kernel(eval_point(d, c));
        for (int k = 0; k < nc; ++k)
            out.comp(k)[i] = m.c[k].trace();
    });
    return out;
}

template <class K>
cplx integrate_stream(const Domain &d, const K &kernel) {
    std::vector<cplx> s(d.node_count());
    parallel::for_each(d.node_count(), [&](std::size_t i) {
        double c[5];
        d.coords(i, c);
        s[i] = kernel(eval_point(d, c));
    });
    return integrate_top(s, d);
}

} // namespace

double canonical_mod1(double x) { return x - std::ceil(x - 0.5); }

double integer_gap(double x) { return std::abs(x - std::nearbyint(x)); }

double form_l1(const ScalarForm &f) {
    double s = 0.0;
    for (int k = 0; k < f.ncomp(); ++k)
        for (const cplx &v : f.comp(k))
            s += std::abs(v);
    return s * f.domain().cell_volume();
}

double form_max(const ScalarForm &f) { return f.max_abs(); }

// -- point kernels -----------------------------------------------------------

PtForm c02_pt(const PtForm &A, const PtForm &F) {
    const PtForm A2 = wedge(A, A);
    return wedge(A, wedge(F, F)) + wedge(wedge(A2, A), F) * (-0.5) +
           wedge(wedge(A2, A2), A) * 0.1;
}

PtForm c12_pt(const PtForm &V) {
    const PtForm V2 = wedge(V, V);
    return wedge(wedge(V2, V2), V) * 0.1;
}

PtForm c11_pt(const PtForm &V, const PtForm &A, const PtForm &F) {
    const PtForm M = wedge(A, F) + wedge(F, A) - wedge(wedge(A, A), A);
    const PtForm VA = wedge(V, A);
    const PtForm V3 = wedge(wedge(V, V), V);
    return wedge(V, M) * (-0.5) + wedge(VA, VA) * 0.25 + wedge(V3, A) * 0.5;
}

PtForm c21_pt(const PtForm &A1, const PtForm &V2) {
    const PtForm A3 = wedge(wedge(A1, A1), A1);
    const PtForm VA = wedge(V2, A1);
    const PtForm V3 = wedge(wedge(V2, V2), V2);
    return wedge(V2, A3) * 0.5 + wedge(VA, VA) * 0.25 + wedge(V3, A1) * 0.5;
}

PtForm c20_pt(const Mat &g1, const Mat &g1inv, const PtForm &W1,
              const PtForm &V2, const PtForm &A) {
    const PtForm M = (wedge(W1, V2) - wedge(V2, W1)) * 0.5;
    return wedge(M, conjugate(g1inv, A, g1));
}

// -- grid cochain forms -------------------------------------------------------

ScalarForm c02_form(const ConnClosure &A, const Domain &d) {
    return build_form(d, 5, [&](const EvalPt &p) {
        PtForm a, f;
        A.eval(p, d, a, f);
        return c02_pt(a, f);
    });
}

ScalarForm c12_form(const GroupMap &g, const Domain &d) {
    return build_form(d, 5, [&](const EvalPt &p) {
        Mat val;
        PtForm v;
        mc_at(g, d, p, Side::Right, val, v);
        return c12_pt(v);
    });
}

ScalarForm c11_form(const GroupMap &g, const ConnClosure &A, const Domain &d) {
    return build_form(d, 4, [&](const EvalPt &p) {
        Mat val;
        PtForm v, a, f;
        mc_at(g, d, p, Side::Right, val, v);
        A.eval(p, d, a, f);
        return c11_pt(v, a, f);
    });
}

ScalarForm c21_form(const GroupMap &g1, const GroupMap &g2, const Domain &d) {
    return build_form(d, 4, [&](const EvalPt &p) {
        Mat v1, v2;
        PtForm a1, w2;
        mc_at(g1, d, p, Side::Left, v1, a1);
        mc_at(g2, d, p, Side::Right, v2, w2);
        return c21_pt(a1, w2);
    });
}

ScalarForm c20_form(const GroupMap &g1, const GroupMap &g2,
                    const ConnClosure &A, const Domain &d) {
    return build_form(d, 3, [&](const EvalPt &p) {
        Mat v1, v2;
        PtForm w1, w2, a, f;
        mc_at(g1, d, p, Side::Left, v1, w1);
        mc_at(g2, d, p, Side::Right, v2, w2);
        A.eval(p, d, a, f);
        return c20_pt(v1, v1.adjoint(), w1, w2, a);
    });
}

ScalarForm c30_form(const GroupMap &g1, const GroupMap &g2, const GroupMap &g3,
                    const Domain &d) {
    return build_form(d, 3, [&](const EvalPt &p) {
        Mat v1, v2, v3;
        PtForm a1, w2, w3;
        mc_at(g1, d, p, Side::Left, v1, a1);
        mc_at(g2, d, p, Side::Left, v2, w2);
        mc_at(g3, d, p, Side::Right, v3, w3);
        return c20_pt(v2, v2.adjoint(), w2, w3, a1);
    });
}

// -- group coboundaries -------------------------------------------------------

ConnPtr acted(const GroupMap &g, ConnPtr A) {
    return std::make_shared<TransformedConn>(kActInverse ? g.inverse() : g,
                                             std::move(A));
}

ScalarForm delta_c02(const GroupMap &g, ConnPtr A, const Domain &d) {
    ScalarForm r = c02_form(*acted(g, A), d);
    r -= c02_form(*A, d);
    return r;
}

ScalarForm delta_c11(const GroupMap &g1, const GroupMap &g2, ConnPtr A,
                     const Domain &d) {
    ScalarForm r = c11_form(g2, *acted(g1, A), d);
    r -= c11_form(g1 * g2, *A, d);
    r += c11_form(g1, *A, d);
    return r;
}

ScalarForm delta_c12(const GroupMap &g1, const GroupMap &g2, const Domain &d) {
    ScalarForm r = c12_form(g2, d);
    r -= c12_form(g1 * g2, d);
    r += c12_form(g1, d);
    return r;
}

ScalarForm delta_c20(const GroupMap &g1, const GroupMap &g2,
                     const GroupMap &g3, ConnPtr A, const Domain &d) {
    ScalarForm r = c20_form(g2, g3, *acted(g1, A), d);
    r -= c20_form(g1 * g2, g3, *A, d);
    r += c20_form(g1, g2 * g3, *A, d);
    r -= c20_form(g1, g2, *A, d);
    return r;
}

ScalarForm delta_c21(const GroupMap &g1, const GroupMap &g2,
                     const GroupMap &g3, const Domain &d) {
    ScalarForm r = c21_form(g2, g3, d);
    r -= c21_form(g1 * g2, g3, d);
    r += c21_form(g1, g2 * g3, d);
    r -= c21_form(g1, g2, d);
    return r;
}

// -- descent checks -----------------------------------------------------------

namespace {
DescentReport report_of(const ScalarForm &r, double scale) {
    return {form_max(r), form_l1(r), scale};
}
} // namespace

namespace {

// exterior derivative of the corrected boundary 4-form
//   c11(g;A) - (1/2) tr(VAF - VFA + V^2 F)
// expanded through the structure equations dV = V^2, dA = F - A^2,
// dF = FA - AF, so the variation identity is pointwise algebraic
cplx dc11_top(const PtForm &V, const PtForm &A, const PtForm &F) {
    const PtForm V2 = wedge(V, V), A2 = wedge(A, A);
    const PtForm dA = F - A2;
    const PtForm dF = wedge(F, A) - wedge(A, F);
    const PtForm A3 = wedge(A, A2);
    const PtForm dA3 =
        wedge(dA, A2) - wedge(A, wedge(dA, A)) + wedge(A2, dA);
    const cplx m1 = trace_top(wedge(V2, wedge(A, F)) -
                              wedge(V, wedge(dA, F)) +
                              wedge(V, wedge(A, dF)));
    const cplx m3 = trace_top(wedge(V2, A3) - wedge(V, dA3));
    const cplx m4 = trace_top(wedge(V2, dF));
    const cplx m6 = trace_top(
        wedge(V2, wedge(A, wedge(V, A))) - wedge(V, wedge(dA, wedge(V, A))) +
        wedge(wedge(V, A), wedge(V2, A)) - wedge(wedge(V, A), wedge(V, dA)));
    const cplx m7 =
        trace_top(wedge(wedge(V2, V2), A) - wedge(wedge(V, V2), dA));
    return -m1 + 0.5 * m3 - 0.5 * m4 + 0.25 * m6 + 0.5 * m7;
}

} // namespace

DescentReport descent_p1(const GroupMap &g, ConnPtr A, const Domain &q) {
    std::vector<double> res(q.node_count()), scl(q.node_count());
    std::vector<double> mx(q.node_count());
    parallel::for_each(q.node_count(), [&](std::size_t i) {
        double c[5];
        q.coords(i, c);
        const EvalPt p = eval_point(q, c);
        Mat val;
        PtForm v, a, f;
        mc_at(g, q, p, Side::Right, val, v);
        A->eval(p, q, a, f);
        const cplx lhs = dc11_top(v, a, f);
        const Mat gi = val.adjoint();
        const PtForm ag = conjugate(gi, a, val) + conjugate(gi, v, val);
        const PtForm fg = conjugate(gi, f, val);
        const cplx c12 =
            trace_top(wedge(v, wedge(v, wedge(v, wedge(v, v))))) * 0.1;
        const cplx rhs =
            trace_top(c02_pt(ag, fg)) - trace_top(c02_pt(a, f)) - c12;
        res[i] = std::abs(lhs - rhs);
        scl[i] = std::abs(lhs);
        mx[i] = res[i];
    });
    DescentReport rep;
    rep.integrated = integrate_top(res, q);
    rep.scale = integrate_top(scl, q);
    for (double v : mx)
        rep.max_pointwise = std::max(rep.max_pointwise, v);
    return rep;
}

DescentReport descent_p2_top(const GroupMap &g1, const GroupMap &g2,
                             const Domain &q) {
    ScalarForm r = exterior_d(c21_form(g1, g2, q));
    const double scale = form_l1(r);
    r += delta_c12(g1, g2, q);
    return report_of(r, scale);
}

DescentReport descent_p2(const GroupMap &g1, const GroupMap &g2, ConnPtr A,
                         const Domain &t) {
    ScalarForm r = exterior_d(c20_form(g1, g2, *A, t));
    r -= delta_c11(g1, g2, A, t);
    const double scale = form_l1(c21_form(g1, g2, t));
    r += c21_form(g1, g2, t);
    return report_of(r, scale);
}

DescentReport descent_p3_top(const GroupMap &g1, const GroupMap &g2,
                             const GroupMap &g3, const Domain &t) {
    ScalarForm r = exterior_d(c30_form(g1, g2, g3, t));
    const double scale = form_l1(r);
    r += delta_c21(g1, g2, g3, t);
    return report_of(r, scale);
}

DescentReport descent_p3(const GroupMap &g1, const GroupMap &g2,
                         const GroupMap &g3, ConnPtr A, const Domain &s3) {
    ScalarForm r = delta_c20(g1, g2, g3, A, s3);
    const double scale = form_l1(c30_form(g1, g2, g3, s3));
    r -= c30_form(g1, g2, g3, s3);
    return report_of(r, scale);
}

// -- functionals ----------------------------------------------------------------

C5Result c5(const GroupMap &loop, const Domain &q) {
    if (q.kind() != DomainKind::S3xD2)
        throw std::invalid_argument("c5: domain must be S3xD2");
    if (!loop.valid() || !loop.disk_extendable())
        throw std::invalid_argument("c5: loop has no disk extension");
    const cplx raw = integrate_stream(q, [&](const EvalPt &p) {
        Mat val;
        PtForm v;
        mc_at(loop, q, p, Side::Right, val, v);
        const PtForm v2 = wedge(v, v);
        return trace_top(wedge(wedge(v2, v2), v));
    });
    const cplx scaled = kI * norm240 * raw;
    C5Result r;
    r.raw = scaled.real();
    r.canonical = canonical_mod1(r.raw);
    r.phase = std::exp(cplx(0.0, 2.0 * pi_v * r.raw));
    r.imag_residual = std::abs(scaled.imag());
    return r;
}

EpsilonResult epsilon(const GroupMap &u, const Domain &q) {
    const GroupMap e = (u.rank() == 2) ? u.embedded() : u;
    EpsilonResult r;
    r.value = c5(e, q);
    const double dplus = std::abs(r.value.phase - cplx(1.0));
    const double dminus = std::abs(r.value.phase + cplx(1.0));
    r.sign = (dplus <= dminus) ? +1 : -1;
    r.distance = std::min(dplus, dminus);
    if (r.distance > 0.1)
        throw std::runtime_error("epsilon: phase too far from +-1");
    return r;
}

BetaResult beta(const GroupMap &f, const GroupMap &g, const Domain &m) {
    if (m.dim() != 4)
        throw std::invalid_argument("beta: domain must be 4-dimensional");
    const cplx raw = integrate_stream(m, [&](const EvalPt &p) {
        Mat v1, v2;
        PtForm a1, w2;
        mc_at(f, m, p, Side::Left, v1, a1);
        mc_at(g, m, p, Side::Right, v2, w2);
        return trace_top(c21_pt(a1, w2));
    });
    const cplx scaled = kBetaOrient * kI * norm24 * raw;
    return {scaled.real(), std::abs(scaled.imag())};
}

GammaSplit gamma_split(const GroupMap &f, const GroupMap &g,
                       const Domain &t_dom, const Domain &s3) {
    if (s3.kind() != DomainKind::S3)
        throw std::invalid_argument("gamma_split: kernel domain must be S3");
    const BetaResult b = beta(f, g, t_dom);
    GammaSplit out;
    out.base = b.value;
    out.beta_imag_residual = b.imag_residual;
    out.kernel = FormField(s3, 2, f.rank());
    for (const double ts : {1.0, 0.0}) {
        const double side = (ts == 1.0) ? 1.0 : -1.0;
        const GroupMap ft = f.at_time(ts), gt = g.at_time(ts);
        parallel::for_each(s3.node_count(), [&](std::size_t i) {
            double c[5];
            s3.coords(i, c);
            const EvalPt p = eval_point(s3, c);
            Mat v1, v2;
            PtForm w1, w2;
            mc_at(ft, s3, p, Side::Left, v1, w1);
            mc_at(gt, s3, p, Side::Right, v2, w2);
            PtForm k = (wedge(w1, w2) - wedge(w2, w1)) * 0.5;
            k = conjugate(v1, k, v1.adjoint());
            // eval convention Im tr(kernel ^ A): Re(i z) = -Im(z)
            k = k * (-side * kGammaBoundary * norm24);
            for (int ci = 0; ci < 3; ++ci)
                out.kernel.comp(ci)[i] += k.c[ci];
        });
    }
    return out;
}

double dual_pair(const FormField &kernel, const FormField &A,
                 double *residual) {
    const cplx raw = integrate(trace_form(wedge(kernel, A)));
    if (residual)
        *residual = std::abs(raw.real());
    return raw.imag();
}

double gamma_value(const GammaSplit &s, const FormField &A) {
    return s.base + dual_pair(s.kernel, A);
}

double gamma_oracle(const GroupMap &f, const GroupMap &g, ConnPtr A,
                    const Domain &t_dom) {
    const cplx raw = integrate(delta_c11(f, g, std::move(A), t_dom));
    return (kBetaOrient * kI * norm24 * raw).real();
}

// -- Lie algebra cochains --------------------------------------------------------

namespace {

ScalarForm e11_of(const FormField &A, const FormField &F,
                  const FormField &dxi) {
    const FormField M =
        (wedge(A, F) + wedge(F, A) - wedge(wedge(A, A), A)) * 0.5;
    return trace_form(wedge(M, dxi));
}

/// directional derivative of e11(.; A) in the connection direction a
ScalarForm e11_dir(const FormField &A, const FormField &F, const FormField &a,
                   const FormField &da, const FormField &dxi) {
    const FormField fhat = da + wedge(a, A) + wedge(A, a);
    FormField M = wedge(a, F) + wedge(F, a) + wedge(A, fhat) + wedge(fhat, A);
    M -= wedge(wedge(a, A), A) + wedge(wedge(A, a), A) + wedge(wedge(A, A), a);
    return trace_form(wedge(M * 0.5, dxi));
}

/// -d_A xi, the infinitesimal gauge action on the connection
FormField act_dir(const FormField &A, const FormField &xi0,
                  const FormField &dxi) {
    return (dxi + wedge(A, xi0) - wedge(xi0, A)) * (-1.0);
}

FormField bracket0(const FormField &a, const FormField &b) {
    return wedge(a, b) - wedge(b, a);
}

} // namespace

ScalarForm e11_form(const PolyAlg &xi, const ConnClosure &A, const Domain &d) {
    return e11_of(sample_connection(A, d), sample_curvature(A, d),
                  sample_algebra_d(xi, d));
}

ScalarForm e20_form(const PolyAlg &xi, const PolyAlg &eta,
                    const ConnClosure &A, const Domain &d) {
    const FormField dxi = sample_algebra_d(xi, d);
    const FormField deta = sample_algebra_d(eta, d);
    return trace_form(
        wedge(bracket0(dxi, deta), sample_connection(A, d)) * 0.5);
}

OmegaResult omega(const PolyAlg &xi, const PolyAlg &eta, const ConnClosure &A,
                  const Domain &s3) {
    const cplx raw = integrate(
        trace_form(wedge(omega_kernel(xi, eta, s3), sample_connection(A, s3))));
    return {-norm24 * raw.imag(), norm24 * std::abs(raw.real())};
}

FormField omega_kernel(const PolyAlg &xi, const PolyAlg &eta,
                       const Domain &s3) {
    return bracket0(sample_algebra_d(xi, s3), sample_algebra_d(eta, s3));
}

DescentReport lie_descent(const PolyAlg &xi, const PolyAlg &eta, ConnPtr A,
                          const Domain &d4) {
    const FormField Af = sample_connection(*A, d4);
    const FormField Ff = sample_curvature(*A, d4);
    const FormField xi0 = sample_algebra(xi, d4);
    const FormField eta0 = sample_algebra(eta, d4);
    const FormField dxi = sample_algebra_d(xi, d4);
    const FormField deta = sample_algebra_d(eta, d4);
    const FormField dbr =
        wedge(dxi, eta0) + wedge(xi0, deta) - wedge(deta, xi0) -
        wedge(eta0, dxi);
    const FormField a_xi = act_dir(Af, xi0, dxi);
    const FormField a_eta = act_dir(Af, eta0, deta);
    ScalarForm r = e11_dir(Af, Ff, a_xi, exterior_d(a_xi), deta);
    r -= e11_dir(Af, Ff, a_eta, exterior_d(a_eta), dxi);
    r += e11_of(Af, Ff, dbr);
    const double scale = form_l1(r);
    r += exterior_d(trace_form(wedge(bracket0(dxi, deta), Af)));
    return report_of(r, scale);
}

double omega_closedness(const GroupMap &f, const PolyAlg &xi,
                        const PolyAlg &eta, const PolyAlg &zeta,
                        const Domain &s3) {
    const FormField A = maurer_cartan_exact(f, s3, Side::Left);
    const FormField xi0 = sample_algebra(xi, s3), dxi = sample_algebra_d(xi, s3);
    const FormField eta0 = sample_algebra(eta, s3),
                    deta = sample_algebra_d(eta, s3);
    const FormField zeta0 = sample_algebra(zeta, s3),
                    dzeta = sample_algebra_d(zeta, s3);
    const auto pair = [&](const FormField &kern, const FormField &B) {
        return -norm24 * integrate(trace_form(wedge(kern, B))).imag();
    };
    const auto kern = [&](const FormField &da, const FormField &db) {
        return bracket0(da, db);
    };
    const auto dbr = [&](const FormField &x0, const FormField &dx,
                         const FormField &y0, const FormField &dy) {
        return wedge(dx, y0) + wedge(x0, dy) - wedge(dy, x0) - wedge(y0, dx);
    };
    // infinitesimal gauge direction of g -> g^-1 A g + g^-1 dg is +d_A xi
    const auto gauge_dir = [&](const FormField &x0, const FormField &dx) {
        return act_dir(A, x0, dx) * (-1.0);
    };
    const double act = pair(kern(deta, dzeta), gauge_dir(xi0, dxi)) -
                       pair(kern(dxi, dzeta), gauge_dir(eta0, deta)) +
                       pair(kern(dxi, deta), gauge_dir(zeta0, dzeta));
    const double br = pair(kern(dbr(xi0, dxi, eta0, deta), dzeta), A) -
                      pair(kern(dbr(xi0, dxi, zeta0, dzeta), deta), A) +
                      pair(kern(dbr(eta0, deta, zeta0, dzeta), dxi), A);
    return std::abs(act - br);
}

// -- lemma-level checks -----------------------------------------------------------

double pw_gap(const GroupMap &f, const GroupMap &g, const Domain &m,
              const Domain &q) {
    const double lhs = c5(f * g, q).raw - c5(f, q).raw - c5(g, q).raw;
    return integer_gap(lhs - beta(f, g, m).value);
}

double mic5_gap(const GroupMap &f0, const GroupMap &g, const Domain &t,
                const Domain &q) {
    if (f0.time_dependent())
        throw std::invalid_argument("mic5_gap: f0 must be t-constant");
    const GroupMap conj = f0 * g * f0.inverse();
    const double lhs = c5(conj, q).raw - c5(g, q).raw;
    const double rhs =
        beta(f0 * g, f0.inverse(), t).value + beta(f0, g, t).value;
    return integer_gap(lhs - rhs);
}

} // namespace cge
