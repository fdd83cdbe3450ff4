#include "cge/extension.hpp"

#include <cmath>
#include <stdexcept>

namespace cge {

namespace {

// normalization of the central term and of the two adjoint correction
// integrals; fixed by finite-difference oracles in the test suite
constexpr double kCentral = -norm24;
constexpr double kAdjT = 0.5 * norm24;  // +1/(96 pi^3)
constexpr double kAdjS3 = -0.5 * norm24; // -1/(96 pi^3)

const cplx kI(0.0, 1.0);

FormField bracket0(const FormField &a, const FormField &b) {
    return wedge(a, b) - wedge(b, a);
}

PtForm kernel_at(const FormField &k, std::size_t i) {
    PtForm f = PtForm::zero(k.domain().dim(), k.degree(), k.rank());
    for (int c = 0; c < k.ncomp(); ++c)
        f.c[c] = k.comp(c)[i];
    return f;
}

} // namespace

AffineDual dual_act(const GroupMap &f, const AffineDual &phi) {
    const Domain &s3 = phi.domain();
    AffineDual out = AffineDual::zero(s3, phi.rank());
    FormField kern(s3, 2, phi.rank());
    std::vector<cplx> shift(s3.node_count());
    parallel::for_each(s3.node_count(), [&](std::size_t i) {
        double c[5];
        s3.coords(i, c);
        const EvalPt p = eval_point(s3, c);
        Mat val;
        PtForm w;
        mc_at(f, s3, p, Side::Left, val, w);
        const PtForm k = kernel_at(phi.kernel(), i);
        shift[i] = trace_top(wedge(k, w));
        const PtForm moved = conjugate(val, k, val.adjoint());
        for (int ci = 0; ci < 3; ++ci)
            kern.comp(ci)[i] = moved.c[ci];
    });
    return {phi.base() + integrate_top(shift, s3).imag(), std::move(kern)};
}

AffineDual gamma_dual(const GroupMap &f, const GroupMap &g,
                      const Domain &t_dom, const Domain &s3) {
    GammaSplit s = gamma_split(f, g, t_dom, s3);
    return {s.base, std::move(s.kernel)};
}

// -- Lie algebra ---------------------------------------------------------------

AlgField alg_field(const PolyAlg &xi, const Domain &s3) {
    return {sample_algebra(xi, s3), sample_algebra_d(xi, s3)};
}

AlgField alg_bracket(const AlgField &x, const AlgField &y) {
    AlgField out;
    out.val = bracket0(x.val, y.val);
    out.diff = wedge(x.diff, y.val) + wedge(x.val, y.diff) -
               wedge(y.diff, x.val) - wedge(y.val, x.diff);
    return out;
}

double alg_dist(const AlgField &x, const AlgField &y) {
    return (x.val - y.val).max_abs() + (x.diff - y.diff).max_abs();
}

AffineDual dm_d_term(const AlgField &xi, const AffineDual &m) {
    const double base =
        integrate(trace_form(wedge(m.kernel(), xi.diff))).imag();
    return {base, bracket0(xi.val, m.kernel())};
}

AffineDual central_term(const AlgField &xi, const AlgField &eta) {
    return {0.0, kCentral * bracket0(xi.diff, eta.diff)};
}

ExtAlgebraElement bracket_ext(const ExtAlgebraElement &x,
                              const ExtAlgebraElement &y) {
    ExtAlgebraElement out;
    out.xi = alg_bracket(x.xi, y.xi);
    out.dual = dm_d_term(x.xi, y.dual) - dm_d_term(y.xi, x.dual) +
               central_term(x.xi, y.xi);
    return out;
}

double jacobi_residual(const ExtAlgebraElement &x, const ExtAlgebraElement &y,
                       const ExtAlgebraElement &z,
                       const std::vector<FormField> &probes) {
    const ExtAlgebraElement j1 = bracket_ext(x, bracket_ext(y, z));
    const ExtAlgebraElement j2 = bracket_ext(y, bracket_ext(z, x));
    const ExtAlgebraElement j3 = bracket_ext(z, bracket_ext(x, y));
    const AffineDual dual = j1.dual + j2.dual + j3.dual;
    const FormField val = j1.xi.val + j2.xi.val + j3.xi.val;
    const FormField diff = j1.xi.diff + j2.xi.diff + j3.xi.diff;
    double r = std::abs(dual.base());
    for (const FormField &p : probes)
        r = std::max(r, std::abs(dual.eval(p)));
    return r + val.max_abs() + diff.max_abs();
}

// -- group law -------------------------------------------------------------------

ExtElement ext_identity(int rank, const Domain &s3) {
    return {GroupMap(rank), AffineDual::zero(s3, rank)};
}

ExtElement multiply(const ExtElement &a, const ExtElement &b,
                    const Domain &t_dom, const Domain &s3) {
    ExtElement out;
    out.path = a.path * b.path;
    out.dual = a.dual + dual_act(a.path.at_time(1.0), b.dual) +
               gamma_dual(a.path, b.path, t_dom, s3);
    return out;
}

ExtElement ext_inverse(const ExtElement &a, const Domain &t_dom,
                       const Domain &s3) {
    ExtElement out;
    out.path = a.path.inverse();
    out.dual =
        -1.0 * dual_act(out.path.at_time(1.0),
                        a.dual + gamma_dual(a.path, out.path, t_dom, s3));
    return out;
}

double alpha_t(const GroupMap &f, const GroupMap &j, const Domain &t_dom,
               const Domain &q) {
    return beta(f, j, t_dom).value + c5(j, q).raw;
}

double boundary_distance(const GroupMap &f, const GroupMap &g,
                         const Domain &s3) {
    const GroupMap f1 = f.at_time(1.0), g1 = g.at_time(1.0);
    std::vector<double> d(s3.node_count());
    parallel::for_each(s3.node_count(), [&](std::size_t i) {
        double c[5];
        s3.coords(i, c);
        const EvalPt p = eval_point(s3, c);
        d[i] = max_dist(f1.eval(p), g1.eval(p));
    });
    double m = 0.0;
    for (double v : d)
        m = std::max(m, v);
    return m;
}

cplx chi_t(const GroupMap &f, const GroupMap &g, const Domain &t_dom,
           const Domain &q) {
    const auto res = q.resolutions();
    const Domain s3 = Domain::make(DomainKind::S3, {res[0], res[1], res[2]});
    if (boundary_distance(f, g, s3) > 1e-6)
        throw std::invalid_argument("chi_t: boundary values differ");
    const GroupMap j = f.inverse() * g;
    if (!j.disk_extendable())
        throw std::invalid_argument("chi_t: f^-1 g has no disk extension");
    return std::exp(cplx(0.0, 2.0 * pi_v * alpha_t(f, j, t_dom, q)));
}

ExtElement j0_act(const GroupMap &j, const ExtElement &a, const Domain &t_dom,
                  const Domain &s3, const Domain &q) {
    if (!j.disk_extendable())
        throw std::invalid_argument("j0_act: loop has no disk extension");
    ExtElement out;
    out.path = a.path * j;
    out.dual = a.dual + AffineDual(alpha_t(a.path, j, t_dom, q),
                                   FormField(s3, 2, a.path.rank()));
    return out;
}

EquivReport equivalent(const ExtElement &a, const ExtElement &b,
                       const Domain &t_dom, const Domain &s3, const Domain &q,
                       double phase_tol) {
    EquivReport r;
    r.boundary_dist = boundary_distance(a.path, b.path, s3);
    if (r.boundary_dist > 1e-6) {
        r.phase_dist = 2.0;
        return r;
    }
    const cplx chi = chi_t(a.path, b.path, t_dom, q);
    std::vector<FormField> probes;
    probes.emplace_back(s3, 1, a.path.rank()); // A = 0
    std::mt19937 rng(2026);
    for (int k = 0; k < 8; ++k)
        probes.push_back(sample_connection(
            PolyConn::random(a.path.rank(), rng, 0.8), s3));
    for (const FormField &p : probes) {
        const double gap = b.dual.eval(p) - a.dual.eval(p);
        r.phase_dist = std::max(
            r.phase_dist, std::abs(std::exp(cplx(0.0, 2.0 * pi_v * gap)) - chi));
    }
    r.equal = r.phase_dist <= phase_tol;
    return r;
}

// -- adjoint action -----------------------------------------------------------------

ExtAlgebraElement adjoint_Ad(const GroupMap &g, const AffineDual &nu,
                             const PolyAlg &xi, const AffineDual &l,
                             const Domain &t_dom, const Domain &s3) {
    const int rank = g.rank();
    const GroupMap g1 = g.at_time(1.0);

    // algebra slot Ad_g xi at t = 1, with d(g xi g^-1) = g (dxi + [W,xi]) g^-1
    ExtAlgebraElement out;
    out.xi.val = FormField(s3, 0, rank);
    out.xi.diff = FormField(s3, 1, rank);
    FormField corr(s3, 2, rank); // conjugated commutator kernel
    parallel::for_each(s3.node_count(), [&](std::size_t i) {
        double c[5];
        s3.coords(i, c);
        const EvalPt p = eval_point(s3, c);
        Mat val;
        PtForm w;
        mc_at(g1, s3, p, Side::Left, val, w);
        const Mat vinv = val.adjoint();
        const Mat x0 = xi.eval(p.amb);
        out.xi.val.comp(0)[i] = val * x0 * vinv;
        PtForm dxi = PtForm::zero(3, 1, rank);
        PtForm dwxi = PtForm::zero(3, 1, rank);
        for (int ci = 0; ci < 3; ++ci) {
            dxi.c[ci] = xi.chart_deriv(p, ci);
            dwxi.c[ci] = dxi.c[ci] + w.c[ci] * x0 - x0 * w.c[ci];
            out.xi.diff.comp(ci)[i] = val * dwxi.c[ci] * vinv;
        }
        const PtForm k = wedge(w, dxi) - wedge(dxi, w) + wedge(w, dwxi) -
                         wedge(dwxi, w);
        const PtForm moved = conjugate(val, k, vinv);
        for (int ci = 0; ci < 3; ++ci)
            corr.comp(ci)[i] = moved.c[ci];
    });

    // T-integral correction tr[(dxi + d_W xi) ^ W^3]
    std::vector<cplx> s(t_dom.node_count());
    parallel::for_each(t_dom.node_count(), [&](std::size_t i) {
        double c[5];
        t_dom.coords(i, c);
        const EvalPt p = eval_point(t_dom, c);
        Mat val;
        PtForm w;
        mc_at(g, t_dom, p, Side::Left, val, w);
        const Mat x0 = xi.eval(p.amb);
        PtForm dxi = PtForm::zero(4, 1, rank);
        PtForm dwxi = PtForm::zero(4, 1, rank);
        for (int ci = 0; ci < 3; ++ci)
            dxi.c[ci] = xi.chart_deriv(p, ci);
        dxi.c[3] = Mat::zero(rank);
        for (int ci = 0; ci < 4; ++ci)
            dwxi.c[ci] = dxi.c[ci] + w.c[ci] * x0 - x0 * w.c[ci];
        const PtForm w3 = wedge(w, wedge(w, w));
        s[i] = trace_top(wedge(dxi + dwxi, w3));
    });
    const cplx raw_t = integrate_top(s, t_dom);

    out.dual = dual_act(g1, l) - dm_d_term(out.xi, nu) +
               AffineDual(kAdjT * raw_t.imag(), kAdjS3 * corr);
    return out;
}

double adjoint_fd(const GroupMap &g, const AffineDual &nu, const PolyAlg &xi,
                  const AffineDual &l, const FormField &probe,
                  const Domain &t_dom, const Domain &s3) {
    const ExtElement big{g, nu};
    const ExtElement big_inv = ext_inverse(big, t_dom, s3);
    const auto psi = [&](double s) {
        const ExtElement x{exp_path(xi.scaled(s)), s * l};
        const ExtElement conj =
            multiply(multiply(big, x, t_dom, s3), big_inv, t_dom, s3);
        return conj.dual.eval(probe);
    };
    const auto diff = [&](double h) { return (psi(h) - psi(-h)) / (2.0 * h); };
    const double d1 = diff(1e-2), d2 = diff(5e-3);
    return (4.0 * d2 - d1) / 3.0;
}

double commutator_mixed_fd(const PolyAlg &xi, const PolyAlg &eta,
                           const FormField &probe, const Domain &t_dom,
                           const Domain &s3) {
    const int rank = probe.rank();
    const auto psi = [&](double s, double t) {
        const ExtElement a{exp_path(xi.scaled(s)), AffineDual::zero(s3, rank)};
        const ExtElement b{exp_path(eta.scaled(t)), AffineDual::zero(s3, rank)};
        ExtElement comm = multiply(a, b, t_dom, s3);
        comm = multiply(comm, ext_inverse(a, t_dom, s3), t_dom, s3);
        comm = multiply(comm, ext_inverse(b, t_dom, s3), t_dom, s3);
        return comm.dual.eval(probe);
    };
    const auto mixed = [&](double h) {
        return (psi(h, h) - psi(h, -h) - psi(-h, h) + psi(-h, -h)) /
               (4.0 * h * h);
    };
    const double d1 = mixed(2e-2), d2 = mixed(1e-2);
    return (4.0 * d2 - d1) / 3.0;
}

CommutatorCheck commutator_cocycle_check(const PolyAlg &xi, const PolyAlg &eta,
                                         const ConnClosure &A,
                                         const Domain &t_dom,
                                         const Domain &s3) {
    CommutatorCheck out;
    const FormField probe = sample_connection(A, s3);
    out.fd = commutator_mixed_fd(xi, eta, probe, t_dom, s3);
    out.expected = omega(xi, eta, A, s3).value;
    const double scale = std::max(std::abs(out.expected), 1e-12);
    out.relative = std::abs(out.fd - out.expected) / scale;
    return out;
}

} // namespace cge
