#pragma once

#include "cge/matrix.hpp"
#include "cge/parallel.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cge {

enum class DomainKind { S3, S3xI, S3xS1, S3xD2 };

int domain_dim(DomainKind k);
const char *domain_name(DomainKind k);
DomainKind domain_from_name(const std::string &s);

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    int n = 0;
    bool periodic = false;
    double delta() const { return (hi - lo) / n; }
    double node(int i) const { return lo + (i + 0.5) * delta(); }
};

/// Chart-based midpoint grid over one of the four product domains.
/// Axis order: (psi, theta, phi) then t for S3xI / S3xS1, or (r, t) for
/// S3xD2.  Midpoint placement keeps nodes away from the chart-singular
/// loci psi in {0,pi}, theta in {0,pi}, r = 0.
class Domain {
  public:
    static Domain make(DomainKind kind, const std::vector<int> &resolutions,
                       int orientation = +1);

    DomainKind kind() const { return kind_; }
    int dim() const { return (int)axes_.size(); }
    int orientation() const { return orientation_; }
    const Axis &axis(int c) const { return axes_[c]; }

    std::size_t node_count() const {
        std::size_t n = 1;
        for (const auto &a : axes_)
            n *= (std::size_t)a.n;
        return n;
    }

    double cell_volume() const {
        double v = 1.0;
        for (const auto &a : axes_)
            v *= a.delta();
        return v;
    }

    void unflatten(std::size_t flat, int idx[]) const {
        for (int c = dim() - 1; c >= 0; --c) {
            idx[c] = (int)(flat % (std::size_t)axes_[c].n);
            flat /= (std::size_t)axes_[c].n;
        }
    }

    void coords(std::size_t flat, double c[]) const {
        int idx[8];
        unflatten(flat, idx);
        for (int k = 0; k < dim(); ++k)
            c[k] = axes_[k].node(idx[k]);
    }

    /// stride of axis c in the flat node index
    std::size_t stride(int c) const {
        std::size_t s = 1;
        for (int k = dim() - 1; k > c; --k)
            s *= (std::size_t)axes_[k].n;
        return s;
    }

    Domain refined(int factor) const;
    Domain flipped() const;
    std::vector<int> resolutions() const;

    bool same_grid(const Domain &o) const;

  private:
    DomainKind kind_ = DomainKind::S3;
    std::vector<Axis> axes_;
    int orientation_ = +1;
};

/// fixed chart map S3: (psi,theta,phi) -> (p,q,r,s) in R^4
inline void chart_to_ambient(double psi, double theta, double phi,
                             double amb[4]) {
    const double sp = std::sin(psi), cp = std::cos(psi);
    const double st = std::sin(theta), ct = std::cos(theta);
    amb[0] = sp * st * std::cos(phi);
    amb[1] = sp * st * std::sin(phi);
    amb[2] = sp * ct;
    amb[3] = cp;
}

/// jac[a][c] = d amb_a / d chart_c for the chart map above
inline void chart_jacobian(double psi, double theta, double phi,
                           double jac[4][3]) {
    const double sp = std::sin(psi), cp = std::cos(psi);
    const double st = std::sin(theta), ct = std::cos(theta);
    const double cf = std::cos(phi), sf = std::sin(phi);
    jac[0][0] = cp * st * cf;
    jac[0][1] = sp * ct * cf;
    jac[0][2] = -sp * st * sf;
    jac[1][0] = cp * st * sf;
    jac[1][1] = sp * ct * sf;
    jac[1][2] = sp * st * cf;
    jac[2][0] = cp * ct;
    jac[2][1] = -sp * st;
    jac[2][2] = 0.0;
    jac[3][0] = -sp;
    jac[3][1] = 0.0;
    jac[3][2] = 0.0;
}

/// Orientation-signed midpoint-rule integral of the single chart component
/// of a top-degree form.  Deterministic pairwise reduction.
double integrate_top(const std::vector<double> &samples, const Domain &d);
cplx integrate_top(const std::vector<cplx> &samples, const Domain &d);

namespace detail {
template <class T>
void line_derivative(const T *f, T *out, int n, double delta, bool periodic,
                     std::ptrdiff_t stride) {
    auto at = [&](int i) -> const T & { return f[(std::ptrdiff_t)i * stride]; };
    const double s = 1.0 / (12.0 * delta);
    for (int i = 0; i < n; ++i) {
        T v;
        if (periodic) {
            const int m2 = (i - 2 + 2 * n) % n, m1 = (i - 1 + n) % n;
            const int p1 = (i + 1) % n, p2 = (i + 2) % n;
            v = s * (at(m2) - 8.0 * at(m1) + 8.0 * at(p1) - at(p2));
        } else if (i >= 2 && i <= n - 3) {
            v = s * (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) -
                     at(i + 2));
        } else if (i == 0) {
            v = s * (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) +
                     16.0 * at(3) - 3.0 * at(4));
        } else if (i == 1) {
            v = s * (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) -
                     6.0 * at(3) + at(4));
        } else if (i == n - 2) {
            v = s * (3.0 * at(n - 1) + 10.0 * at(n - 2) - 18.0 * at(n - 3) +
                     6.0 * at(n - 4) - at(n - 5));
        } else {
            v = s * (25.0 * at(n - 1) - 48.0 * at(n - 2) + 36.0 * at(n - 3) -
                     16.0 * at(n - 4) + 3.0 * at(n - 5));
        }
        out[(std::ptrdiff_t)i * stride] = v;
    }
}
} // namespace detail

/// 4th-order chart derivative of a grid function along coordinate c.
/// Periodic wrap on periodic axes, one-sided stencils at the edges.
template <class T>
std::vector<T> chart_derivative(const std::vector<T> &samples, int c,
                                const Domain &d) {
    if (samples.size() != d.node_count())
        throw std::invalid_argument("chart_derivative: sample count mismatch");
    const Axis &ax = d.axis(c);
    if (ax.n < 5)
        throw std::invalid_argument("chart_derivative: axis too small");
    std::vector<T> out(samples.size());
    const std::size_t post = d.stride(c);
    const std::size_t pre = d.node_count() / ((std::size_t)ax.n * post);
    parallel::for_each(pre * post, [&](std::size_t w) {
        const std::size_t p = w / post, q = w % post;
        const std::size_t base = p * (std::size_t)ax.n * post + q;
        detail::line_derivative(samples.data() + base, out.data() + base,
                                ax.n, ax.delta(), ax.periodic,
                                (std::ptrdiff_t)post);
    });
    return out;
}

/// Values of a smooth grid function extrapolated to an axis endpoint
/// (4th-order one-sided Lagrange through the five nearest midpoints).
/// Returns samples on the grid with axis c removed.
template <class T>
std::vector<T> restrict_to_edge(const std::vector<T> &samples, int c,
                                bool upper_end, const Domain &d) {
    if (samples.size() != d.node_count())
        throw std::invalid_argument("restrict_to_edge: sample count mismatch");
    const Axis &ax = d.axis(c);
    if (ax.n < 5)
        throw std::invalid_argument("restrict_to_edge: axis too small");
    // Lagrange weights at x = -1/2 (cells away from nearest midpoint):
    // nodes 0,1,2,3,4 -> evaluated at -0.5
    static const double w[5] = {315.0 / 128.0, -420.0 / 128.0, 378.0 / 128.0,
                                -180.0 / 128.0, 35.0 / 128.0};
    const std::size_t post = d.stride(c);
    const std::size_t pre = d.node_count() / ((std::size_t)ax.n * post);
    std::vector<T> out(pre * post);
    parallel::for_each(pre * post, [&](std::size_t k) {
        const std::size_t p = k / post, q = k % post;
        const std::size_t base = p * (std::size_t)ax.n * post + q;
        auto at = [&](int i) -> const T & {
            const int j = upper_end ? ax.n - 1 - i : i;
            return samples[base + (std::size_t)j * post];
        };
        T v = w[0] * at(0);
        for (int i = 1; i < 5; ++i)
            v += w[i] * at(i);
        out[k] = v;
    });
    return out;
}

} // namespace cge
