#pragma once

#include "cge/geometry.hpp"

#include <cstdint>
#include <vector>

namespace cge {

/// Increasing multi-indices of degree deg over dim chart coordinates,
/// in lexicographic order, represented as bitmasks.
struct FormBasis {
    int dim = 0, deg = 0;
    std::vector<std::uint8_t> masks;
    int pos[32]; // mask -> component position, -1 elsewhere

    static const FormBasis &get(int dim, int deg);
    int ncomp() const { return (int)masks.size(); }
};

/// Shuffle table for the wedge of a p-form with a q-form in dim coordinates:
/// all disjoint component pairs with their permutation sign.
struct WedgeTable {
    struct Term {
        int out, a, b;
        double sign;
    };
    std::vector<Term> terms;
    static const WedgeTable &get(int dim, int p, int q);
};

/// Matrix-valued differential p-form sampled on a domain grid, one grid
/// function per increasing multi-index.
template <class T> class BasicForm {
  public:
    BasicForm() = default;
    BasicForm(const Domain &d, int deg, int rank)
        : dom_(d), deg_(deg), rank_(rank) {
        const auto &b = FormBasis::get(d.dim(), deg);
        comp_.assign(b.ncomp(), std::vector<T>(d.node_count()));
        if constexpr (std::is_same_v<T, Mat>) {
            for (auto &c : comp_)
                for (auto &m : c)
                    m = Mat::zero(rank);
        }
    }

    const Domain &domain() const { return dom_; }
    int degree() const { return deg_; }
    int rank() const { return rank_; }
    int ncomp() const { return (int)comp_.size(); }

    std::vector<T> &comp(int ci) { return comp_[ci]; }
    const std::vector<T> &comp(int ci) const { return comp_[ci]; }

    BasicForm &operator+=(const BasicForm &o) {
        for (int ci = 0; ci < ncomp(); ++ci)
            for (std::size_t i = 0; i < comp_[ci].size(); ++i)
                comp_[ci][i] += o.comp_[ci][i];
        return *this;
    }
    BasicForm &operator-=(const BasicForm &o) {
        for (int ci = 0; ci < ncomp(); ++ci)
            for (std::size_t i = 0; i < comp_[ci].size(); ++i)
                comp_[ci][i] -= o.comp_[ci][i];
        return *this;
    }
    BasicForm &operator*=(double s) {
        for (auto &c : comp_)
            for (auto &v : c)
                v = v * s;
        return *this;
    }
    friend BasicForm operator+(BasicForm a, const BasicForm &b) {
        return a += b;
    }
    friend BasicForm operator-(BasicForm a, const BasicForm &b) {
        return a -= b;
    }
    friend BasicForm operator*(BasicForm a, double s) { return a *= s; }
    friend BasicForm operator*(double s, BasicForm a) { return a *= s; }

    double max_abs() const {
        double m = 0.0;
        for (const auto &c : comp_)
            for (const auto &v : c) {
                if constexpr (std::is_same_v<T, Mat>)
                    m = std::max(m, v.max_abs());
                else
                    m = std::max(m, std::abs(v));
            }
        return m;
    }

  private:
    Domain dom_;
    int deg_ = 0, rank_ = 0;
    std::vector<std::vector<T>> comp_;
};

using FormField = BasicForm<Mat>;   // matrix-valued
using ScalarForm = BasicForm<cplx>; // after trace

/// Noncommutative wedge: matrix factors stay in shuffle order.
FormField wedge(const FormField &a, const FormField &b);
ScalarForm wedge(const ScalarForm &a, const ScalarForm &b);

/// Chart exterior derivative via 4th-order chart_derivative stencils.
FormField exterior_d(const FormField &a);
ScalarForm exterior_d(const ScalarForm &a);

/// per-component, per-node matrix trace
ScalarForm trace_form(const FormField &a);

/// F = dA + A wedge A
FormField curvature(const FormField &A);

/// integral of a top-degree scalar form over its domain
cplx integrate(const ScalarForm &a);

/// Matrix-valued form at a single point; the node-level counterpart of
/// FormField used by the streaming kernels.
struct PtForm {
    int dim = 0, deg = 0;
    std::array<Mat, 10> c; // C(5,k) <= 10

    int ncomp() const { return FormBasis::get(dim, deg).ncomp(); }

    static PtForm zero(int dim, int deg, int rank) {
        PtForm f;
        f.dim = dim;
        f.deg = deg;
        const int nc = FormBasis::get(dim, deg).ncomp();
        for (int i = 0; i < nc; ++i)
            f.c[i] = Mat::zero(rank);
        return f;
    }

    PtForm &operator+=(const PtForm &o) {
        for (int i = 0; i < ncomp(); ++i)
            c[i] += o.c[i];
        return *this;
    }
    PtForm &operator-=(const PtForm &o) {
        for (int i = 0; i < ncomp(); ++i)
            c[i] -= o.c[i];
        return *this;
    }
    friend PtForm operator+(PtForm a, const PtForm &b) { return a += b; }
    friend PtForm operator-(PtForm a, const PtForm &b) { return a -= b; }
    friend PtForm operator*(PtForm a, double s) {
        for (int i = 0; i < a.ncomp(); ++i)
            a.c[i] *= s;
        return a;
    }
    friend PtForm operator*(PtForm a, cplx s) {
        for (int i = 0; i < a.ncomp(); ++i)
            a.c[i] *= s;
        return a;
    }
};

PtForm wedge(const PtForm &a, const PtForm &b);

/// trace of the unique top-degree component
cplx trace_top(const PtForm &a);

/// conjugate every component: g f g^-1
PtForm conjugate(const Mat &g, const PtForm &f, const Mat &ginv);

} // namespace cge
