#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace cge {

using cplx = std::complex<double>;

/// Dense complex matrix of rank 2..4, value semantics, fixed capacity.
/// This is the scalar type of the whole library: group elements,
/// Lie-algebra elements and the per-node values of matrix-valued forms.
class Mat {
  public:
    static constexpr int max_rank = 4;

    Mat() : n_(0) {}
    explicit Mat(int n) : n_(n) {
        if (n < 1 || n > max_rank)
            throw std::invalid_argument("Mat: rank out of range");
        a_.fill(cplx(0.0, 0.0));
    }

    static Mat zero(int n) { return Mat(n); }
    static Mat identity(int n) {
        Mat m(n);
        for (int i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    int rank() const { return n_; }

    cplx &operator()(int i, int j) { return a_[i * n_ + j]; }
    const cplx &operator()(int i, int j) const { return a_[i * n_ + j]; }

    Mat &operator+=(const Mat &o) {
        for (int k = 0; k < n_ * n_; ++k)
            a_[k] += o.a_[k];
        return *this;
    }
    Mat &operator-=(const Mat &o) {
        for (int k = 0; k < n_ * n_; ++k)
            a_[k] -= o.a_[k];
        return *this;
    }
    Mat &operator*=(cplx s) {
        for (int k = 0; k < n_ * n_; ++k)
            a_[k] *= s;
        return *this;
    }
    Mat &operator*=(double s) {
        for (int k = 0; k < n_ * n_; ++k)
            a_[k] *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat &b) { return a += b; }
    friend Mat operator-(Mat a, const Mat &b) { return a -= b; }
    friend Mat operator*(Mat a, cplx s) { return a *= s; }
    friend Mat operator*(cplx s, Mat a) { return a *= s; }
    friend Mat operator*(Mat a, double s) { return a *= s; }
    friend Mat operator*(double s, Mat a) { return a *= s; }
    friend Mat operator-(Mat a) { return a *= -1.0; }

    friend Mat operator*(const Mat &a, const Mat &b) {
        const int n = a.n_;
        Mat c(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const cplx aik = a(i, k);
                for (int j = 0; j < n; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    Mat adjoint() const {
        Mat m(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                m(i, j) = std::conj((*this)(j, i));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < n_; ++i)
            t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (int k = 0; k < n_ * n_; ++k)
            m = std::max(m, std::abs(a_[k]));
        return m;
    }

    double frob() const {
        double s = 0.0;
        for (int k = 0; k < n_ * n_; ++k)
            s += std::norm(a_[k]);
        return std::sqrt(s);
    }

    bool finite() const {
        for (int k = 0; k < n_ * n_; ++k)
            if (!std::isfinite(a_[k].real()) || !std::isfinite(a_[k].imag()))
                return false;
        return true;
    }

    cplx det() const;
    /// General small inverse (Gaussian elimination with partial pivoting).
    Mat inverse() const;

  private:
    int n_;
    std::array<cplx, max_rank * max_rank> a_;
};

/// max-norm distance to another matrix
inline double max_dist(const Mat &a, const Mat &b) { return (a - b).max_abs(); }

/// commutator ab - ba
inline Mat comm(const Mat &a, const Mat &b) { return a * b - b * a; }

} // namespace cge
