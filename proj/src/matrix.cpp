#include "cge/matrix.hpp"

namespace cge {

namespace {

// in-place LU with partial pivoting; returns permutation sign, throws on
// singular input
int lu_decompose(Mat &m, std::array<int, Mat::max_rank> &perm) {
    const int n = m.rank();
    int sign = 1;
    for (int i = 0; i < n; ++i)
        perm[i] = i;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(m(col, col));
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m(r, col)) > best) {
                best = std::abs(m(r, col));
                piv = r;
            }
        if (best == 0.0)
            throw std::domain_error("Mat: singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j)
                std::swap(m(piv, j), m(col, j));
            std::swap(perm[piv], perm[col]);
            sign = -sign;
        }
        for (int r = col + 1; r < n; ++r) {
            const cplx f = m(r, col) / m(col, col);
            m(r, col) = f;
            for (int j = col + 1; j < n; ++j)
                m(r, j) -= f * m(col, j);
        }
    }
    return sign;
}

} // namespace

cplx Mat::det() const {
    Mat lu = *this;
    std::array<int, max_rank> perm;
    cplx d;
    try {
        d = cplx(lu_decompose(lu, perm), 0.0);
    } catch (const std::domain_error &) {
        return 0.0;
    }
    for (int i = 0; i < n_; ++i)
        d *= lu(i, i);
    return d;
}

Mat Mat::inverse() const {
    const int n = n_;
    Mat lu = *this;
    std::array<int, max_rank> perm;
    lu_decompose(lu, perm);
    Mat inv(n);
    // solve LU x = e_k column by column
    for (int k = 0; k < n; ++k) {
        std::array<cplx, max_rank> y{};
        for (int i = 0; i < n; ++i) {
            cplx rhs = (perm[i] == k) ? cplx(1.0) : cplx(0.0);
            for (int j = 0; j < i; ++j)
                rhs -= lu(i, j) * y[j];
            y[i] = rhs;
        }
        for (int i = n - 1; i >= 0; --i) {
            cplx rhs = y[i];
            for (int j = i + 1; j < n; ++j)
                rhs -= lu(i, j) * inv(j, k);
            inv(i, k) = rhs / lu(i, i);
        }
    }
    return inv;
}

} // namespace cge
