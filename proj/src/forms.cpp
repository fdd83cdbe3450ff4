#include "cge/forms.hpp"

#include <map>
#include <mutex>

namespace cge {

namespace {

int popcount8(std::uint8_t m) { return __builtin_popcount(m); }

// sign of merging the indices of mask a before those of mask b
double shuffle_sign(std::uint8_t a, std::uint8_t b) {
    int inv = 0;
    for (int i = 0; i < 8; ++i)
        if (a & (1u << i))
            for (int j = 0; j < i; ++j)
                if (b & (1u << j))
                    ++inv;
    return (inv % 2 == 0) ? 1.0 : -1.0;
}

std::vector<std::uint8_t> masks_for(int dim, int deg) {
    // lexicographic order of increasing index tuples
    std::vector<std::uint8_t> out;
    for (std::uint32_t m = 0; m < (1u << dim); ++m)
        if (popcount8((std::uint8_t)m) == deg)
            out.push_back((std::uint8_t)m);
    // bitmask numeric order == colex; convert to lex order of tuples
    std::sort(out.begin(), out.end(), [](std::uint8_t x, std::uint8_t y) {
        std::vector<int> a, b;
        for (int i = 0; i < 8; ++i) {
            if (x & (1u << i))
                a.push_back(i);
            if (y & (1u << i))
                b.push_back(i);
        }
        return a < b;
    });
    return out;
}

} // namespace

const FormBasis &FormBasis::get(int dim, int deg) {
    static std::map<std::pair<int, int>, FormBasis> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(dim, deg);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    if (deg < 0 || deg > dim || dim < 1 || dim > 5)
        throw std::invalid_argument("FormBasis: bad degree/dimension");
    FormBasis b;
    b.dim = dim;
    b.deg = deg;
    b.masks = masks_for(dim, deg);
    for (int i = 0; i < 32; ++i)
        b.pos[i] = -1;
    for (int i = 0; i < (int)b.masks.size(); ++i)
        b.pos[b.masks[i]] = i;
    return cache.emplace(key, std::move(b)).first->second;
}

const WedgeTable &WedgeTable::get(int dim, int p, int q) {
    static std::map<std::tuple<int, int, int>, WedgeTable> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(dim, p, q);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    const FormBasis &ba = FormBasis::get(dim, p);
    const FormBasis &bb = FormBasis::get(dim, q);
    const FormBasis &bo = FormBasis::get(dim, p + q);
    WedgeTable t;
    for (int i = 0; i < ba.ncomp(); ++i)
        for (int j = 0; j < bb.ncomp(); ++j) {
            const std::uint8_t ma = ba.masks[i], mb = bb.masks[j];
            if (ma & mb)
                continue;
            t.terms.push_back(
                {bo.pos[ma | mb], i, j, shuffle_sign(ma, mb)});
        }
    return cache.emplace(key, std::move(t)).first->second;
}

template <class T>
static BasicForm<T> wedge_impl(const BasicForm<T> &a, const BasicForm<T> &b,
                               int rank) {
    if (!a.domain().same_grid(b.domain()))
        throw std::invalid_argument("wedge: domain mismatch");
    const int dim = a.domain().dim();
    if (a.degree() + b.degree() > dim)
        throw std::invalid_argument("wedge: degree overflow");
    const WedgeTable &t = WedgeTable::get(dim, a.degree(), b.degree());
    BasicForm<T> out(a.domain(), a.degree() + b.degree(), rank);
    const std::size_t n = a.domain().node_count();
    for (const auto &term : t.terms) {
        const auto &ca = a.comp(term.a);
        const auto &cb = b.comp(term.b);
        auto &co = out.comp(term.out);
        parallel::for_each(n, [&](std::size_t i) {
            co[i] += term.sign * (ca[i] * cb[i]);
        });
    }
    return out;
}

FormField wedge(const FormField &a, const FormField &b) {
    if (a.rank() != b.rank())
        throw std::invalid_argument("wedge: rank mismatch");
    return wedge_impl(a, b, a.rank());
}

ScalarForm wedge(const ScalarForm &a, const ScalarForm &b) {
    return wedge_impl(a, b, 0);
}

template <class T> static BasicForm<T> exterior_d_impl(const BasicForm<T> &a) {
    const Domain &d = a.domain();
    const int dim = d.dim();
    if (a.degree() >= dim)
        throw std::invalid_argument("exterior_d: top-degree input");
    const FormBasis &bi = FormBasis::get(dim, a.degree());
    const FormBasis &bo = FormBasis::get(dim, a.degree() + 1);
    BasicForm<T> out(d, a.degree() + 1, a.rank());
    for (int ci = 0; ci < a.ncomp(); ++ci) {
        const std::uint8_t mi = bi.masks[ci];
        for (int j = 0; j < dim; ++j) {
            if (mi & (1u << j))
                continue;
            // position of j within the merged index set
            int before = 0;
            for (int k = 0; k < j; ++k)
                if (mi & (1u << k))
                    ++before;
            const double sign = (before % 2 == 0) ? 1.0 : -1.0;
            const auto dj = chart_derivative(a.comp(ci), j, d);
            auto &co = out.comp(bo.pos[mi | (1u << j)]);
            parallel::for_each(dj.size(), [&](std::size_t i) {
                co[i] += sign * dj[i];
            });
        }
    }
    return out;
}

FormField exterior_d(const FormField &a) { return exterior_d_impl(a); }
ScalarForm exterior_d(const ScalarForm &a) { return exterior_d_impl(a); }

ScalarForm trace_form(const FormField &a) {
    ScalarForm out(a.domain(), a.degree(), 0);
    for (int ci = 0; ci < a.ncomp(); ++ci) {
        const auto &cm = a.comp(ci);
        auto &co = out.comp(ci);
        parallel::for_each(cm.size(),
                           [&](std::size_t i) { co[i] = cm[i].trace(); });
    }
    return out;
}

FormField curvature(const FormField &A) {
    if (A.degree() != 1)
        throw std::invalid_argument("curvature: connection must be a 1-form");
    return exterior_d(A) + wedge(A, A);
}

cplx integrate(const ScalarForm &a) {
    if (a.degree() != a.domain().dim())
        throw std::invalid_argument("integrate: not a top-degree form");
    return integrate_top(a.comp(0), a.domain());
}

PtForm wedge(const PtForm &a, const PtForm &b) {
    const WedgeTable &t = WedgeTable::get(a.dim, a.deg, b.deg);
    const int rank = a.c[0].rank();
    PtForm out = PtForm::zero(a.dim, a.deg + b.deg, rank);
    for (const auto &term : t.terms)
        out.c[term.out] += term.sign * (a.c[term.a] * b.c[term.b]);
    return out;
}

cplx trace_top(const PtForm &a) {
    if (a.deg != a.dim)
        throw std::invalid_argument("trace_top: not top degree");
    return a.c[0].trace();
}

PtForm conjugate(const Mat &g, const PtForm &f, const Mat &ginv) {
    PtForm out = f;
    for (int i = 0; i < f.ncomp(); ++i)
        out.c[i] = g * f.c[i] * ginv;
    return out;
}

} // namespace cge
