#include "cge/fields.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace cge {

namespace {
const double pi = std::acos(-1.0);
const cplx I(0.0, 1.0);
} // namespace

// -- points ----------------------------------------------------------------

EvalPt EvalPt::at(double psi, double theta, double phi, double t, double r) {
    EvalPt p;
    p.psi = psi;
    p.theta = theta;
    p.phi = phi;
    p.t = t;
    p.r = r;
    chart_to_ambient(psi, theta, phi, p.amb);
    chart_jacobian(psi, theta, phi, p.jac);
    return p;
}

Coord axis_coord(const Domain &d, int axis) {
    if (axis < 3)
        return (Coord)axis;
    if (d.kind() == DomainKind::S3xD2)
        return axis == 3 ? Coord::Radial : Coord::Time;
    return Coord::Time;
}

EvalPt eval_point(const Domain &d, const double c[]) {
    double t = 0.0, r = 1.0;
    switch (d.kind()) {
    case DomainKind::S3:
        break;
    case DomainKind::S3xI:
    case DomainKind::S3xS1:
        t = c[3];
        break;
    case DomainKind::S3xD2:
        r = c[3];
        t = c[4];
        break;
    }
    return EvalPt::at(c[0], c[1], c[2], t, r);
}

// -- profiles --------------------------------------------------------------

TimeProfile TimeProfile::one() {
    TimeProfile p;
    p.kind_ = Kind::One;
    p.a_[0] = 1.0;
    return p;
}

TimeProfile TimeProfile::smoothstep() {
    TimeProfile p;
    p.kind_ = Kind::Smoothstep;
    return p;
}

TimeProfile TimeProfile::bump(double c0, double c1, double c2) {
    TimeProfile p;
    p.kind_ = Kind::Harmonic;
    p.a_ = {0.5 * c0 - 0.25 * c1, 0.5 * (c1 - c0), -0.25 * c1};
    p.b_ = {0.0, 0.5 * c2, -0.25 * c2};
    return p;
}

TimeProfile TimeProfile::random_bump(std::mt19937 &rng, double amp) {
    std::uniform_real_distribution<double> u(-amp, amp);
    const double c0 = u(rng), c1 = u(rng), c2 = u(rng);
    return bump(c0, c1, c2);
}

double TimeProfile::weight(double t, double r) const {
    switch (kind_) {
    case Kind::One:
        return 1.0;
    case Kind::Smoothstep:
        return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    case Kind::Harmonic: {
        double w = 0.0, rm = 1.0;
        for (int m = 0; m < 3; ++m) {
            const double c = std::cos(2.0 * pi * m * t);
            const double s = std::sin(2.0 * pi * m * t);
            w += rm * (a_[m] * c + b_[m] * s);
            rm *= r;
        }
        return w;
    }
    }
    return 0.0;
}

double TimeProfile::dt(double t, double r) const {
    switch (kind_) {
    case Kind::One:
        return 0.0;
    case Kind::Smoothstep: {
        const double u = t * (1.0 - t);
        return 30.0 * u * u;
    }
    case Kind::Harmonic: {
        double w = 0.0, rm = 1.0;
        for (int m = 0; m < 3; ++m) {
            const double c = std::cos(2.0 * pi * m * t);
            const double s = std::sin(2.0 * pi * m * t);
            w += rm * 2.0 * pi * m * (-a_[m] * s + b_[m] * c);
            rm *= r;
        }
        return w;
    }
    }
    return 0.0;
}

double TimeProfile::dr(double t, double r) const {
    if (kind_ != Kind::Harmonic)
        return 0.0;
    double w = 0.0, rm = 1.0;
    for (int m = 1; m < 3; ++m) {
        const double c = std::cos(2.0 * pi * m * t);
        const double s = std::sin(2.0 * pi * m * t);
        w += m * rm * (a_[m] * c + b_[m] * s);
        rm *= r;
    }
    return w;
}

nlohmann::json TimeProfile::describe() const {
    switch (kind_) {
    case Kind::One:
        return {{"profile", "one"}};
    case Kind::Smoothstep:
        return {{"profile", "smoothstep"}};
    case Kind::Harmonic:
        return {{"profile", "harmonic"},
                {"cos", {a_[0], a_[1], a_[2]}},
                {"sin", {b_[0], b_[1], b_[2]}}};
    }
    return {};
}

// -- polynomials -----------------------------------------------------------

namespace {

struct MonoTable {
    std::array<std::array<int, 4>, PolyScalar::nmono> e;
    int const_index = 0;
    MonoTable() {
        int k = 0;
        for (int d = 0; d <= 3; ++d)
            for (int e0 = d; e0 >= 0; --e0)
                for (int e1 = d - e0; e1 >= 0; --e1)
                    for (int e2 = d - e0 - e1; e2 >= 0; --e2) {
                        const int e3 = d - e0 - e1 - e2;
                        e[k] = {e0, e1, e2, e3};
                        if (e0 == 0 && e1 == 0 && e2 == 0 && e3 == 0)
                            const_index = k;
                        ++k;
                    }
    }
};

const MonoTable &monos() {
    static const MonoTable t;
    return t;
}

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i)
        r *= x;
    return r;
}

} // namespace

PolyScalar PolyScalar::random(std::mt19937 &rng, double amp) {
    std::uniform_real_distribution<double> u(-amp, amp);
    PolyScalar p;
    for (int k = 0; k < nmono; ++k)
        p.c_[k] = u(rng);
    return p;
}

double PolyScalar::eval(const double amb[4]) const {
    const auto &t = monos();
    double pw[4][4];
    for (int v = 0; v < 4; ++v) {
        pw[v][0] = 1.0;
        for (int n = 1; n < 4; ++n)
            pw[v][n] = pw[v][n - 1] * amb[v];
    }
    double s = 0.0;
    for (int k = 0; k < nmono; ++k)
        s += c_[k] * pw[0][t.e[k][0]] * pw[1][t.e[k][1]] * pw[2][t.e[k][2]] *
             pw[3][t.e[k][3]];
    return s;
}

void PolyScalar::gradient(const double amb[4], double g[4]) const {
    const auto &t = monos();
    double pw[4][4];
    for (int v = 0; v < 4; ++v) {
        pw[v][0] = 1.0;
        for (int n = 1; n < 4; ++n)
            pw[v][n] = pw[v][n - 1] * amb[v];
    }
    for (int v = 0; v < 4; ++v)
        g[v] = 0.0;
    for (int k = 0; k < nmono; ++k) {
        const auto &e = t.e[k];
        for (int v = 0; v < 4; ++v) {
            if (e[v] == 0)
                continue;
            double m = c_[k] * e[v] * pw[v][e[v] - 1];
            for (int w = 0; w < 4; ++w)
                if (w != v)
                    m *= pw[w][e[w]];
            g[v] += m;
        }
    }
}

nlohmann::json PolyScalar::describe() const {
    return nlohmann::json(std::vector<double>(c_.begin(), c_.end()));
}

namespace {
const std::vector<Mat> &basis_cached(int n) {
    static const std::vector<Mat> b2 = algebra::su_basis(2);
    static const std::vector<Mat> b3 = algebra::su_basis(3);
    static const std::vector<Mat> b4 = algebra::su_basis(4);
    switch (n) {
    case 2:
        return b2;
    case 3:
        return b3;
    default:
        return b4;
    }
}
} // namespace

PolyAlg PolyAlg::random(int rank, std::mt19937 &rng, double amp) {
    PolyAlg x;
    x.rank_ = rank;
    const int nc = rank * rank - 1;
    const double p0[4] = {0.0, 0.0, 0.0, 1.0};
    for (int a = 0; a < nc; ++a) {
        PolyScalar p = PolyScalar::random(rng, amp);
        p.coeff(monos().const_index) -= p.eval(p0);
        x.comp_.push_back(p);
    }
    return x;
}

PolyAlg PolyAlg::scaled(double s) const {
    PolyAlg x = *this;
    for (auto &c : x.comp_)
        for (int k = 0; k < PolyScalar::nmono; ++k)
            c.coeff(k) *= s;
    return x;
}

Mat PolyAlg::eval(const double amb[4]) const {
    const auto &b = basis_cached(rank_);
    Mat m = Mat::zero(rank_);
    for (std::size_t a = 0; a < comp_.size(); ++a)
        m += comp_[a].eval(amb) * b[a];
    return m;
}

Mat PolyAlg::chart_deriv(const EvalPt &p, int spatial_axis) const {
    const auto &b = basis_cached(rank_);
    Mat m = Mat::zero(rank_);
    for (std::size_t a = 0; a < comp_.size(); ++a) {
        double g[4];
        comp_[a].gradient(p.amb, g);
        double s = 0.0;
        for (int v = 0; v < 4; ++v)
            s += g[v] * p.jac[v][spatial_axis];
        m += s * b[a];
    }
    return m;
}

nlohmann::json PolyAlg::describe() const {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto &c : comp_)
        comps.push_back(c.describe());
    return {{"rank", rank_}, {"components", comps}};
}

// -- factors ---------------------------------------------------------------

namespace {

Mat embed3(const Mat &m2, cplx corner) {
    Mat m(3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m(i, j) = m2(i, j);
    m(2, 2) = corner;
    return m;
}

bool spatial(Coord c) { return (int)c < 3; }

} // namespace

void MapFactor::eval_with_derivs(const EvalPt &p, const Coord cs[], int nc,
                                 Mat &val, Mat dval[]) const {
    val = eval(p);
    for (int i = 0; i < nc; ++i)
        dval[i] = depends(cs[i]) ? deriv(p, cs[i]) : Mat::zero(rank());
}

Mat MapFactor::embedded_eval(const EvalPt &p) const {
    if (rank() != 2)
        throw std::logic_error("embedded_eval: factor is not rank 2");
    return embed3(eval(p), 1.0);
}

Mat MapFactor::embedded_deriv(const EvalPt &p, Coord c) const {
    if (rank() != 2)
        throw std::logic_error("embedded_deriv: factor is not rank 2");
    return embed3(deriv(p, c), 0.0);
}

namespace {

class ConstFactor final : public MapFactor {
  public:
    explicit ConstFactor(Mat u) : u_(std::move(u)) {}
    int rank() const override { return u_.rank(); }
    Mat eval(const EvalPt &) const override { return u_; }
    Mat deriv(const EvalPt &, Coord) const override {
        return Mat::zero(u_.rank());
    }
    bool depends(Coord) const override { return false; }
    bool disk_extendable() const override { return true; }
    bool periodic_in_t() const override { return true; }
    nlohmann::json describe() const override {
        nlohmann::json m = nlohmann::json::array();
        for (int i = 0; i < u_.rank(); ++i)
            for (int j = 0; j < u_.rank(); ++j)
                m.push_back({u_(i, j).real(), u_(i, j).imag()});
        return {{"factor", "const"}, {"rank", u_.rank()}, {"entries", m}};
    }

  private:
    Mat u_;
};

class InstantonFactor final : public MapFactor {
  public:
    explicit InstantonFactor(int k) : k_(k) {
        if (k == 0)
            throw std::invalid_argument("instanton: zero charge");
    }
    int rank() const override { return 2; }
    int charge() const override { return k_; }

    static Mat quat(const double amb[4]) {
        Mat q(2);
        q(0, 0) = cplx(amb[3], amb[2]);
        q(0, 1) = cplx(-amb[1], amb[0]);
        q(1, 0) = cplx(amb[1], amb[0]);
        q(1, 1) = cplx(amb[3], -amb[2]);
        return q;
    }

    Mat eval(const EvalPt &p) const override {
        Mat b = quat(p.amb);
        if (k_ < 0)
            b = b.adjoint();
        Mat r = b;
        for (int i = 1; i < std::abs(k_); ++i)
            r = r * b;
        return r;
    }

    Mat deriv(const EvalPt &p, Coord c) const override {
        if (!spatial(c))
            return Mat::zero(2);
        double damb[4];
        for (int v = 0; v < 4; ++v)
            damb[v] = p.jac[v][(int)c];
        Mat b = quat(p.amb), db = quat(damb);
        if (k_ < 0) {
            b = b.adjoint();
            db = db.adjoint();
        }
        const int m = std::abs(k_);
        // powers of b up to m-1
        Mat sum = Mat::zero(2);
        Mat lhs = Mat::identity(2);
        for (int j = 0; j < m; ++j) {
            Mat rhs = Mat::identity(2);
            for (int i = 0; i < m - 1 - j; ++i)
                rhs = rhs * b;
            sum += lhs * db * rhs;
            lhs = lhs * b;
        }
        return sum;
    }

    bool depends(Coord c) const override { return spatial(c); }
    bool disk_extendable() const override { return true; }
    bool periodic_in_t() const override { return true; }
    nlohmann::json describe() const override {
        return {{"factor", "instanton"}, {"charge", k_}};
    }

  private:
    int k_;
};

class ExpFactor final : public MapFactor {
  public:
    ExpFactor(PolyAlg xi, TimeProfile w) : xi_(std::move(xi)), w_(w) {}
    int rank() const override { return xi_.rank(); }

    Mat eval(const EvalPt &p) const override {
        return algebra::exp_su_fast(w_.weight(p.t, p.r) * xi_.eval(p.amb));
    }

    Mat deriv(const EvalPt &p, Coord c) const override {
        Mat val, dv[1];
        const Coord cs[1] = {c};
        eval_with_derivs(p, cs, 1, val, dv);
        return dv[0];
    }

    void eval_with_derivs(const EvalPt &p, const Coord cs[], int nc, Mat &val,
                          Mat dval[]) const override {
        const Mat xi = xi_.eval(p.amb);
        const double w = w_.weight(p.t, p.r);
        const Mat x = w * xi;
        val = algebra::exp_su_fast(x);
        for (int i = 0; i < nc; ++i) {
            switch (cs[i]) {
            case Coord::Time:
                // [x, xi] = 0, so the profile factor differentiates directly
                dval[i] = w_.dt(p.t, p.r) * (xi * val);
                break;
            case Coord::Radial:
                dval[i] = w_.dr(p.t, p.r) * (xi * val);
                break;
            default: {
                if (w == 0.0) {
                    dval[i] = Mat::zero(rank());
                    break;
                }
                const Mat dx = w * xi_.chart_deriv(p, (int)cs[i]);
                dval[i] = algebra::dexp_right(x, dx) * val;
            }
            }
        }
    }

    bool depends(Coord c) const override {
        if (spatial(c))
            return true;
        if (c == Coord::Time)
            return w_.time_dependent();
        return w_.kind() == TimeProfile::Kind::Harmonic;
    }
    bool disk_extendable() const override { return w_.disk_extendable(); }
    bool periodic_in_t() const override { return w_.periodic(); }
    nlohmann::json describe() const override {
        return {{"factor", "exp"},
                {"profile", w_.describe()},
                {"field", xi_.describe()}};
    }

  private:
    PolyAlg xi_;
    TimeProfile w_;
};

/// a(R(r), t) with R = sin(pi r / 2): identity-block rotation family whose
/// r = 1 slice is diag(1, e^{-2 pi i t}, e^{2 pi i t})
class RotPhaseFactor final : public MapFactor {
  public:
    int rank() const override { return 3; }

    Mat eval(const EvalPt &p) const override {
        const double R = std::sin(0.5 * pi * p.r);
        const double S = std::cos(0.5 * pi * p.r);
        const double w = 2.0 * pi * p.t;
        Mat a(3);
        a(0, 0) = 1.0;
        a(1, 1) = R * std::exp(-I * w);
        a(1, 2) = S;
        a(2, 1) = -S;
        a(2, 2) = R * std::exp(I * w);
        return a;
    }

    Mat deriv(const EvalPt &p, Coord c) const override {
        const double R = std::sin(0.5 * pi * p.r);
        const double S = std::cos(0.5 * pi * p.r);
        const double w = 2.0 * pi * p.t;
        Mat a(3);
        if (c == Coord::Time) {
            a(1, 1) = -2.0 * pi * I * R * std::exp(-I * w);
            a(2, 2) = 2.0 * pi * I * R * std::exp(I * w);
        } else if (c == Coord::Radial) {
            const double dR = 0.5 * pi * S;
            const double dS = -0.5 * pi * R;
            a(1, 1) = dR * std::exp(-I * w);
            a(1, 2) = dS;
            a(2, 1) = -dS;
            a(2, 2) = dR * std::exp(I * w);
        }
        return a;
    }

    bool depends(Coord c) const override {
        return c == Coord::Time || c == Coord::Radial;
    }
    bool disk_extendable() const override { return true; }
    bool periodic_in_t() const override { return true; }
    nlohmann::json describe() const override {
        return {{"factor", "rot-phase"}};
    }
};

class EmbedFactor final : public MapFactor {
  public:
    explicit EmbedFactor(std::shared_ptr<const MapFactor> inner)
        : inner_(std::move(inner)) {
        if (inner_->rank() != 2)
            throw std::invalid_argument("embed: inner factor is not rank 2");
    }
    int rank() const override { return 3; }
    int charge() const override { return inner_->charge(); }
    Mat eval(const EvalPt &p) const override {
        return inner_->embedded_eval(p);
    }
    Mat deriv(const EvalPt &p, Coord c) const override {
        return inner_->embedded_deriv(p, c);
    }
    bool depends(Coord c) const override { return inner_->depends(c); }
    bool disk_extendable() const override {
        return inner_->embedded_disk_extendable();
    }
    bool periodic_in_t() const override { return inner_->periodic_in_t(); }
    nlohmann::json describe() const override {
        return {{"factor", "embed"}, {"inner", inner_->describe()}};
    }

  private:
    std::shared_ptr<const MapFactor> inner_;
};

/// canonical embedding wrapper so that products of separately embedded
/// words still cancel symbolically
std::shared_ptr<const MapFactor>
embed_factor(const std::shared_ptr<const MapFactor> &f) {
    static std::map<const MapFactor *, std::weak_ptr<const MapFactor>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = cache[f.get()];
    if (auto p = slot.lock())
        return p;
    auto p = std::make_shared<EmbedFactor>(f);
    slot = p;
    return p;
}

/// b(t) = diag(e^{i pi t}, e^{-i pi t}); only used inside the conjugation
/// loop below, where the non-periodicity cancels
class Su2PhaseFactor final : public MapFactor {
  public:
    int rank() const override { return 2; }
    Mat eval(const EvalPt &p) const override {
        Mat b(2);
        b(0, 0) = std::exp(I * (pi * p.t));
        b(1, 1) = std::exp(-I * (pi * p.t));
        return b;
    }
    Mat deriv(const EvalPt &p, Coord c) const override {
        Mat b(2);
        if (c == Coord::Time) {
            b(0, 0) = I * pi * std::exp(I * (pi * p.t));
            b(1, 1) = -I * pi * std::exp(-I * (pi * p.t));
        }
        return b;
    }
    bool depends(Coord c) const override { return c == Coord::Time; }
    bool disk_extendable() const override { return false; }
    bool periodic_in_t() const override { return false; }
    nlohmann::json describe() const override {
        return {{"factor", "su2-phase"}};
    }
};

class Su2RotConjFactor final : public MapFactor {
  public:
    explicit Su2RotConjFactor(const GroupMap &f);

    int rank() const override { return 2; }
    Mat eval(const EvalPt &p) const override { return word_.eval(p); }
    Mat deriv(const EvalPt &p, Coord c) const override {
        return word_.deriv(p, c);
    }
    bool depends(Coord) const override { return true; }
    bool disk_extendable() const override { return false; }
    bool periodic_in_t() const override { return true; }

    Mat embedded_eval(const EvalPt &p) const override {
        return emb_.eval(p);
    }
    Mat embedded_deriv(const EvalPt &p, Coord c) const override {
        return emb_.deriv(p, c);
    }
    bool embedded_disk_extendable() const override {
        return emb_.disk_extendable();
    }

    nlohmann::json describe() const override {
        return {{"factor", "su2-rotation-loop"}, {"word", word_.describe()}};
    }

  private:
    GroupMap word_; // b f b^-1 f^-1, rank 2
    GroupMap emb_;  // a f~ a^-1 f~^-1, rank 3, defined on the disk
};

std::shared_ptr<const MapFactor> rot_phase_factor() {
    static const auto f = std::make_shared<RotPhaseFactor>();
    return f;
}

Su2RotConjFactor::Su2RotConjFactor(const GroupMap &f) {
    if (f.rank() != 2 || f.time_dependent())
        throw std::invalid_argument(
            "su2_rotation_loop: need a time-independent rank-2 map");
    GroupMap b = GroupMap::from_factor(std::make_shared<Su2PhaseFactor>());
    word_ = b * f * b.inverse() * f.inverse();
    GroupMap a = GroupMap::from_factor(rot_phase_factor());
    GroupMap f3 = f.embedded();
    emb_ = a * f3 * a.inverse() * f3.inverse();
}

} // namespace

// -- GroupMap --------------------------------------------------------------

GroupMap GroupMap::from_factor(std::shared_ptr<const MapFactor> f) {
    GroupMap g(f->rank());
    g.fs_.push_back({std::move(f), false});
    return g;
}

EvalPt GroupMap::fixed(const EvalPt &p) const {
    if (!fix_t_)
        return p;
    EvalPt q = p;
    q.t = *fix_t_;
    return q;
}

Mat GroupMap::eval(const EvalPt &p) const {
    if (!valid())
        throw std::logic_error("GroupMap: not initialized");
    const EvalPt q = fixed(p);
    Mat m = Mat::identity(rank_);
    for (const auto &e : fs_) {
        Mat v = e.f->eval(q);
        if (e.inv)
            v = v.adjoint();
        m = m * v;
    }
    return m;
}

Mat GroupMap::deriv(const EvalPt &p, Coord c) const {
    if (time_fixed() && c == Coord::Time)
        return Mat::zero(rank_);
    const EvalPt q = fixed(p);
    const std::size_t m = fs_.size();
    std::vector<Mat> vals(m);
    for (std::size_t i = 0; i < m; ++i) {
        vals[i] = fs_[i].f->eval(q);
        if (fs_[i].inv)
            vals[i] = vals[i].adjoint();
    }
    Mat sum = Mat::zero(rank_);
    Mat prefix = Mat::identity(rank_);
    for (std::size_t i = 0; i < m; ++i) {
        if (fs_[i].f->depends(c)) {
            Mat d = fs_[i].f->deriv(q, c);
            if (fs_[i].inv)
                d = d.adjoint();
            Mat term = prefix * d;
            for (std::size_t j = i + 1; j < m; ++j)
                term = term * vals[j];
            sum += term;
        }
        prefix = prefix * vals[i];
    }
    return sum;
}

void GroupMap::eval_derivs(const EvalPt &p, const Domain &d, Mat &val,
                           Mat dval[5]) const {
    if (!valid())
        throw std::logic_error("GroupMap: not initialized");
    const EvalPt q = fixed(p);
    const int dim = d.dim();
    Coord cs[5];
    for (int c = 0; c < dim; ++c)
        cs[c] = axis_coord(d, c);

    const std::size_t m = fs_.size();
    if (m == 0) {
        val = Mat::identity(rank_);
        for (int c = 0; c < dim; ++c)
            dval[c] = Mat::zero(rank_);
        return;
    }

    std::vector<std::array<Mat, 5>> der(m);
    std::vector<Mat> vals(m), suffix(m);
    for (std::size_t i = 0; i < m; ++i) {
        Mat dv[5];
        fs_[i].f->eval_with_derivs(q, cs, dim, vals[i], dv);
        if (fs_[i].inv) {
            vals[i] = vals[i].adjoint();
            for (int c = 0; c < dim; ++c)
                dv[c] = dv[c].adjoint();
        }
        for (int c = 0; c < dim; ++c)
            der[i][c] = dv[c];
    }
    suffix[m - 1] = vals[m - 1];
    for (std::size_t i = m - 1; i-- > 0;)
        suffix[i] = vals[i] * suffix[i + 1];
    val = suffix[0];

    for (int c = 0; c < dim; ++c) {
        if (time_fixed() && cs[c] == Coord::Time) {
            dval[c] = Mat::zero(rank_);
            continue;
        }
        Mat sum = Mat::zero(rank_);
        Mat prefix = Mat::identity(rank_);
        for (std::size_t i = 0; i < m; ++i) {
            if (fs_[i].f->depends(cs[c])) {
                Mat term = prefix * der[i][c];
                if (i + 1 < m)
                    term = term * suffix[i + 1];
                sum += term;
            }
            prefix = prefix * vals[i];
        }
        dval[c] = sum;
    }
}

GroupMap GroupMap::inverse() const {
    GroupMap g(rank_);
    g.fix_t_ = fix_t_;
    for (auto it = fs_.rbegin(); it != fs_.rend(); ++it)
        g.fs_.push_back({it->f, !it->inv});
    return g;
}

GroupMap operator*(const GroupMap &a, const GroupMap &b) {
    if (!a.valid() || !b.valid())
        throw std::logic_error("GroupMap product: not initialized");
    if (a.rank_ != b.rank_)
        throw std::invalid_argument("GroupMap product: rank mismatch");
    if (a.fix_t_ && b.fix_t_ && *a.fix_t_ != *b.fix_t_)
        throw std::invalid_argument(
            "GroupMap product: conflicting time restrictions");
    GroupMap g(a.rank_);
    g.fix_t_ = a.fix_t_ ? a.fix_t_ : b.fix_t_;
    g.fs_ = a.fs_;
    g.fs_.insert(g.fs_.end(), b.fs_.begin(), b.fs_.end());
    g.simplify();
    return g;
}

void GroupMap::simplify() {
    std::vector<Entry> out;
    for (const auto &e : fs_) {
        if (!out.empty() && out.back().f == e.f && out.back().inv != e.inv)
            out.pop_back();
        else
            out.push_back(e);
    }
    fs_ = std::move(out);
}

GroupMap GroupMap::at_time(double t) const {
    GroupMap g = *this;
    g.fix_t_ = t;
    return g;
}

bool GroupMap::disk_extendable() const {
    if (time_fixed())
        return true;
    for (const auto &e : fs_)
        if (!e.f->disk_extendable())
            return false;
    return true;
}

bool GroupMap::periodic_in_t() const {
    if (time_fixed())
        return true;
    for (const auto &e : fs_)
        if (e.f->depends(Coord::Time) && !e.f->periodic_in_t())
            return false;
    return true;
}

bool GroupMap::time_dependent() const {
    if (time_fixed())
        return false;
    for (const auto &e : fs_)
        if (e.f->depends(Coord::Time))
            return true;
    return false;
}

int GroupMap::instanton_charge() const {
    int k = 0;
    for (const auto &e : fs_)
        k += e.inv ? -e.f->charge() : e.f->charge();
    return k;
}

GroupMap GroupMap::embedded() const {
    if (rank_ != 2)
        throw std::invalid_argument("embedded: map is not rank 2");
    GroupMap g(3);
    g.fix_t_ = fix_t_;
    for (const auto &e : fs_)
        g.fs_.push_back({embed_factor(e.f), e.inv});
    return g;
}

nlohmann::json GroupMap::describe() const {
    nlohmann::json word = nlohmann::json::array();
    for (const auto &e : fs_)
        word.push_back({{"inverse", e.inv}, {"factor", e.f->describe()}});
    nlohmann::json j = {{"rank", rank_}, {"word", word}};
    if (fix_t_)
        j["fixed_t"] = *fix_t_;
    return j;
}

// -- constructors ----------------------------------------------------------

GroupMap instanton(int k) {
    return GroupMap::from_factor(std::make_shared<InstantonFactor>(k));
}

GroupMap const_map(const Mat &u) {
    return GroupMap::from_factor(std::make_shared<ConstFactor>(u));
}

GroupMap exp_map(const PolyAlg &xi) {
    return GroupMap::from_factor(
        std::make_shared<ExpFactor>(xi, TimeProfile::one()));
}

GroupMap exp_path(const PolyAlg &xi) {
    return GroupMap::from_factor(
        std::make_shared<ExpFactor>(xi, TimeProfile::smoothstep()));
}

GroupMap exp_loop(const PolyAlg &xi, const TimeProfile &bump) {
    if (bump.kind() != TimeProfile::Kind::Harmonic)
        throw std::invalid_argument("exp_loop: profile must be a bump");
    return GroupMap::from_factor(std::make_shared<ExpFactor>(xi, bump));
}

GroupMap path_from_target(int k, const PolyAlg &xi) {
    GroupMap g = exp_path(xi);
    if (k != 0)
        g = instanton(k) * g;
    return g;
}

GroupMap embed_su2_su3(const GroupMap &f) { return f.embedded(); }

GroupMap rotation_loop(const GroupMap &f) {
    if (f.rank() != 2 || f.time_dependent())
        throw std::invalid_argument(
            "rotation_loop: need a time-independent rank-2 map");
    GroupMap a = GroupMap::from_factor(rot_phase_factor());
    return a * f.embedded() * a.inverse();
}

GroupMap rotation_bulk(const GroupMap &f) { return rotation_loop(f); }

GroupMap su2_rotation_loop(const GroupMap &f) {
    return GroupMap::from_factor(std::make_shared<Su2RotConjFactor>(f));
}

// -- field operations ------------------------------------------------------

std::vector<Mat> sample(const GroupMap &g, const Domain &d) {
    std::vector<Mat> out(d.node_count());
    parallel::for_each(d.node_count(), [&](std::size_t i) {
        double c[5];
        d.coords(i, c);
        out[i] = g.eval(eval_point(d, c));
    });
    return out;
}

FormField maurer_cartan(const GroupMap &g, const Domain &d, Side side) {
    const std::vector<Mat> u = sample(g, d);
    FormField v(d, 1, g.rank());
    for (int c = 0; c < d.dim(); ++c) {
        const std::vector<Mat> du = chart_derivative(u, c, d);
        auto &comp = v.comp(c);
        parallel::for_each(d.node_count(), [&](std::size_t i) {
            const Mat inv = u[i].adjoint();
            comp[i] = algebra::project_algebra(
                side == Side::Right ? du[i] * inv : inv * du[i]);
        });
    }
    return v;
}

FormField maurer_cartan_exact(const GroupMap &g, const Domain &d, Side side) {
    FormField v(d, 1, g.rank());
    parallel::for_each(d.node_count(), [&](std::size_t i) {
        double c[5];
        d.coords(i, c);
        Mat val, dval[5];
        g.eval_derivs(eval_point(d, c), d, val, dval);
        const Mat inv = val.adjoint();
        for (int a = 0; a < d.dim(); ++a)
            v.comp(a)[i] =
                side == Side::Right ? dval[a] * inv : inv * dval[a];
    });
    return v;
}

void mc_at(const GroupMap &g, const Domain &d, const EvalPt &p, Side side,
           Mat &val, PtForm &V) {
    Mat dval[5];
    g.eval_derivs(p, d, val, dval);
    const Mat inv = val.adjoint();
    V = PtForm::zero(d.dim(), 1, g.rank());
    for (int a = 0; a < d.dim(); ++a)
        V.c[a] = side == Side::Right ? dval[a] * inv : inv * dval[a];
}

double mapping_degree(const GroupMap &g, const Domain &s3) {
    if (s3.kind() != DomainKind::S3)
        throw std::invalid_argument("mapping_degree: need an S3 grid");
    std::vector<double> buf(s3.node_count());
    parallel::for_each(s3.node_count(), [&](std::size_t i) {
        double c[5];
        s3.coords(i, c);
        Mat val;
        PtForm V;
        mc_at(g, s3, eval_point(s3, c), Side::Right, val, V);
        const PtForm v3 = wedge(wedge(V, V), V);
        buf[i] = trace_top(v3).real();
    });
    // tr(V^3) is real for anti-Hermitian V; the sign pairs the chart
    // orientation with degree +1 for the basic instanton
    return -integrate_top(buf, s3) / (24.0 * pi * pi);
}

FormField gauge_transform(const GroupMap &f, const FormField &A) {
    if (A.degree() != 1)
        throw std::invalid_argument("gauge_transform: need a 1-form");
    const Domain &d = A.domain();
    FormField out(d, 1, A.rank());
    parallel::for_each(d.node_count(), [&](std::size_t i) {
        double c[5];
        d.coords(i, c);
        Mat val, dval[5];
        f.eval_derivs(eval_point(d, c), d, val, dval);
        const Mat inv = val.adjoint();
        for (int a = 0; a < d.dim(); ++a)
            out.comp(a)[i] = inv * A.comp(a)[i] * val + inv * dval[a];
    });
    return out;
}

Mat basepoint_value(const GroupMap &g, double t) {
    return g.eval(EvalPt::at(0.0, 0.0, 0.0, t));
}

FormField sample_algebra(const PolyAlg &xi, const Domain &d) {
    FormField out(d, 0, xi.rank());
    parallel::for_each(d.node_count(), [&](std::size_t i) {
        double c[5];
        d.coords(i, c);
        out.comp(0)[i] = xi.eval(eval_point(d, c).amb);
    });
    return out;
}

FormField sample_algebra_d(const PolyAlg &xi, const Domain &d) {
    FormField out(d, 1, xi.rank());
    parallel::for_each(d.node_count(), [&](std::size_t i) {
        double c[5];
        d.coords(i, c);
        const EvalPt p = eval_point(d, c);
        for (int a = 0; a < std::min(3, d.dim()); ++a)
            out.comp(a)[i] = xi.chart_deriv(p, a);
        for (int a = 3; a < d.dim(); ++a)
            out.comp(a)[i] = Mat::zero(xi.rank());
    });
    return out;
}

// -- connections -----------------------------------------------------------

nlohmann::json ConnClosure::describe() const {
    return {{"connection", "custom"}};
}

void ZeroConn::eval(const EvalPt &, const Domain &d, PtForm &A,
                    PtForm &F) const {
    A = PtForm::zero(d.dim(), 1, rank_);
    F = PtForm::zero(d.dim(), 2, rank_);
}

nlohmann::json ZeroConn::describe() const {
    return {{"connection", "zero"}, {"rank", rank_}};
}

PolyConn::PolyConn(int rank, std::vector<Term> terms)
    : rank_(rank), terms_(std::move(terms)) {
    for (const auto &t : terms_)
        if (t.eta.rank() != rank_)
            throw std::invalid_argument("PolyConn: term rank mismatch");
}

PolyConn PolyConn::random(int rank, std::mt19937 &rng, double amp,
                          int nterms) {
    std::vector<Term> terms;
    for (int j = 0; j < nterms; ++j)
        terms.push_back(
            {PolyAlg::random(rank, rng, amp), PolyScalar::random(rng, 1.0)});
    return PolyConn(rank, std::move(terms));
}

PolyConn PolyConn::random_bulk(int rank, std::mt19937 &rng, double amp,
                               bool with_dt) {
    std::vector<Term> terms;
    terms.push_back(
        {PolyAlg::random(rank, rng, amp), PolyScalar::random(rng, 1.0)});
    terms.push_back({PolyAlg::random(rank, rng, amp),
                     PolyScalar::random(rng, 1.0),
                     TimeProfile::random_bump(rng, 1.0)});
    if (with_dt) {
        Term dt_term;
        dt_term.eta = PolyAlg::random(rank, rng, amp);
        dt_term.w = TimeProfile::random_bump(rng, 1.0);
        dt_term.dt_slot = true;
        terms.push_back(std::move(dt_term));
    }
    return PolyConn(rank, std::move(terms));
}

void PolyConn::eval(const EvalPt &p, const Domain &d, PtForm &A,
                    PtForm &F) const {
    const int dim = d.dim();
    A = PtForm::zero(dim, 1, rank_);
    F = PtForm::zero(dim, 2, rank_);
    const FormBasis &b2 = FormBasis::get(dim, 2);
    for (const auto &t : terms_) {
        const Mat eta = t.eta.eval(p.amb);
        Mat deta[3];
        for (int c = 0; c < 3; ++c)
            deta[c] = t.eta.chart_deriv(p, c);
        const double w = t.w.weight(p.t, p.r);
        const double wt = t.w.dt(p.t, p.r);
        const double wr = t.w.dr(p.t, p.r);
        if (t.dt_slot) {
            if (dim < 4)
                continue; // dt pulls back to zero on S3
            A.c[3] += w * eta;
            // (dA)_{c,3} = d_c(w eta); (dA)_{3,4} = -d_r(w eta)
            for (int c = 0; c < 3; ++c)
                F.c[b2.pos[(1u << c) | 8u]] += w * deta[c];
            if (dim == 5)
                F.c[b2.pos[8u | 16u]] -= wr * eta;
            continue;
        }
        double gq[4];
        t.q.gradient(p.amb, gq);
        double dq[3];
        for (int c = 0; c < 3; ++c) {
            double s = 0.0;
            for (int v = 0; v < 4; ++v)
                s += gq[v] * p.jac[v][c];
            dq[c] = s;
            A.c[c] += (w * dq[c]) * eta;
        }
        // the symmetric ddQ part cancels in the antisymmetrized derivative
        for (int c = 0; c < 3; ++c)
            for (int e = c + 1; e < 3; ++e) {
                const int pos = b2.pos[(1u << c) | (1u << e)];
                F.c[pos] += (w * dq[e]) * deta[c] - (w * dq[c]) * deta[e];
            }
        // (dA)_{c,t} = -d_t(w) eta dq_c, (dA)_{c,r} = -d_r(w) eta dq_c
        if (dim >= 4 && wt != 0.0)
            for (int c = 0; c < 3; ++c)
                F.c[b2.pos[(1u << c) | 8u]] -= (wt * dq[c]) * eta;
        if (dim == 5 && wr != 0.0)
            for (int c = 0; c < 3; ++c)
                F.c[b2.pos[(1u << c) | 16u]] -= (wr * dq[c]) * eta;
    }
    F += wedge(A, A);
}

nlohmann::json PolyConn::describe() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &t : terms_)
        terms.push_back({{"eta", t.eta.describe()},
                         {"q", t.q.describe()},
                         {"w", t.w.describe()},
                         {"slot", t.dt_slot ? "dt" : "dQ"}});
    return {{"connection", "poly"}, {"rank", rank_}, {"terms", terms}};
}

PureGaugeConn::PureGaugeConn(GroupMap h) : h_(std::move(h)) {}

void PureGaugeConn::eval(const EvalPt &p, const Domain &d, PtForm &A,
                         PtForm &F) const {
    Mat val;
    mc_at(h_, d, p, Side::Left, val, A);
    F = PtForm::zero(d.dim(), 2, h_.rank());
}

nlohmann::json PureGaugeConn::describe() const {
    return {{"connection", "pure-gauge"}, {"map", h_.describe()}};
}

TransformedConn::TransformedConn(GroupMap g,
                                 std::shared_ptr<const ConnClosure> base)
    : g_(std::move(g)), base_(std::move(base)) {
    if (g_.rank() != base_->rank())
        throw std::invalid_argument("TransformedConn: rank mismatch");
}

void TransformedConn::eval(const EvalPt &p, const Domain &d, PtForm &A,
                           PtForm &F) const {
    PtForm A0, F0;
    base_->eval(p, d, A0, F0);
    Mat val, dval[5];
    g_.eval_derivs(p, d, val, dval);
    const Mat inv = val.adjoint();
    A = PtForm::zero(d.dim(), 1, rank());
    for (int c = 0; c < d.dim(); ++c)
        A.c[c] = inv * A0.c[c] * val + inv * dval[c];
    F = conjugate(inv, F0, val);
}

nlohmann::json TransformedConn::describe() const {
    return {{"connection", "gauge-transformed"},
            {"map", g_.describe()},
            {"base", base_->describe()}};
}

FormField sample_connection(const ConnClosure &A, const Domain &d) {
    FormField out(d, 1, A.rank());
    parallel::for_each(d.node_count(), [&](std::size_t i) {
        double c[5];
        d.coords(i, c);
        PtForm a, f;
        A.eval(eval_point(d, c), d, a, f);
        for (int k = 0; k < d.dim(); ++k)
            out.comp(k)[i] = a.c[k];
    });
    return out;
}

FormField sample_curvature(const ConnClosure &A, const Domain &d) {
    FormField out(d, 2, A.rank());
    const int nc = FormBasis::get(d.dim(), 2).ncomp();
    parallel::for_each(d.node_count(), [&](std::size_t i) {
        double c[5];
        d.coords(i, c);
        PtForm a, f;
        A.eval(eval_point(d, c), d, a, f);
        for (int k = 0; k < nc; ++k)
            out.comp(k)[i] = f.c[k];
    });
    return out;
}

} // namespace cge
