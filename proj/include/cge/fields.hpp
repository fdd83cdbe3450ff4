#pragma once

#include "cge/algebra.hpp"
#include "cge/forms.hpp"
#include "cge/geometry.hpp"

#include "json.hpp"

#include <memory>
#include <optional>
#include <random>
#include <vector>

namespace cge {

/// Point of a product domain: chart coordinates plus the derived ambient
/// position and chart jacobian of the S3 factor.
struct EvalPt {
    double psi = 0.0, theta = 0.0, phi = 0.0;
    double t = 0.0, r = 1.0;
    double amb[4];
    double jac[4][3];

    static EvalPt at(double psi, double theta, double phi, double t = 0.0,
                     double r = 1.0);
};

/// canonical coordinate slots shared by all product domains
enum class Coord { Psi = 0, Theta = 1, Phi = 2, Time = 3, Radial = 4 };

Coord axis_coord(const Domain &d, int axis);
EvalPt eval_point(const Domain &d, const double c[]);

/// Scalar profile in the path/loop parameter together with its extension to
/// the unit disk (loops only): a trigonometric polynomial whose mode m is
/// weighted by r^m, which keeps the filled-in map smooth at the disk centre.
class TimeProfile {
  public:
    enum class Kind { One, Smoothstep, Harmonic };

    static TimeProfile one();
    static TimeProfile smoothstep();
    /// sin^2(pi t) (c0 + c1 cos 2pi t + c2 sin 2pi t), expanded into modes
    static TimeProfile bump(double c0, double c1, double c2);
    static TimeProfile random_bump(std::mt19937 &rng, double amp);

    Kind kind() const { return kind_; }
    bool time_dependent() const { return kind_ != Kind::One; }
    bool disk_extendable() const { return kind_ != Kind::Smoothstep; }
    bool periodic() const { return kind_ != Kind::Smoothstep; }

    double weight(double t, double r) const;
    double dt(double t, double r) const;
    double dr(double t, double r) const;
    double value(double t) const { return weight(t, 1.0); }

    nlohmann::json describe() const;

  private:
    Kind kind_ = Kind::One;
    std::array<double, 3> a_{{0.0, 0.0, 0.0}};
    std::array<double, 3> b_{{0.0, 0.0, 0.0}};
};

/// Real polynomial of total degree <= 3 in the four ambient coordinates.
class PolyScalar {
  public:
    static constexpr int nmono = 35;

    PolyScalar() { c_.fill(0.0); }
    static PolyScalar random(std::mt19937 &rng, double amp);

    double eval(const double amb[4]) const;
    void gradient(const double amb[4], double g[4]) const;

    double &coeff(int k) { return c_[k]; }
    double coeff(int k) const { return c_[k]; }

    nlohmann::json describe() const;

  private:
    std::array<double, nmono> c_;
};

/// su(n)-valued polynomial field xi(p) = sum_a P_a(p) e_a on S3, vanishing
/// at the basepoint p0 = (0,0,0,1).
class PolyAlg {
  public:
    PolyAlg() = default;
    static PolyAlg random(int rank, std::mt19937 &rng, double amp);

    int rank() const { return rank_; }
    bool valid() const { return rank_ > 0; }

    Mat eval(const double amb[4]) const;
    /// derivative along a spatial chart coordinate (0..2) via the jacobian
    Mat chart_deriv(const EvalPt &p, int spatial_axis) const;

    PolyAlg scaled(double s) const;

    nlohmann::json describe() const;

  private:
    int rank_ = 0;
    std::vector<PolyScalar> comp_;
};

/// One multiplicative building block of a group-valued field.  Factors
/// produce unitary values and their exact chart derivatives; rank-2 factors
/// additionally know how their SU(3) embedding extends over the disk.
class MapFactor {
  public:
    virtual ~MapFactor() = default;

    virtual int rank() const = 0;
    virtual Mat eval(const EvalPt &p) const = 0;
    virtual Mat deriv(const EvalPt &p, Coord c) const = 0;
    virtual bool depends(Coord c) const = 0;
    virtual bool disk_extendable() const = 0;
    virtual bool periodic_in_t() const = 0;
    virtual int charge() const { return 0; }

    /// value plus derivatives along the listed coordinates in one pass;
    /// the default defers to eval/deriv, factors override to share work
    virtual void eval_with_derivs(const EvalPt &p, const Coord cs[], int nc,
                                  Mat &val, Mat dval[]) const;

    /// block embedding u -> diag(u, 1) for rank-2 factors; overridden where
    /// the embedded factor carries its own disk extension
    virtual Mat embedded_eval(const EvalPt &p) const;
    virtual Mat embedded_deriv(const EvalPt &p, Coord c) const;
    virtual bool embedded_disk_extendable() const { return disk_extendable(); }

    virtual nlohmann::json describe() const = 0;
};

/// Group-valued field on a product domain, kept as a word in invertible
/// factors.  Inverses and products stay symbolic, so every map built from
/// disk-extendable loops again has an explicit extension.
class GroupMap {
  public:
    struct Entry {
        std::shared_ptr<const MapFactor> f;
        bool inv = false;
    };

    GroupMap() = default;
    explicit GroupMap(int rank) : rank_(rank) {}
    static GroupMap from_factor(std::shared_ptr<const MapFactor> f);

    bool valid() const { return rank_ > 0; }
    int rank() const { return rank_; }
    const std::vector<Entry> &entries() const { return fs_; }

    Mat eval(const EvalPt &p) const;
    /// value and chart derivatives along every axis of d in one pass
    void eval_derivs(const EvalPt &p, const Domain &d, Mat &val,
                     Mat dval[5]) const;
    Mat deriv(const EvalPt &p, Coord c) const;

    GroupMap inverse() const;
    friend GroupMap operator*(const GroupMap &a, const GroupMap &b);

    /// restriction to a fixed path parameter, usable on S3 grids
    GroupMap at_time(double t) const;

    bool disk_extendable() const;
    bool periodic_in_t() const;
    bool time_dependent() const;
    int instanton_charge() const;

    /// factor-wise SU(3) embedding of a rank-2 map
    GroupMap embedded() const;

    nlohmann::json describe() const;

  private:
    int rank_ = 0;
    std::vector<Entry> fs_;
    std::optional<double> fix_t_;

    EvalPt fixed(const EvalPt &p) const;
    bool time_fixed() const { return fix_t_.has_value(); }
    void simplify();
};

// -- constructors ----------------------------------------------------------

/// degree-k instanton S3 -> SU(2) (quaternion power)
GroupMap instanton(int k);
GroupMap const_map(const Mat &u);
/// t-independent exp(xi)
GroupMap exp_map(const PolyAlg &xi);
/// path exp(s(t) xi) with the smoothstep profile s
GroupMap exp_path(const PolyAlg &xi);
/// loop exp(h(t) xi) with a trigonometric bump profile h
GroupMap exp_loop(const PolyAlg &xi, const TimeProfile &bump);
/// path t |-> g_k exp(s(t) xi) from g_k to g_k exp(xi)
GroupMap path_from_target(int k, const PolyAlg &xi);
/// diag(f, 1) in SU(3), factor by factor
GroupMap embed_su2_su3(const GroupMap &f);
/// conjugation loop a(t) f~ a(t)^-1 of an embedded rank-2 map, with the
/// standard SU(3) rotation family a; extends over the disk
GroupMap rotation_loop(const GroupMap &f);
/// the same word read as a map on S3 x D2 (the extension of the loop)
GroupMap rotation_bulk(const GroupMap &f);
/// rank-2 loop b(t) f b(t)^-1 f^-1 with b = diag(e^{i pi t}, e^{-i pi t});
/// its embedding extends over the disk
GroupMap su2_rotation_loop(const GroupMap &f);

// -- field operations ------------------------------------------------------

enum class Side { Left, Right }; // Left: g^-1 dg, Right: dg g^-1

/// grid Maurer-Cartan form: stencil derivatives of the sampled map,
/// projected back to the algebra
FormField maurer_cartan(const GroupMap &g, const Domain &d, Side side);
/// exact per-node Maurer-Cartan form from analytic factor derivatives
FormField maurer_cartan_exact(const GroupMap &g, const Domain &d, Side side);

/// node-level Maurer-Cartan 1-form at one point
void mc_at(const GroupMap &g, const Domain &d, const EvalPt &p, Side side,
           Mat &val, PtForm &V);

/// (i / 24 pi^2) int_S3 tr(V^3)
double mapping_degree(const GroupMap &g, const Domain &s3);

std::vector<Mat> sample(const GroupMap &g, const Domain &d);

/// f . A = f^-1 A f + f^-1 df on the grid of A
FormField gauge_transform(const GroupMap &f, const FormField &A);

/// value at the basepoint p0 (chart psi = 0)
Mat basepoint_value(const GroupMap &g, double t = 0.0);

/// su(n) 0-form xi and its exact differential sampled on a grid
FormField sample_algebra(const PolyAlg &xi, const Domain &d);
FormField sample_algebra_d(const PolyAlg &xi, const Domain &d);

// -- connections -----------------------------------------------------------

/// Connection given in closed form: chart components of A and of its
/// curvature F = dA + A ^ A at any point of a domain.
class ConnClosure {
  public:
    virtual ~ConnClosure() = default;
    virtual int rank() const = 0;
    virtual void eval(const EvalPt &p, const Domain &d, PtForm &A,
                      PtForm &F) const = 0;
    virtual nlohmann::json describe() const;
};

class ZeroConn final : public ConnClosure {
  public:
    explicit ZeroConn(int rank) : rank_(rank) {}
    int rank() const override { return rank_; }
    void eval(const EvalPt &, const Domain &d, PtForm &A,
              PtForm &F) const override;
    nlohmann::json describe() const override;

  private:
    int rank_;
};

/// A = sum_j w_j(t,r) eta_j(x) sigma_j with polynomial eta_j in su(n) and
/// sigma_j either dQ_j (polynomial scalar Q_j) or dt; smooth in the chart
/// and with closed-form curvature
class PolyConn final : public ConnClosure {
  public:
    struct Term {
        PolyAlg eta;
        PolyScalar q;                      // used by dQ terms only
        TimeProfile w = TimeProfile::one();
        bool dt_slot = false;              // true: sigma = dt
    };

    PolyConn(int rank, std::vector<Term> terms);
    static PolyConn random(int rank, std::mt19937 &rng, double amp,
                           int nterms = 3);
    /// spatial terms with time-dependent weights plus (optionally) a dt
    /// term, for the 4- and 5-dimensional domains; on S3xD2 pass
    /// with_dt = false, since w dt is singular at the disk centre
    static PolyConn random_bulk(int rank, std::mt19937 &rng, double amp,
                                bool with_dt = true);

    int rank() const override { return rank_; }
    void eval(const EvalPt &p, const Domain &d, PtForm &A,
              PtForm &F) const override;
    nlohmann::json describe() const override;

  private:
    int rank_;
    std::vector<Term> terms_;
};

/// pure gauge A = h^-1 dh (flat: F = 0)
class PureGaugeConn final : public ConnClosure {
  public:
    explicit PureGaugeConn(GroupMap h);
    int rank() const override { return h_.rank(); }
    void eval(const EvalPt &p, const Domain &d, PtForm &A,
              PtForm &F) const override;
    nlohmann::json describe() const override;

  private:
    GroupMap h_;
};

/// gauge transform g . A = g^-1 A g + g^-1 dg of another closure
class TransformedConn final : public ConnClosure {
  public:
    TransformedConn(GroupMap g, std::shared_ptr<const ConnClosure> base);
    int rank() const override { return base_->rank(); }
    void eval(const EvalPt &p, const Domain &d, PtForm &A,
              PtForm &F) const override;
    nlohmann::json describe() const override;

  private:
    GroupMap g_;
    std::shared_ptr<const ConnClosure> base_;
};

/// degree-1 FormField samples of a closure
FormField sample_connection(const ConnClosure &A, const Domain &d);
/// degree-2 FormField samples of the closure's curvature
FormField sample_curvature(const ConnClosure &A, const Domain &d);

} // namespace cge
