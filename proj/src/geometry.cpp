#include "cge/geometry.hpp"

#include <string>

namespace cge {

int domain_dim(DomainKind k) {
    switch (k) {
    case DomainKind::S3:
        return 3;
    case DomainKind::S3xI:
    case DomainKind::S3xS1:
        return 4;
    case DomainKind::S3xD2:
        return 5;
    }
    return 0;
}

const char *domain_name(DomainKind k) {
    switch (k) {
    case DomainKind::S3:
        return "S3";
    case DomainKind::S3xI:
        return "S3xI";
    case DomainKind::S3xS1:
        return "S3xS1";
    case DomainKind::S3xD2:
        return "S3xD2";
    }
    return "?";
}

DomainKind domain_from_name(const std::string &s) {
    if (s == "S3")
        return DomainKind::S3;
    if (s == "S3xI")
        return DomainKind::S3xI;
    if (s == "S3xS1")
        return DomainKind::S3xS1;
    if (s == "S3xD2")
        return DomainKind::S3xD2;
    throw std::invalid_argument("unknown domain kind: " + s);
}

Domain Domain::make(DomainKind kind, const std::vector<int> &res,
                    int orientation) {
    const int dim = domain_dim(kind);
    if ((int)res.size() != dim)
        throw std::invalid_argument("Domain::make: wrong resolution count");
    for (int r : res)
        if (r < 8)
            throw std::invalid_argument("Domain::make: resolution too small");
    const double pi = std::acos(-1.0);
    Domain d;
    d.kind_ = kind;
    d.orientation_ = orientation >= 0 ? +1 : -1;
    d.axes_ = {Axis{0.0, pi, res[0], false}, Axis{0.0, pi, res[1], false},
               Axis{0.0, 2.0 * pi, res[2], true}};
    switch (kind) {
    case DomainKind::S3:
        break;
    case DomainKind::S3xI:
        d.axes_.push_back(Axis{0.0, 1.0, res[3], false});
        break;
    case DomainKind::S3xS1:
        d.axes_.push_back(Axis{0.0, 1.0, res[3], true});
        break;
    case DomainKind::S3xD2:
        d.axes_.push_back(Axis{0.0, 1.0, res[3], false}); // r
        d.axes_.push_back(Axis{0.0, 1.0, res[4], true});  // loop parameter
        break;
    }
    return d;
}

Domain Domain::refined(int factor) const {
    std::vector<int> res;
    for (const auto &a : axes_)
        res.push_back(a.n * factor);
    return make(kind_, res, orientation_);
}

Domain Domain::flipped() const {
    Domain d = *this;
    d.orientation_ = -d.orientation_;
    return d;
}

std::vector<int> Domain::resolutions() const {
    std::vector<int> res;
    for (const auto &a : axes_)
        res.push_back(a.n);
    return res;
}

bool Domain::same_grid(const Domain &o) const {
    return kind_ == o.kind_ && resolutions() == o.resolutions();
}

double integrate_top(const std::vector<double> &samples, const Domain &d) {
    if (samples.size() != d.node_count())
        throw std::invalid_argument("integrate_top: sample count mismatch");
    return d.orientation() * d.cell_volume() * parallel::pairwise_sum(samples);
}

cplx integrate_top(const std::vector<cplx> &samples, const Domain &d) {
    if (samples.size() != d.node_count())
        throw std::invalid_argument("integrate_top: sample count mismatch");
    std::vector<double> re(samples.size()), im(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        re[i] = samples[i].real();
        im[i] = samples[i].imag();
    }
    const double s = d.orientation() * d.cell_volume();
    return cplx(s * parallel::pairwise_sum(re), s * parallel::pairwise_sum(im));
}

} // namespace cge
