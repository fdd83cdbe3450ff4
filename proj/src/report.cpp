#include "cge/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cge {

double SuiteConfig::tolerance(const std::string &name, double fallback) const {
    const auto it = tol.find(name);
    return it == tol.end() ? fallback : it->second;
}

Domain SuiteConfig::s3() const {
    return Domain::make(DomainKind::S3, {grid[0], grid[1], grid[2]});
}
Domain SuiteConfig::t() const {
    return Domain::make(DomainKind::S3xI, {grid[0], grid[1], grid[2], time_grid});
}
Domain SuiteConfig::m() const {
    return Domain::make(DomainKind::S3xS1,
                        {grid[0], grid[1], grid[2], time_grid});
}
Domain SuiteConfig::q() const {
    return Domain::make(DomainKind::S3xD2, {grid[0], grid[1], grid[2],
                                            disk_grid[0], disk_grid[1]});
}
Domain SuiteConfig::t_small() const {
    return Domain::make(DomainKind::S3xI, {12, 12, 24, 12});
}
Domain SuiteConfig::m_small() const {
    return Domain::make(DomainKind::S3xS1, {12, 12, 24, 32});
}
Domain SuiteConfig::q_small() const {
    return Domain::make(DomainKind::S3xD2, {12, 12, 24, 8, 32});
}

void SuiteConfig::validate() const {
    for (int r : {grid[0], grid[1], grid[2], time_grid, disk_grid[0],
                  disk_grid[1]})
        if (r < 8)
            throw std::invalid_argument("SuiteConfig: resolutions must be >= 8");
    if (rank < 2)
        throw std::invalid_argument("SuiteConfig: rank must be >= 2");
    for (const auto &[name, v] : tol)
        if (!(v > 0.0))
            throw std::invalid_argument("SuiteConfig: tolerance " + name +
                                        " must be positive");
}

nlohmann::json SuiteConfig::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["rank"] = rank;
    j["grid"] = grid;
    j["time_grid"] = time_grid;
    j["disk_grid"] = disk_grid;
    j["seed"] = seed;
    j["tol"] = tol;
    return j;
}

Check &Report::add(const std::string &name, double value, double expected,
                   double tolerance) {
    Check c;
    c.name = name;
    c.value = value;
    c.expected = expected;
    c.residual = std::abs(value - expected);
    c.tolerance = tolerance;
    c.pass = c.residual <= tolerance;
    checks.push_back(std::move(c));
    return checks.back();
}

Check &Report::add_residual(const std::string &name, double value,
                            double residual, double tolerance) {
    Check c;
    c.name = name;
    c.value = value;
    c.expected = 0.0;
    c.residual = residual;
    c.tolerance = tolerance;
    c.pass = residual <= tolerance;
    checks.push_back(std::move(c));
    return checks.back();
}

void Report::finalize(double wall_seconds) {
    wall_time_s = wall_seconds;
    pass = true;
    for (const Check &c : checks)
        pass = pass && c.pass;
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["config"] = config.to_json();
    j["checks"] = nlohmann::json::array();
    for (const Check &c : checks)
        j["checks"].push_back({{"name", c.name},
                               {"value", c.value},
                               {"expected", c.expected},
                               {"residual", c.residual},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}});
    j["beta_normalization"] = beta_normalization;
    if (!adjoint_normalization.empty())
        j["adjoint_normalization"] = adjoint_normalization;
    if (!convergence.empty()) {
        j["convergence"] = nlohmann::json::array();
        for (const Row &r : convergence)
            j["convergence"].push_back(
                {{"resolution", r.resolution}, {"residual", r.residual}});
        j["fitted_order"] = fitted_order;
    }
    j["wall_time_s"] = wall_time_s;
    j["pass"] = pass;
    return j;
}

std::string Report::csv() const {
    std::ostringstream os;
    os << "resolution,residual,fitted_order\n";
    for (const Row &r : convergence)
        os << r.resolution << "," << r.residual << "," << fitted_order
           << "\n";
    return os.str();
}

void Report::write() const {
    if (!config.json_path.empty()) {
        std::ofstream f(config.json_path);
        if (!f)
            throw std::runtime_error("cannot open " + config.json_path);
        f << to_json().dump(2) << "\n";
    }
    if (!config.csv_path.empty()) {
        std::ofstream f(config.csv_path);
        if (!f)
            throw std::runtime_error("cannot open " + config.csv_path);
        f << csv();
    }
}

double fit_order(const std::vector<Report::Row> &rows) {
    if (rows.size() < 2)
        return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto &r : rows) {
        if (r.residual <= 0.0)
            return 0.0; // exact ladder: flat
        const double x = std::log((double)r.resolution);
        const double y = std::log(r.residual);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

nlohmann::json dump_field(const FormField &f) {
    const Domain &d = f.domain();
    static const char *names[] = {"S3", "S3xI", "S3xS1", "S3xD2"};
    nlohmann::json j;
    j["domain"] = {{"kind", names[(int)d.kind()]},
                   {"resolutions", d.resolutions()}};
    j["degree"] = f.degree();
    j["rank"] = f.rank();
    j["index_order"] =
        "node-major (psi,theta,phi[,t][,r]) then form multi-index then "
        "matrix row then column";
    nlohmann::json data = nlohmann::json::array();
    const int r = f.rank();
    for (std::size_t i = 0; i < d.node_count(); ++i)
        for (int ci = 0; ci < f.ncomp(); ++ci) {
            const Mat &m = f.comp(ci)[i];
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    data.push_back({m(a, b).real(), m(a, b).imag()});
        }
    j["data"] = std::move(data);
    return j;
}

} // namespace cge
