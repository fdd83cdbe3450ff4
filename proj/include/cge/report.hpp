#pragma once

#include "cge/forms.hpp"

#include "json.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace cge {

/// grid, tolerance and output configuration of one verification suite
struct SuiteConfig {
    std::string suite;
    int rank = 3;
    std::array<int, 3> grid{16, 16, 32};      // S3 resolutions
    int time_grid = 16;                       // extra axis of T = S3 x [0,1]
    std::array<int, 2> disk_grid{12, 48};     // (Nr, Nt) of Q = S3 x D2
    std::map<std::string, double> tol;        // per-check overrides
    unsigned seed = 2026;
    std::string json_path, csv_path, dump_path;

    double tolerance(const std::string &name, double fallback) const;
    Domain s3() const;
    Domain t() const;  // S3 x [0,1]
    Domain m() const;  // S3 x S1
    Domain q() const;  // S3 x D2
    /// reduced copies used where the default grids exceed the time budget
    Domain t_small() const;
    Domain m_small() const;
    Domain q_small() const;

    void validate() const; // throws std::invalid_argument
    nlohmann::json to_json() const;
};

struct Check {
    std::string name;
    double value = 0.0;
    double expected = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Report {
    std::string suite;
    SuiteConfig config;
    std::vector<Check> checks;
    // normalization audit outcome (first-class report fields)
    std::string beta_normalization = "1/(48 pi^3) (intro constants; Witten "
                                     "C5 calibration)";
    std::string adjoint_normalization;
    double wall_time_s = 0.0;
    bool pass = false;

    /// appends a check with residual = |value - expected|
    Check &add(const std::string &name, double value, double expected,
               double tolerance);
    /// appends a check with an explicit residual (value kept for the record)
    Check &add_residual(const std::string &name, double value,
                        double residual, double tolerance);
    /// recomputes the overall pass flag
    void finalize(double wall_seconds);

    nlohmann::json to_json() const;
    /// writes json/csv/dump outputs requested by the config; csv rows come
    /// from `convergence`
    void write() const;

    // convergence rows (suite "convergence"; empty otherwise)
    struct Row {
        int resolution = 0;
        double residual = 0.0;
    };
    std::vector<Row> convergence;
    double fitted_order = 0.0;
    std::string csv() const;
};

/// fitted order p of residual ~ C n^-p over a ladder (least squares in
/// log-log; 0 for flat/noise ladders)
double fit_order(const std::vector<Report::Row> &rows);

/// shared field dump record: domain descriptor, degree, rank, node-major
/// data, complex entries as [re, im]
nlohmann::json dump_field(const FormField &f);

} // namespace cge
