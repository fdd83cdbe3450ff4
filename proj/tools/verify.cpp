#include "cge/suites.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

bool parse_dims(const std::string &s, std::vector<int> &out, std::size_t n) {
    out.clear();
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        try {
            out.push_back(std::stoi(part));
        } catch (...) {
            return false;
        }
    }
    return out.size() == n;
}

bool parse_tol(const std::string &s, std::map<std::string, double> &tol) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
        return false;
    try {
        tol[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
    } catch (...) {
        return false;
    }
    return true;
}

/// plain key=value file; '#' starts a comment
bool read_config_file(const std::string &path,
                      std::map<std::string, std::string> &kv,
                      std::map<std::string, double> &tol) {
    std::ifstream f(path);
    if (!f)
        return false;
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const auto a = line.find_first_not_of(" \t");
        if (a == std::string::npos)
            continue;
        const auto b = line.find_last_not_of(" \t");
        line = line.substr(a, b - a + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            return false;
        const std::string key = line.substr(0, eq);
        if (key.rfind("tol.", 0) == 0) {
            if (!parse_tol(line.substr(4), tol))
                return false;
        } else {
            kv[key] = line.substr(eq + 1);
        }
    }
    return true;
}

void print_report(const cge::Report &rep) {
    std::printf("suite %s (rank %d, grid %dx%dx%d, t %d, disk %dx%d, seed "
                "%u)\n",
                rep.suite.c_str(), rep.config.rank, rep.config.grid[0],
                rep.config.grid[1], rep.config.grid[2], rep.config.time_grid,
                rep.config.disk_grid[0], rep.config.disk_grid[1],
                rep.config.seed);
    for (const auto &c : rep.checks)
        std::printf("  [%s] %-34s value=%+.6e expected=%+.6e residual=%.3e "
                    "tol=%.3e\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value,
                    c.expected, c.residual, c.tolerance);
    if (!rep.convergence.empty()) {
        std::printf("  convergence (fitted order %.2f):\n", rep.fitted_order);
        for (const auto &r : rep.convergence)
            std::printf("    n=%-3d residual=%.6e\n", r.resolution,
                        r.residual);
    }
    std::printf("  normalization: %s\n", rep.beta_normalization.c_str());
    if (!rep.adjoint_normalization.empty())
        std::printf("  normalization: %s\n",
                    rep.adjoint_normalization.c_str());
    std::printf("%s in %.1f s\n", rep.pass ? "PASS" : "FAIL",
                rep.wall_time_s);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"numerical verification of current-group extensions"};

    std::string suite, grid_s, disk_s, json_p, csv_p, dump_p, config_p;
    int rank = 0, time_grid = 0;
    long long seed = -1;
    std::vector<std::string> tol_flags;
    bool serial = false;

    app.add_option("--suite", suite, "suite name (see --list)");
    app.add_flag("--list", "list available suites");
    app.add_option("--rank", rank, "SU(n) rank");
    app.add_option("--grid", grid_s, "S3 resolutions NpsixNthetaxNphi");
    app.add_option("--time-grid", time_grid, "path/loop axis resolution");
    app.add_option("--disk-grid", disk_s, "disk resolutions NrxNt");
    app.add_option("--tol", tol_flags, "tolerance override name=value")
        ->take_all();
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--json", json_p, "write JSON report");
    app.add_option("--csv", csv_p, "write convergence CSV");
    app.add_option("--dump", dump_p, "write a seeded field dump");
    app.add_option("--config", config_p, "key=value config file");
    app.add_flag("--serial", serial, "disable OpenMP sweeps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }

    if (app.count("--list")) {
        for (const auto &n : cge::suite_names())
            std::printf("%s\n", n.c_str());
        return 0;
    }

    cge::SuiteConfig cfg;
    std::map<std::string, std::string> file_kv;
    if (!config_p.empty() &&
        !read_config_file(config_p, file_kv, cfg.tol)) {
        std::fprintf(stderr, "error: cannot read config file %s\n",
                     config_p.c_str());
        return 2;
    }

    // file values first, flags override
    const auto file_val = [&](const char *k) -> const std::string * {
        const auto it = file_kv.find(k);
        return it == file_kv.end() ? nullptr : &it->second;
    };
    try {
        if (const auto *v = file_val("suite"))
            cfg.suite = *v;
        if (const auto *v = file_val("rank"))
            cfg.rank = std::stoi(*v);
        if (const auto *v = file_val("seed"))
            cfg.seed = (unsigned)std::stoul(*v);
        if (const auto *v = file_val("time-grid"))
            cfg.time_grid = std::stoi(*v);
        std::vector<int> dims;
        if (const auto *v = file_val("grid")) {
            if (!parse_dims(*v, dims, 3))
                throw std::invalid_argument("bad grid in config file");
            cfg.grid = {dims[0], dims[1], dims[2]};
        }
        if (const auto *v = file_val("disk-grid")) {
            if (!parse_dims(*v, dims, 2))
                throw std::invalid_argument("bad disk-grid in config file");
            cfg.disk_grid = {dims[0], dims[1]};
        }
        if (const auto *v = file_val("json"))
            cfg.json_path = *v;
        if (const auto *v = file_val("csv"))
            cfg.csv_path = *v;
        if (const auto *v = file_val("dump"))
            cfg.dump_path = *v;

        if (app.count("--suite"))
            cfg.suite = suite;
        if (app.count("--rank"))
            cfg.rank = rank;
        if (app.count("--seed"))
            cfg.seed = (unsigned)seed;
        if (app.count("--time-grid"))
            cfg.time_grid = time_grid;
        if (app.count("--grid")) {
            if (!parse_dims(grid_s, dims, 3))
                throw std::invalid_argument("bad --grid (want NxNxN)");
            cfg.grid = {dims[0], dims[1], dims[2]};
        }
        if (app.count("--disk-grid")) {
            if (!parse_dims(disk_s, dims, 2))
                throw std::invalid_argument("bad --disk-grid (want NxN)");
            cfg.disk_grid = {dims[0], dims[1]};
        }
        for (const auto &t : tol_flags)
            if (!parse_tol(t, cfg.tol))
                throw std::invalid_argument("bad --tol (want name=value)");
        if (app.count("--json"))
            cfg.json_path = json_p;
        if (app.count("--csv"))
            cfg.csv_path = csv_p;
        if (app.count("--dump"))
            cfg.dump_path = dump_p;

        if (cfg.suite.empty()) {
            std::fprintf(stderr, "error: --suite is required; available:\n");
            for (const auto &n : cge::suite_names())
                std::fprintf(stderr, "  %s\n", n.c_str());
            return 2;
        }
        if (serial)
            cge::parallel::set_mode(cge::parallel::Mode::Serial);

        const cge::Report rep = cge::run_suite(cfg);
        print_report(rep);
        return rep.pass ? 0 : 1;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
