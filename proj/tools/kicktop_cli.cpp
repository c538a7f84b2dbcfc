// Copyright 2026 The kicktop Project Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

// Command-line front end: parameter sweeps and figure-style pipelines
// with deterministic CSV output plus a JSON sidecar per run.
//
// Exit codes: 0 success, 2 usage error, 1 numeric failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kicktop/kicktop.hpp"

using json = nlohmann::ordered_json;
using namespace kicktop;

namespace {

// 17 significant digits: lossless round-trip of IEEE doubles.
std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

class CsvFile {
public:
    explicit CsvFile(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open output file " + path);
    }

    void header(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i) out_ << ',';
            out_ << names[i];
        }
        out_ << '\n';
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << fmt(values[i]);
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

std::vector<double> linspace(double start, double stop, int count) {
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        grid[static_cast<std::size_t>(i)] =
            count == 1 ? start : start + (stop - start) * i / (count - 1);
    }
    return grid;
}

// Deterministic initial-condition grid for phase portraits: Z ladder
// from -0.9 to 0.9 with the azimuth alternating between 0 and pi.
std::vector<CanonicalState> standard_ic_grid(int count) {
    std::vector<CanonicalState> ics;
    ics.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double z = count == 1 ? 0.0 : -0.9 + 1.8 * k / (count - 1);
        const double psi = (k % 2 == 0) ? 0.0 : kPi;
        ics.push_back({z, psi});
    }
    return ics;
}

std::vector<double> parse_j_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw CLI::ValidationError("--j-list", "expected a comma-separated list");
    return out;
}

struct Options {
    double j = 40.0;
    double alpha = 0.0;
    double beta = 0.1;
    double alpha_start = 0.0, alpha_stop = 10.0;
    int alpha_count = 0;  // 0 = no sweep
    double sigma_frac = 0.1;
    int n_terms = 0;  // 0 = auto (10 * dim) for the fourier estimator
    std::string estimator = "gaussian";
    double prominence = 1.5;
    double dt = 1e-3;
    int n_kicks = 2000;
    int ic_grid = 20;
    int grid_size = 1024;
    int m = 0, l = 1;
    double window = 0.5;
    int n_points = 101;
    double theta = 1.0, psi = 0.5;
    std::string j_list = "10,20,40,80";
    std::string out;
    int jobs = 0;  // 0 = machine parallelism

    int effective_jobs() const { return jobs > 0 ? jobs : default_jobs(); }

    std::vector<double> alpha_grid() const {
        return linspace(alpha_start, alpha_stop, alpha_count);
    }
};

json config_json(const std::string& command, const Options& o) {
    json cfg;
    cfg["j"] = o.j;
    cfg["alpha"] = o.alpha;
    cfg["beta"] = o.beta;
    cfg["alpha-start"] = o.alpha_start;
    cfg["alpha-stop"] = o.alpha_stop;
    cfg["alpha-count"] = o.alpha_count;
    cfg["sigma-frac"] = o.sigma_frac;
    cfg["n-terms"] = o.n_terms;
    cfg["estimator"] = o.estimator;
    cfg["prominence"] = o.prominence;
    cfg["dt"] = o.dt;
    cfg["n-kicks"] = o.n_kicks;
    cfg["ic-grid"] = o.ic_grid;
    cfg["grid-size"] = o.grid_size;
    cfg["m"] = o.m;
    cfg["l"] = o.l;
    cfg["window"] = o.window;
    cfg["n-points"] = o.n_points;
    cfg["theta"] = o.theta;
    cfg["psi"] = o.psi;
    cfg["j-list"] = o.j_list;
    cfg["out"] = o.out;
    cfg["jobs"] = o.jobs;
    json sidecar;
    sidecar["tool"] = {{"name", "kicktop"}, {"version", KICKTOP_VERSION}};
    sidecar["command"] = command;
    sidecar["config"] = cfg;
    return sidecar;
}

void write_sidecar(json sidecar, const std::vector<std::string>& outputs, double seconds) {
    const std::string path = sidecar["config"]["out"].get<std::string>() + ".json";
    sidecar["outputs"] = outputs;
    sidecar["wall_time_seconds"] = seconds;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open sidecar " + path);
    out << sidecar.dump(2) << '\n';
}

// ---------------------------------------------------------------------
// pipelines
// ---------------------------------------------------------------------

void run_spectrum_sweep(const Options& o) {
    const SpinAlgebra alg = build_spin_operators(o.j);
    const std::vector<double> grid = o.alpha_grid();
    const int dim = alg.dim;

    struct Row {
        std::vector<double> exact, effective;
    };
    std::vector<Row> rows(grid.size());
    parallel_for(static_cast<int>(grid.size()), o.effective_jobs(), [&](int i) {
        const TopParams p{grid[static_cast<std::size_t>(i)], o.beta, o.j};
        rows[static_cast<std::size_t>(i)].exact = quasienergies(build_floquet(alg, p)).angles;
        rows[static_cast<std::size_t>(i)].effective =
            fold_to_brillouin(effective_spectrum(kicked_top_effective(alg, p)), 1.0).angles;
    });

    CsvFile csv(o.out + ".csv");
    std::vector<std::string> names = {"alpha"};
    char buf[32];
    for (int r = 0; r < dim; ++r) {
        std::snprintf(buf, sizeof(buf), "phi_%03d", r);
        names.emplace_back(buf);
    }
    for (int r = 0; r < dim; ++r) {
        std::snprintf(buf, sizeof(buf), "eps_%03d", r);
        names.emplace_back(buf);
    }
    csv.header(names);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row = {grid[i]};
        row.insert(row.end(), rows[i].exact.begin(), rows[i].exact.end());
        row.insert(row.end(), rows[i].effective.begin(), rows[i].effective.end());
        csv.row(row);
    }
}

json run_dos(const Options& o) {
    const SpinAlgebra alg = build_spin_operators(o.j);
    const TopParams p{o.alpha, o.beta, o.j};
    const QuasiSpectrum exact = quasienergies(build_floquet(alg, p));
    const QuasiSpectrum effective =
        fold_to_brillouin(effective_spectrum(kicked_top_effective(alg, p)), 1.0);

    DosCurve c_exact, c_eff;
    if (o.estimator == "gaussian") {
        c_exact = dos_gaussian(exact, o.sigma_frac, o.grid_size);
        c_eff = dos_gaussian(effective, o.sigma_frac, o.grid_size);
    } else {
        const double sigma = o.sigma_frac * 2.0 * kPi / alg.dim;
        const int n_terms = o.n_terms > 0 ? o.n_terms : 10 * alg.dim;
        c_exact = dos_fourier(exact, n_terms, sigma, o.grid_size);
        c_eff = dos_fourier(effective, n_terms, sigma, o.grid_size);
    }

    CsvFile csv(o.out + ".csv");
    csv.header({"angle", "rho_exact", "rho_effective"});
    for (std::size_t i = 0; i < c_exact.grid.size(); ++i) {
        csv.row({c_exact.grid[i], c_exact.values[i], c_eff.values[i]});
    }

    json results;
    results["sigma"] = c_exact.sigma;
    for (const char* key : {"exact", "effective"}) {
        const DosCurve& curve = key[1] == 'x' ? c_exact : c_eff;
        json list = json::array();
        for (const DosPeak& peak : find_dos_peaks(curve, o.prominence)) {
            list.push_back({{"location", peak.location}, {"height", peak.height}});
        }
        results["peaks"][key] = list;
    }
    return results;
}

void run_reconstruct(const Options& o) {
    const SpinAlgebra alg = build_spin_operators(o.j);
    const std::vector<double> grid =
        o.alpha_count > 0 ? o.alpha_grid() : std::vector<double>{o.alpha};
    std::vector<double> distances(grid.size());
    parallel_for(static_cast<int>(grid.size()), o.effective_jobs(), [&](int i) {
        const TopParams p{grid[static_cast<std::size_t>(i)], o.beta, o.j};
        distances[static_cast<std::size_t>(i)] =
            operator_norm(build_floquet(alg, p) - reconstruct_floquet(kicked_top_effective(alg, p)));
    });

    CsvFile csv(o.out + ".csv");
    csv.header({"alpha", "beta", "j", "op_distance"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.row({grid[i], o.beta, o.j, distances[i]});
    }
}

void run_gap_scan(const Options& o) {
    const std::vector<double> grid = o.alpha_grid();
    std::vector<GapScanRow> rows(grid.size());
    const SpinAlgebra alg = build_spin_operators(o.j);
    parallel_for(static_cast<int>(grid.size()), o.effective_jobs(), [&](int i) {
        const double alpha = grid[static_cast<std::size_t>(i)];
        const TopParams p{alpha, o.beta, o.j};
        const QuasiSpectrum exact = quasienergies(build_floquet(alg, p));
        const QuasiSpectrum effective =
            fold_to_brillouin(effective_spectrum(kicked_top_effective(alg, p)), 1.0);
        rows[static_cast<std::size_t>(i)] = {alpha, min_circular_gap(exact.angles),
                                             min_circular_gap(effective.angles)};
    });

    CsvFile csv(o.out + ".csv");
    csv.header({"alpha", "min_gap_exact", "min_gap_effective"});
    for (const GapScanRow& row : rows) {
        csv.row({row.alpha, row.min_gap_exact, row.min_gap_effective});
    }
}

void run_singularity_probe(const Options& o) {
    const DerivativeScan scan =
        cbh_singularity_probe(o.j, o.m, o.l, o.beta, o.window, o.n_points);

    CsvFile csv(o.out + ".csv");
    std::vector<std::string> names = {"alpha", "max_abs_deriv"};
    char buf[32];
    const std::size_t dim = scan.energies.front().size();
    for (std::size_t r = 0; r < dim; ++r) {
        std::snprintf(buf, sizeof(buf), "eps_%03zu", r);
        names.emplace_back(buf);
    }
    csv.header(names);
    for (std::size_t i = 0; i < scan.alpha.size(); ++i) {
        std::vector<double> row = {scan.alpha[i], scan.max_abs_derivative[i]};
        row.insert(row.end(), scan.energies[i].begin(), scan.energies[i].end());
        csv.row(row);
    }
}

void run_phase_portrait(const Options& o) {
    const std::vector<CanonicalState> ics = standard_ic_grid(o.ic_grid);
    std::vector<PhasePortrait> per_ic(ics.size());
    parallel_for(static_cast<int>(ics.size()), o.effective_jobs(), [&](int i) {
        per_ic[static_cast<std::size_t>(i)] =
            phase_portrait(o.alpha, o.beta, {ics[static_cast<std::size_t>(i)]}, o.n_kicks, o.dt);
    });

    CsvFile map_csv(o.out + "_map.csv");
    CsvFile flow_csv(o.out + "_flow.csv");
    map_csv.header({"ic", "kick", "psi", "z"});
    flow_csv.header({"ic", "t", "psi", "z"});
    for (std::size_t i = 0; i < ics.size(); ++i) {
        const auto& map_orbit = per_ic[i].map_orbits.front();
        const auto& flow_orbit = per_ic[i].flow_orbits.front();
        for (std::size_t k = 0; k < map_orbit.size(); ++k) {
            map_csv.row({static_cast<double>(i), static_cast<double>(k + 1), map_orbit[k].psi,
                         map_orbit[k].z});
        }
        for (std::size_t k = 0; k < flow_orbit.size(); ++k) {
            flow_csv.row({static_cast<double>(i), static_cast<double>(k + 1), flow_orbit[k].psi,
                          flow_orbit[k].z});
        }
    }
}

void run_classical_limit(const Options& o) {
    const std::vector<double> js = parse_j_list(o.j_list);
    for (double j : js) {
        if (!is_half_integer(j)) {
            throw CLI::ValidationError("--j-list", "entries must be positive half-integers");
        }
    }
    const double h_cl = hcl_energy({std::cos(o.theta), o.psi}, o.alpha, o.beta);
    std::vector<double> values(js.size());
    parallel_for(static_cast<int>(js.size()), o.effective_jobs(), [&](int i) {
        values[static_cast<std::size_t>(i)] =
            classical_limit_check({o.alpha, o.beta, js[static_cast<std::size_t>(i)]}, o.theta,
                                  o.psi, {js[static_cast<std::size_t>(i)]})
                .front();
    });

    CsvFile csv(o.out + ".csv");
    csv.header({"j", "coherent_energy", "classical_energy", "abs_deviation"});
    for (std::size_t i = 0; i < js.size(); ++i) {
        csv.row({js[i], values[i], h_cl, std::abs(values[i] - h_cl)});
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Floquet analysis of the quantum kicked top: exact quasienergies, the "
                 "static effective model, spectral diagnostics and classical dynamics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("kicktop ") + KICKTOP_VERSION);

    Options o;
    std::string command;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "output path stem (<out>.csv, <out>.json)")->required();
        sub->add_option("--jobs", o.jobs, "worker threads (default: machine parallelism)")
            ->check(CLI::NonNegativeNumber);
        sub->final_callback([&command, sub] { command = sub->get_name(); });
    };
    const auto add_j = [&](CLI::App* sub) {
        sub->add_option("--j", o.j, "spin quantum number (half-integer)")
            ->required()
            ->check([](const std::string& s) {
                return is_half_integer(std::stod(s))
                           ? std::string{}
                           : std::string{"j must be a positive half-integer"};
            });
    };
    const auto add_sweep = [&](CLI::App* sub, bool required) {
        auto* start = sub->add_option("--alpha-start", o.alpha_start, "sweep start");
        auto* stop = sub->add_option("--alpha-stop", o.alpha_stop, "sweep stop");
        auto* count = sub->add_option("--alpha-count", o.alpha_count, "sweep point count (>= 2)")
                          ->check(CLI::Range(2, 1000000));
        if (required) {
            start->required();
            stop->required();
            count->required();
        }
    };

    auto* sweep = app.add_subcommand("spectrum-sweep",
                                     "exact quasienergies and folded effective eigenvalues over "
                                     "an alpha grid");
    add_j(sweep);
    sweep->add_option("--beta", o.beta, "kick rotation angle")->required();
    add_sweep(sweep, true);
    add_common(sweep);

    auto* dos = app.add_subcommand("dos", "smoothed density of states, exact vs effective");
    add_j(dos);
    dos->add_option("--alpha", o.alpha, "torsion strength")->required();
    dos->add_option("--beta", o.beta, "kick rotation angle")->required();
    dos->add_option("--sigma-frac", o.sigma_frac, "smoothing width / mean spacing (default 0.1)")
        ->check(CLI::PositiveNumber);
    dos->add_option("--grid-size", o.grid_size, "angle grid points (default 1024)")
        ->check(CLI::Range(256, 1 << 22));
    dos->add_option("--estimator", o.estimator, "gaussian (default) or fourier")
        ->check(CLI::IsMember({"gaussian", "fourier"}));
    dos->add_option("--n-terms", o.n_terms, "fourier truncation (default 10 * dim)")
        ->check(CLI::NonNegativeNumber);
    dos->add_option("--prominence", o.prominence,
                    "peak threshold as a multiple of the flat background (default 1.5)")
        ->check(CLI::PositiveNumber);
    add_common(dos);

    auto* rec = app.add_subcommand("reconstruct",
                                   "operator-norm distance between the exact propagator and the "
                                   "one rebuilt from the effective model");
    add_j(rec);
    auto* rec_alpha = rec->add_option("--alpha", o.alpha, "torsion strength");
    rec->add_option("--beta", o.beta, "kick rotation angle")->required();
    add_sweep(rec, false);
    add_common(rec);
    rec->parse_complete_callback([&o, rec_alpha] {
        if (o.alpha_count == 0 && rec_alpha->count() == 0) {
            throw CLI::RequiredError("--alpha (or --alpha-start/--alpha-stop/--alpha-count)");
        }
    });

    auto* gaps = app.add_subcommand("gap-scan",
                                    "minimal adjacent spectral gaps over an alpha grid");
    add_j(gaps);
    gaps->add_option("--beta", o.beta, "kick rotation angle")->required();
    add_sweep(gaps, true);
    add_common(gaps);

    auto* probe = app.add_subcommand("singularity-probe",
                                     "effective spectrum across the divergence locus of the "
                                     "operator-exponential-merging construction");
    add_j(probe);
    probe->add_option("--m", o.m, "magnetic quantum number in the locus formula")
        ->required()
        ->check(CLI::NonNegativeNumber);
    probe->add_option("--l", o.l, "integer multiple in the locus formula")
        ->required()
        ->check(CLI::PositiveNumber);
    probe->add_option("--beta", o.beta, "kick rotation angle")->required();
    probe->add_option("--window", o.window, "half-width of the alpha window (default 0.5)")
        ->check(CLI::PositiveNumber);
    probe->add_option("--n-points", o.n_points, "alpha grid points (default 101, >= 11)")
        ->check(CLI::Range(11, 1000000));
    add_common(probe);

    auto* portrait = app.add_subcommand("phase-portrait",
                                        "stroboscopic map orbits vs integrable flow orbits");
    portrait->add_option("--alpha", o.alpha, "torsion strength")->required();
    portrait->add_option("--beta", o.beta, "kick rotation angle")->required();
    portrait->add_option("--ic-grid", o.ic_grid, "number of initial conditions (default 20)")
        ->check(CLI::PositiveNumber);
    portrait->add_option("--n-kicks", o.n_kicks, "kicks per orbit (default 2000)")
        ->check(CLI::PositiveNumber);
    portrait->add_option("--dt", o.dt, "flow integrator step (default 1e-3)")
        ->check(CLI::PositiveNumber);
    add_common(portrait);

    auto* climit = app.add_subcommand("classical-limit",
                                      "coherent-state energy of the effective model against its "
                                      "classical value");
    climit->add_option("--alpha", o.alpha, "torsion strength")->required();
    climit->add_option("--beta", o.beta, "kick rotation angle")->required();
    climit->add_option("--theta", o.theta, "polar angle of the sphere point (default 1.0)");
    climit->add_option("--psi", o.psi, "azimuth of the sphere point (default 0.5)");
    climit->add_option("--j-list", o.j_list, "comma-separated spins (default 10,20,40,80)");
    add_common(climit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        json results;
        if (command == "spectrum-sweep") {
            run_spectrum_sweep(o);
        } else if (command == "dos") {
            results = run_dos(o);
        } else if (command == "reconstruct") {
            run_reconstruct(o);
        } else if (command == "gap-scan") {
            run_gap_scan(o);
        } else if (command == "singularity-probe") {
            run_singularity_probe(o);
        } else if (command == "phase-portrait") {
            run_phase_portrait(o);
        } else if (command == "classical-limit") {
            run_classical_limit(o);
        }
        std::vector<std::string> outputs;
        if (command == "phase-portrait") {
            outputs = {o.out + "_map.csv", o.out + "_flow.csv"};
        } else {
            outputs = {o.out + ".csv"};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json sidecar = config_json(command, o);
        if (!results.is_null()) sidecar["results"] = results;
        write_sidecar(std::move(sidecar), outputs, seconds);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "kicktop " << command << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "kicktop " << command << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}
