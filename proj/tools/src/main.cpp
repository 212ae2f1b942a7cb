#include "json_config.hpp"

#include "idphase/certifier.hpp"
#include "idphase/errors.hpp"
#include "idphase/experiments.hpp"
#include "idphase/lifting.hpp"
#include "idphase/parallel.hpp"
#include "idphase/signatures.hpp"
#include "idphase/statdim.hpp"
#include "idphase/theory.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace idphase;

namespace {

// Exit codes: 0 success, 1 usage or domain error, 2 numerical failure, 3 I/O.
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string default_out() {
    const char* env = std::getenv("IDPHASE_OUT");
    return env && *env ? env : "idphase_out";
}

std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> v;
    for (int k = 0; k < steps; ++k) v.push_back(std::round((lo + (hi - lo) * k / (steps - 1)) * 1e12) / 1e12);
    return v;
}

struct Common {
    std::string out = default_out();
    std::uint64_t seed = 1;
    unsigned workers = default_workers();
    double tol_feas = 1e-9;
    double tol_rank = 1e-10;
    long long max_iterations = 0;

    CertifierConfig certifier() const {
        CertifierConfig cfg;
        cfg.feas_tol = tol_feas;
        cfg.rank_tol = tol_rank;
        cfg.max_iterations = static_cast<Eigen::Index>(max_iterations);
        return cfg;
    }
};

void add_out(cli::Command& cmd, Common& c) {
    cmd.option("--out", c.out, "Output directory (falls back to $IDPHASE_OUT)");
}
void add_seed(cli::Command& cmd, Common& c) { cmd.option("--seed", c.seed, "Base seed"); }
void add_workers(cli::Command& cmd, Common& c) {
    cmd.option("--workers", c.workers, "Worker threads (1 = sequential)")->check(CLI::PositiveNumber);
}
void add_tolerances(cli::Command& cmd, Common& c) {
    cmd.option("--tol-feas", c.tol_feas, "LP feasibility tolerance")->check(CLI::PositiveNumber);
    cmd.option("--tol-rank", c.tol_rank, "Relative rank tolerance")->check(CLI::PositiveNumber);
    cmd.option("--max-iterations", c.max_iterations, "Simplex iteration cap (0 = 50*(rows+cols))")
        ->check(CLI::NonNegativeNumber);
}

fs::path prepare_out(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
    return dir;
}

std::ofstream open_csv(const fs::path& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path.string());
    return os;
}

void finish(std::ofstream& os, const fs::path& path) {
    os.flush();
    if (!os) throw IoError("write to " + path.string() + " failed");
}

SignatureModel make_model(const std::string& name, std::int64_t n_full) {
    const auto kind = parse_signature_kind(name);
    if (kind == SignatureKind::SubsampledHadamard) return SignatureModel::hadamard(n_full);
    return {kind, 0};
}

SystemSource parse_source(const std::string& s) {
    if (s == "lifted") return SystemSource::Lifted;
    if (s == "semirandom") return SystemSource::SemiRandom;
    throw InvalidArgument("unknown source '" + s + "' (expected lifted|semirandom)");
}

void progress_line(const PhaseCellResult& c) {
    std::cerr << "  " << c.model << " N=" << c.N << " L=" << c.L << " K=" << c.K << " eps=" << std::setprecision(4)
              << c.eps << " alpha=" << c.alpha_achieved << " p=" << c.probability();
    if (c.ambiguous_count > 0) std::cerr << " ambiguous=" << c.ambiguous_count;
    std::cerr << '\n';
}

void write_run_manifest(const fs::path& dir, const std::string& sub, const cli::Command& cmd,
                        const CertifierConfig* certifier, std::chrono::steady_clock::time_point start) {
    auto m = make_manifest(sub, cmd.resolved(), certifier);
    m["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(dir, m);
}

double theory_eps(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) return std::numeric_limits<double>::quiet_NaN();
    return epsilon_at_delta(alpha);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Identifiability phase transitions for covariance-based activity detection", "idphase"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    auto sub = [&](const std::string& name, const std::string& help) { return app.add_subcommand(name, help); };

    Common common;
    auto start = std::chrono::steady_clock::now();

    // theory
    double eps_min = 0.01, eps_max = 0.99, mu_tol = kMuTolerance;
    int steps = 99;
    cli::Command theory_cmd(sub("theory", "Tabulate the analytical boundary (epsilon, mu*, delta*)"));
    theory_cmd.option("--eps-min", eps_min, "Smallest epsilon")->check(CLI::Range(0.0, 1.0));
    theory_cmd.option("--eps-max", eps_max, "Largest epsilon")->check(CLI::Range(0.0, 1.0));
    theory_cmd.option("--steps", steps, "Number of grid points")->check(CLI::Range(2, 1000000));
    theory_cmd.option("--tol", mu_tol, "Root residual tolerance")->check(CLI::PositiveNumber);
    add_out(theory_cmd, common);

    // statdim
    Eigen::Index sd_n = 4000;
    std::vector<double> sd_eps{0.1, 0.3, 0.5};
    std::vector<Eigen::Index> sd_k;
    std::size_t sd_samples = 200;
    cli::Command statdim_cmd(sub("statdim", "Monte Carlo statistical dimension of the cone D"));
    statdim_cmd.option("--n", sd_n, "Ambient dimension N")->check(CLI::PositiveNumber);
    statdim_cmd.option("--eps", sd_eps, "Sparsity ratios K/N")->delimiter(',')->check(CLI::Range(0.0, 1.0));
    statdim_cmd.option("--k", sd_k, "Explicit K values (override --eps)")->delimiter(',');
    statdim_cmd.option("--samples", sd_samples, "Gaussian samples per K")->check(CLI::Range(2, 100000000));
    add_seed(statdim_cmd, common);
    add_workers(statdim_cmd, common);
    add_out(statdim_cmd, common);

    // certify
    std::string cert_matrix, cert_model = "gaussian", cert_stack = "auto";
    Eigen::Index cert_n = 50, cert_l = 0, cert_k = -1;
    double cert_alpha = 0.5;
    std::int64_t n_full = 1024;
    cli::Command certify_cmd(sub("certify", "Certify identifiability of one constraint matrix"));
    certify_cmd.option("--matrix", cert_matrix, "Constraint matrix file (header 'rows cols'); else sample a model");
    certify_cmd.option("--model", cert_model, "Signature model")
        ->check(CLI::IsMember({"gaussian", "rademacher", "hadamard"}));
    certify_cmd.option("--n", cert_n, "Number of users N")->check(CLI::PositiveNumber);
    certify_cmd.option("--l", cert_l, "Signature length L (0 = choose from --alpha)")->check(CLI::NonNegativeNumber);
    certify_cmd.option("--alpha", cert_alpha, "Target d/N when --l is 0")->check(CLI::PositiveNumber);
    certify_cmd.option("--n-full", n_full, "Hadamard order to sub-sample from")->check(CLI::PositiveNumber);
    certify_cmd.option("--k", cert_k, "Active users K (support = last K indices), required");
    certify_cmd.option("--stack", cert_stack, "Constraint stack")->check(CLI::IsMember({"auto", "full", "reduced"}));
    add_seed(certify_cmd, common);
    add_tolerances(certify_cmd, common);
    add_out(certify_cmd, common);

    // phase
    std::string model = "gaussian", source = "lifted", spectrum = "stack";
    Eigen::Index grid_n = 400;
    std::vector<double> grid_alpha = linspace(0.1, 0.9, 9);
    std::vector<double> grid_eps = linspace(0.02, 0.9, 23);
    int trials = 50;
    cli::Command phase_cmd(sub("phase", "Monte Carlo phase diagram over an (alpha, epsilon) grid"));
    phase_cmd.option("--model", model, "Signature model")->check(CLI::IsMember({"gaussian", "rademacher", "hadamard"}));
    phase_cmd.option("--n", grid_n, "Number of users N")->check(CLI::Range(2, 1000000));
    phase_cmd.option("--n-full", n_full, "Hadamard order to sub-sample from")->check(CLI::PositiveNumber);
    phase_cmd.option("--alpha", grid_alpha, "Target d/N values")->delimiter(',')->check(CLI::PositiveNumber);
    phase_cmd.option("--eps", grid_eps, "K/N values")->delimiter(',')->check(CLI::Range(0.0, 1.0));
    phase_cmd.option("--trials", trials, "Trials per cell")->check(CLI::PositiveNumber);
    phase_cmd.option("--source", source, "Constraint source")->check(CLI::IsMember({"lifted", "semirandom"}));
    phase_cmd.option("--spectrum", spectrum, "Surrogate spectrum: lifted stack minus ones direction, or A2 only")
        ->check(CLI::IsMember({"stack", "a2"}));
    add_seed(phase_cmd, common);
    add_workers(phase_cmd, common);
    add_tolerances(phase_cmd, common);
    add_out(phase_cmd, common);

    // transition / compare-semirandom share the bracketing knobs
    std::vector<double> tr_alpha{0.3, 0.5, 0.7};
    double eps_lo = 0.02, eps_hi = 0.9, resolution = 0.01;
    cli::Command transition_cmd(sub("transition", "Adaptive bisection for the 50% identifiability crossing"));
    transition_cmd.option("--model", model, "Signature model")
        ->check(CLI::IsMember({"gaussian", "rademacher", "hadamard"}));
    transition_cmd.option("--n", grid_n, "Number of users N")->check(CLI::Range(2, 1000000));
    transition_cmd.option("--n-full", n_full, "Hadamard order to sub-sample from")->check(CLI::PositiveNumber);
    transition_cmd.option("--alpha", tr_alpha, "Target d/N values")->delimiter(',')->check(CLI::PositiveNumber);
    transition_cmd.option("--eps-lo", eps_lo, "Lower bracket end")->check(CLI::Range(0.0, 1.0));
    transition_cmd.option("--eps-hi", eps_hi, "Upper bracket end")->check(CLI::Range(0.0, 1.0));
    transition_cmd.option("--resolution", resolution, "Stop when the bracket is this narrow")
        ->check(CLI::PositiveNumber);
    transition_cmd.option("--trials", trials, "Trials per evaluated cell")->check(CLI::PositiveNumber);
    transition_cmd.option("--source", source, "Constraint source")->check(CLI::IsMember({"lifted", "semirandom"}));
    transition_cmd.option("--spectrum", spectrum, "Surrogate spectrum (stack|a2)")->check(CLI::IsMember({"stack", "a2"}));
    add_seed(transition_cmd, common);
    add_workers(transition_cmd, common);
    add_tolerances(transition_cmd, common);
    add_out(transition_cmd, common);

    std::string cmp_model = "gaussian";
    Eigen::Index cmp_n = 300;
    std::vector<double> cmp_alpha{0.3, 0.6};
    cli::Command compare_cmd(sub("compare-semirandom", "Transition of a lifted model next to its semi-random surrogate"));
    compare_cmd.option("--model", cmp_model, "Signature model")
        ->check(CLI::IsMember({"gaussian", "rademacher", "hadamard"}));
    compare_cmd.option("--n", cmp_n, "Number of users N")->check(CLI::Range(2, 1000000));
    compare_cmd.option("--n-full", n_full, "Hadamard order to sub-sample from")->check(CLI::PositiveNumber);
    compare_cmd.option("--alpha", cmp_alpha, "Target d/N values")->delimiter(',')->check(CLI::PositiveNumber);
    compare_cmd.option("--eps-lo", eps_lo, "Lower bracket end")->check(CLI::Range(0.0, 1.0));
    compare_cmd.option("--eps-hi", eps_hi, "Upper bracket end")->check(CLI::Range(0.0, 1.0));
    compare_cmd.option("--resolution", resolution, "Stop when the bracket is this narrow")->check(CLI::PositiveNumber);
    compare_cmd.option("--trials", trials, "Trials per evaluated cell")->check(CLI::PositiveNumber);
    compare_cmd.option("--spectrum", spectrum, "Surrogate spectrum (stack|a2)")->check(CLI::IsMember({"stack", "a2"}));
    add_seed(compare_cmd, common);
    add_workers(compare_cmd, common);
    add_tolerances(compare_cmd, common);
    add_out(compare_cmd, common);

    // rank-scan
    Eigen::Index rs_n = 300, rs_l = 25;
    int rs_seeds = 20;
    cli::Command rank_cmd(sub("rank-scan", "Numerical rank of Hadamard A2 against the XOR-count oracle"));
    rank_cmd.option("--n-full", n_full, "Hadamard order")->check(CLI::PositiveNumber);
    rank_cmd.option("--n", rs_n, "Number of users N")->check(CLI::PositiveNumber);
    rank_cmd.option("--l", rs_l, "Signature length L")->check(CLI::PositiveNumber);
    rank_cmd.option("--seeds", rs_seeds, "Number of seeds (seed, seed+1, ...)")->check(CLI::PositiveNumber);
    rank_cmd.option("--tol-rank", common.tol_rank, "Relative rank tolerance")->check(CLI::PositiveNumber);
    add_seed(rank_cmd, common);
    add_workers(rank_cmd, common);
    add_out(rank_cmd, common);

    // spectrum
    std::string sp_model = "gaussian";
    Eigen::Index sp_n = 400, sp_l = 0;
    double sp_alpha = 0.5;
    cli::Command spectrum_cmd(sub("spectrum", "Singular values of A2 for one sampled signature"));
    spectrum_cmd.option("--model", sp_model, "Signature model")
        ->check(CLI::IsMember({"gaussian", "rademacher", "hadamard"}));
    spectrum_cmd.option("--n", sp_n, "Number of users N")->check(CLI::Range(2, 1000000));
    spectrum_cmd.option("--l", sp_l, "Signature length L (0 = choose from --alpha)")->check(CLI::NonNegativeNumber);
    spectrum_cmd.option("--alpha", sp_alpha, "Target d/N when --l is 0")->check(CLI::PositiveNumber);
    spectrum_cmd.option("--n-full", n_full, "Hadamard order to sub-sample from")->check(CLI::PositiveNumber);
    add_seed(spectrum_cmd, common);
    add_out(spectrum_cmd, common);

    const std::vector<cli::Command*> commands{&theory_cmd,     &statdim_cmd, &certify_cmd, &phase_cmd,
                                              &transition_cmd, &compare_cmd, &rank_cmd,    &spectrum_cmd};
    try {
        app.parse(argc, argv);
        for (auto* cmd : commands)
            if (cmd->app()->parsed()) cmd->apply_config();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (theory_cmd.app()->parsed()) {
            if (!(eps_min < eps_max)) throw InvalidArgument("--eps-min must be below --eps-max");
            const auto curve = theory_curve(eps_min, eps_max, static_cast<std::size_t>(steps), mu_tol);
            const auto dir = prepare_out(common.out);
            auto os = open_csv(dir / "theory_curve.csv");
            write_theory_csv(os, curve);
            finish(os, dir / "theory_curve.csv");
            write_run_manifest(dir, "theory", theory_cmd, nullptr, start);
            std::cerr << "wrote " << (dir / "theory_curve.csv").string() << " (" << curve.points.size() << " points)\n";
        } else if (statdim_cmd.app()->parsed()) {
            std::vector<Eigen::Index> ks = sd_k;
            if (ks.empty())
                for (double e : sd_eps) ks.push_back(static_cast<Eigen::Index>(std::llround(e * static_cast<double>(sd_n))));
            std::vector<StatDimEstimate> rows;
            for (auto k : ks) {
                if (k < 0 || k > sd_n) throw InvalidArgument("K must lie in [0, N]");
                rows.push_back(statdim_mc(sd_n, k, sd_samples, common.seed, common.workers));
                const auto& r = rows.back();
                const double eps = static_cast<double>(k) / static_cast<double>(sd_n);
                std::cerr << "  K=" << k << " mean=" << std::setprecision(6) << r.mean << " stderr=" << r.stderr_;
                if (eps > kEpsGuard && eps < 1.0 - kEpsGuard) std::cerr << " delta*=" << delta_star(eps);
                std::cerr << '\n';
            }
            const auto dir = prepare_out(common.out);
            auto os = open_csv(dir / "statdim.csv");
            write_statdim_csv(os, rows);
            finish(os, dir / "statdim.csv");
            write_run_manifest(dir, "statdim", statdim_cmd, nullptr, start);
        } else if (certify_cmd.app()->parsed()) {
            if (cert_k < 0) throw InvalidArgument("certify: --k is required");
            Eigen::MatrixXd a;
            if (!cert_matrix.empty()) {
                std::ifstream is(cert_matrix);
                if (!is) throw IoError("cannot open " + cert_matrix);
                a = read_matrix_text(is);
            } else {
                const auto m = make_model(cert_model, n_full);
                const Eigen::Index L = cert_l > 0 ? cert_l : choose_L(cert_alpha, cert_n).L;
                const auto sys = lift(sample_signature(m, L, cert_n, common.seed));
                StackMode mode = m.is_sign_valued() ? StackMode::Reduced : StackMode::Full;
                if (cert_stack == "full") mode = StackMode::Full;
                if (cert_stack == "reduced") mode = StackMode::Reduced;
                a = stacked_constraints(sys, mode);
            }
            if (cert_k < 0 || cert_k > a.cols())
                throw InvalidArgument("--k must lie in [0, " + std::to_string(a.cols()) + "]");
            const auto cfg = common.certifier();
            const auto cert = certify(a, ConeSpec::canonical(a.cols(), cert_k), cfg);
            const auto j = to_json(cert);
            std::cout << j.dump(2) << '\n';
            const auto dir = prepare_out(common.out);
            std::ofstream os(dir / "certificate.json");
            os << j.dump(2) << '\n';
            finish(os, dir / "certificate.json");
            write_run_manifest(dir, "certify", certify_cmd, &cfg, start);
        } else if (phase_cmd.app()->parsed()) {
            PhaseDiagramConfig pc;
            pc.model = make_model(model, n_full);
            pc.source = parse_source(source);
            pc.spectrum = parse_surrogate_spectrum(spectrum);
            pc.N = grid_n;
            pc.alphas = grid_alpha;
            pc.epsilons = grid_eps;
            pc.trials = trials;
            pc.seed = common.seed;
            pc.certifier = common.certifier();
            pc.workers = common.workers;
            const auto dir = prepare_out(common.out);
            auto os = open_csv(dir / "phase_diagram.csv");
            const auto diagram = run_phase_diagram(pc, &os, progress_line);
            finish(os, dir / "phase_diagram.csv");
            auto ts = open_csv(dir / "transitions.csv");
            write_transitions_header(ts);
            for (const auto& t : estimate_transition(diagram)) write_transition_row(ts, t);
            finish(ts, dir / "transitions.csv");
            write_run_manifest(dir, "phase", phase_cmd, &pc.certifier, start);
        } else if (transition_cmd.app()->parsed() || compare_cmd.app()->parsed()) {
            const bool compare = compare_cmd.app()->parsed();
            BisectionConfig bc;
            bc.model = make_model(compare ? cmp_model : model, n_full);
            bc.source = compare ? SystemSource::Lifted : parse_source(source);
            bc.spectrum = parse_surrogate_spectrum(spectrum);
            bc.N = compare ? cmp_n : grid_n;
            bc.eps_lo = eps_lo;
            bc.eps_hi = eps_hi;
            bc.resolution = resolution;
            bc.trials = trials;
            bc.seed = common.seed;
            bc.certifier = common.certifier();
            bc.workers = common.workers;
            const auto dir = prepare_out(common.out);
            auto cells = open_csv(dir / "phase_diagram.csv");
            auto ts = open_csv(dir / "transitions.csv");
            write_phase_header(cells);
            write_transitions_header(ts);
            std::ofstream cmp;
            if (compare) {
                cmp = open_csv(dir / "comparison.csv");
                cmp << "model,N,alpha_target,epsilon_50_lifted,epsilon_50_surrogate,difference\n";
            }
            auto record = [&](const TransitionEstimate& t) {
                for (const auto& c : t.cells) write_phase_row(cells, c);
                write_transition_row(ts, t);
                cells.flush();
                ts.flush();
                std::cerr << t.model << " alpha=" << std::setprecision(4) << t.alpha << " eps50="
                          << (t.censored ? std::string("censored") : std::to_string(t.eps50))
                          << " eps*(alpha)=" << theory_eps(t.alpha) << '\n';
            };
            for (double alpha : compare ? cmp_alpha : tr_alpha) {
                bc.alpha = alpha;
                if (compare) {
                    const auto r = compare_semirandom(bc, progress_line);
                    record(r.lifted);
                    record(r.surrogate);
                    cmp << std::setprecision(std::numeric_limits<double>::max_digits10) << to_string(bc.model.kind)
                        << ',' << bc.N << ',' << alpha << ',' << r.lifted.eps50 << ',' << r.surrogate.eps50 << ','
                        << r.difference << '\n';
                    std::cerr << "difference " << r.difference << '\n';
                } else {
                    record(bisect_transition(bc, progress_line));
                }
            }
            finish(cells, dir / "phase_diagram.csv");
            finish(ts, dir / "transitions.csv");
            if (compare) finish(cmp, dir / "comparison.csv");
            write_run_manifest(dir, compare ? "compare-semirandom" : "transition", compare ? compare_cmd : transition_cmd,
                               &bc.certifier, start);
        } else if (rank_cmd.app()->parsed()) {
            const RankScanConfig rc{n_full, rs_n, rs_l};
            std::vector<std::uint64_t> seeds;
            for (int k = 0; k < rs_seeds; ++k) seeds.push_back(common.seed + static_cast<std::uint64_t>(k));
            const auto rows = rank_scan(std::span(&rc, 1), seeds, common.tol_rank, common.workers);
            const auto dir = prepare_out(common.out);
            auto os = open_csv(dir / "rank_scan.csv");
            write_rank_scan_csv(os, rows);
            finish(os, dir / "rank_scan.csv");
            write_run_manifest(dir, "rank-scan", rank_cmd, nullptr, start);
            int agree = 0, deficient = 0;
            for (const auto& r : rows) {
                agree += r.measured_rank == r.oracle_rank;
                deficient += r.measured_rank < r.d;
            }
            std::cerr << "rank agrees with oracle in " << agree << '/' << rows.size() << ", below d in " << deficient
                      << '/' << rows.size() << '\n';
            if (agree != static_cast<int>(rows.size())) {
                std::cerr << "error: numerical rank disagrees with the XOR oracle\n";
                return kExitNumerical;
            }
        } else if (spectrum_cmd.app()->parsed()) {
            const auto m = make_model(sp_model, n_full);
            const Eigen::Index L = sp_l > 0 ? sp_l : choose_L(sp_alpha, sp_n).L;
            const auto sys = lift(sample_signature(m, L, sp_n, common.seed));
            const auto sigma = singular_values(sys.a2);
            const auto dir = prepare_out(common.out);
            auto os = open_csv(dir / "spectrum.csv");
            write_spectrum_csv(os, sigma);
            finish(os, dir / "spectrum.csv");
            write_run_manifest(dir, "spectrum", spectrum_cmd, nullptr, start);
            std::cerr << "L=" << L << " d=" << sys.d << " rank=" << numerical_rank(sigma, sys.a2.rows(), sys.a2.cols())
                      << '\n';
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResourceLimit& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
