#include "idphase/experiments.hpp"

#include "idphase/errors.hpp"
#include "idphase/lifting.hpp"
#include "idphase/parallel.hpp"
#include "idphase/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace idphase {

namespace {

enum class TrialOutcome { Identifiable, NotIdentifiable, Ambiguous };

struct TrialResult {
    TrialOutcome outcome = TrialOutcome::Ambiguous;
    Eigen::Index rank = 0;
};

TrialResult run_trial(const CellSpec& spec, Eigen::Index L, Eigen::Index K, int t, const CertifierConfig& cfg) {
    const std::uint64_t seed = trial_seed(spec, L, K, t);
    Eigen::MatrixXd a;
    if (spec.source == SystemSource::Lifted) {
        const auto sys = lift(sample_signature(spec.model, L, spec.N, seed));
        a = stacked_constraints(sys, spec.model.is_sign_valued() ? StackMode::Reduced : StackMode::Full);
    } else {
        const auto donor = sample_signature(spec.model, L, spec.N, derive_seed(seed, {1}));
        const auto spectrum = surrogate_spectrum(donor, spec.spectrum);
        a = semi_random_system(spectrum, spec.N, derive_seed(seed, {2})).constraints;
    }
    TrialResult out;
    try {
        const auto cert = certify(a, ConeSpec::canonical(spec.N, K), cfg);
        out.rank = cert.row_rank;
        out.outcome = cert.verdict == Verdict::Identifiable ? TrialOutcome::Identifiable : TrialOutcome::NotIdentifiable;
    } catch (const NumericalFailure&) {
        out.outcome = TrialOutcome::Ambiguous;
        out.rank = numerical_rank(a, cfg.rank_tol);
    }
    return out;
}

Eigen::Index k_for(double eps, Eigen::Index N) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidArgument("epsilon must lie in [0, 1]");
    return static_cast<Eigen::Index>(std::llround(eps * static_cast<double>(N)));
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

}  // namespace

std::string to_string(SurrogateSpectrum s) { return s == SurrogateSpectrum::A2Only ? "a2" : "stack"; }

SurrogateSpectrum parse_surrogate_spectrum(std::string_view name) {
    if (name == "stack") return SurrogateSpectrum::ProjectedStack;
    if (name == "a2") return SurrogateSpectrum::A2Only;
    throw InvalidArgument("unknown surrogate spectrum '" + std::string(name) + "' (expected stack|a2)");
}

std::vector<double> surrogate_spectrum(const SignatureMatrix& s, SurrogateSpectrum source) {
    const auto sys = lift(s);
    if (source == SurrogateSpectrum::A2Only) return singular_values(sys.a2);
    const bool reduced = s.model.is_sign_valued();
    Eigen::MatrixXd block = reduced ? sys.a2 : stacked_constraints(sys, StackMode::Full);
    // Right-multiply by I - 11ᵀ/N: subtract each row's mean.
    block.colwise() -= block.rowwise().mean();
    auto sigma = singular_values(block);
    if (static_cast<Eigen::Index>(sigma.size()) > sys.N) sigma.resize(static_cast<std::size_t>(sys.N));
    return sigma;
}

std::string model_label(const SignatureModel& model, SystemSource source, SurrogateSpectrum spectrum) {
    std::string name = to_string(model.kind);
    if (source == SystemSource::Lifted) return name;
    return (spectrum == SurrogateSpectrum::A2Only ? "semirandom-a2-" : "semirandom-") + name;
}

LChoice choose_L(double alpha, Eigen::Index N) {
    if (!(alpha > 0.0) || N < 2) throw InvalidArgument("choose_L: need alpha > 0 and N >= 2");
    const double target = alpha * static_cast<double>(N);
    const auto L = static_cast<Eigen::Index>(std::llround((1.0 + std::sqrt(1.0 + 8.0 * target)) / 2.0));
    if (L < 2) throw InvalidArgument("choose_L: alpha*N too small for a single pair");
    LChoice c;
    c.L = L;
    c.d = L * (L - 1) / 2;
    c.achieved = static_cast<double>(c.d) / static_cast<double>(N);
    return c;
}

double PhaseCellResult::probability() const {
    const int valid = trials - ambiguous_count;
    return valid > 0 ? static_cast<double>(identifiable_count) / valid : 0.0;
}

std::uint64_t trial_seed(const CellSpec& spec, Eigen::Index L, Eigen::Index K, int trial) {
    return derive_seed(spec.base_seed,
                       {static_cast<std::uint64_t>(spec.model.kind), static_cast<std::uint64_t>(spec.model.n_full),
                        static_cast<std::uint64_t>(spec.source), static_cast<std::uint64_t>(spec.spectrum),
                        static_cast<std::uint64_t>(spec.N),
                        static_cast<std::uint64_t>(L), static_cast<std::uint64_t>(K),
                        static_cast<std::uint64_t>(trial)});
}

PhaseCellResult run_phase_cell(const CellSpec& spec, const CertifierConfig& cfg, unsigned workers) {
    if (spec.trials < 1) throw InvalidArgument("run_phase_cell: trials must be >= 1");
    if (spec.N < 2) throw InvalidArgument("run_phase_cell: N must be >= 2");
    const auto choice = choose_L(spec.alpha, spec.N);
    const auto K = k_for(spec.eps, spec.N);

    std::vector<TrialResult> results(static_cast<std::size_t>(spec.trials));
    parallel_for(results.size(), workers, [&](std::size_t t) {
        results[t] = run_trial(spec, choice.L, K, static_cast<int>(t), cfg);
    });

    PhaseCellResult cell;
    cell.model = model_label(spec.model, spec.source, spec.spectrum);
    cell.N = spec.N;
    cell.L = choice.L;
    cell.d = choice.d;
    cell.K = K;
    cell.alpha_target = spec.alpha;
    cell.eps = static_cast<double>(K) / static_cast<double>(spec.N);
    cell.trials = spec.trials;
    cell.base_seed = spec.base_seed;
    double rank_sum = 0.0;
    for (const auto& r : results) {
        rank_sum += static_cast<double>(r.rank);
        if (r.outcome == TrialOutcome::Identifiable) ++cell.identifiable_count;
        if (r.outcome == TrialOutcome::Ambiguous) ++cell.ambiguous_count;
    }
    cell.alpha_achieved = rank_sum / spec.trials / static_cast<double>(spec.N);
    if (cell.ambiguous_count > 0 && 100 * cell.ambiguous_count >= spec.trials)
        throw NumericalFailure("run_phase_cell: " + std::to_string(cell.ambiguous_count) + " of " +
                               std::to_string(spec.trials) + " trials were ambiguous");
    return cell;
}

void write_phase_header(std::ostream& os) {
    os << "model,N,L,d,K,alpha_target,alpha_achieved,epsilon,trials,identifiable_count,ambiguous_count,base_seed\n";
}

void write_phase_row(std::ostream& os, const PhaseCellResult& c) {
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    os << c.model << ',' << c.N << ',' << c.L << ',' << c.d << ',' << c.K << ',' << c.alpha_target << ','
       << c.alpha_achieved << ',' << c.eps << ',' << c.trials << ',' << c.identifiable_count << ','
       << c.ambiguous_count << ',' << c.base_seed << '\n';
}

PhaseDiagram run_phase_diagram(const PhaseDiagramConfig& config, std::ostream* csv,
                               const std::function<void(const PhaseCellResult&)>& progress) {
    if (config.alphas.empty() || config.epsilons.empty())
        throw InvalidArgument("run_phase_diagram: empty alpha or epsilon grid");
    PhaseDiagram out;
    out.config = config;
    if (csv) {
        write_phase_header(*csv);
        csv->flush();
    }
    for (double alpha : config.alphas) {
        for (double eps : config.epsilons) {
            CellSpec spec{config.model, config.source, config.N, alpha, eps, config.trials, config.seed, config.spectrum};
            auto cell = run_phase_cell(spec, config.certifier, config.workers);
            if (csv) {
                write_phase_row(*csv, cell);
                csv->flush();
                if (!*csv) throw std::runtime_error("run_phase_diagram: write to phase_diagram.csv failed");
            }
            if (progress) progress(cell);
            out.cells.push_back(std::move(cell));
        }
    }
    return out;
}

TransitionEstimate interpolate_transition(std::vector<PhaseCellResult> column) {
    TransitionEstimate est;
    est.method = "interpolation";
    if (column.empty()) {
        est.censored = true;
        return est;
    }
    std::sort(column.begin(), column.end(), [](const auto& a, const auto& b) { return a.eps < b.eps; });
    est.model = column.front().model;
    est.N = column.front().N;
    est.alpha_target = column.front().alpha_target;
    double alpha_sum = 0.0;
    for (const auto& c : column) alpha_sum += c.alpha_achieved;
    est.alpha = alpha_sum / static_cast<double>(column.size());
    est.censored = true;
    for (std::size_t k = 0; k + 1 < column.size(); ++k) {
        const double p0 = column[k].probability();
        const double p1 = column[k + 1].probability();
        if (p0 >= 0.5 && p1 < 0.5) {
            const double e0 = column[k].eps, e1 = column[k + 1].eps;
            est.eps50 = e0 + (p0 - 0.5) * (e1 - e0) / (p0 - p1);
            est.censored = false;
            break;
        }
    }
    est.cells = std::move(column);
    return est;
}

std::vector<TransitionEstimate> estimate_transition(const PhaseDiagram& diagram) {
    std::vector<TransitionEstimate> out;
    for (double alpha : diagram.config.alphas) {
        std::vector<PhaseCellResult> column;
        for (const auto& c : diagram.cells)
            if (c.alpha_target == alpha) column.push_back(c);
        out.push_back(interpolate_transition(std::move(column)));
    }
    return out;
}

TransitionEstimate bisect_transition(const BisectionConfig& config,
                                     const std::function<void(const PhaseCellResult&)>& progress) {
    if (!(config.eps_lo < config.eps_hi)) throw InvalidArgument("bisect_transition: empty epsilon bracket");
    if (!(config.resolution > 0.0)) throw InvalidArgument("bisect_transition: resolution must be positive");

    std::vector<PhaseCellResult> cells;
    auto evaluate = [&](double eps) {
        CellSpec spec{config.model, config.source, config.N, config.alpha, eps, config.trials, config.seed, config.spectrum};
        auto cell = run_phase_cell(spec, config.certifier, config.workers);
        if (progress) progress(cell);
        cells.push_back(cell);
        return cell;
    };

    auto lo = evaluate(config.eps_lo);
    auto hi = evaluate(config.eps_hi);
    TransitionEstimate est;
    est.model = lo.model;
    est.N = config.N;
    est.alpha_target = config.alpha;
    est.method = "bisection";
    if (lo.probability() < 0.5 || hi.probability() >= 0.5) {
        est.censored = true;
    } else {
        while (hi.eps - lo.eps > config.resolution && hi.K - lo.K > 1) {
            auto mid = evaluate(0.5 * (lo.eps + hi.eps));
            (mid.probability() >= 0.5 ? lo : hi) = mid;
        }
        const double p0 = lo.probability(), p1 = hi.probability();
        est.eps50 = lo.eps + (p0 - 0.5) * (hi.eps - lo.eps) / (p0 - p1);
    }
    double alpha_sum = 0.0;
    for (const auto& c : cells) alpha_sum += c.alpha_achieved;
    est.alpha = alpha_sum / static_cast<double>(cells.size());
    est.cells = std::move(cells);
    return est;
}

void write_transitions_header(std::ostream& os) { os << "model,N,alpha,epsilon_50,method,censored\n"; }

void write_transition_row(std::ostream& os, const TransitionEstimate& t) {
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    os << t.model << ',' << t.N << ',' << t.alpha << ',';
    if (t.censored)
        os << "nan";
    else
        os << t.eps50;
    os << ',' << t.method << ',' << (t.censored ? "true" : "false") << '\n';
}

SemiRandomComparison compare_semirandom(BisectionConfig config,
                                        const std::function<void(const PhaseCellResult&)>& progress) {
    SemiRandomComparison out;
    config.source = SystemSource::Lifted;
    out.lifted = bisect_transition(config, progress);
    config.source = SystemSource::SemiRandom;
    out.surrogate = bisect_transition(config, progress);
    if (!out.lifted.censored && !out.surrogate.censored)
        out.difference = out.surrogate.eps50 - out.lifted.eps50;
    else
        out.difference = std::numeric_limits<double>::quiet_NaN();
    return out;
}

RankScanRow rank_scan_one(const RankScanConfig& cfg, std::uint64_t seed, double rank_tol) {
    const auto s = sample_signature(SignatureModel::hadamard(cfg.n_full), cfg.L, cfg.N, seed);
    const auto sys = lift(s);
    RankScanRow row;
    row.n_full = cfg.n_full;
    row.N = cfg.N;
    row.L = cfg.L;
    row.d = sys.d;
    row.seed = seed;
    row.measured_rank = numerical_rank(sys.a2, rank_tol);
    row.oracle_rank = hadamard_rank_oracle(s.row_indices);
    return row;
}

std::vector<RankScanRow> rank_scan(std::span<const RankScanConfig> sizes, std::span<const std::uint64_t> seeds,
                                   double rank_tol, unsigned workers) {
    std::vector<RankScanRow> rows(sizes.size() * seeds.size());
    parallel_for(rows.size(), workers, [&](std::size_t k) {
        rows[k] = rank_scan_one(sizes[k / seeds.size()], seeds[k % seeds.size()], rank_tol);
    });
    return rows;
}

void write_rank_scan_csv(std::ostream& os, std::span<const RankScanRow> rows) {
    os << "n_full,N,L,d,seed,measured_rank,oracle_rank\n";
    for (const auto& r : rows)
        os << r.n_full << ',' << r.N << ',' << r.L << ',' << r.d << ',' << r.seed << ',' << r.measured_rank << ','
           << r.oracle_rank << '\n';
}

nlohmann::json make_manifest(const std::string& subcommand, const nlohmann::json& config,
                             const CertifierConfig* certifier) {
    nlohmann::json m;
    m["tool"] = "idphase";
    m["version"] = kToolVersion;
    m["subcommand"] = subcommand;
    m["config"] = config;
    m["created_utc"] = utc_now();
    nlohmann::json tol;
    tol["theory"] = {{"mu_residual", 1e-12}};
    if (certifier) {
        tol["certifier"] = {{"feas", certifier->feas_tol},
                            {"rank_rel", certifier->rank_tol},
                            {"max_iterations", certifier->max_iterations},
                            {"witness_residual_rel", 1e-8}};
        tol["lifting"] = {{"rank_rel", certifier->rank_tol}};
    }
    m["tolerances"] = tol;
    return m;
}

void write_manifest(const std::filesystem::path& dir, const nlohmann::json& manifest) {
    std::ofstream os(dir / "manifest.json");
    os << manifest.dump(2) << '\n';
    if (!os) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
}

}  // namespace idphase
