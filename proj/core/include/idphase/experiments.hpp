#pragma once

#include "idphase/certifier.hpp"
#include "idphase/signatures.hpp"

#include <Eigen/Dense>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace idphase {

inline constexpr const char* kToolVersion = "0.3.0";

struct LChoice {
    Eigen::Index L = 0;
    Eigen::Index d = 0;
    double achieved = 0.0;  // d / N
};

// L = round((1 + sqrt(1 + 8αN)) / 2), the L whose pair count is closest to αN.
LChoice choose_L(double alpha, Eigen::Index N);

// Which constraint matrix a trial certifies.
enum class SystemSource {
    Lifted,      // [A1; A2] (Reduced [1ᵀ; A2] for ±1 models)
    SemiRandom,  // [1ᵀ; A_RI], spectrum from an independent lifted draw
};

// Where the surrogate's singular values come from. Only the number of
// nonzero values affects the null space, because the right factor is Haar.
enum class SurrogateSpectrum {
    // Lifted stack with the all-ones direction projected out of its rows:
    // rank d for ±1 models, L + d for Gaussian (matches the lifted rank).
    ProjectedStack,
    // A2 alone: rank d for every model.
    A2Only,
};

std::string to_string(SurrogateSpectrum s);
SurrogateSpectrum parse_surrogate_spectrum(std::string_view name);

// Singular values fed to the surrogate for one lifted draw.
std::vector<double> surrogate_spectrum(const SignatureMatrix& s, SurrogateSpectrum source);

struct CellSpec {
    SignatureModel model;
    SystemSource source = SystemSource::Lifted;
    Eigen::Index N = 0;
    double alpha = 0.0;
    double eps = 0.0;
    int trials = 1;
    std::uint64_t base_seed = 0;
    SurrogateSpectrum spectrum = SurrogateSpectrum::ProjectedStack;
};

struct PhaseCellResult {
    std::string model;  // model name, prefixed "semirandom-" for surrogate runs
    Eigen::Index N = 0;
    Eigen::Index L = 0;
    Eigen::Index d = 0;
    Eigen::Index K = 0;
    double alpha_target = 0.0;
    double alpha_achieved = 0.0;  // mean numerical rank of the stack / N
    double eps = 0.0;             // K / N
    int trials = 0;
    int identifiable_count = 0;
    int ambiguous_count = 0;
    std::uint64_t base_seed = 0;

    // Identifiable fraction among non-ambiguous trials.
    double probability() const;
};

// Per-trial seed: derive_seed(base, {model kind, n_full, source, N, L, K, t}).
std::uint64_t trial_seed(const CellSpec& spec, Eigen::Index L, Eigen::Index K, int trial);

// K = round(ε·N). Trials run on `workers` threads; counts do not depend on it.
// Ambiguous or failed certifications are excluded from the count; a cell
// with ambiguous_count >= 1% of trials throws NumericalFailure.
PhaseCellResult run_phase_cell(const CellSpec& spec, const CertifierConfig& cfg, unsigned workers = 1);

struct PhaseDiagramConfig {
    SignatureModel model;
    SystemSource source = SystemSource::Lifted;
    Eigen::Index N = 400;
    std::vector<double> alphas;
    std::vector<double> epsilons;
    int trials = 50;
    std::uint64_t seed = 1;
    CertifierConfig certifier;
    unsigned workers = 1;
    SurrogateSpectrum spectrum = SurrogateSpectrum::ProjectedStack;
};

struct PhaseDiagram {
    PhaseDiagramConfig config;
    std::vector<PhaseCellResult> cells;  // alpha-major, epsilon-minor
};

// Runs every (α, ε) cell. When `csv` is given, the header and each finished
// cell are written and flushed as they complete.
PhaseDiagram run_phase_diagram(const PhaseDiagramConfig& config, std::ostream* csv = nullptr,
                               const std::function<void(const PhaseCellResult&)>& progress = {});

void write_phase_header(std::ostream& os);
void write_phase_row(std::ostream& os, const PhaseCellResult& cell);

struct TransitionEstimate {
    std::string model;
    Eigen::Index N = 0;
    double alpha_target = 0.0;
    double alpha = 0.0;  // measured r/N
    double eps50 = 0.0;
    std::string method;  // "interpolation" or "bisection"
    bool censored = false;
    std::vector<PhaseCellResult> cells;  // cells evaluated to produce the estimate
};

// Linear interpolation of the first downward 50% crossing in ε per α column.
std::vector<TransitionEstimate> estimate_transition(const PhaseDiagram& diagram);
TransitionEstimate interpolate_transition(std::vector<PhaseCellResult> column);

struct BisectionConfig {
    SignatureModel model;
    SystemSource source = SystemSource::Lifted;
    Eigen::Index N = 400;
    double alpha = 0.5;
    double eps_lo = 0.02;
    double eps_hi = 0.9;
    double resolution = 0.01;
    int trials = 50;
    std::uint64_t seed = 1;
    CertifierConfig certifier;
    unsigned workers = 1;
    SurrogateSpectrum spectrum = SurrogateSpectrum::ProjectedStack;
};

// Fresh cells at the bracket ends, then at midpoints until hi - lo <= resolution
// (or the bracket spans a single K). ε50 interpolates the final bracket.
TransitionEstimate bisect_transition(const BisectionConfig& config,
                                     const std::function<void(const PhaseCellResult&)>& progress = {});

void write_transitions_header(std::ostream& os);
void write_transition_row(std::ostream& os, const TransitionEstimate& t);

struct SemiRandomComparison {
    TransitionEstimate lifted;
    TransitionEstimate surrogate;
    double difference = 0.0;  // surrogate.eps50 - lifted.eps50
};

SemiRandomComparison compare_semirandom(BisectionConfig config,
                                        const std::function<void(const PhaseCellResult&)>& progress = {});

struct RankScanRow {
    std::int64_t n_full = 0;
    Eigen::Index N = 0;
    Eigen::Index L = 0;
    Eigen::Index d = 0;
    std::uint64_t seed = 0;
    Eigen::Index measured_rank = 0;
    Eigen::Index oracle_rank = 0;
};

struct RankScanConfig {
    std::int64_t n_full = 1024;
    Eigen::Index N = 300;
    Eigen::Index L = 25;
};

// numerical_rank(A2) next to hadamard_rank_oracle of the sampled rows.
RankScanRow rank_scan_one(const RankScanConfig& cfg, std::uint64_t seed, double rank_tol = 1e-10);
std::vector<RankScanRow> rank_scan(std::span<const RankScanConfig> sizes, std::span<const std::uint64_t> seeds,
                                   double rank_tol = 1e-10, unsigned workers = 1);
void write_rank_scan_csv(std::ostream& os, std::span<const RankScanRow> rows);

// Manifest written next to every output set.
nlohmann::json make_manifest(const std::string& subcommand, const nlohmann::json& config,
                             const CertifierConfig* certifier = nullptr);
void write_manifest(const std::filesystem::path& dir, const nlohmann::json& manifest);

// "gaussian", "semirandom-gaussian", "semirandom-a2-gaussian", ...
std::string model_label(const SignatureModel& model, SystemSource source,
                        SurrogateSpectrum spectrum = SurrogateSpectrum::ProjectedStack);

}  // namespace idphase
