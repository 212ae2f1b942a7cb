#pragma once

#include <Eigen/Dense>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace idphase {

/// Feasible-direction cone C = { x : x_i >= 0 for i in nonneg }.
/// `nonneg` holds the zero entries of the ground truth (N - K of them),
/// `free` the active support (K entries). Both sorted, disjoint, covering 0..N-1.
struct ConeSpec {
    Eigen::Index N = 0;
    Eigen::Index K = 0;
    std::vector<Eigen::Index> nonneg;
    std::vector<Eigen::Index> free;

    // Active support is the last K indices.
    static ConeSpec canonical(Eigen::Index n, Eigen::Index k);
    static ConeSpec from_support(Eigen::Index n, std::span<const Eigen::Index> support);
};

struct CertifierConfig {
    double feas_tol = 1e-9;
    Eigen::Index max_iterations = 0;  // 0 -> 50 * (LP rows + LP cols)
    double rank_tol = 1e-10;
};

enum class Verdict { Identifiable, NotIdentifiable };

std::string to_string(Verdict v);

enum class WitnessSource { None, Lp, RankBranch };

struct Certificate {
    Verdict verdict = Verdict::Identifiable;
    std::optional<Eigen::VectorXd> witness;
    WitnessSource source = WitnessSource::None;
    double lp_optimum = 0.0;
    Eigen::Index row_rank = 0;  // numerical rank of A
    Eigen::Index rank_free = 0; // rank of the compressed rows on the free columns
    Eigen::Index iterations = 0;
    CertifierConfig config;
};

/// Decides N(A) ∩ C = {0}.
///
/// A is replaced by R = V_rᵀ, the top right singular vectors of A, which has
/// orthonormal rows and the same null space. The LP
///     max Σ_{i∈I} x_i  s.t.  R x = 0,  Σ_{i∈I} x_i <= 1,  x_I >= 0,  x_free free
/// has optimum 0 or 1. Optimum 1 yields a witness directly. Optimum 0 leaves
/// only directions supported on the free columns, which exist iff R restricted
/// to those columns has rank below K.
///
/// Throws AmbiguousOptimum when the optimum is not within feas_tol of 0 or 1,
/// NumericalFailure when the simplex hits its cap or a witness fails
/// verification.
Certificate certify(const Eigen::MatrixXd& a, const ConeSpec& cone, const CertifierConfig& cfg = {});

// Witness invariants: ‖Ax‖∞ <= 1e-8·‖A‖∞·‖x‖∞, x_I >= -1e-9, ‖x‖∞ = 1.
bool witness_is_valid(const Eigen::MatrixXd& a, const ConeSpec& cone, const Eigen::VectorXd& x);

nlohmann::json to_json(const Certificate& cert);

// True iff some nonzero x in span(null_basis) has x_I >= -1e-12·‖x‖.
// m = 1 tests both rays. m = 2 sweeps `grid_points` angles and also the
// angles where some x_i(θ) crosses zero, so arcs narrower than the grid
// spacing are still found. Throws UnsupportedDimension for m > 2.
bool angular_sweep_oracle(const Eigen::MatrixXd& null_basis, std::span<const Eigen::Index> nonneg,
                          long grid_points);

struct PgdResult {
    double residual = 0.0;  // min ‖Ax‖² found
    Eigen::VectorXd x;
};

/// Projected gradient heuristic for a nonzero cone direction in N(A).
///
/// Slice 1 (I nonempty): Σ_I x = 1, x_I >= 0, |x_free| <= N.
/// Slice 2 (free nonempty): x_I = 0, ‖x_free‖ = 1, solved exactly.
/// If neither gets near zero, the faces x_free(j) = ±1, |x_free| <= 1,
/// x_I >= 0, Σ_I x <= 1 are searched too, since a direction with a large
/// free part lies outside slice 1. Best residual over everything tried.
/// A cross-check only, never a verdict.
PgdResult pgd_oracle(const Eigen::MatrixXd& a, const ConeSpec& cone, int iterations, int restarts,
                     std::uint64_t seed = 0);

}  // namespace idphase
