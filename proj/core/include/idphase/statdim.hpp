#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace idphase {

// D = { x : 1ᵀx = 0, x_i >= 0 for i in I }.

struct MultiplierSolution {
    double mu = 0.0;
    // K = 0: every μ >= max g_I solves the equation and D = {0}.
    bool degenerate = false;
};

/// Root of Σ_{i∈I}(g_i - μ)₊ + Σ_{i∉I}(g_i - μ) = 0.
///
/// The left side is piecewise linear with breakpoints {g_i : i ∈ I}. After
/// sorting them in descending order, the root on the segment with k active
/// breakpoints is (Σ top-k g_I + Σ g_{I_c}) / (k + |I_c|); the first segment
/// that contains its own root is returned. No iteration tolerance.
MultiplierSolution lagrange_mu(std::span<const double> g, std::span<const Eigen::Index> nonneg);

// Value of the multiplier equation's left side at μ.
double multiplier_equation(std::span<const double> g, std::span<const Eigen::Index> nonneg, double mu);

struct ProjectionResult {
    Eigen::VectorXd x;
    double mu = 0.0;
    double squared_norm_over_n = 0.0;
    bool degenerate = false;
};

ProjectionResult project_onto_D(std::span<const double> g, std::span<const Eigen::Index> nonneg);

struct StatDimEstimate {
    Eigen::Index N = 0;
    Eigen::Index K = 0;
    std::size_t samples = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t seed = 0;
};

// Monte Carlo estimate of δ(D)/N with I = {0, ..., N-K-1}. Sample s draws its
// Gaussian vector from Rng(derive_seed(seed, {N, K, s})).
StatDimEstimate statdim_mc(Eigen::Index N, Eigen::Index K, std::size_t samples, std::uint64_t seed,
                           unsigned workers = 1);

// (1-ε)E[(G-μ)₊²] + ε(1+μ²) with E[(G-μ)₊²] = (1+μ²)(1-Φ(μ)) - μφ(μ).
double population_objective(double mu, double eps);

struct ScalarMinimum {
    double argmin = 0.0;
    double value = 0.0;
};

// Golden-section search of population_objective over μ ∈ [-10, 10].
ScalarMinimum minimize_population_objective(double eps);

// Columns: N, K, epsilon, samples, mean, stderr, seed.
void write_statdim_csv(std::ostream& os, std::span<const StatDimEstimate> rows);

}  // namespace idphase
