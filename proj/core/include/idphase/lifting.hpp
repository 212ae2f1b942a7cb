#pragma once

#include "idphase/signatures.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace idphase {

// Lifted covariance constraints of a signature matrix S (L x N):
//   A1 = S⊙S                      (L x N)
//   A2 row (i, j) = S_i ⊙ S_j      (d x N, d = L(L-1)/2, j < i)
// Rows of A2 follow pair_index, which is sorted by (j, i).
struct LiftedSystem {
    Eigen::Index L = 0;
    Eigen::Index N = 0;
    Eigen::Index d = 0;
    Eigen::MatrixXd a1;
    Eigen::MatrixXd a2;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pair_index;  // zero-based (i, j)
};

enum class StackMode { Full, Reduced };

struct SemiRandomSystem {
    Eigen::Index N = 0;
    Eigen::Index d = 0;
    Eigen::MatrixXd constraints;  // (1 + d) x N, first row all ones
    std::vector<double> spectrum;
    std::uint64_t seed = 0;

    auto a_ri() const { return constraints.bottomRows(d); }
};

inline constexpr double kDefaultRankTol = 1e-10;

LiftedSystem lift(const SignatureMatrix& s);
LiftedSystem lift(const Eigen::MatrixXd& s);

// Full: [A1; A2]. Reduced: [1ᵀ; A2], only valid when A1 is all ones
// (throws InvalidMode otherwise). Both stacks share a null space.
Eigen::MatrixXd stacked_constraints(const LiftedSystem& sys, StackMode mode);

// Descending singular values, min(rows, cols) of them.
std::vector<double> singular_values(const Eigen::MatrixXd& m);

// Count of σ_k > rel_tol · max(rows, cols) · σ_max.
Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double rel_tol = kDefaultRankTol);
Eigen::Index numerical_rank(std::span<const double> sigma, Eigen::Index rows, Eigen::Index cols,
                            double rel_tol = kDefaultRankTol);

/// Number of distinct r_a XOR r_b over index pairs a < b.
///
/// Products of Sylvester-Hadamard rows satisfy H_a ⊙ H_b = H_{a^b}, so this
/// counts the distinct rows of A2 for a sub-sampled Hadamard signature.
/// Throws InvalidArgument on negative or duplicate indices.
Eigen::Index hadamard_rank_oracle(std::span<const std::int64_t> row_indices);

// Haar orthogonal matrix: QR of an IID Gaussian matrix, columns of Q flipped
// so the triangular factor has a positive diagonal.
Eigen::MatrixXd haar_orthogonal(Eigen::Index n, std::uint64_t seed);

// [1ᵀ; diag(spectrum)·V_top] with V Haar of order N. Left factor is identity.
SemiRandomSystem semi_random_system(std::span<const double> spectrum, Eigen::Index N,
                                    std::uint64_t seed);

// Single-column CSV with header "sigma".
void write_spectrum_csv(std::ostream& os, std::span<const double> sigma);
std::vector<double> read_spectrum_csv(std::istream& is);

}  // namespace idphase
