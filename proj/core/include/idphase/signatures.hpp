#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace idphase {

enum class SignatureKind { Gaussian, Rademacher, SubsampledHadamard };

struct SignatureModel {
    SignatureKind kind = SignatureKind::Gaussian;
    // Order of the Sylvester-Hadamard matrix rows/columns are drawn from.
    // Only meaningful for SubsampledHadamard; must be a power of two.
    std::int64_t n_full = 0;

    static SignatureModel gaussian() { return {SignatureKind::Gaussian, 0}; }
    static SignatureModel rademacher() { return {SignatureKind::Rademacher, 0}; }
    static SignatureModel hadamard(std::int64_t n_full) {
        return {SignatureKind::SubsampledHadamard, n_full};
    }

    // Entries are ±1, so S⊙S is the all-ones matrix.
    bool is_sign_valued() const { return kind != SignatureKind::Gaussian; }
};

std::string to_string(SignatureKind kind);
// Accepts "gaussian", "rademacher", "hadamard" (case-sensitive).
SignatureKind parse_signature_kind(std::string_view name);

struct SignatureMatrix {
    Eigen::MatrixXd entries;  // L x N
    SignatureModel model;
    std::uint64_t seed = 0;
    // Hadamard provenance: Sylvester indices of the sampled rows/columns.
    std::vector<std::int64_t> row_indices;
    std::vector<std::int64_t> col_indices;

    Eigen::Index rows() const { return entries.rows(); }
    Eigen::Index cols() const { return entries.cols(); }
};

inline constexpr int kMaxHadamardOrder = 16;

/// Sylvester-Hadamard matrix of order 2^q, H[i][j] = (-1)^popcount(i & j).
/// Throws ResourceLimit for q > kMaxHadamardOrder.
Eigen::MatrixXd hadamard_full(int q);

/// Draws an L x N signature matrix. Deterministic in (model, L, N, seed).
/// Gaussian uses Rng::normal() column by column; Rademacher one coin per
/// entry; SubsampledHadamard runs a partial Fisher-Yates over row indices and
/// then over column indices of the order-n_full matrix. Entries are computed
/// from the Sylvester index formula, so the full matrix is never formed.
SignatureMatrix sample_signature(const SignatureModel& model, Eigen::Index L, Eigen::Index N,
                                 std::uint64_t seed);

// Debug dump: header "L N" then L whitespace-separated rows.
void write_matrix_text(std::ostream& os, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_text(std::istream& is);

}  // namespace idphase
