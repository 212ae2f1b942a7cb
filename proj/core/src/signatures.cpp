#include "idphase/signatures.hpp"

#include "idphase/errors.hpp"
#include "idphase/rng.hpp"

#include <bit>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>

namespace idphase {

namespace {

double sylvester_entry(std::int64_t i, std::int64_t j) {
    return (std::popcount(static_cast<std::uint64_t>(i & j)) & 1) ? -1.0 : 1.0;
}

// First `count` entries of a Fisher-Yates shuffle of 0..n-1.
std::vector<std::int64_t> sample_without_replacement(Rng& rng, std::int64_t n, std::int64_t count) {
    std::vector<std::int64_t> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), std::int64_t{0});
    for (std::int64_t k = 0; k < count; ++k) {
        const auto pick = k + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n - k)));
        std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(pick)]);
    }
    pool.resize(static_cast<std::size_t>(count));
    return pool;
}

}  // namespace

std::string to_string(SignatureKind kind) {
    switch (kind) {
        case SignatureKind::Gaussian: return "gaussian";
        case SignatureKind::Rademacher: return "rademacher";
        case SignatureKind::SubsampledHadamard: return "hadamard";
    }
    return "unknown";
}

SignatureKind parse_signature_kind(std::string_view name) {
    if (name == "gaussian") return SignatureKind::Gaussian;
    if (name == "rademacher") return SignatureKind::Rademacher;
    if (name == "hadamard") return SignatureKind::SubsampledHadamard;
    throw InvalidArgument("unknown signature model '" + std::string(name) + "'");
}

Eigen::MatrixXd hadamard_full(int q) {
    if (q < 0) throw InvalidArgument("hadamard_full: negative order");
    if (q > kMaxHadamardOrder) {
        throw ResourceLimit("hadamard_full: order 2^" + std::to_string(q) + " exceeds 2^" +
                            std::to_string(kMaxHadamardOrder));
    }
    const Eigen::Index n = Eigen::Index{1} << q;
    Eigen::MatrixXd h(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) h(i, j) = sylvester_entry(i, j);
    return h;
}

SignatureMatrix sample_signature(const SignatureModel& model, Eigen::Index L, Eigen::Index N,
                                 std::uint64_t seed) {
    if (L < 1 || N < 1) throw InvalidArgument("sample_signature: L and N must be >= 1");

    SignatureMatrix out;
    out.model = model;
    out.seed = seed;
    out.entries.resize(L, N);
    Rng rng(seed);

    switch (model.kind) {
        case SignatureKind::Gaussian:
            for (Eigen::Index j = 0; j < N; ++j)
                for (Eigen::Index i = 0; i < L; ++i) out.entries(i, j) = rng.normal();
            break;
        case SignatureKind::Rademacher:
            for (Eigen::Index j = 0; j < N; ++j)
                for (Eigen::Index i = 0; i < L; ++i) out.entries(i, j) = rng.coin() ? 1.0 : -1.0;
            break;
        case SignatureKind::SubsampledHadamard: {
            const auto n_full = model.n_full;
            if (n_full < 1 || !std::has_single_bit(static_cast<std::uint64_t>(n_full)))
                throw InvalidArgument("sample_signature: n_full must be a power of two");
            if (n_full > (std::int64_t{1} << kMaxHadamardOrder))
                throw ResourceLimit("sample_signature: n_full too large");
            if (n_full < L || n_full < N)
                throw InvalidArgument("sample_signature: n_full must be >= max(L, N)");
            out.row_indices = sample_without_replacement(rng, n_full, L);
            out.col_indices = sample_without_replacement(rng, n_full, N);
            for (Eigen::Index j = 0; j < N; ++j)
                for (Eigen::Index i = 0; i < L; ++i)
                    out.entries(i, j) = sylvester_entry(out.row_indices[static_cast<std::size_t>(i)],
                                                        out.col_indices[static_cast<std::size_t>(j)]);
            break;
        }
    }
    return out;
}

void write_matrix_text(std::ostream& os, const Eigen::MatrixXd& m) {
    os << m.rows() << ' ' << m.cols() << '\n';
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m(i, j);
        }
        os << '\n';
    }
}

Eigen::MatrixXd read_matrix_text(std::istream& is) {
    Eigen::Index rows = 0, cols = 0;
    if (!(is >> rows >> cols) || rows < 0 || cols < 0)
        throw InvalidArgument("matrix file: malformed 'rows cols' header");
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            if (!(is >> m(i, j))) throw InvalidArgument("matrix file: truncated entries");
    return m;
}

}  // namespace idphase
