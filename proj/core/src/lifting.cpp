#include "idphase/lifting.hpp"

#include "idphase/errors.hpp"
#include "idphase/rng.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_set>

namespace idphase {

LiftedSystem lift(const SignatureMatrix& s) { return lift(s.entries); }

LiftedSystem lift(const Eigen::MatrixXd& s) {
    LiftedSystem sys;
    sys.L = s.rows();
    sys.N = s.cols();
    sys.d = sys.L * (sys.L - 1) / 2;
    sys.a1 = s.array().square().matrix();
    sys.a2.resize(sys.d, sys.N);
    sys.pair_index.reserve(static_cast<std::size_t>(sys.d));
    Eigen::Index row = 0;
    for (Eigen::Index j = 0; j < sys.L; ++j) {
        for (Eigen::Index i = j + 1; i < sys.L; ++i) {
            sys.a2.row(row++) = s.row(i).cwiseProduct(s.row(j));
            sys.pair_index.emplace_back(i, j);
        }
    }
    return sys;
}

Eigen::MatrixXd stacked_constraints(const LiftedSystem& sys, StackMode mode) {
    if (mode == StackMode::Full) {
        Eigen::MatrixXd out(sys.L + sys.d, sys.N);
        out << sys.a1, sys.a2;
        return out;
    }
    if (!(sys.a1.array() == 1.0).all())
        throw InvalidMode("reduced stack requires S⊙S to be all ones (±1 signatures)");
    Eigen::MatrixXd out(1 + sys.d, sys.N);
    out.row(0).setOnes();
    out.bottomRows(sys.d) = sys.a2;
    return out;
}

std::vector<double> singular_values(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return {};
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

Eigen::Index numerical_rank(std::span<const double> sigma, Eigen::Index rows, Eigen::Index cols,
                            double rel_tol) {
    if (sigma.empty() || sigma.front() <= 0.0) return 0;
    const double cut = rel_tol * static_cast<double>(std::max(rows, cols)) * sigma.front();
    return static_cast<Eigen::Index>(
        std::count_if(sigma.begin(), sigma.end(), [cut](double s) { return s > cut; }));
}

Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
    const auto sigma = singular_values(m);
    return numerical_rank(sigma, m.rows(), m.cols(), rel_tol);
}

Eigen::Index hadamard_rank_oracle(std::span<const std::int64_t> row_indices) {
    std::unordered_set<std::int64_t> seen;
    for (auto r : row_indices) {
        if (r < 0) throw InvalidArgument("hadamard_rank_oracle: negative index");
        if (!seen.insert(r).second)
            throw InvalidArgument("hadamard_rank_oracle: duplicate index " + std::to_string(r));
    }
    std::unordered_set<std::int64_t> xors;
    for (std::size_t a = 0; a < row_indices.size(); ++a)
        for (std::size_t b = a + 1; b < row_indices.size(); ++b)
            xors.insert(row_indices[a] ^ row_indices[b]);
    return static_cast<Eigen::Index>(xors.size());
}

Eigen::MatrixXd haar_orthogonal(Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("haar_orthogonal: n must be >= 1");
    Rng rng(seed);
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const auto& r = qr.matrixQR();
    for (Eigen::Index k = 0; k < n; ++k)
        if (r(k, k) < 0.0) q.col(k) = -q.col(k);
    return q;
}

SemiRandomSystem semi_random_system(std::span<const double> spectrum, Eigen::Index N,
                                    std::uint64_t seed) {
    const auto d = static_cast<Eigen::Index>(spectrum.size());
    if (N < 1) throw InvalidArgument("semi_random_system: N must be >= 1");
    if (d > N) throw InvalidArgument("semi_random_system: spectrum longer than N");
    if (std::any_of(spectrum.begin(), spectrum.end(), [](double s) { return !(s >= 0.0); }))
        throw InvalidArgument("semi_random_system: negative singular value");

    SemiRandomSystem out;
    out.N = N;
    out.d = d;
    out.spectrum.assign(spectrum.begin(), spectrum.end());
    out.seed = seed;
    out.constraints.resize(1 + d, N);
    out.constraints.row(0).setOnes();
    if (d > 0) {
        const Eigen::MatrixXd v = haar_orthogonal(N, seed);
        for (Eigen::Index k = 0; k < d; ++k)
            out.constraints.row(1 + k) = spectrum[static_cast<std::size_t>(k)] * v.row(k);
    }
    return out;
}

void write_spectrum_csv(std::ostream& os, std::span<const double> sigma) {
    os << "sigma\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (double s : sigma) os << s << '\n';
}

std::vector<double> read_spectrum_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("sigma", 0) != 0)
        throw InvalidArgument("spectrum csv: missing 'sigma' header");
    std::vector<double> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        out.push_back(std::stod(line));
    }
    return out;
}

}  // namespace idphase
