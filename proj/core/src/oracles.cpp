#include "idphase/certifier.hpp"

#include "idphase/errors.hpp"
#include "idphase/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace idphase {

namespace {

bool direction_passes(const Eigen::VectorXd& x, std::span<const Eigen::Index> nonneg) {
    const double floor = -1e-12 * x.norm();
    return std::all_of(nonneg.begin(), nonneg.end(), [&](Eigen::Index i) { return x(i) >= floor; });
}

// Euclidean projection onto { v >= 0, Σ v = 1 } (sort-based).
void project_simplex(Eigen::Ref<Eigen::VectorXd> v) {
    std::vector<double> u(v.data(), v.data() + v.size());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cum += u[k];
        const double t = (cum - 1.0) / static_cast<double>(k + 1);
        if (u[k] - t > 0.0) theta = t;
    }
    v = (v.array() - theta).max(0.0);
}

}  // namespace

bool angular_sweep_oracle(const Eigen::MatrixXd& null_basis, std::span<const Eigen::Index> nonneg,
                          long grid_points) {
    const auto m = null_basis.cols();
    if (m > 2) throw UnsupportedDimension("angular_sweep_oracle: null space dimension " + std::to_string(m) + " > 2");
    if (m == 0) return false;
    if (m == 1) {
        const Eigen::VectorXd b = null_basis.col(0);
        return direction_passes(b, nonneg) || direction_passes(-b, nonneg);
    }
    if (grid_points < 1) throw InvalidArgument("angular_sweep_oracle: grid_points must be >= 1");

    const Eigen::VectorXd b1 = null_basis.col(0);
    const Eigen::VectorXd b2 = null_basis.col(1);
    auto passes_at = [&](double theta) {
        const Eigen::VectorXd x = std::cos(theta) * b1 + std::sin(theta) * b2;
        return direction_passes(x, nonneg);
    };
    for (long k = 0; k < grid_points; ++k)
        if (passes_at(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid_points)))
            return true;
    // A nonempty intersection of half-circles contains one of their endpoints.
    for (auto i : nonneg) {
        const double a = b1(i), b = b2(i);
        if (a == 0.0 && b == 0.0) continue;
        const double theta = std::atan2(-a, b);
        if (passes_at(theta) || passes_at(theta + std::numbers::pi)) return true;
    }
    return false;
}

PgdResult pgd_oracle(const Eigen::MatrixXd& a, const ConeSpec& cone, int iterations, int restarts,
                     std::uint64_t seed) {
    const Eigen::Index n = cone.N;
    if (a.cols() != n) throw InvalidArgument("pgd_oracle: column count mismatch");
    PgdResult best;
    best.residual = std::numeric_limits<double>::infinity();
    best.x = Eigen::VectorXd::Zero(n);

    const double box = static_cast<double>(n);

    const auto n_nonneg = static_cast<Eigen::Index>(cone.nonneg.size());
    const auto n_free = static_cast<Eigen::Index>(cone.free.size());
    // Work in the permuted coordinates [x_I; x_free].
    Eigen::MatrixXd ap(a.rows(), n);
    for (Eigen::Index k = 0; k < n_nonneg; ++k) ap.col(k) = a.col(cone.nonneg[static_cast<std::size_t>(k)]);
    for (Eigen::Index k = 0; k < n_free; ++k) ap.col(n_nonneg + k) = a.col(cone.free[static_cast<std::size_t>(k)]);
    const Eigen::MatrixXd gp = ap.transpose() * ap;
    // Gradient of ‖Ax‖² is 2AᵀAx, Lipschitz constant 2λ_max(AᵀA).
    const double lipschitz = n > 0 ? 2.0 * gp.selfadjointView<Eigen::Lower>().eigenvalues().maxCoeff() : 0.0;
    const double step = lipschitz > 0.0 ? 1.0 / lipschitz : 0.0;

    auto record = [&](const Eigen::VectorXd& z) {
        const double res = (ap * z).squaredNorm();
        if (res < best.residual) {
            best.residual = res;
            for (Eigen::Index k = 0; k < n_nonneg; ++k) best.x(cone.nonneg[static_cast<std::size_t>(k)]) = z(k);
            for (Eigen::Index k = 0; k < n_free; ++k) best.x(cone.free[static_cast<std::size_t>(k)]) = z(n_nonneg + k);
        }
    };

    auto fista = [&](Eigen::VectorXd z, const std::function<void(Eigen::VectorXd&)>& project) {
        project(z);
        Eigen::VectorXd y = z, prev = z;
        double t = 1.0;
        for (int it = 0; it < iterations; ++it) {
            Eigen::VectorXd next = y - step * 2.0 * (gp * y);
            project(next);
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            y = next + ((t - 1.0) / t_next) * (next - prev);
            prev = next;
            t = t_next;
        }
        return prev;
    };

    // FISTA stalls on flat faces; once the active set is visible, solve the
    // equality-constrained least squares on it exactly and keep the result if
    // it stays inside the slice.
    auto polish = [&](const Eigen::VectorXd& z, double bound, Eigen::Index pinned_free, bool sum_fixed,
                      const std::function<void(Eigen::VectorXd&)>& project) {
        std::vector<Eigen::Index> moving;
        const double tol = 1e-9;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (k == pinned_free) continue;
            if (k < n_nonneg ? z(k) > tol : std::abs(z(k)) < bound - tol) moving.push_back(k);
        }
        const bool sum_active = n_nonneg > 0 && (sum_fixed || z.head(n_nonneg).sum() >= 1.0 - tol);
        const auto m = static_cast<Eigen::Index>(moving.size());
        if (m == 0) return;
        Eigen::VectorXd pinned = z;
        for (auto k : moving) pinned(k) = 0.0;
        const Eigen::Index rows = m + (sum_active ? 1 : 0);
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(rows, rows);
        Eigen::VectorXd rhs(rows);
        const Eigen::VectorXd gpin = gp * pinned;
        for (Eigen::Index r = 0; r < m; ++r) {
            for (Eigen::Index c = 0; c < m; ++c) kkt(r, c) = 2.0 * gp(moving[r], moving[c]);
            rhs(r) = -2.0 * gpin(moving[r]);
        }
        if (sum_active) {
            double fixed_sum = pinned.head(n_nonneg).sum();
            for (Eigen::Index r = 0; r < m; ++r)
                if (moving[r] < n_nonneg) kkt(r, m) = kkt(m, r) = 1.0;
            rhs(m) = 1.0 - fixed_sum;
        }
        const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
        Eigen::VectorXd cand = pinned;
        for (Eigen::Index r = 0; r < m; ++r) cand(moving[r]) = sol(r);
        Eigen::VectorXd projected = cand;
        project(projected);
        if ((projected - cand).lpNorm<Eigen::Infinity>() <= 1e-10 * (1.0 + cand.lpNorm<Eigen::Infinity>()))
            record(projected);
    };

    Rng rng(seed);
    if (n_nonneg > 0) {
        auto project_slice = [&](Eigen::VectorXd& z) {
            project_simplex(z.head(n_nonneg));
            z.tail(n_free) = z.tail(n_free).cwiseMax(-box).cwiseMin(box);
        };
        for (int rs = 0; rs < std::max(restarts, 1); ++rs) {
            Eigen::VectorXd z(n);
            for (Eigen::Index k = 0; k < n; ++k) z(k) = k < n_nonneg ? -std::log(1.0 - rng.uniform()) : 2.0 * rng.uniform() - 1.0;
            z.head(n_nonneg) /= z.head(n_nonneg).sum();
            const Eigen::VectorXd end = fista(z, project_slice);
            record(end);
            polish(end, box, -1, true, project_slice);
        }
    }
    if (n_free > 0) {
        // On x_I = 0, ‖x_free‖ = 1 the minimum is the smallest eigenvalue of the free block.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gp.bottomRightCorner(n_free, n_free));
        Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
        z.tail(n_free) = eig.eigenvectors().col(0);
        record(z);
    }
    // A cone direction whose free part dominates (‖x_free‖∞ > N Σx_I) misses
    // slice 1. Scaling it to a face x_free(j) = ±1, |x_free| <= 1, Σx_I <= 1
    // covers it, so search those faces when nothing better has turned up.
    if (n_nonneg > 0 && n_free > 0 && best.residual > 1e-14) {
        for (Eigen::Index j = n_nonneg; j < n && best.residual > 1e-14; ++j) {
            for (double sign : {1.0, -1.0}) {
                auto project_face = [&](Eigen::VectorXd& z) {
                    z.head(n_nonneg) = z.head(n_nonneg).cwiseMax(0.0);
                    if (z.head(n_nonneg).sum() > 1.0) project_simplex(z.head(n_nonneg));
                    z.tail(n_free) = z.tail(n_free).cwiseMax(-1.0).cwiseMin(1.0);
                    z(j) = sign;
                };
                Eigen::VectorXd z(n);
                for (Eigen::Index k = 0; k < n; ++k) z(k) = k < n_nonneg ? rng.uniform() / static_cast<double>(n_nonneg) : 2.0 * rng.uniform() - 1.0;
                const Eigen::VectorXd end = fista(z, project_face);
                record(end);
                polish(end, 1.0, j, false, project_face);
            }
        }
    }
    return best;
}

}  // namespace idphase
