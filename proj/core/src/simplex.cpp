#include "idphase/simplex.hpp"

#include "idphase/errors.hpp"
#include "idphase/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace idphase {

namespace {

// Row-major so the pivot's inner loop walks contiguous memory.
using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void pivot(Tableau& t, Eigen::VectorXd& cost, Eigen::Index row, Eigen::Index col) {
    t.row(row) /= t(row, col);
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
        if (i == row) continue;
        const double f = t(i, col);
        if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    const double f = cost(col);
    if (f != 0.0) cost -= f * t.row(row).head(cost.size()).transpose();
}

bool is_unit_column(const Eigen::MatrixXd& a, Eigen::Index col, Eigen::Index row) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        if (a(i, col) != (i == row ? 1.0 : 0.0)) return false;
    return true;
}

}  // namespace

SimplexResult simplex_solve(const StandardFormLp& lp, const SimplexOptions& opts) {
    const Eigen::Index m = lp.a.rows();
    const Eigen::Index n = lp.a.cols();
    if (lp.b.size() != m || lp.c.size() != n || static_cast<Eigen::Index>(lp.start_basis.size()) != m)
        throw InvalidArgument("simplex_solve: inconsistent LP dimensions");
    if ((lp.b.array() < 0.0).any()) throw InvalidArgument("simplex_solve: negative right-hand side");

    Tableau t(m, n + 1);
    t.leftCols(n) = lp.a;
    t.col(n) = lp.b;

    std::vector<Eigen::Index> basis(static_cast<std::size_t>(m), -1);
    std::vector<char> is_basic(static_cast<std::size_t>(n), 0);
    std::vector<char> reserved(static_cast<std::size_t>(n), 0);
    for (Eigen::Index r = 0; r < m; ++r) {
        const auto col = lp.start_basis[static_cast<std::size_t>(r)];
        if (col >= 0) {
            if (col >= n || !is_unit_column(lp.a, col, r))
                throw InvalidArgument("simplex_solve: start column must be the unit column of its row");
            reserved[static_cast<std::size_t>(col)] = 1;
            basis[static_cast<std::size_t>(r)] = col;
            is_basic[static_cast<std::size_t>(col)] = 1;
        } else if (lp.b(r) != 0.0) {
            throw InvalidArgument("simplex_solve: row with positive rhs needs a start column");
        }
    }

    // Reduced costs are kept as c_j - c_Bᵀ B⁻¹ A_j; enter while any is positive.
    Eigen::VectorXd cost = lp.c;
    for (Eigen::Index r = 0; r < m; ++r) {
        const auto col = basis[static_cast<std::size_t>(r)];
        if (col >= 0 && cost(col) != 0.0) cost -= cost(col) * t.row(r).head(n).transpose();
    }

    // Crash: zero-rhs rows take their largest remaining entry as pivot. These
    // pivots are degenerate, so the basic solution stays at x = 0.
    for (Eigen::Index r = 0; r < m; ++r) {
        if (basis[static_cast<std::size_t>(r)] >= 0) continue;
        Eigen::Index best = -1;
        double best_abs = opts.pivot_tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (is_basic[static_cast<std::size_t>(j)] || reserved[static_cast<std::size_t>(j)]) continue;
            const double v = std::abs(t(r, j));
            if (v > best_abs) {
                best_abs = v;
                best = j;
            }
        }
        if (best < 0) throw NumericalFailure("simplex_solve: dependent constraint row " + std::to_string(r));
        basis[static_cast<std::size_t>(r)] = best;
        is_basic[static_cast<std::size_t>(best)] = 1;
        pivot(t, cost, r, best);
    }

    // Shift the degenerate basic values to small distinct positive amounts.
    // In the current basis this is b + δ·B·w with w > 0, so x_B = δ·w stays
    // feasible; the unshifted solution is recovered from the start columns.
    if (opts.perturbation > 0.0) {
        for (Eigen::Index r = 0; r < m; ++r) {
            if (lp.b(r) != 0.0) continue;
            const double u = static_cast<double>(mix64(static_cast<std::uint64_t>(r)) >> 11) * 0x1.0p-53;
            t(r, n) += opts.perturbation * (1.0 + u);
        }
    }

    const Eigen::Index cap = opts.max_iterations > 0 ? opts.max_iterations : 50 * (m + n);
    const Eigen::Index switch_at = opts.pricing == Pricing::Bland ? 0 : (opts.bland_after > 0 ? opts.bland_after : cap / 2);
    SimplexResult res;
    for (;;) {
        const bool bland = res.iterations >= switch_at;
        Eigen::Index enter = -1;
        double best_cost = opts.cost_tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (is_basic[static_cast<std::size_t>(j)] || cost(j) <= best_cost) continue;
            enter = j;
            if (bland) break;
            best_cost = cost(j);
        }
        if (enter < 0) break;
        if (res.iterations >= cap)
            throw NumericalFailure("simplex_solve: iteration cap " + std::to_string(cap) + " reached");

        Eigen::Index leave = -1;
        double best_ratio = 0.0;
        for (Eigen::Index r = 0; r < m; ++r) {
            const double a = t(r, enter);
            if (a <= opts.pivot_tol) continue;
            const double ratio = std::max(t(r, n), 0.0) / a;
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio &&
                 basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave < 0) throw NumericalFailure("simplex_solve: objective unbounded");

        is_basic[static_cast<std::size_t>(basis[static_cast<std::size_t>(leave)])] = 0;
        basis[static_cast<std::size_t>(leave)] = enter;
        is_basic[static_cast<std::size_t>(enter)] = 1;
        pivot(t, cost, leave, enter);
        ++res.iterations;
    }

    // x_B for the original rhs: B⁻¹b = Σ_r b_r·B⁻¹e_r, and B⁻¹e_r is the
    // current column of row r's start (unit) column.
    if (opts.perturbation > 0.0) {
        Eigen::VectorXd xb = Eigen::VectorXd::Zero(m);
        for (Eigen::Index r = 0; r < m; ++r)
            if (lp.b(r) != 0.0) xb += lp.b(r) * t.col(lp.start_basis[static_cast<std::size_t>(r)]);
        t.col(n) = xb;

        // The basis is still dual feasible; dual simplex pivots restore primal
        // feasibility. Leaving row: most negative value, ties to the smallest
        // basic index. Entering column: smallest |cost_j / t(r, j)|.
        Eigen::Index cleanup = 0;
        for (;;) {
            Eigen::Index leave = -1;
            for (Eigen::Index r = 0; r < m; ++r) {
                if (t(r, n) >= -opts.feasibility_tol) continue;
                if (leave < 0 || t(r, n) < t(leave, n)) leave = r;
            }
            if (leave < 0) break;
            if (cleanup++ >= cap) break;
            Eigen::Index enter = -1;
            double best = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                const double a = t(leave, j);
                if (is_basic[static_cast<std::size_t>(j)] || a >= -opts.pivot_tol) continue;
                const double ratio = std::max(-cost(j), 0.0) / -a;
                if (enter < 0 || ratio < best) {
                    enter = j;
                    best = ratio;
                }
            }
            if (enter < 0) break;
            is_basic[static_cast<std::size_t>(basis[static_cast<std::size_t>(leave)])] = 0;
            basis[static_cast<std::size_t>(leave)] = enter;
            is_basic[static_cast<std::size_t>(enter)] = 1;
            pivot(t, cost, leave, enter);
            ++res.iterations;
        }
    }

    // Refine x_B against the original columns.
    Eigen::VectorXd xb = t.col(n);
    {
        Eigen::MatrixXd bmat(m, m);
        for (Eigen::Index r = 0; r < m; ++r) bmat.col(r) = lp.a.col(basis[static_cast<std::size_t>(r)]);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
        Eigen::VectorXd refined = lu.solve(lp.b);
        if (refined.allFinite() && (bmat * refined - lp.b).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + lp.b.cwiseAbs().maxCoeff()))
            xb = refined;
    }
    res.restored = xb.minCoeff() >= -opts.feasibility_tol;

    res.x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index r = 0; r < m; ++r) res.x(basis[static_cast<std::size_t>(r)]) = std::max(xb(r), 0.0);
    res.optimum = lp.c.dot(res.x);
    return res;
}

}  // namespace idphase
