#pragma once

#include <Eigen/Dense>

#include <vector>

namespace idphase {

// maximize cᵀx  s.t.  A x = b,  x >= 0,  with b >= 0.
//
// Rows with b_r > 0 must name a unit column in `start_basis` (a slack).
// Rows with b_r == 0 may leave their entry at -1; those rows are brought into
// the basis by degenerate Gauss-Jordan pivots on their largest entry, which
// keeps the all-zero start point feasible without a phase-I.
struct StandardFormLp {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    std::vector<Eigen::Index> start_basis;
};

enum class Pricing { Bland, Dantzig };

struct SimplexOptions {
    Pricing pricing = Pricing::Dantzig;
    Eigen::Index bland_after = 0;
    Eigen::Index max_iterations = 0;  // 0 -> 50 * (rows + cols)
    double cost_tol = 1e-9;           // entering threshold on reduced costs
    double pivot_tol = 1e-9;          // smallest admissible pivot magnitude
    // Scale of the deterministic shift applied to zero-rhs basic values after
    // the crash. 0 disables it (pure degenerate pivoting).
    double perturbation = 1e-7;
    // Restored solution counts as feasible down to this negative value.
    double feasibility_tol = 1e-9;
};

struct SimplexResult {
    double optimum = 0.0;
    Eigen::VectorXd x;
    Eigen::Index iterations = 0;
    // False when the final basis is infeasible once the shift is removed; x
    // then holds the shifted solution.
    bool restored = true;
};

/// Primal tableau simplex. Dantzig pricing on a perturbed right-hand side,
/// falling back to Bland's smallest-index rule after `bland_after` pivots
/// (default half the cap); ratio-test ties always go to the smallest basic
/// index.
/// Throws NumericalFailure on the iteration cap, on an unbounded ray, or when
/// a zero-rhs row has no usable pivot (dependent rows).
SimplexResult simplex_solve(const StandardFormLp& lp, const SimplexOptions& opts = {});

}  // namespace idphase
