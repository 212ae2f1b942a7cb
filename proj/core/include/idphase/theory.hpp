#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace idphase {

double std_normal_pdf(double x);
double std_normal_cdf(double x);
// 1 - Φ(x), evaluated without cancellation for large x.
double std_normal_tail(double x);

// Left side of the boundary fixed-point equation
//   (1-ε)(μ(1-Φ(μ)) - φ(μ)) + εμ.
// Increasing and concave in μ, derivative (1-ε)(1-Φ(μ)) + ε.
double boundary_equation(double mu, double eps);

inline constexpr double kMuTolerance = 1e-12;
// ε closer than this to 0 or 1 is refused rather than extrapolated.
inline constexpr double kEpsGuard = 1e-12;

// Bisection on a bracket grown geometrically from [1e-8, 10].
double mu_star(double eps, double tol = kMuTolerance);
// Safeguarded Newton on the same bracket. Independent route for cross-checks.
double mu_star_newton(double eps, double tol = kMuTolerance);

// δ*(ε) = 1 - (1-ε)Φ(μ*(ε)), computed as ε + (1-ε)(1-Φ(μ*)).
double delta_star(double eps);
// 2ε ln(1/ε), the sparse-limit asymptote of δ*.
double delta_star_asymptote(double eps);

struct BoundaryPoint {
    double eps = 0.0;
    double mu_star = 0.0;
    double delta_star = 0.0;
    double residual = 0.0;
};

BoundaryPoint boundary_point(double eps, double tol = kMuTolerance);

struct TheoryCurve {
    std::vector<BoundaryPoint> points;
    double eps_min = 0.0;
    double eps_max = 0.0;
    std::size_t steps = 0;
    double tol = kMuTolerance;
};

// `steps` equally spaced ε values from eps_min to eps_max inclusive.
TheoryCurve theory_curve(double eps_min, double eps_max, std::size_t steps,
                         double tol = kMuTolerance);

// Columns: epsilon, mu_star, delta_star, asymptote_2eps_log, residual.
void write_theory_csv(std::ostream& os, const TheoryCurve& curve);

// Inverse of δ*: the ε with δ*(ε) = alpha, by bisection on ε.
double epsilon_at_delta(double alpha, double tol = 1e-12);

enum class IntersectionVerdict { TrivialIntersectionWhp, NontrivialIntersectionWhp, Indeterminate };

std::string to_string(IntersectionVerdict v);

struct TroppClassification {
    IntersectionVerdict verdict = IntersectionVerdict::Indeterminate;
    double xi = 0.0;    // sqrt(8 ln(4/η))
    double ratio = 0.0; // (δ_D + δ_K) / N
};

// Classifies D ∩ V·K for Haar V from the two statistical dimensions:
// ratio <= 1 - ξ/√N → trivial whp, ratio >= 1 + ξ/√N → nontrivial whp.
TroppClassification tropp_classification(long long n, double delta_d, double delta_k, double eta);

}  // namespace idphase
