#include "idphase/theory.hpp"

#include "idphase/errors.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

namespace idphase {

namespace {

void check_eps(double eps, const char* who) {
    if (!(eps >= kEpsGuard && eps <= 1.0 - kEpsGuard))
        throw InvalidArgument(std::string(who) + ": epsilon must lie in (0, 1), got " +
                              std::to_string(eps));
}

struct Bracket {
    double lo;
    double hi;
};

Bracket bracket_root(double eps) {
    Bracket b{1e-8, 10.0};
    while (boundary_equation(b.hi, eps) <= 0.0) b.hi *= 2.0;
    // For ε near 1 the root sits below 1e-8 (μ* ≈ (1-ε)φ(0)/ε).
    while (boundary_equation(b.lo, eps) >= 0.0) {
        b.hi = b.lo;
        b.lo *= 1e-3;
        if (b.lo < 1e-300) throw NumericalFailure("mu_star: no sign change above zero");
    }
    return b;
}

}  // namespace

double std_normal_pdf(double x) { return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2); }

// glibc erfc is accurate to a few ulp, well inside 1e-14 absolute.
double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double std_normal_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double boundary_equation(double mu, double eps) {
    return (1.0 - eps) * (mu * std_normal_tail(mu) - std_normal_pdf(mu)) + eps * mu;
}

double mu_star(double eps, double tol) {
    check_eps(eps, "mu_star");
    auto [lo, hi] = bracket_root(eps);
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double h = boundary_equation(mid, eps);
        if (h == 0.0) return mid;
        (h < 0.0 ? lo : hi) = mid;
    }
    const double mu = std::abs(boundary_equation(lo, eps)) < std::abs(boundary_equation(hi, eps)) ? lo : hi;
    if (std::abs(boundary_equation(mu, eps)) > tol)
        throw NumericalFailure("mu_star: residual above tolerance");
    return mu;
}

double mu_star_newton(double eps, double tol) {
    check_eps(eps, "mu_star_newton");
    auto [lo, hi] = bracket_root(eps);
    double mu = lo;
    for (int it = 0; it < 200; ++it) {
        const double h = boundary_equation(mu, eps);
        if (std::abs(h) <= 0.25 * tol) return mu;
        (h < 0.0 ? lo : hi) = mu;
        const double slope = (1.0 - eps) * std_normal_tail(mu) + eps;
        double next = mu - h / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == mu) break;
        mu = next;
    }
    if (std::abs(boundary_equation(mu, eps)) > tol)
        throw NumericalFailure("mu_star_newton: residual above tolerance");
    return mu;
}

double delta_star(double eps) {
    const double mu = mu_star(eps);
    return eps + (1.0 - eps) * std_normal_tail(mu);
}

double delta_star_asymptote(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("delta_star_asymptote: epsilon outside (0, 1)");
    return 2.0 * eps * std::log(1.0 / eps);
}

BoundaryPoint boundary_point(double eps, double tol) {
    BoundaryPoint p;
    p.eps = eps;
    p.mu_star = mu_star(eps, tol);
    p.delta_star = eps + (1.0 - eps) * std_normal_tail(p.mu_star);
    p.residual = boundary_equation(p.mu_star, eps);
    return p;
}

TheoryCurve theory_curve(double eps_min, double eps_max, std::size_t steps, double tol) {
    if (steps < 1) throw InvalidArgument("theory_curve: steps must be >= 1");
    if (!(eps_min < eps_max) && steps > 1)
        throw InvalidArgument("theory_curve: eps_min must be below eps_max");
    check_eps(eps_min, "theory_curve");
    check_eps(eps_max, "theory_curve");
    TheoryCurve curve;
    curve.eps_min = eps_min;
    curve.eps_max = eps_max;
    curve.steps = steps;
    curve.tol = tol;
    curve.points.reserve(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = steps == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(steps - 1);
        curve.points.push_back(boundary_point(eps_min + t * (eps_max - eps_min), tol));
    }
    return curve;
}

void write_theory_csv(std::ostream& os, const TheoryCurve& curve) {
    os << "epsilon,mu_star,delta_star,asymptote_2eps_log,residual\n";
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& p : curve.points) {
        os << p.eps << ',' << p.mu_star << ',' << p.delta_star << ',' << delta_star_asymptote(p.eps)
           << ',' << p.residual << '\n';
    }
}

double epsilon_at_delta(double alpha, double tol) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("epsilon_at_delta: alpha outside (0, 1)");
    double lo = kEpsGuard;
    double hi = 1.0 - 1e-9;
    if (delta_star(lo) >= alpha) return lo;
    if (delta_star(hi) <= alpha) return hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (delta_star(mid) < alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::string to_string(IntersectionVerdict v) {
    switch (v) {
        case IntersectionVerdict::TrivialIntersectionWhp: return "TrivialIntersectionWhp";
        case IntersectionVerdict::NontrivialIntersectionWhp: return "NontrivialIntersectionWhp";
        case IntersectionVerdict::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

TroppClassification tropp_classification(long long n, double delta_d, double delta_k, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("tropp_classification: eta outside (0, 1)");
    if (n < 1) throw InvalidArgument("tropp_classification: N must be >= 1");
    const double dn = static_cast<double>(n);
    if (!(delta_d >= 0.0 && delta_d <= dn && delta_k >= 0.0 && delta_k <= dn))
        throw InvalidArgument("tropp_classification: statistical dimensions outside [0, N]");
    TroppClassification out;
    out.xi = std::sqrt(8.0 * std::log(4.0 / eta));
    out.ratio = (delta_d + delta_k) / dn;
    const double band = out.xi / std::sqrt(dn);
    if (out.ratio <= 1.0 - band)
        out.verdict = IntersectionVerdict::TrivialIntersectionWhp;
    else if (out.ratio >= 1.0 + band)
        out.verdict = IntersectionVerdict::NontrivialIntersectionWhp;
    return out;
}

}  // namespace idphase
