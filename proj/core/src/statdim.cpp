#include "idphase/statdim.hpp"

#include "idphase/errors.hpp"
#include "idphase/parallel.hpp"
#include "idphase/rng.hpp"
#include "idphase/theory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>

namespace idphase {

namespace {

std::vector<char> membership(std::size_t n, std::span<const Eigen::Index> nonneg) {
    std::vector<char> in(n, 0);
    for (auto i : nonneg) {
        if (i < 0 || static_cast<std::size_t>(i) >= n)
            throw InvalidArgument("index set entry out of range");
        in[static_cast<std::size_t>(i)] = 1;
    }
    return in;
}

}  // namespace

MultiplierSolution lagrange_mu(std::span<const double> g, std::span<const Eigen::Index> nonneg) {
    const auto in = membership(g.size(), nonneg);
    std::vector<double> breaks;
    breaks.reserve(nonneg.size());
    double free_sum = 0.0;
    std::size_t free_count = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (in[i]) {
            breaks.push_back(g[i]);
        } else {
            free_sum += g[i];
            ++free_count;
        }
    }
    std::sort(breaks.begin(), breaks.end(), std::greater<>());

    if (free_count == 0) {
        const double top = breaks.empty() ? 0.0 : breaks.front();
        return {std::max(top, 0.0), true};
    }

    // Segment k: exactly the k largest breakpoints exceed μ, i.e.
    // breaks[k] <= μ <= breaks[k-1] with breaks[-1] = +inf, breaks[m] = -inf.
    double prefix = 0.0;
    const std::size_t m = breaks.size();
    for (std::size_t k = 0; k <= m; ++k) {
        if (k > 0) prefix += breaks[k - 1];
        const double mu = (prefix + free_sum) / static_cast<double>(k + free_count);
        const bool below_upper = k == 0 || mu <= breaks[k - 1];
        const bool above_lower = k == m || mu >= breaks[k];
        if (below_upper && above_lower) return {mu, false};
    }
    // Rounding can leave μ a hair outside every segment; take the segment
    // whose violation is smallest.
    double best_mu = 0.0;
    double best_gap = std::numeric_limits<double>::infinity();
    prefix = 0.0;
    for (std::size_t k = 0; k <= m; ++k) {
        if (k > 0) prefix += breaks[k - 1];
        const double mu = (prefix + free_sum) / static_cast<double>(k + free_count);
        double gap = 0.0;
        if (k > 0) gap = std::max(gap, mu - breaks[k - 1]);
        if (k < m) gap = std::max(gap, breaks[k] - mu);
        if (gap < best_gap) {
            best_gap = gap;
            best_mu = mu;
        }
    }
    return {best_mu, false};
}

double multiplier_equation(std::span<const double> g, std::span<const Eigen::Index> nonneg, double mu) {
    const auto in = membership(g.size(), nonneg);
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += in[i] ? std::max(g[i] - mu, 0.0) : g[i] - mu;
    return s;
}

ProjectionResult project_onto_D(std::span<const double> g, std::span<const Eigen::Index> nonneg) {
    const auto in = membership(g.size(), nonneg);
    const auto sol = lagrange_mu(g, nonneg);
    ProjectionResult out;
    out.mu = sol.mu;
    out.degenerate = sol.degenerate;
    const auto n = static_cast<Eigen::Index>(g.size());
    out.x.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v = g[static_cast<std::size_t>(i)] - sol.mu;
        out.x(i) = in[static_cast<std::size_t>(i)] ? std::max(v, 0.0) : v;
    }
    out.squared_norm_over_n = n > 0 ? out.x.squaredNorm() / static_cast<double>(n) : 0.0;
    return out;
}

StatDimEstimate statdim_mc(Eigen::Index N, Eigen::Index K, std::size_t samples, std::uint64_t seed,
                           unsigned workers) {
    if (N < 1) throw InvalidArgument("statdim_mc: N must be >= 1");
    if (K < 0 || K > N) throw InvalidArgument("statdim_mc: K must lie in [0, N]");
    if (samples < 2) throw InvalidArgument("statdim_mc: need at least 2 samples");

    std::vector<Eigen::Index> nonneg(static_cast<std::size_t>(N - K));
    std::iota(nonneg.begin(), nonneg.end(), Eigen::Index{0});

    std::vector<double> values(samples);
    parallel_for(samples, workers, [&](std::size_t s) {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(K), s}));
        std::vector<double> g(static_cast<std::size_t>(N));
        for (auto& v : g) v = rng.normal();
        values[s] = project_onto_D(g, nonneg).squared_norm_over_n;
    });

    StatDimEstimate est;
    est.N = N;
    est.K = K;
    est.samples = samples;
    est.seed = seed;
    const double n = static_cast<double>(samples);
    est.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    est.stderr_ = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    return est;
}

double population_objective(double mu, double eps) {
    const double q = std_normal_tail(mu);
    const double plus_sq = (1.0 + mu * mu) * q - mu * std_normal_pdf(mu);
    return (1.0 - eps) * plus_sq + eps * (1.0 + mu * mu);
}

ScalarMinimum minimize_population_objective(double eps) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = -10.0, b = 10.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = population_objective(c, eps);
    double fd = population_objective(d, eps);
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = population_objective(c, eps);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = population_objective(d, eps);
        }
    }
    const double mu = 0.5 * (a + b);
    return {mu, population_objective(mu, eps)};
}

void write_statdim_csv(std::ostream& os, std::span<const StatDimEstimate> rows) {
    os << "N,K,epsilon,samples,mean,stderr,seed\n";
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& r : rows) {
        os << r.N << ',' << r.K << ',' << static_cast<double>(r.K) / static_cast<double>(r.N) << ','
           << r.samples << ',' << r.mean << ',' << r.stderr_ << ',' << r.seed << '\n';
    }
}

}  // namespace idphase
