#include "sbd/approx.hpp"

#include <algorithm>
#include <cmath>

#include "sbd/errors.hpp"
#include "sbd/quadrature.hpp"

namespace sbd {

double beta1(double lambda, double a) {
    if (!(lambda > 0.0) || !(a > 0.0)) throw ConfigError("beta1 needs lambda > 0 and a > 0");
    return std::sqrt(lambda / a);
}

namespace {

// d nu_d lambda Int_0^inf f(r)/(f(r)+mu) r^{d-1} dr, truncated exactly at the
// support radius (the integrand vanishes where f does).
double mu_rhs(const ResponseFunction& rf, double lambda, double mu) {
    const int d = rf.dim();
    const double upper = rf.effective_radius(1e-12);
    const auto integrand = [&](double r) {
        const double f = rf.eval(r);
        return f <= 0.0 ? 0.0 : f / (f + mu) * std::pow(r, d - 1);
    };
    const double scale = std::pow(upper, d) / d;
    const double integral = integrate(integrand, 0.0, upper, 1e-13 * std::max(1.0, scale));
    return d * unit_ball_volume(d) * lambda * integral;
}

} // namespace

Mu2Result mu2_solve(const ResponseFunction& rf, double lambda, double tol) {
    if (!(lambda > 0.0)) throw ConfigError("mu2_solve needs lambda > 0");
    Mu2Result res;

    // g(mu) = mu - rhs(mu): negative near 0, positive past sqrt(lambda a).
    const auto g = [&](double mu) { return mu - mu_rhs(rf, lambda, mu); };
    double lo = 1e-12;
    double hi = std::max(1.0, std::sqrt(lambda * rf.integral()));
    double g_lo = g(lo);
    double g_hi = g(hi);
    int expand = 0;
    while (g_lo > 0.0 && expand < 60) {
        lo /= 10.0;
        g_lo = g(lo);
        ++expand;
    }
    while (g_hi < 0.0 && expand < 120) {
        hi *= 10.0;
        g_hi = g(hi);
        ++expand;
    }
    if (!(g_lo <= 0.0 && g_hi >= 0.0))
        throw BracketFailureError("mu2 bisection could not bracket a sign change");
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    res.g_lo = g_lo;
    res.g_hi = g_hi;

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double gm = g(mid);
        ++res.iterations;
        if (gm < 0.0)
            lo = mid;
        else
            hi = mid;
        if (res.iterations > 200) break;
    }
    res.mu = 0.5 * (lo + hi);
    res.residual = std::abs(g(res.mu));
    res.beta2 = lambda / res.mu;
    return res;
}

RadialCurve g2_curve(const ResponseFunction& rf, double lambda, double mu,
                     std::span<const double> radii) {
    RadialCurve curve;
    curve.r.assign(radii.begin(), radii.end());
    curve.value.reserve(radii.size());
    for (double r : radii) curve.value.push_back(lambda / (rf.eval(r) + mu));
    return curve;
}

namespace {

// Linear interpolation with flat extrapolation on both ends.
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

struct PolarRule {
    std::vector<double> rho, wrho;
    std::vector<double> theta, wtheta;
};

// Composite-Simpson nodes and weights on [a,b].
void simpson_nodes(double a, double b, int n, std::vector<double>& x, std::vector<double>& w) {
    if (n % 2 == 1) ++n;
    const double h = (b - a) / n;
    x.resize(n + 1);
    w.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        x[i] = a + i * h;
        w[i] = (i == 0 || i == n) ? h / 3.0 : (i % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
    }
}

} // namespace

Volterra3Result volterra3_solve(const ResponseFunction& rf, double lambda,
                                std::vector<double> grid, double damping, int max_iter,
                                double tol) {
    const int d = rf.dim();
    if (d > 2) throw ConfigError("third-order solve supports dimensions 1 and 2");
    if (!(damping > 0.0 && damping <= 1.0)) throw ConfigError("damping must lie in (0,1]");
    const double support = rf.support_radius();
    if (!std::isfinite(support))
        throw GridMismatchError("third-order solve needs a finite-support kernel");
    if (grid.empty() || grid.back() < 3.0 * support)
        throw GridMismatchError("grid max radius must reach three support radii");

    const auto mu_res = mu2_solve(rf, lambda);
    const double mu = mu_res.mu;

    Volterra3Result out;
    out.mu = mu;
    out.g3.r = std::move(grid);

    // start from the second-order curve
    std::vector<double> g(out.g3.r.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = lambda / (rf.eval(out.g3.r[i]) + mu);

    const auto h_fun = [&](double s, double d1, double d2) {
        const double num = rf.eval(d1) + rf.eval(d2);
        if (num <= 0.0) return 0.0;
        return num / (2.0 * (rf.eval(s) + rf.eval(d1) + rf.eval(d2)) + 3.0 * mu);
    };

    std::vector<double> rho, wrho, th, wth;
    // integration domain: z within the kernel support of either endpoint
    for (int iter = 0; iter < max_iter; ++iter) {
        double sup_update = 0.0;
        std::vector<double> next(g.size());
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double s = out.g3.r[k];
            double int_h = 0.0;  // Int h dz
            double int_gh = 0.0; // Int g(|x1-z|) h dz  (the symmetric twin is equal)
            if (d == 1) {
                simpson_nodes(-support, s + support, 400, rho, wrho);
                for (std::size_t i = 0; i < rho.size(); ++i) {
                    const double z = rho[i];
                    const double hv = h_fun(s, std::abs(z), std::abs(z - s));
                    if (hv == 0.0) continue;
                    int_h += wrho[i] * hv;
                    int_gh += wrho[i] * hv * interp(out.g3.r, g, std::abs(z));
                }
            } else {
                simpson_nodes(0.0, s + support, 160, rho, wrho);
                simpson_nodes(0.0, M_PI, 48, th, wth);
                for (std::size_t i = 0; i < rho.size(); ++i) {
                    const double r1 = rho[i];
                    const double gr = interp(out.g3.r, g, r1);
                    double acc_h = 0.0, acc_gh = 0.0;
                    for (std::size_t j = 0; j < th.size(); ++j) {
                        const double r2 = std::sqrt(std::max(
                            0.0, r1 * r1 + s * s - 2.0 * r1 * s * std::cos(th[j])));
                        const double hv = h_fun(s, r1, r2);
                        if (hv == 0.0) continue;
                        acc_h += wth[j] * hv;
                        acc_gh += wth[j] * hv * gr;
                    }
                    // symmetry in the angle doubles the half-circle integral
                    int_h += wrho[i] * 2.0 * r1 * acc_h;
                    int_gh += wrho[i] * 2.0 * r1 * acc_gh;
                }
            }
            const double j_val = 1.0 / (2.0 * rf.eval(s) + lambda * int_h);
            const double rhs = 2.0 * lambda * j_val - 2.0 * lambda * j_val * int_gh;
            next[k] = (1.0 - damping) * g[k] + damping * rhs;
            sup_update = std::max(sup_update, std::abs(next[k] - g[k]));
        }
        g.swap(next);
        out.update_history.push_back(sup_update);
        out.iterations = iter + 1;
        out.final_update = sup_update;
        if (sup_update < tol) {
            out.converged = true;
            break;
        }
    }
    out.g3.value = std::move(g);
    return out;
}

} // namespace sbd
