#pragma once

#include <span>
#include <vector>

#include "sbd/response.hpp"

namespace sbd {

// Closed-form and numerical evaluation of the intensity approximation
// hierarchy. Order 1 treats the pair density as beta^2; order 2 solves the
// scalar fixed point mu = d nu_d lambda Int f/(f+mu) r^{d-1} dr and gives
// g2(r) = lambda/(f(r)+mu); order 3 iterates a Volterra-type equation for
// the reduced pair density.

// sqrt(lambda / a).
double beta1(double lambda, double a);

struct Mu2Result {
    double mu = 0.0;
    double beta2 = 0.0; // lambda / mu
    int iterations = 0;
    double residual = 0.0;      // |mu - rhs(mu)| at the solution
    double bracket_lo = 0.0;    // bracketing certificate: sign change across [lo, hi]
    double bracket_hi = 0.0;
    double g_lo = 0.0;
    double g_hi = 0.0;
};

Mu2Result mu2_solve(const ResponseFunction& rf, double lambda, double tol = 1e-10);

struct RadialCurve {
    std::vector<double> r;
    std::vector<double> value;
};

RadialCurve g2_curve(const ResponseFunction& rf, double lambda, double mu,
                     std::span<const double> radii);

struct Volterra3Result {
    RadialCurve g3;
    double mu = 0.0;
    int iterations = 0;
    double final_update = 0.0; // sup-norm of the last Picard update
    bool converged = false;
    std::vector<double> update_history;
};

// Damped Picard iteration of the third-order closure; dimensions 1 and 2,
// finite-support kernels. Reports diagnostics instead of failing on
// non-convergence.
Volterra3Result volterra3_solve(const ResponseFunction& rf, double lambda,
                                std::vector<double> grid, double damping = 0.5,
                                int max_iter = 200, double tol = 1e-7);

} // namespace sbd
