#pragma once

#include <span>
#include <vector>

#include "sbd/response.hpp"
#include "sbd/series.hpp"
#include "sbd/sheriffz.hpp"

namespace sbd {

// A frame is the set of alive positions at one instant.
using Frame = std::vector<Vec>;

// Shot-noise death pressure exerted by the configuration at x. The f(0)=0
// convention removes self-interaction when x is itself a configuration point.
double pressure(std::span<const Vec> config, const Vec& x, const ResponseFunction& rf,
                const Window& window);

// Sum of pressures and squared pressures over the configuration; the
// spatial-average route to the Palm quantities beta*E0[pi] and beta*E0[pi^2].
struct FrameMoments {
    double count = 0.0;
    double sum_pressure = 0.0;    // Sum_x pi(x)
    double sum_pressure_sq = 0.0; // Sum_x pi(x)^2
};
FrameMoments frame_moments(std::span<const Vec> frame, const ResponseFunction& rf,
                           const Window& window);

// Per-replicate snapshot matrix on a common time grid.
struct ReplicateFrames {
    std::vector<double> times;
    std::vector<std::vector<Frame>> frames; // [replicate][time]
};

// beta_hat(t) = count / volume, one sample per replicate.
EstimateSeries intensity_series(const ReplicateFrames& data, double volume);

// (1/V) Sum pi(X): estimates beta_t * E0[pi] per grid time.
EstimateSeries palm_pressure_series(const ReplicateFrames& data, const ResponseFunction& rf,
                                    const Window& window);

// Finite-difference residual of d beta/dt = lambda - beta E0[pi] per grid
// cell (forward difference, one sample per replicate). The grid must be
// uniformly spaced. Also returns the curvature proxy used for the O(h) bias
// term of the gate: |2 lambda a beta - 2 beta E0[pi^2]| estimated pointwise.
struct OdeResidual {
    EstimateSeries residual;  // cells = times[0..n-2]
    std::vector<double> bias_bound; // 0.5 * h * curvature estimate per cell
};
OdeResidual ode_residual_density(const ReplicateFrames& data, double lambda,
                                 const ResponseFunction& rf, const Window& window);

// Marked frames extracted from coupled runs.
struct MarkedFrame {
    Frame positions;
    std::vector<Mark> marks;
};
MarkedFrame marked_frame(const CoupledOutcome& outcome, double t);

struct MarkedReplicateFrames {
    std::vector<double> times;
    std::vector<std::vector<MarkedFrame>> frames; // [replicate][time]
};

// Finite-difference residuals of the four marked density equations
// (regular, zombie, antizombie, special).
struct MarkedOdeResiduals {
    EstimateSeries regular;
    EstimateSeries zombie;
    EstimateSeries antizombie;
    EstimateSeries special;
};
MarkedOdeResiduals ode_residual_marked(const MarkedReplicateFrames& data, double lambda,
                                       const ResponseFunction& rf, const Window& window);

// Exact symmetry of the cross-pressure double sums: the f-weight between two
// disjoint marked sets is the same measured from either side. Returns the
// worst relative discrepancy over frames for the (zombie, regular) and
// (antizombie, regular) pairs.
double mass_transport_gap(const MarkedReplicateFrames& data, const ResponseFunction& rf,
                          const Window& window);

// Radial pair-correlation estimate: one sample per frame and bin of
// count / (V * shellvol); the mean estimates rho2_mi and converges to beta^2
// for a Poisson configuration.
struct PairCorrelation {
    std::vector<double> edges; // cells+1 edges
    EstimateSeries density;    // grid = bin midpoints
};
PairCorrelation pair_correlation(std::span<const Frame> frames, const Window& window,
                                 const std::vector<double>& edges,
                                 const ResponseFunction* rf_check = nullptr);

// Axis-aligned half-open box, used for subwindow statistics.
struct BoxRegion {
    Vec lo{0.0, 0.0, 0.0};
    Vec hi{0.0, 0.0, 0.0};
    [[nodiscard]] bool contains(const Vec& x, int dim) const {
        for (int d = 0; d < dim; ++d)
            if (x[d] < lo[d] || x[d] >= hi[d]) return false;
        return true;
    }
    [[nodiscard]] double volume(int dim) const {
        double v = 1.0;
        for (int d = 0; d < dim; ++d) v *= hi[d] - lo[d];
        return v;
    }
    // Central box of the given side length.
    static BoxRegion central(const Window& window, double side_length);
};

// First and second balance relations evaluated on stationary frames.
// R1: the f-weighted pair density integral minus lambda (expected 0).
// R2: generator residual for ordered pair counts over (C1, C2) (expected 0).
struct BalanceResiduals {
    ValueWithError r1;
    ValueWithError r2;
};
BalanceResiduals balance_residuals(std::span<const Frame> frames, const ResponseFunction& rf,
                                   const Window& window, double lambda,
                                   const std::vector<double>& edges, const BoxRegion& c1,
                                   const BoxRegion& c2);

// f-repulsion: in the stationary regime a typical point feels at most the
// f-weight a typical location feels. Reports the chain used in the proof.
struct RepulsionReport {
    double lhs = 0.0;       // beta_hat * a
    double rhs = 0.0;       // E0[pi] estimate
    double gap = 0.0;       // lhs - rhs
    double gap_se = 0.0;
    double chain_lhs = 0.0; // a * beta * E0[pi]
    double chain_rhs = 0.0; // E0[pi^2]
    double chain_se = 0.0;
    bool jensen_ok = false; // E0[pi^2] >= (E0[pi])^2 on the empirical data
};
RepulsionReport repulsion_check(std::span<const Frame> frames, const ResponseFunction& rf,
                                const Window& window);

// Stationary-frame summary used by several gates.
struct StationarySummary {
    ValueWithError beta;          // intensity
    ValueWithError beta_palm;     // beta * E0[pi]
    ValueWithError palm_pressure; // E0[pi] (ratio estimate)
    std::size_t frames = 0;
};
StationarySummary stationary_summary(std::span<const Frame> frames, const ResponseFunction& rf,
                                     const Window& window);

// Lag-1 autocorrelation of frame counts; reported so users can judge the
// snapshot spacing.
double count_autocorrelation(std::span<const Frame> frames);

} // namespace sbd
