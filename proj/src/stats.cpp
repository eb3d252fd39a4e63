#include "sbd/stats.hpp"

#include <algorithm>
#include <cmath>

#include "sbd/errors.hpp"
#include "sbd/grid.hpp"

namespace sbd {

double pressure(std::span<const Vec> config, const Vec& x, const ResponseFunction& rf,
                const Window& window) {
    // grid-accelerated when the kernel support is finite and the set is large
    if (config.size() > 64 && std::isfinite(rf.support_radius())) {
        NeighborGrid grid(config, window, rf.support_radius());
        std::vector<uint32_t> nbrs;
        grid.query(x, nbrs);
        double s = 0.0;
        for (uint32_t j : nbrs) s += rf.eval(window.distance(config[j], x));
        return s;
    }
    double s = 0.0;
    for (const auto& y : config) s += rf.eval(window.distance(y, x));
    return s;
}

FrameMoments frame_moments(std::span<const Vec> frame, const ResponseFunction& rf,
                           const Window& window) {
    FrameMoments m;
    m.count = static_cast<double>(frame.size());
    if (frame.empty()) return m;

    std::vector<double> pi(frame.size(), 0.0);
    if (frame.size() > 64 && std::isfinite(rf.support_radius())) {
        NeighborGrid grid(frame, window, rf.support_radius());
        std::vector<uint32_t> nbrs;
        for (std::size_t i = 0; i < frame.size(); ++i) {
            grid.query(frame[i], nbrs, static_cast<int64_t>(i));
            for (uint32_t j : nbrs)
                if (j > i) {
                    const double f = rf.eval(window.distance(frame[i], frame[j]));
                    pi[i] += f;
                    pi[j] += f;
                }
        }
    } else {
        for (std::size_t i = 0; i < frame.size(); ++i)
            for (std::size_t j = i + 1; j < frame.size(); ++j) {
                const double f = rf.eval(window.distance(frame[i], frame[j]));
                pi[i] += f;
                pi[j] += f;
            }
    }
    for (double v : pi) {
        m.sum_pressure += v;
        m.sum_pressure_sq += v * v;
    }
    return m;
}

EstimateSeries intensity_series(const ReplicateFrames& data, double volume) {
    EstimateSeries out(data.times);
    for (const auto& rep : data.frames)
        for (std::size_t t = 0; t < rep.size(); ++t)
            out.add(t, static_cast<double>(rep[t].size()) / volume);
    return out;
}

EstimateSeries palm_pressure_series(const ReplicateFrames& data, const ResponseFunction& rf,
                                    const Window& window) {
    EstimateSeries out(data.times);
    for (const auto& rep : data.frames)
        for (std::size_t t = 0; t < rep.size(); ++t)
            out.add(t, frame_moments(rep[t], rf, window).sum_pressure / window.volume());
    return out;
}

namespace {
double grid_step(const std::vector<double>& times) {
    if (times.size() < 2) throw ConfigError("residual grid needs at least two times");
    const double h = times[1] - times[0];
    for (std::size_t i = 1; i + 1 < times.size(); ++i)
        if (std::abs(times[i + 1] - times[i] - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw ConfigError("residual grid must be uniform");
    return h;
}
} // namespace

OdeResidual ode_residual_density(const ReplicateFrames& data, double lambda,
                                 const ResponseFunction& rf, const Window& window) {
    const double h = grid_step(data.times);
    const double volume = window.volume();
    std::vector<double> cells(data.times.begin(), data.times.end() - 1);

    OdeResidual out;
    out.residual = EstimateSeries(cells);
    EstimateSeries curvature(cells);

    for (const auto& rep : data.frames) {
        std::vector<FrameMoments> ms(rep.size());
        for (std::size_t t = 0; t < rep.size(); ++t) ms[t] = frame_moments(rep[t], rf, window);
        for (std::size_t t = 0; t + 1 < rep.size(); ++t) {
            const double beta_now = ms[t].count / volume;
            const double beta_next = ms[t + 1].count / volume;
            const double death_term = ms[t].sum_pressure / volume; // beta E0[pi]
            out.residual.add(t, (beta_next - beta_now) / h - (lambda - death_term));
            // |d/dt (lambda - beta E0 pi)| = |2 beta E0 pi^2 - 2 lambda a beta|
            const double q = ms[t].sum_pressure_sq / volume;
            curvature.add(t, std::abs(2.0 * q - 2.0 * lambda * rf.integral() * beta_now));
        }
    }
    out.bias_bound.resize(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c)
        out.bias_bound[c] = 0.5 * h * curvature.mean(c);
    return out;
}

MarkedFrame marked_frame(const CoupledOutcome& outcome, double t) {
    MarkedFrame f;
    for (const auto& p : outcome.points) {
        const auto m = p.mark_at(t);
        if (!m) continue;
        f.positions.push_back(p.x);
        f.marks.push_back(*m);
    }
    return f;
}

namespace {

struct MarkedMoments {
    double n_r = 0, n_z = 0, n_a = 0;
    // sum over points of one mark of the pressure exerted by another mark
    double r_from_r = 0, r_from_z = 0, r_from_a = 0;
    double z_from_z = 0, z_from_r = 0;
    double a_from_a = 0, a_from_r = 0;
    double z_from_r_flip = 0; // Sum_{x in R} pi_Z(x), the mass-transport twin
    double a_from_r_flip = 0;
};

MarkedMoments marked_moments(const MarkedFrame& f, const ResponseFunction& rf, const Window& window) {
    MarkedMoments m;
    const std::size_t n = f.positions.size();
    for (std::size_t i = 0; i < n; ++i) {
        switch (f.marks[i]) {
            case Mark::Regular: m.n_r += 1; break;
            case Mark::Zombie: m.n_z += 1; break;
            case Mark::Antizombie: m.n_a += 1; break;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double fv = rf.eval(window.distance(f.positions[i], f.positions[j]));
            if (fv == 0.0) continue;
            const Mark mi = f.marks[i];
            const Mark mj = f.marks[j];
            if (mi == Mark::Regular) {
                if (mj == Mark::Regular) m.r_from_r += fv;
                else if (mj == Mark::Zombie) { m.r_from_z += fv; m.z_from_r_flip += fv; }
                else { m.r_from_a += fv; m.a_from_r_flip += fv; }
            } else if (mi == Mark::Zombie) {
                if (mj == Mark::Zombie) m.z_from_z += fv;
                else if (mj == Mark::Regular) m.z_from_r += fv;
            } else {
                if (mj == Mark::Antizombie) m.a_from_a += fv;
                else if (mj == Mark::Regular) m.a_from_r += fv;
            }
        }
    }
    return m;
}

} // namespace

MarkedOdeResiduals ode_residual_marked(const MarkedReplicateFrames& data, double lambda,
                                       const ResponseFunction& rf, const Window& window) {
    const double h = grid_step(data.times);
    const double volume = window.volume();
    std::vector<double> cells(data.times.begin(), data.times.end() - 1);

    MarkedOdeResiduals out{EstimateSeries(cells), EstimateSeries(cells), EstimateSeries(cells),
                           EstimateSeries(cells)};

    for (const auto& rep : data.frames) {
        std::vector<MarkedMoments> ms(rep.size());
        for (std::size_t t = 0; t < rep.size(); ++t) ms[t] = marked_moments(rep[t], rf, window);
        for (std::size_t t = 0; t + 1 < rep.size(); ++t) {
            const auto& a = ms[t];
            const auto& b = ms[t + 1];
            const double dr = (b.n_r - a.n_r) / (volume * h);
            const double dz = (b.n_z - a.n_z) / (volume * h);
            const double da = (b.n_a - a.n_a) / (volume * h);
            const double ds = (b.n_z + b.n_a - a.n_z - a.n_a) / (volume * h);

            out.regular.add(t, dr - (lambda - (a.r_from_r + a.r_from_z + a.r_from_a) / volume));
            out.zombie.add(t, dz - (-(a.z_from_z + a.z_from_r) / volume + a.r_from_a / volume));
            out.antizombie.add(t, da - (-(a.a_from_a + a.a_from_r) / volume + a.r_from_z / volume));
            out.special.add(t, ds - (-(a.z_from_z + a.a_from_a) / volume));
        }
    }
    return out;
}

double mass_transport_gap(const MarkedReplicateFrames& data, const ResponseFunction& rf,
                          const Window& window) {
    double worst = 0.0;
    for (const auto& rep : data.frames)
        for (const auto& f : rep) {
            const auto m = marked_moments(f, rf, window);
            const double sz = std::max({1.0, std::abs(m.z_from_r), std::abs(m.z_from_r_flip)});
            const double sa = std::max({1.0, std::abs(m.a_from_r), std::abs(m.a_from_r_flip)});
            worst = std::max(worst, std::abs(m.z_from_r - m.z_from_r_flip) / sz);
            worst = std::max(worst, std::abs(m.a_from_r - m.a_from_r_flip) / sa);
        }
    return worst;
}

PairCorrelation pair_correlation(std::span<const Frame> frames, const Window& window,
                                 const std::vector<double>& edges, const ResponseFunction* rf_check) {
    if (edges.size() < 2) throw ConfigError("pair correlation needs at least one bin");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1])) throw ConfigError("bin edges must increase");
    if (window.topology == Topology::Torus && edges.back() > 0.5 * window.side + 1e-12)
        throw ConfigError("max pair-correlation radius must not exceed half the torus side");
    (void)rf_check;

    std::vector<double> mids(edges.size() - 1);
    std::vector<double> shell(edges.size() - 1);
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
        mids[b] = 0.5 * (edges[b] + edges[b + 1]);
        shell[b] = shell_volume(window.dim, edges[b], edges[b + 1]);
    }

    PairCorrelation out;
    out.edges = edges;
    out.density = EstimateSeries(mids);

    const double volume = window.volume();
    std::vector<double> counts(mids.size());
    for (const auto& f : frames) {
        std::fill(counts.begin(), counts.end(), 0.0);
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = i + 1; j < f.size(); ++j) {
                const double r = window.distance(f[i], f[j]);
                if (r < edges.front() || r >= edges.back()) continue;
                const auto it = std::upper_bound(edges.begin(), edges.end(), r);
                counts[static_cast<std::size_t>(it - edges.begin()) - 1] += 2.0; // ordered pairs
            }
        for (std::size_t b = 0; b < mids.size(); ++b)
            out.density.add(b, counts[b] / (volume * shell[b]));
    }
    return out;
}

BoxRegion BoxRegion::central(const Window& window, double side_length) {
    BoxRegion box;
    for (int d = 0; d < window.dim; ++d) {
        box.lo[d] = 0.5 * (window.side - side_length);
        box.hi[d] = 0.5 * (window.side + side_length);
    }
    return box;
}

BalanceResiduals balance_residuals(std::span<const Frame> frames, const ResponseFunction& rf,
                                   const Window& window, double lambda,
                                   const std::vector<double>& edges, const BoxRegion& c1,
                                   const BoxRegion& c2) {
    const double volume = window.volume();
    EstimateSeries r1_series({0.0});
    EstimateSeries r2_series({0.0});

    for (const auto& f : frames) {
        // R1: Sum over bins of rho2_hat(r) f(mid) shellvol - lambda, which
        // collapses to the binned f-weighted ordered-pair sum per volume.
        double weighted = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = i + 1; j < f.size(); ++j) {
                const double r = window.distance(f[i], f[j]);
                if (r < edges.front() || r >= edges.back()) continue;
                const auto it = std::upper_bound(edges.begin(), edges.end(), r);
                const std::size_t b = static_cast<std::size_t>(it - edges.begin()) - 1;
                weighted += 2.0 * rf.eval(0.5 * (edges[b] + edges[b + 1]));
            }
        r1_series.add(0, weighted / volume - lambda);

        // R2: birth gain minus death loss for ordered pairs over (C1, C2).
        std::vector<std::size_t> in1, in2;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (c1.contains(f[i], window.dim)) in1.push_back(i);
            if (c2.contains(f[i], window.dim)) in2.push_back(i);
        }
        std::vector<double> pi(f.size(), 0.0);
        const auto need = [&](std::size_t i) {
            return c1.contains(f[i], window.dim) || c2.contains(f[i], window.dim);
        };
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (!need(i)) continue;
            for (std::size_t j = 0; j < f.size(); ++j)
                if (j != i) pi[i] += rf.eval(window.distance(f[i], f[j]));
        }
        const double gain = lambda * (c1.volume(window.dim) * static_cast<double>(in2.size()) +
                                      c2.volume(window.dim) * static_cast<double>(in1.size()));
        double loss = 0.0;
        for (std::size_t i : in1)
            for (std::size_t j : in2)
                if (i != j) loss += pi[i] + pi[j];
        r2_series.add(0, gain - loss);
    }

    BalanceResiduals out;
    out.r1 = {r1_series.mean(0), r1_series.stderror(0)};
    out.r2 = {r2_series.mean(0), r2_series.stderror(0)};
    return out;
}

StationarySummary stationary_summary(std::span<const Frame> frames, const ResponseFunction& rf,
                                     const Window& window) {
    StationarySummary s;
    s.frames = frames.size();
    const double volume = window.volume();
    EstimateSeries beta({0.0});
    EstimateSeries palm({0.0});
    PairedMoments ratio; // (S1, N) pairs for E0[pi] = mean(S1)/mean(N) scaled
    for (const auto& f : frames) {
        const auto m = frame_moments(f, rf, window);
        beta.add(0, m.count / volume);
        palm.add(0, m.sum_pressure / volume);
        ratio.add(m.sum_pressure, m.count);
    }
    s.beta = {beta.mean(0), beta.stderror(0)};
    s.beta_palm = {palm.mean(0), palm.stderror(0)};
    const auto [r, se] = ratio.ratio();
    s.palm_pressure = {r, se};
    return s;
}

RepulsionReport repulsion_check(std::span<const Frame> frames, const ResponseFunction& rf,
                                const Window& window) {
    RepulsionReport rep;
    const double volume = window.volume();
    const double a = rf.integral();

    PairedMoments gap_parts;    // x = a*N/V (lhs sample), y = S1 (for the ratio rhs)
    PairedMoments chain_parts;  // x = S2, y = N  -> E0[pi^2]
    EstimateSeries n_series({0.0}), s1_series({0.0});
    for (const auto& f : frames) {
        const auto m = frame_moments(f, rf, window);
        gap_parts.add(m.sum_pressure, m.count);
        chain_parts.add(m.sum_pressure_sq, m.count);
        n_series.add(0, m.count);
        s1_series.add(0, m.sum_pressure);
    }
    const double mean_n = n_series.mean(0);
    const double mean_s1 = s1_series.mean(0);
    const double beta_hat = mean_n / volume;

    rep.lhs = beta_hat * a;
    const auto [e0pi, e0pi_se] = gap_parts.ratio();
    rep.rhs = e0pi;

    // delta method on D(n, s) = a n / V - s / n with the sample covariance
    const double m = static_cast<double>(frames.size());
    const double gx = a / volume + mean_s1 / (mean_n * mean_n); // d/dn
    const double gy = -1.0 / mean_n;                            // d/ds
    const double var_d = (gx * gx * gap_parts.var_y() + gy * gy * gap_parts.var_x() +
                          2.0 * gx * gy * gap_parts.cov()) / m;
    rep.gap = rep.lhs - rep.rhs;
    rep.gap_se = std::sqrt(std::max(0.0, var_d));

    rep.chain_lhs = a * beta_hat * e0pi;
    const auto [e0pi2, e0pi2_se] = chain_parts.ratio();
    rep.chain_rhs = e0pi2;
    rep.chain_se = std::sqrt(e0pi2_se * e0pi2_se + std::pow(a * beta_hat * e0pi_se, 2) +
                             std::pow(a * e0pi * n_series.stderror(0) / volume, 2));
    rep.jensen_ok = e0pi2 >= e0pi * e0pi - 1e-12 * std::max(1.0, e0pi * e0pi);
    (void)e0pi2_se;
    return rep;
}

double count_autocorrelation(std::span<const Frame> frames) {
    if (frames.size() < 3) return 0.0;
    PairedMoments pm;
    for (std::size_t i = 0; i + 1 < frames.size(); ++i)
        pm.add(static_cast<double>(frames[i].size()), static_cast<double>(frames[i + 1].size()));
    const double denom = std::sqrt(pm.var_x() * pm.var_y());
    return denom > 0.0 ? pm.cov() / denom : 0.0;
}

} // namespace sbd
