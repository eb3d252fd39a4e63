#include "sbd/response.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "sbd/errors.hpp"
#include "sbd/quadrature.hpp"

namespace sbd {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(KernelKind k) {
    switch (k) {
        case KernelKind::Indicator: return "indicator";
        case KernelKind::TruncatedPower: return "truncated-power";
        case KernelKind::Exponential: return "exponential";
        case KernelKind::Tabulated: return "tabulated";
    }
    return "?";
}

ResponseFunction ResponseFunction::indicator(double height, double radius, int dim) {
    if (!(height >= 0.0) || !(radius > 0.0)) throw ConfigError("indicator kernel needs height >= 0, radius > 0");
    ResponseFunction rf;
    rf.kind_ = KernelKind::Indicator;
    rf.dim_ = dim;
    rf.height_ = height;
    rf.radius_ = radius;
    rf.finalize();
    return rf;
}

ResponseFunction ResponseFunction::truncated_power(double height, double radius, double exponent, int dim) {
    if (!(height >= 0.0) || !(radius > 0.0)) throw ConfigError("truncated-power kernel needs height >= 0, radius > 0");
    if (!(exponent > dim))
        throw DivergentIntegralError("truncated-power tail exponent must exceed the dimension");
    ResponseFunction rf;
    rf.kind_ = KernelKind::TruncatedPower;
    rf.dim_ = dim;
    rf.height_ = height;
    rf.radius_ = radius;
    rf.exponent_ = exponent;
    rf.finalize();
    return rf;
}

ResponseFunction ResponseFunction::exponential(double height, double rate, int dim) {
    if (!(height >= 0.0) || !(rate > 0.0)) throw ConfigError("exponential kernel needs height >= 0, rate > 0");
    ResponseFunction rf;
    rf.kind_ = KernelKind::Exponential;
    rf.dim_ = dim;
    rf.height_ = height;
    rf.rate_ = rate;
    rf.finalize();
    return rf;
}

ResponseFunction ResponseFunction::tabulated(std::vector<std::pair<double, double>> knots, int dim) {
    if (knots.size() < 2) throw ConfigError("tabulated kernel needs at least two knots");
    std::sort(knots.begin(), knots.end());
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (knots[i].first == knots[i - 1].first) throw ConfigError("tabulated kernel has duplicate radii");
    if (knots.front().first < 0.0) throw ConfigError("tabulated kernel has negative radius");
    ResponseFunction rf;
    rf.kind_ = KernelKind::Tabulated;
    rf.dim_ = dim;
    rf.knots_ = std::move(knots);
    rf.finalize();
    return rf;
}

ResponseFunction ResponseFunction::tabulated_from_csv(const std::string& path, int dim) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open kernel CSV: " + path);
    std::vector<std::pair<double, double>> knots;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double r, v;
        if (ls >> r >> v) knots.emplace_back(r, v);
    }
    return tabulated(std::move(knots), dim);
}

double ResponseFunction::eval(double r) const {
    if (r <= 0.0) return 0.0; // f(0) = 0 by convention, removes self-interaction
    switch (kind_) {
        case KernelKind::Indicator:
            return r <= radius_ ? height_ : 0.0;
        case KernelKind::TruncatedPower:
            return r <= radius_ ? height_ : height_ * std::pow(radius_ / r, exponent_);
        case KernelKind::Exponential:
            return height_ * std::exp(-rate_ * r);
        case KernelKind::Tabulated: {
            if (r >= knots_.back().first) return 0.0;
            if (r <= knots_.front().first) return knots_.front().second;
            auto it = std::upper_bound(knots_.begin(), knots_.end(), std::make_pair(r, kInf));
            const auto& [r1, v1] = *it;
            const auto& [r0, v0] = *(it - 1);
            const double w = (r - r0) / (r1 - r0);
            return v0 + w * (v1 - v0);
        }
    }
    return 0.0;
}

double ResponseFunction::effective_radius(double eps) const {
    if (std::isfinite(support_radius_)) return support_radius_;
    if (bound_ <= 0.0) return 0.0;
    switch (kind_) {
        case KernelKind::TruncatedPower:
            return radius_ * std::pow(1.0 / eps, 1.0 / exponent_);
        case KernelKind::Exponential:
            return -std::log(eps) / rate_;
        default:
            return support_radius_;
    }
}

void ResponseFunction::finalize() {
    if (dim_ < 1 || dim_ > 3) throw ConfigError("kernel dimension must be 1, 2 or 3");
    const double dvd = dim_ * unit_ball_volume(dim_);
    switch (kind_) {
        case KernelKind::Indicator:
            bound_ = height_;
            support_radius_ = radius_;
            // a = K * nu_d * R^d
            integral_a_ = height_ * unit_ball_volume(dim_) * std::pow(radius_, dim_);
            break;
        case KernelKind::TruncatedPower: {
            bound_ = height_;
            support_radius_ = kInf;
            // core K*nu_d*R^d plus the power tail K*R^p * d*nu_d * R^{d-p}/(p-d)
            const double core = height_ * unit_ball_volume(dim_) * std::pow(radius_, dim_);
            const double tail = height_ * dvd * std::pow(radius_, dim_) / (exponent_ - dim_);
            integral_a_ = core + tail;
            break;
        }
        case KernelKind::Exponential:
            bound_ = height_;
            support_radius_ = kInf;
            // d*nu_d*K*Gamma(d)/rate^d
            integral_a_ = dvd * height_ * std::tgamma(static_cast<double>(dim_)) / std::pow(rate_, dim_);
            break;
        case KernelKind::Tabulated: {
            bound_ = 0.0;
            for (const auto& [r, v] : knots_) bound_ = std::max(bound_, v);
            support_radius_ = knots_.back().first;
            // exact for linear-in-r segments times r^{d-1} with d <= 3
            double acc = 0.0;
            double lo = 0.0;
            const auto shell = [&](double r) { return eval(r) * std::pow(r, dim_ - 1); };
            for (const auto& [r, v] : knots_) {
                (void)v;
                if (r > lo) acc += integrate(shell, lo, r, 1e-14);
                lo = r;
            }
            integral_a_ = dvd * acc;
            break;
        }
    }
    if (!std::isfinite(integral_a_))
        throw DivergentIntegralError("kernel integral is not finite");
    if (!(integral_a_ > 0.0))
        throw DivergentIntegralError("kernel integral must be positive");
}

std::vector<std::string> ResponseFunction::validate(std::size_t grid_size) const {
    std::vector<std::string> violations;
    const double r_max = std::isfinite(support_radius_) ? 2.0 * support_radius_ : 2.0 * effective_radius();

    // eval() clamps f(0) to zero, so inspect the table itself for a
    // contradicting knot at the origin.
    if (kind_ == KernelKind::Tabulated && knots_.front().first == 0.0 && knots_.front().second != 0.0)
        violations.emplace_back("Assumption0: f(0) must be 0");
    bool negative = false, increasing = false, unbounded = false;
    // geometric grid plus the origin region; geometric spacing concentrates
    // samples where tabulated kernels put their knots
    double prev_r = 0.0, prev_v = eval(0.0);
    const double lo = r_max * 1e-6;
    for (std::size_t i = 0; i <= grid_size; ++i) {
        const double r = lo * std::pow(r_max / lo, static_cast<double>(i) / grid_size);
        const double v = eval(r);
        if (v < 0.0) negative = true;
        if (prev_r > 0.0 && v > prev_v + 1e-12 * std::max(1.0, prev_v)) increasing = true;
        if (v > bound_ + 1e-12 * std::max(1.0, bound_)) unbounded = true;
        prev_r = r;
        prev_v = v;
    }
    if (negative) violations.emplace_back("Assumption0: f must be non-negative");
    if (!(integral_a_ > 0.0) || !std::isfinite(integral_a_))
        violations.emplace_back("Assumption1: integral of f must be positive and finite");
    if (increasing) violations.emplace_back("Assumption2: f must be non-increasing");
    if (unbounded || !std::isfinite(bound_)) violations.emplace_back("Assumption3: f must be bounded by K");
    return violations;
}

} // namespace sbd
