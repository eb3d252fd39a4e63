#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sbd/geometry.hpp"

namespace sbd {

enum class KernelKind { Indicator, TruncatedPower, Exponential, Tabulated };

std::string to_string(KernelKind k);

// Distance-to-killing-rate kernel f together with the derived scalars the
// engines and estimators need: the bound K, the support radius, and the
// space integral a = int f(|x|) dx over dimension d.
//
// Required properties: f(0) = 0, f >= 0, f non-increasing on (0,inf),
// f <= K, and 0 < a < inf. Construction computes the integral eagerly and
// rejects kernels whose integral diverges; the remaining properties are
// checked by validate() on a sampled grid.
class ResponseFunction {
public:
    static ResponseFunction indicator(double height, double radius, int dim);
    // height for r <= radius, then height*(radius/r)^exponent; needs exponent > dim.
    static ResponseFunction truncated_power(double height, double radius, double exponent, int dim);
    // height * exp(-rate * r).
    static ResponseFunction exponential(double height, double rate, int dim);
    // Piecewise-linear interpolation of (r, f) knots, zero beyond the last knot.
    static ResponseFunction tabulated(std::vector<std::pair<double, double>> knots, int dim);
    static ResponseFunction tabulated_from_csv(const std::string& path, int dim);

    [[nodiscard]] double eval(double r) const;
    [[nodiscard]] double integral() const { return integral_a_; }
    [[nodiscard]] double bound() const { return bound_; }
    [[nodiscard]] double support_radius() const { return support_radius_; }
    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] KernelKind kind() const { return kind_; }

    // Radius beyond which f < eps * K; equals support_radius when finite.
    [[nodiscard]] double effective_radius(double eps = 1e-12) const;

    // Empty when all kernel assumptions hold; each entry names the failed
    // assumption. Monotonicity and bound are sampled on a geometric grid of
    // grid_size radii (no symbolic check is possible for tabulated kernels).
    [[nodiscard]] std::vector<std::string> validate(std::size_t grid_size = 20000) const;

private:
    ResponseFunction() = default;
    void finalize();

    KernelKind kind_ = KernelKind::Indicator;
    int dim_ = 2;
    double height_ = 1.0;
    double radius_ = 1.0;
    double exponent_ = 0.0;
    double rate_ = 1.0;
    std::vector<std::pair<double, double>> knots_;

    double bound_ = 1.0;
    double support_radius_ = 1.0;
    double integral_a_ = 0.0;
};

} // namespace sbd
