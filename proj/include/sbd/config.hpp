#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sbd/geometry.hpp"
#include "sbd/response.hpp"

namespace sbd {

enum class EngineChoice { Sheriff, Jump };

struct KernelConfig {
    KernelKind kind = KernelKind::Indicator;
    double height = 1.0;   // K
    double radius = 1.0;   // R
    double rate = 1.0;     // exponential decay rate
    double exponent = 4.0; // truncated-power tail exponent
    std::string csv_path;  // tabulated knots

    [[nodiscard]] ResponseFunction build(int dim) const;
};

struct Z0Config {
    enum class Source { None, Poisson, Csv };
    Source source = Source::None;
    double beta = 0.0;
    std::string path;
};

struct BurnInConfig {
    double window_lifetimes = 20.0; // sliding-window length in mean lifetimes
    double max_time = 2000.0;       // give up beyond this simulated time
    std::size_t snapshots = 200;    // retained stationary frames
    double spacing_lifetimes = 1.0; // spacing between retained frames
};

// One experiment description: window, kernel, dynamics, replication, and the
// experiment-specific blocks. (config, seed) fully determines every output.
struct RunConfig {
    Window window{2, 10.0, Topology::Torus};
    KernelConfig kernel;
    double lambda = 1.0;
    double t0 = 0.0;
    double t1 = 20.0;
    uint64_t seed = 1;
    std::size_t replicates = 8;
    EngineChoice engine = EngineChoice::Sheriff;
    std::vector<double> snapshot_times;
    std::string out_dir = "out";
    Z0Config z0;
    double subwindow_side = 0.0; // 0 = default L/4
    BurnInConfig burnin;

    [[nodiscard]] ResponseFunction build_kernel() const { return kernel.build(window.dim); }
    [[nodiscard]] double central_side() const {
        return subwindow_side > 0.0 ? subwindow_side : window.side / 4.0;
    }
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// "lo:step:hi" or a comma-separated list.
std::vector<double> parse_grid_spec(const std::string& spec);

} // namespace sbd
