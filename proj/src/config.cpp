#include "sbd/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sbd/errors.hpp"

namespace sbd {

ResponseFunction KernelConfig::build(int dim) const {
    switch (kind) {
        case KernelKind::Indicator: return ResponseFunction::indicator(height, radius, dim);
        case KernelKind::TruncatedPower:
            return ResponseFunction::truncated_power(height, radius, exponent, dim);
        case KernelKind::Exponential: return ResponseFunction::exponential(height, rate, dim);
        case KernelKind::Tabulated: return ResponseFunction::tabulated_from_csv(csv_path, dim);
    }
    throw ConfigError("unknown kernel kind");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse number '" + v + "'");
    }
}

uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const uint64_t x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse integer '" + v + "'");
    }
}

} // namespace

std::vector<double> parse_grid_spec(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        std::istringstream ss(spec);
        std::string lo_s, step_s, hi_s;
        if (!std::getline(ss, lo_s, ':') || !std::getline(ss, step_s, ':') ||
            !std::getline(ss, hi_s))
            throw ConfigError("grid spec must be lo:step:hi");
        const double lo = to_double("grid", trim(lo_s));
        const double step = to_double("grid", trim(step_s));
        const double hi = to_double("grid", trim(hi_s));
        if (!(step > 0.0) || hi < lo) throw ConfigError("grid spec must have step > 0 and hi >= lo");
        const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
        for (std::size_t i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
        return out;
    }
    std::istringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double("grid", item));
    }
    if (out.empty()) throw ConfigError("empty grid spec");
    if (!std::is_sorted(out.begin(), out.end())) throw ConfigError("grid values must increase");
    return out;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, std::string> kv;
    std::string section;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string full = section.empty() ? key : section + "." + key;
        if (kv.count(full)) throw ConfigError("duplicate key '" + full + "'");
        kv[full] = value;
    }

    std::set<std::string> seen;
    const auto take = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        seen.insert(key);
        return it->second;
    };

    if (const auto v = take("window.dim")) cfg.window.dim = static_cast<int>(to_u64("window.dim", *v));
    if (const auto v = take("window.side")) cfg.window.side = to_double("window.side", *v);
    if (const auto v = take("window.topology")) {
        if (*v == "torus") cfg.window.topology = Topology::Torus;
        else if (*v == "plain") cfg.window.topology = Topology::Plain;
        else throw ConfigError("window.topology must be torus or plain");
    }
    cfg.window = Window(cfg.window.dim, cfg.window.side, cfg.window.topology); // re-validate

    if (const auto v = take("kernel.kind")) {
        if (*v == "indicator") cfg.kernel.kind = KernelKind::Indicator;
        else if (*v == "truncated-power") cfg.kernel.kind = KernelKind::TruncatedPower;
        else if (*v == "exponential") cfg.kernel.kind = KernelKind::Exponential;
        else if (*v == "tabulated") cfg.kernel.kind = KernelKind::Tabulated;
        else throw ConfigError("kernel.kind must be indicator, truncated-power, exponential or tabulated");
    }
    if (const auto v = take("kernel.K")) cfg.kernel.height = to_double("kernel.K", *v);
    if (const auto v = take("kernel.R")) cfg.kernel.radius = to_double("kernel.R", *v);
    if (const auto v = take("kernel.rate")) cfg.kernel.rate = to_double("kernel.rate", *v);
    if (const auto v = take("kernel.exponent")) cfg.kernel.exponent = to_double("kernel.exponent", *v);
    if (const auto v = take("kernel.csv")) cfg.kernel.csv_path = *v;
    if (const auto v = take("kernel.d")) {
        if (static_cast<int>(to_u64("kernel.d", *v)) != cfg.window.dim)
            throw ConfigError("kernel.d must match window.dim");
    }

    if (const auto v = take("run.lambda")) cfg.lambda = to_double("run.lambda", *v);
    if (const auto v = take("run.t0")) cfg.t0 = to_double("run.t0", *v);
    if (const auto v = take("run.t1")) cfg.t1 = to_double("run.t1", *v);
    if (const auto v = take("run.seed")) cfg.seed = to_u64("run.seed", *v);
    if (const auto v = take("run.replicates"))
        cfg.replicates = static_cast<std::size_t>(to_u64("run.replicates", *v));
    if (const auto v = take("run.engine")) {
        if (*v == "sheriff") cfg.engine = EngineChoice::Sheriff;
        else if (*v == "jump") cfg.engine = EngineChoice::Jump;
        else throw ConfigError("run.engine must be sheriff or jump");
    }
    if (const auto v = take("run.snapshots")) cfg.snapshot_times = parse_grid_spec(*v);
    if (const auto v = take("run.out")) cfg.out_dir = *v;

    if (const auto v = take("z0.source")) {
        if (*v == "none") cfg.z0.source = Z0Config::Source::None;
        else if (*v == "poisson") cfg.z0.source = Z0Config::Source::Poisson;
        else if (*v == "csv") cfg.z0.source = Z0Config::Source::Csv;
        else throw ConfigError("z0.source must be none, poisson or csv");
    }
    if (const auto v = take("z0.beta")) cfg.z0.beta = to_double("z0.beta", *v);
    if (const auto v = take("z0.path")) cfg.z0.path = *v;

    if (const auto v = take("subwindow.side")) cfg.subwindow_side = to_double("subwindow.side", *v);

    if (const auto v = take("burnin.window_lifetimes"))
        cfg.burnin.window_lifetimes = to_double("burnin.window_lifetimes", *v);
    if (const auto v = take("burnin.max_time")) cfg.burnin.max_time = to_double("burnin.max_time", *v);
    if (const auto v = take("burnin.snapshots"))
        cfg.burnin.snapshots = static_cast<std::size_t>(to_u64("burnin.snapshots", *v));
    if (const auto v = take("burnin.spacing_lifetimes"))
        cfg.burnin.spacing_lifetimes = to_double("burnin.spacing_lifetimes", *v);

    for (const auto& [key, value] : kv) {
        (void)value;
        if (!seen.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }

    if (!(cfg.t0 < cfg.t1)) throw ConfigError("run.t0 must precede run.t1");
    if (cfg.lambda < 0.0) throw ConfigError("run.lambda must be non-negative");
    if (cfg.snapshot_times.empty()) {
        const double step = (cfg.t1 - cfg.t0) / 40.0;
        for (int i = 0; i <= 40; ++i) cfg.snapshot_times.push_back(cfg.t0 + i * step);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace sbd
