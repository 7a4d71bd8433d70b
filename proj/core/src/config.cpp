#include "marangoni/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace marangoni {

std::string to_string(RunMode m) {
    switch (m) {
        case RunMode::Full: return "full";
        case RunMode::Isothermal: return "isothermal";
        case RunMode::HeatOnly: return "heat_only";
        case RunMode::PhaseOnly: return "phase_only";
    }
    return "full";
}

std::string to_string(InitPreset p) {
    switch (p) {
        case InitPreset::Flat: return "flat";
        case InitPreset::Bubble: return "bubble";
        case InitPreset::Stratified: return "stratified";
        case InitPreset::EigenmodeTheta: return "eigenmode-theta";
        case InitPreset::Random: return "random";
    }
    return "flat";
}

RunMode parse_run_mode(const std::string& s) {
    if (s == "full") return RunMode::Full;
    if (s == "isothermal") return RunMode::Isothermal;
    if (s == "heat_only") return RunMode::HeatOnly;
    if (s == "phase_only") return RunMode::PhaseOnly;
    throw ConfigError("unknown mode '" + s +
                      "' (expected full, isothermal, heat_only or phase_only)");
}

InitPreset parse_init_preset(const std::string& s) {
    if (s == "flat") return InitPreset::Flat;
    if (s == "bubble") return InitPreset::Bubble;
    if (s == "stratified") return InitPreset::Stratified;
    if (s == "eigenmode-theta") return InitPreset::EigenmodeTheta;
    if (s == "random") return InitPreset::Random;
    throw ConfigError("unknown ic '" + s +
                      "' (expected flat, bubble, stratified, eigenmode-theta or random)");
}

PhysicalParams RunConfig::physics() const {
    PhysicalParams p;
    p.nu = nu;
    p.gamma = gamma;
    p.k = k;
    p.lambda0 = lambda0;
    p.a = a;
    p.b = b;
    p.alpha = alpha;
    p.g = g;
    p.eps = eps;
    p.c1_estimate = c1_estimate;
    p.omega_weight = omega_weight;
    if (mode == RunMode::Isothermal) {
        p.b = 0.0;
        p.alpha = 0.0;
    }
    return p;
}

void RunConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (nx < 2) fail("nx must be at least 2");
    if (ny < 2) fail("ny must be at least 2");
    if (!(lx > 0.0)) fail("lx must be positive");
    if (!(ly > 0.0)) fail("ly must be positive");
    if (!(dt > 0.0)) fail("dt must be positive");
    if (!(t_end >= 0.0)) fail("t_end must be nonnegative");
    try {
        physics().validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    if (!(stab >= 0.0)) fail("stab must be nonnegative");
    if (!(eta1 > 0.0)) fail("eta1 must be positive");
    if (!(helmholtz_tol > 0.0)) fail("helmholtz_tol must be positive");
    if (!(poisson_tol > 0.0)) fail("poisson_tol must be positive");
    if (!(newton_tol > 0.0)) fail("newton_tol must be positive");
    if (max_cg_iter < 0) fail("max_cg_iter must be nonnegative");
    if (!(bubble_radius > 0.0)) fail("bubble_radius must be positive");
    if (!(phi_amplitude >= 0.0 && phi_amplitude <= 1.0))
        fail("phi_amplitude must lie in [0, 1]");
    if (!(theta_amplitude >= 0.0)) fail("theta_amplitude must be nonnegative");
    if (!(vel_amplitude >= 0.0)) fail("vel_amplitude must be nonnegative");
    if (random_modes < 1) fail("random_modes must be at least 1");
    if (trace_every < 1) fail("trace_every must be at least 1");
    if (snapshot_every < 0) fail("snapshot_every must be nonnegative");
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("value of '" + key + "' is not a number: '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("value of '" + key + "' is not an integer: '" + v + "'");
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;

    using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;
    auto dbl = [](double RunConfig::* field) {
        return Setter([field](RunConfig& c, const std::string& k, const std::string& v) {
            c.*field = parse_double(k, v);
        });
    };
    auto integer = [](int RunConfig::* field) {
        return Setter([field](RunConfig& c, const std::string& k, const std::string& v) {
            c.*field = static_cast<int>(parse_int(k, v));
        });
    };

    const std::map<std::string, Setter> setters = {
        {"nx", integer(&RunConfig::nx)},
        {"ny", integer(&RunConfig::ny)},
        {"lx", dbl(&RunConfig::lx)},
        {"ly", dbl(&RunConfig::ly)},
        {"dt", dbl(&RunConfig::dt)},
        {"t_end", dbl(&RunConfig::t_end)},
        {"nu", dbl(&RunConfig::nu)},
        {"gamma", dbl(&RunConfig::gamma)},
        {"k", dbl(&RunConfig::k)},
        {"lambda0", dbl(&RunConfig::lambda0)},
        {"a", dbl(&RunConfig::a)},
        {"b", dbl(&RunConfig::b)},
        {"alpha", dbl(&RunConfig::alpha)},
        {"g", dbl(&RunConfig::g)},
        {"eps", dbl(&RunConfig::eps)},
        {"c1_estimate", dbl(&RunConfig::c1_estimate)},
        {"omega_weight", dbl(&RunConfig::omega_weight)},
        {"stab", dbl(&RunConfig::stab)},
        {"eta1", dbl(&RunConfig::eta1)},
        {"helmholtz_tol", dbl(&RunConfig::helmholtz_tol)},
        {"poisson_tol", dbl(&RunConfig::poisson_tol)},
        {"newton_tol", dbl(&RunConfig::newton_tol)},
        {"max_cg_iter", integer(&RunConfig::max_cg_iter)},
        {"mode", Setter([](RunConfig& c, const std::string&, const std::string& v) {
             c.mode = parse_run_mode(v);
         })},
        {"ic", Setter([](RunConfig& c, const std::string&, const std::string& v) {
             c.ic = parse_init_preset(v);
         })},
        {"seed", Setter([](RunConfig& c, const std::string& k, const std::string& v) {
             const long long s = parse_int(k, v);
             if (s < 0) throw ConfigError("seed must be nonnegative");
             c.seed = static_cast<std::uint64_t>(s);
         })},
        {"bubble_radius", dbl(&RunConfig::bubble_radius)},
        {"bubble_cx", dbl(&RunConfig::bubble_cx)},
        {"bubble_cy", dbl(&RunConfig::bubble_cy)},
        {"phi_amplitude", dbl(&RunConfig::phi_amplitude)},
        {"theta_amplitude", dbl(&RunConfig::theta_amplitude)},
        {"vel_amplitude", dbl(&RunConfig::vel_amplitude)},
        {"random_modes", integer(&RunConfig::random_modes)},
        {"trace_path", Setter([](RunConfig& c, const std::string&, const std::string& v) {
             c.trace_path = v;
         })},
        {"trace_every", integer(&RunConfig::trace_every)},
        {"snapshot_dir", Setter([](RunConfig& c, const std::string&, const std::string& v) {
             c.snapshot_dir = v;
         })},
        {"snapshot_every", integer(&RunConfig::snapshot_every)},
    };

    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError("unknown key '" + key + "' at line " + std::to_string(lineno));
        if (!seen.insert(key).second)
            throw ConfigError("duplicate key '" + key + "' at line " + std::to_string(lineno));
        it->second(cfg, key, value);
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "nx = " << cfg.nx << "\n";
    out << "ny = " << cfg.ny << "\n";
    out << "lx = " << format_double(cfg.lx) << "\n";
    out << "ly = " << format_double(cfg.ly) << "\n";
    out << "dt = " << format_double(cfg.dt) << "\n";
    out << "t_end = " << format_double(cfg.t_end) << "\n";
    out << "nu = " << format_double(cfg.nu) << "\n";
    out << "gamma = " << format_double(cfg.gamma) << "\n";
    out << "k = " << format_double(cfg.k) << "\n";
    out << "lambda0 = " << format_double(cfg.lambda0) << "\n";
    out << "a = " << format_double(cfg.a) << "\n";
    out << "b = " << format_double(cfg.b) << "\n";
    out << "alpha = " << format_double(cfg.alpha) << "\n";
    out << "g = " << format_double(cfg.g) << "\n";
    out << "eps = " << format_double(cfg.eps) << "\n";
    out << "c1_estimate = " << format_double(cfg.c1_estimate) << "\n";
    out << "omega_weight = " << format_double(cfg.omega_weight) << "\n";
    out << "stab = " << format_double(cfg.stab) << "\n";
    out << "eta1 = " << format_double(cfg.eta1) << "\n";
    out << "helmholtz_tol = " << format_double(cfg.helmholtz_tol) << "\n";
    out << "poisson_tol = " << format_double(cfg.poisson_tol) << "\n";
    out << "newton_tol = " << format_double(cfg.newton_tol) << "\n";
    out << "max_cg_iter = " << cfg.max_cg_iter << "\n";
    out << "mode = " << to_string(cfg.mode) << "\n";
    out << "ic = " << to_string(cfg.ic) << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "bubble_radius = " << format_double(cfg.bubble_radius) << "\n";
    out << "bubble_cx = " << format_double(cfg.bubble_cx) << "\n";
    out << "bubble_cy = " << format_double(cfg.bubble_cy) << "\n";
    out << "phi_amplitude = " << format_double(cfg.phi_amplitude) << "\n";
    out << "theta_amplitude = " << format_double(cfg.theta_amplitude) << "\n";
    out << "vel_amplitude = " << format_double(cfg.vel_amplitude) << "\n";
    out << "random_modes = " << cfg.random_modes << "\n";
    out << "trace_path = " << cfg.trace_path << "\n";
    out << "trace_every = " << cfg.trace_every << "\n";
    out << "snapshot_dir = " << cfg.snapshot_dir << "\n";
    out << "snapshot_every = " << cfg.snapshot_every << "\n";
    return out.str();
}

} // namespace marangoni
