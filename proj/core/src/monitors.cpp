#include "marangoni/monitors.hpp"

#include <cmath>
#include <limits>

#include "marangoni/norms.hpp"
#include "marangoni/operators.hpp"

namespace marangoni {

double cfl_number(const MacVelocity& w, double dt) {
    const ComponentMax m = component_max(w);
    return dt * (m.u / w.grid.dx() + m.v / w.grid.dy());
}

namespace {

bool finite_array(const Array2D& a) {
    for (double v : a.raw())
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace

MonitorReport check_state(const State& s, const PhysicalParams& p,
                          const RunBaseline& baseline, const MonitorTolerances& tol) {
    MonitorReport rep;
    rep.max_abs_phi = linf_norm(s.phi);
    rep.max_abs_theta = linf_norm(s.theta);
    rep.div_u_inf = linf_norm(divergence_mac(s.vel));
    rep.cfl = tol.dt > 0.0 ? cfl_number(s.vel, tol.dt) : 0.0;

    double lam_min = std::numeric_limits<double>::infinity();
    for (double th : s.theta.values.raw())
        lam_min = std::min(lam_min, surface_tension(th, p));
    rep.lambda_min = lam_min;

    rep.smallness_ok = baseline.theta0_linf <= smallness_threshold(p);

    const struct {
        const char* name;
        const Array2D* a;
    } fields[] = {{"u", &s.vel.u}, {"v", &s.vel.v}, {"pressure", &s.pressure.values},
                  {"phi", &s.phi.values}, {"theta", &s.theta.values}};
    for (const auto& f : fields) {
        if (!finite_array(*f.a)) {
            rep.all_finite = false;
            rep.violations.push_back({std::string("non_finite:") + f.name,
                                      std::numeric_limits<double>::quiet_NaN(), 0.0});
        }
    }

    auto check_upper = [&rep](const char* name, double value, double threshold) {
        if (!(value <= threshold)) rep.violations.push_back({name, value, threshold});
    };
    check_upper("phi_max", rep.max_abs_phi, 1.0 + tol.phi_overshoot);
    check_upper("theta_max", rep.max_abs_theta,
                baseline.theta0_linf + 10.0 * tol.helmholtz_tol);
    check_upper("divergence", rep.div_u_inf, 10.0 * tol.poisson_tol);
    if (tol.dt > 0.0) check_upper("cfl", rep.cfl, 1.0);
    if (!(rep.lambda_min > 0.0))
        rep.violations.push_back({"lambda_min", rep.lambda_min, 0.0});

    return rep;
}

} // namespace marangoni
