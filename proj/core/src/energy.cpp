#include "marangoni/energy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "marangoni/norms.hpp"
#include "marangoni/operators.hpp"

namespace marangoni {

Dissipation dissipation(const State& s, const PhysicalParams& p) {
    Dissipation d;
    d.grad_u_sq = velocity_grad_norm_sq(s.vel);

    const CellField lap_phi = laplacian_cc(s.phi);
    double sum = 0.0;
    for (int j = 0; j < s.grid.ny; ++j)
        for (int i = 0; i < s.grid.nx; ++i) {
            const double r = lap_phi(i, j) - potential_derivative(s.phi(i, j), p);
            sum += r * r;
        }
    d.phase_residual_sq = sum * s.grid.cell_area();

    const CellField lap_theta = laplacian_cc(s.theta);
    sum = 0.0;
    for (double v : lap_theta.values.raw()) sum += v * v;
    d.lap_theta_sq = sum * s.grid.cell_area();
    return d;
}

EnergyRecord total_energy(const State& s, const PhysicalParams& p, double eta1) {
    const EnergyWeights w = energy_weights(p);
    EnergyRecord rec;
    rec.t = s.t;

    const double u_l2 = l2_norm(s.vel);
    const double phi_h1 = h1_seminorm(s.phi);
    const double theta_h1 = h1_seminorm(s.theta);
    const double theta_l2 = l2_norm(s.theta);

    rec.kinetic = u_l2 * u_l2;
    rec.elastic_grad = p.a * p.lambda0 * phi_h1 * phi_h1;
    rec.elastic_bulk = 2.0 * p.a * p.lambda0 * potential_integral(s.phi, p);
    rec.thermal_grad = w.zeta * theta_h1 * theta_h1;
    rec.thermal_l2 = w.omega * theta_l2 * theta_l2;
    rec.total = rec.kinetic + rec.elastic_grad + rec.elastic_bulk +
                rec.thermal_grad + rec.thermal_l2;

    const Dissipation d = dissipation(s, p);
    rec.diss_visc = 0.5 * p.nu * d.grad_u_sq;
    rec.diss_phase = p.a * p.lambda0 * p.gamma * d.phase_residual_sq;
    rec.diss_heat = p.k * w.zeta * d.lap_theta_sq;

    rec.a1 = d.grad_u_sq + p.a * p.lambda0 * d.phase_residual_sq + eta1 * d.lap_theta_sq;
    rec.a2 = d.grad_u_sq + p.a * p.lambda0 * d.phase_residual_sq + d.lap_theta_sq;

    rec.max_abs_phi = linf_norm(s.phi);
    rec.max_abs_theta = linf_norm(s.theta);
    rec.div_u_inf = linf_norm(divergence_mac(s.vel));
    return rec;
}

double isothermal_residual(const EnergyRecord& r0, const EnergyRecord& r1) {
    const double dt = r1.t - r0.t;
    if (!(dt > 0.0))
        throw std::invalid_argument("isothermal_residual: records not increasing in time");
    auto e_half = [](const EnergyRecord& r) {
        return 0.5 * (r.kinetic + r.elastic_grad + r.elastic_bulk);
    };
    // D in the half-kinetic convention: nu|grad u|^2 = 2*diss_visc and
    // a*lambda0*gamma|lap phi - F'|^2 = diss_phase.
    const double d1 = 2.0 * r1.diss_visc + r1.diss_phase;
    const double defect = (e_half(r1) - e_half(r0)) / dt + d1;
    return std::abs(defect) / std::max(d1, std::numeric_limits<double>::epsilon());
}

DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& y,
                   DecayModel model, double t_burn) {
    if (t.size() != y.size()) throw std::invalid_argument("fit_decay: size mismatch");
    if (t.empty()) throw std::invalid_argument("fit_decay: need at least 10 samples");
    if (t_burn < 0.0) t_burn = t.front() + 0.1 * (t.back() - t.front());

    std::vector<double> x, ly;
    x.reserve(t.size());
    ly.reserve(t.size());
    double t_start = 0.0, t_end = 0.0;
    for (std::size_t n = 0; n < t.size(); ++n) {
        if (t[n] < t_burn) continue;
        if (!(y[n] > 0.0))
            throw std::invalid_argument("fit_decay: non-positive sample in window");
        if (x.empty()) t_start = t[n];
        t_end = t[n];
        x.push_back(model == DecayModel::Exponential ? t[n] : std::log1p(t[n]));
        ly.push_back(std::log(y[n]));
    }
    if (x.size() < 10)
        throw std::invalid_argument("fit_decay: need at least 10 samples");

    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t m = 0; m < x.size(); ++m) {
        sx += x[m];
        sy += ly[m];
        sxx += x[m] * x[m];
        sxy += x[m] * ly[m];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_decay: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double ss_res = 0.0, ss_tot = 0.0;
    const double mean_y = sy / n;
    for (std::size_t m = 0; m < x.size(); ++m) {
        const double fit = intercept + slope * x[m];
        ss_res += (ly[m] - fit) * (ly[m] - fit);
        ss_tot += (ly[m] - mean_y) * (ly[m] - mean_y);
    }

    DecayFit out;
    out.rate = -slope;
    out.log_c = intercept;
    out.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    out.n_samples = static_cast<int>(x.size());
    out.t_start = t_start;
    out.t_end = t_end;
    return out;
}

} // namespace marangoni
