#include "marangoni/equilibrium.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "marangoni/norms.hpp"
#include "marangoni/operators.hpp"
#include "marangoni/scalar_steps.hpp"

namespace marangoni {

namespace {

double residual_l2(const CellField& phi, const PhysicalParams& p) {
    const CellField lap = laplacian_cc(phi);
    double s = 0.0;
    for (int j = 0; j < phi.grid.ny; ++j)
        for (int i = 0; i < phi.grid.nx; ++i) {
            const double r = -lap(i, j) + potential_derivative(phi(i, j), p);
            s += r * r;
        }
    return std::sqrt(s * phi.grid.cell_area());
}

} // namespace

double mixing_energy(const CellField& phi, const PhysicalParams& p) {
    const double h1 = h1_seminorm(phi);
    return 0.5 * h1 * h1 + potential_integral(phi, p);
}

EquilibriumSolution solve_stationary(const CellField& phi_init, const PhysicalParams& p,
                                     double tol, int max_iter) {
    const Grid& g = phi_init.grid;
    const int nx = g.nx, ny = g.ny;
    const int n = nx * ny;
    const double idx2 = 1.0 / (g.dx() * g.dx());
    const double idy2 = 1.0 / (g.dy() * g.dy());

    EquilibriumSolution sol;
    sol.phi = phi_init;

    // Residual R(phi) = -lap phi + F'(phi) as a flat vector.
    auto eval_residual = [&](const CellField& phi, Eigen::VectorXd& r) {
        const CellField lap = laplacian_cc(phi);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                r[j * nx + i] = -lap(i, j) + potential_derivative(phi(i, j), p);
    };

    Eigen::VectorXd r(n);
    eval_residual(sol.phi, r);
    const double area = g.cell_area();
    double rnorm = std::sqrt(r.squaredNorm() * area);

    // The Jacobian -lap + diag(F'') can be indefinite away from minima, so
    // the Newton direction comes from a sparse LU, not CG.
    Eigen::SparseMatrix<double> jac(n, n);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(5) * n);

    for (int it = 0; it < max_iter && rnorm > tol; ++it) {
        trip.clear();
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const int row = j * nx + i;
                // Dirichlet ghosts reflect: each wall side adds idx2 (resp.
                // idy2) to the diagonal instead of an off-diagonal entry.
                double diag = 2.0 * idx2 + 2.0 * idy2 +
                              potential_second_derivative(sol.phi(i, j), p);
                if (i > 0) trip.emplace_back(row, row - 1, -idx2); else diag += idx2;
                if (i < nx - 1) trip.emplace_back(row, row + 1, -idx2); else diag += idx2;
                if (j > 0) trip.emplace_back(row, row - nx, -idy2); else diag += idy2;
                if (j < ny - 1) trip.emplace_back(row, row + nx, -idy2); else diag += idy2;
                trip.emplace_back(row, row, diag);
            }
        jac.setFromTriplets(trip.begin(), trip.end());

        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(jac);
        if (lu.info() != Eigen::Success) {
            sol.message = "singular Jacobian; try gradient_flow_oracle";
            break;
        }
        Eigen::VectorXd delta = lu.solve(-r);

        // Backtracking on |R|: accept the first step that reduces the norm.
        double step = 1.0;
        CellField trial = sol.phi;
        double trial_norm = rnorm;
        Eigen::VectorXd r_trial(n);
        bool accepted = false;
        for (int back = 0; back < 50; ++back) {
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < nx; ++i)
                    trial(i, j) = sol.phi(i, j) + step * delta[j * nx + i];
            eval_residual(trial, r_trial);
            trial_norm = std::sqrt(r_trial.squaredNorm() * area);
            if (trial_norm < rnorm) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            sol.message = "line search stagnated; try gradient_flow_oracle";
            break;
        }

        sol.phi = trial;
        r = r_trial;
        rnorm = trial_norm;
        sol.iterations = it + 1;
    }

    sol.residual_l2 = rnorm;
    sol.converged = rnorm <= tol;
    return sol;
}

EquilibriumSolution gradient_flow_oracle(const CellField& phi_init, const PhysicalParams& p,
                                         double tol, double dt, long max_steps) {
    if (dt <= 0.0) dt = p.eps * p.eps / (2.0 * p.gamma);

    ScalarStepConfig cfg;
    cfg.dt = dt;
    cfg.stab = 2.0;
    cfg.helmholtz_tol = 1e-12;

    MacVelocity still(phi_init.grid);
    EquilibriumSolution sol;
    sol.phi = phi_init;
    sol.method = SolutionMethod::GradientFlow;

    double energy = mixing_energy(sol.phi, p);
    const double energy_slack = 1e-12 * std::max(1.0, energy);

    for (long step = 0; step < max_steps; ++step) {
        auto [next, report] = phase_step(sol.phi, still, p, cfg);
        if (!report.converged) throw SolverFailure("gradient_flow", report);

        double diff = 0.0;
        for (std::size_t m = 0; m < next.values.raw().size(); ++m) {
            const double d = next.values.raw()[m] - sol.phi.values.raw()[m];
            diff += d * d;
        }
        diff = std::sqrt(diff * phi_init.grid.cell_area()) / dt;

        const double energy_next = mixing_energy(next, p);
        if (energy_next > energy + energy_slack)
            throw std::runtime_error("gradient_flow_oracle: discrete energy increased");
        energy = energy_next;
        sol.phi = std::move(next);
        sol.iterations = static_cast<int>(step + 1);

        if (diff <= tol) {
            sol.converged = true;
            break;
        }
    }

    sol.residual_l2 = residual_l2(sol.phi, p);
    return sol;
}

double smallest_hessian_eigenvalue(const CellField& phi, const PhysicalParams& p,
                                   int iterations) {
    const Grid& g = phi.grid;
    const double idx2 = 1.0 / (g.dx() * g.dx());
    const double idy2 = 1.0 / (g.dy() * g.dy());

    // Gershgorin bound of H = -lap + F''(phi): row sums never exceed
    // 4/dx^2 + 4/dy^2 + max F''. Power-iterate on shift*I - H, whose top
    // eigenvalue is shift - lambda_min(H).
    double fpp_max = 0.0;
    for (double v : phi.values.raw())
        fpp_max = std::max(fpp_max, potential_second_derivative(v, p));
    const double shift = 4.0 * idx2 + 4.0 * idy2 + fpp_max;

    CellField x(g, DirichletBC{0.0});
    // deterministic non-symmetric start so no eigenvector is missed by parity
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            x(i, j) = 1.0 + 0.3 * std::sin(1.0 + 2.0 * i + 3.0 * j);

    double top = shift;
    for (int it = 0; it < iterations; ++it) {
        const CellField lap = laplacian_cc(x);
        CellField y(g, DirichletBC{0.0});
        double norm = 0.0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double hx =
                    -lap(i, j) + potential_second_derivative(phi(i, j), p) * x(i, j);
                y(i, j) = shift * x(i, j) - hx;
                norm += y(i, j) * y(i, j);
            }
        norm = std::sqrt(norm);
        if (norm == 0.0) return shift; // H x = shift x for every iterate
        double dot = 0.0, xx = 0.0;
        for (std::size_t m = 0; m < x.values.raw().size(); ++m) {
            dot += y.values.raw()[m] * x.values.raw()[m];
            xx += x.values.raw()[m] * x.values.raw()[m];
        }
        top = dot / xx; // Rayleigh quotient of shift*I - H
        for (std::size_t m = 0; m < x.values.raw().size(); ++m)
            x.values.raw()[m] = y.values.raw()[m] / norm;
    }
    return shift - top;
}

SteadyStateDistance steady_state_distance(const State& s, const CellField& phi_inf,
                                          const PhysicalParams& p) {
    (void)p;
    if (!(s.grid == phi_inf.grid))
        throw std::invalid_argument("steady_state_distance: grid mismatch");

    SteadyStateDistance d;
    d.du = l2_norm(s.vel) + std::sqrt(velocity_grad_norm_sq(s.vel));

    CellField e(s.grid, DirichletBC{s.phi.bc.value - phi_inf.bc.value});
    for (std::size_t m = 0; m < e.values.raw().size(); ++m)
        e.values.raw()[m] = s.phi.values.raw()[m] - phi_inf.values.raw()[m];
    d.dphi = l2_norm(e) + h1_seminorm(e) + l2_norm(laplacian_cc(e));

    d.dtheta = l2_norm(s.theta) + l2_norm(laplacian_cc(s.theta));
    return d;
}

} // namespace marangoni
