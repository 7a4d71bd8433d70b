#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "marangoni/fields.hpp"
#include "marangoni/linear_solvers.hpp"
#include "marangoni/model.hpp"

namespace marangoni {

/// Settings shared by the scalar time steps.
struct ScalarStepConfig {
    double dt = 1e-4;
    double stab = 2.0;          // stabilization weight S; S >= 2 keeps the
                                // explicit double-well force contractive on [-1,1]
    double helmholtz_tol = 1e-10;
    int max_iter = 0;           // 0: 10*max(nx,ny)
};

/// Thrown when an inner linear solve fails to converge; `stage` names the
/// offending sub-step of the coupled update.
class SolverFailure : public std::runtime_error {
public:
    SolverFailure(std::string stage_, PoissonSolveReport report_)
        : std::runtime_error("linear solver failed to converge in stage '" + stage_ + "'"),
          stage(std::move(stage_)),
          report(report_) {}
    std::string stage;
    PoissonSolveReport report;
};

/// One advection-diffusion step for the temperature:
///   (I - k dt lap) theta^{n+1} = theta^n - dt (w . grad theta^n) + dt source.
/// Explicit first-order upwind advection, implicit diffusion; under CFL <= 1
/// the update is an linf contraction up to the linear-solve tolerance.
std::pair<CellField, PoissonSolveReport> heat_step(
    const CellField& theta, const MacVelocity& w, const PhysicalParams& p,
    const ScalarStepConfig& cfg, const CellField* source = nullptr);

/// One stabilized semi-implicit step of the convected phase equation:
///   (I + gamma dt S/eps^2 - gamma dt lap) phi^{n+1}
///     = phi^n + dt [ -(w . grad phi^n) - gamma F'(phi^n)
///                    + gamma (S/eps^2) phi^n + source ].
/// The shifted double well keeps the explicit force non-expansive, so the
/// update cannot leave [-1,1] by more than O(dt) for admissible data.
std::pair<CellField, PoissonSolveReport> phase_step(
    const CellField& phi, const MacVelocity& w, const PhysicalParams& p,
    const ScalarStepConfig& cfg, const CellField* source = nullptr);

/// Optional manufactured forcings for convergence studies.
struct StepSources {
    const CellField* heat = nullptr;
    const CellField* phase = nullptr;
    const MacField* momentum = nullptr;
};

/// Linear-solve reports of the five sub-solves of one coupled step.
struct StepReports {
    PoissonSolveReport heat;
    PoissonSolveReport phase;
    PoissonSolveReport momentum_u;
    PoissonSolveReport momentum_v;
    PoissonSolveReport pressure;
};

/// Advances the full coupled system by one step in the order
/// temperature -> phase -> momentum -> projection, with capillary and
/// buoyancy forces assembled from the updated scalars.
/// Throws SolverFailure naming the stage when an inner solve does not
/// converge.
State coupled_step(const State& s, const PhysicalParams& p,
                   const ScalarStepConfig& cfg, double poisson_tol,
                   StepReports* reports = nullptr,
                   const StepSources* sources = nullptr);

} // namespace marangoni
