/// Micro-benchmarks of the per-step kernels: stencil operators, implicit
/// solves, the capillary force assembly, and the full coupled step.

#include <benchmark/benchmark.h>

#include "marangoni/energy.hpp"
#include "marangoni/flow.hpp"
#include "marangoni/linear_solvers.hpp"
#include "marangoni/operators.hpp"
#include "marangoni/random_fields.hpp"
#include "marangoni/scalar_steps.hpp"

namespace {

using namespace marangoni;

State representative_state(const Grid& g) {
    State s(g);
    const double w = std::sqrt(2.0) * 0.1;
    s.phi.sample([&](double x, double y) {
        const double r = std::hypot(x - 0.5, y - 0.5);
        return std::tanh((0.25 - r) / w);
    });
    const Array2D noise = smooth_random_cells(g, 7, 4);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) s.theta(i, j) = 0.2 * noise(i, j);
    s.vel = random_solenoidal_velocity(g, 8, 4, 0.2);
    return s;
}

PhysicalParams bench_params() {
    PhysicalParams p;
    p.eps = 0.1;
    return p;
}

void BM_LaplacianCC(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1.0, 1.0);
    const State s = representative_state(g);
    for (auto _ : state) {
        const CellField lap = laplacian_cc(s.phi);
        benchmark::DoNotOptimize(lap.values.raw().data());
    }
}
BENCHMARK(BM_LaplacianCC)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_UpwindAdvection(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1.0, 1.0);
    const State s = representative_state(g);
    for (auto _ : state) {
        const CellField adv = advect_upwind(s.vel, s.phi);
        benchmark::DoNotOptimize(adv.values.raw().data());
    }
}
BENCHMARK(BM_UpwindAdvection)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_CapillaryForce(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1.0, 1.0);
    const State s = representative_state(g);
    const PhysicalParams p = bench_params();
    for (auto _ : state) {
        const ForceField f = capillary_force(s.phi, s.theta, p);
        benchmark::DoNotOptimize(f.u.raw().data());
    }
}
BENCHMARK(BM_CapillaryForce)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_HelmholtzSolveCC(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1.0, 1.0);
    const Array2D rhs = smooth_random_cells(g, 11, 4);
    for (auto _ : state) {
        auto [x, rep] = solve_helmholtz_cc(1.0, 1e-3, rhs, DirichletBC{0.0}, g, 1e-10);
        benchmark::DoNotOptimize(x.values.raw().data());
        benchmark::DoNotOptimize(rep.iterations);
    }
}
BENCHMARK(BM_HelmholtzSolveCC)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_PoissonNeumann(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1.0, 1.0);
    const State s = representative_state(g);
    const CellField div = divergence_mac(s.vel);
    for (auto _ : state) {
        auto [x, rep] = solve_poisson_neumann(div.values, g, 1e-10);
        benchmark::DoNotOptimize(x.values.raw().data());
        benchmark::DoNotOptimize(rep.iterations);
    }
}
BENCHMARK(BM_PoissonNeumann)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_HeatStep(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1.0, 1.0);
    const State s = representative_state(g);
    const PhysicalParams p = bench_params();
    ScalarStepConfig cfg;
    cfg.dt = 1e-4;
    for (auto _ : state) {
        auto [theta, rep] = heat_step(s.theta, s.vel, p, cfg);
        benchmark::DoNotOptimize(theta.values.raw().data());
    }
}
BENCHMARK(BM_HeatStep)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_PhaseStep(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1.0, 1.0);
    const State s = representative_state(g);
    const PhysicalParams p = bench_params();
    ScalarStepConfig cfg;
    cfg.dt = 1e-4;
    for (auto _ : state) {
        auto [phi, rep] = phase_step(s.phi, s.vel, p, cfg);
        benchmark::DoNotOptimize(phi.values.raw().data());
    }
}
BENCHMARK(BM_PhaseStep)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_CoupledStep(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1.0, 1.0);
    const State s = representative_state(g);
    const PhysicalParams p = bench_params();
    ScalarStepConfig cfg;
    cfg.dt = 1e-4;
    for (auto _ : state) {
        const State next = coupled_step(s, p, cfg, 1e-10);
        benchmark::DoNotOptimize(next.pressure.values.raw().data());
    }
}
BENCHMARK(BM_CoupledStep)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_TotalEnergy(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1.0, 1.0);
    const State s = representative_state(g);
    const PhysicalParams p = bench_params();
    for (auto _ : state) {
        const EnergyRecord rec = total_energy(s, p);
        benchmark::DoNotOptimize(rec.total);
    }
}
BENCHMARK(BM_TotalEnergy)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
