#include <benchmark/benchmark.h>

#include <cmath>

#include "podrom/rom.hpp"

using namespace podrom;

namespace {

SnapshotSet make_snapshots(int n_elems, int n_steps, bool dq) {
  const Mesh1D mesh = build_mesh(n_elems);
  return generate_snapshots(cex1({128, 1.0}), mesh, 1.0, n_steps, dq);
}

void BM_GenerateSnapshots(benchmark::State& state) {
  const Mesh1D mesh = build_mesh(4096);
  const ManufacturedSolution sol = cex1({128, 1.0});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const SnapshotSet snaps = generate_snapshots(sol, mesh, 1.0, n, true);
    benchmark::DoNotOptimize(snaps.values.data());
  }
}
BENCHMARK(BM_GenerateSnapshots)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_CorrelationMatrix(benchmark::State& state) {
  const SnapshotSet snaps = make_snapshots(4096, static_cast<int>(state.range(0)), true);
  for (auto _ : state) {
    const CorrelationMatrix corr = correlation_matrix(snaps, Space::L2);
    benchmark::DoNotOptimize(corr.k.data());
  }
}
BENCHMARK(BM_CorrelationMatrix)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ComputePod(benchmark::State& state) {
  const SnapshotSet snaps = make_snapshots(4096, static_cast<int>(state.range(0)), true);
  for (auto _ : state) {
    const PodBasis basis = compute_pod(snaps, Space::L2);
    benchmark::DoNotOptimize(basis.modes.data());
  }
}
BENCHMARK(BM_ComputePod)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_PointwiseErrors(benchmark::State& state) {
  const SnapshotSet snaps = make_snapshots(4096, 64, true);
  const PodBasis basis = compute_pod(snaps, Space::L2);
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const PointwiseErrorSeries series =
        pointwise_errors(snaps, basis, r, Space::L2, ProjectorKind::Ritz);
    benchmark::DoNotOptimize(series.errors.data());
  }
}
BENCHMARK(BM_PointwiseErrors)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CnSolve(benchmark::State& state) {
  const Mesh1D mesh = build_mesh(4096);
  const ManufacturedSolution sol = cex1({128, 1.0});
  const int n = static_cast<int>(state.range(0));
  const SnapshotSet snaps = generate_snapshots(sol, mesh, 1.0, n, true);
  const PodBasis basis = compute_pod(snaps, Space::L2);
  const RomModel model = assemble_rom(basis, n, 1.0, sol, mesh);
  const NodalField u0 = interpolate(sol.u0, mesh);
  const Eigen::VectorXd a0 =
      rom_initial_condition(basis, n, u0, InitialProjection::Ritz);
  for (auto _ : state) {
    const RomTrajectory traj = cn_solve(model, a0, 1.0 / n, n);
    benchmark::DoNotOptimize(traj.coeffs.data());
  }
}
BENCHMARK(BM_CnSolve)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
