// Copyright 2026 The modlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "modlab/experiments.hpp"
#include "modlab/interpolation.hpp"
#include "modlab/jones.hpp"
#include "modlab/modular.hpp"
#include "modlab/random.hpp"

namespace {

using namespace modlab;

void BM_SpectralDecompose(benchmark::State& state) {
  SeedStream rng(1);
  const Matrix h = random_hermitian(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_decompose(h));
}
BENCHMARK(BM_SpectralDecompose)->Arg(4)->Arg(16)->Arg(32);

void BM_Commutant(benchmark::State& state) {
  const auto n = state.range(0);
  const MatrixAlgebra a = MatrixAlgebra::diagonal(n);
  for (auto _ : state) benchmark::DoNotOptimize(commutant(a));
}
BENCHMARK(BM_Commutant)->Arg(2)->Arg(3)->Arg(4);

void BM_Tomita(benchmark::State& state) {
  const auto n = state.range(0);
  SeedStream rng(2);
  const GnsSpace gns(MatrixAlgebra::full(n), StateDensity(random_density(rng, n)));
  for (auto _ : state) benchmark::DoNotOptimize(tomita(gns));
}
BENCHMARK(BM_Tomita)->Arg(2)->Arg(3)->Arg(4);

void BM_BasicExtension(benchmark::State& state) {
  const auto n = state.range(0);
  const StateDensity rho = StateDensity::tracial(n);
  const Inclusion inc(MatrixAlgebra::full(n), MatrixAlgebra::diagonal(n), rho);
  const GnsSpace gns(inc.larger(), rho);
  const ModularData md = tomita(gns);
  for (auto _ : state) benchmark::DoNotOptimize(basic_extension(inc, gns, md));
}
BENCHMARK(BM_BasicExtension)->Arg(2)->Arg(3);

void BM_PathGenerator(benchmark::State& state) {
  SeedStream rng(3);
  const auto n = state.range(0);
  const StatePath path = StatePath::toward_subalgebra(StateDensity(random_density(rng, n)),
                                                      MatrixAlgebra::diagonal(n), PathKind::geodesic);
  for (auto _ : state) benchmark::DoNotOptimize(path_generator(path, 0.5));
}
BENCHMARK(BM_PathGenerator)->Arg(4)->Arg(16);

void BM_CorrelatorScan(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const TfdModel model(preset_hamiltonian(HamiltonianPreset::xx_chain, sites, 1), 1.0, sites);
  const Matrix p = modular_momentum(model, {0, sites}, {1, sites});
  const Matrix o = parse_site_operator("Z@1", sites);
  const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(correlator_scan(model, o, o, p, grid));
}
BENCHMARK(BM_CorrelatorScan)->Arg(3)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
