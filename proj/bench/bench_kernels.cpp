#include "dqd/calculation.hpp"
#include "dqd/grid_oracle.hpp"
#include "dqd/quadrature.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace dqd;

struct Anchor {
  PhysParams phys{constants::mass_sisio2, 7.8, 0.1};
  PointSetup setup = setup_point(20.0, 10.0, phys);
  std::pair<Orbital, Orbital> ca = make_orbitals(Basis::CA, setup, phys);
};

const Anchor &anchor() {
  static const Anchor a;
  return a;
}

ExecPolicy policy_of(const benchmark::State &s) {
  return s.range(0) ? ExecPolicy::Parallel : ExecPolicy::Serial;
}

void BM_CoulombElement(benchmark::State &state) {
  const auto &a = anchor();
  const auto &[l, r] = a.ca;
  const QuadratureSpec q{-90.0, 90.0, 512, Scheme::GaussLegendreComposite,
                         Refinement::Fixed, 1e-8, 64, 8};
  const CoulombKernel k{a.phys.coulomb_prefactor(), 0.1};
  auto f = [&](double x1, double x2) {
    const double v = l.value(x1) * r.value(x2);
    return v * v;
  };
  for (auto _ : state)
    benchmark::DoNotOptimize(coulomb_element_fixed(
        f, [](double, double) { return 1.0; }, k, q, q, policy_of(state)));
}
BENCHMARK(BM_CoulombElement)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Integrate2d(benchmark::State &state) {
  const auto &[l, r] = anchor().ca;
  const QuadratureSpec q{-90.0, 90.0, 512, Scheme::GaussLegendreComposite,
                         Refinement::Fixed, 1e-8, 64, 8};
  auto f = [&](double x1, double x2) {
    const double v = l.value(x1) * r.value(x2) + r.value(x1) * l.value(x2);
    return v * v;
  };
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_2d(f, q, q, policy_of(state)));
}
BENCHMARK(BM_Integrate2d)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OracleMatvec(benchmark::State &state) {
  const auto &a = anchor();
  const TwoElectronGrid g(Potential::caticha(a.setup.ca, a.phys),
                          {a.phys.coulomb_prefactor(), 0.1}, a.phys,
                          {110.0, 512});
  std::vector<double> v(512 * 512, 1.0), out;
  for (auto _ : state) {
    g.apply_full(v, out, policy_of(state));
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_OracleMatvec)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OracleSpectrum(benchmark::State &state) {
  const auto &a = anchor();
  const Potential v = Potential::caticha(a.setup.ca, a.phys);
  const CoulombKernel k{a.phys.coulomb_prefactor(), 0.1};
  for (auto _ : state)
    benchmark::DoNotOptimize(two_electron_levels(
        v, k, a.phys, {110.0, static_cast<int>(state.range(0))}));
}
BENCHMARK(BM_OracleSpectrum)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
