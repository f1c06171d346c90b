// Micro benchmarks for the numeric hot paths: root finding, cycle action
// integrals and their Jacobian, the collapse-limit determinant, and the
// lattice search behind the canonical germ representative.

#include "anfold/germs.hpp"
#include "anfold/periods.hpp"
#include "anfold/poly.hpp"
#include "anfold/swallowtail.hpp"

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

namespace {

using namespace anfold;

poly::UnfoldingPoly sample_point(int n) {
    return swallowtail::domain_sample(n, +1, 0.5, 1, 42)[0];
}

void BM_RootsSorted(benchmark::State& state) {
    poly::UnfoldingPoly p = sample_point(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(poly::roots_sorted(p));
}
BENCHMARK(BM_RootsSorted)->Arg(2)->Arg(3)->Arg(4)->Arg(6);

void BM_ActionVector(benchmark::State& state) {
    poly::UnfoldingPoly p = sample_point(static_cast<int>(state.range(0)));
    periods::WeightFunction one = periods::WeightFunction::constant(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(periods::action_vector(p, one));
}
BENCHMARK(BM_ActionVector)->Arg(2)->Arg(3)->Arg(4);

void BM_ActionJacobian(benchmark::State& state) {
    poly::UnfoldingPoly p = sample_point(static_cast<int>(state.range(0)));
    periods::WeightFunction one = periods::WeightFunction::constant(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(periods::action_jacobian(p, one));
}
BENCHMARK(BM_ActionJacobian)->Arg(2)->Arg(3)->Arg(4);

void BM_LimitDeterminant(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(periods::limit_determinant(n, +1));
}
BENCHMARK(BM_LimitDeterminant)->Arg(2)->Arg(3)->Arg(4);

germs::GermMap skewed_germ() {
    germs::GermMap f(3, 2, 2);
    f.set_coeff(0, {0, 1, 0}, 1.0);
    f.set_coeff(0, {1, 0, 0}, 0.3);
    f.set_coeff(0, {0, 1, 1}, -0.7);
    f.set_coeff(1, {0, 0, 1}, 1.0);
    f.set_coeff(1, {2, 0, 0}, 0.5);
    Eigen::MatrixXi a(2, 2);
    a << 5, 3, 3, 2;  // det 1, far from orthogonal
    return germs::sl_act(germs::UnimodularMatrix(a), f);
}

void BM_SpecialRepresentative(benchmark::State& state) {
    germs::GermMap g = skewed_germ();
    for (auto _ : state) benchmark::DoNotOptimize(germs::special_representative(g));
}
BENCHMARK(BM_SpecialRepresentative);

}  // namespace

BENCHMARK_MAIN();
