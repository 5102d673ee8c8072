#include <benchmark/benchmark.h>

#include <ptv/coeffs.hpp>
#include <ptv/dynamics.hpp>
#include <ptv/oracle.hpp>
#include <ptv/transvec.hpp>

using namespace ptv;

namespace {

const RotationVector kSigma(0.4, -0.7, 1.1);
const Vec3 kOmega(0.3, 2.0, -1.2);
const Vec3 kVec(1.5, -0.25, 3.0);

void BM_CoeffSeries(benchmark::State& state) {
    double s = 1e-4;
    for (auto _ : state) benchmark::DoNotOptimize(eval_all(s));
}
BENCHMARK(BM_CoeffSeries);

void BM_CoeffClosedForm(benchmark::State& state) {
    double s = 1.3;
    for (auto _ : state) benchmark::DoNotOptimize(eval_all(s));
}
BENCHMARK(BM_CoeffClosedForm);

void BM_SavageMap(benchmark::State& state) {
    const auto p = TranslationVector::new_ptv(kVec);
    for (auto _ : state) benchmark::DoNotOptimize(new_ptv_to_savage(kSigma, p));
}
BENCHMARK(BM_SavageMap);

void BM_RatePtvThrust(benchmark::State& state) {
    const auto p = TranslationVector::new_ptv(kVec);
    for (auto _ : state) benchmark::DoNotOptimize(ptv_rate_thrust(kSigma, p, kOmega, kVec));
}
BENCHMARK(BM_RatePtvThrust);

void BM_RatePtvVtv(benchmark::State& state) {
    const auto p = TranslationVector::new_ptv(kVec);
    const auto v = TranslationVector::vtv(kOmega);
    for (auto _ : state) benchmark::DoNotOptimize(ptv_rate_vtv(kSigma, p, kOmega, v));
}
BENCHMARK(BM_RatePtvVtv);

void BM_RateSavageVtv(benchmark::State& state) {
    const auto z = TranslationVector::savage_ptv(kVec);
    const auto v = TranslationVector::vtv(kOmega);
    for (auto _ : state) benchmark::DoNotOptimize(savage_rate_vtv(kSigma, z, kOmega, v));
}
BENCHMARK(BM_RateSavageVtv);

void BM_GroundTruth(benchmark::State& state) {
    GroundTruthOptions opt;
    opt.coarse_samples = static_cast<int>(state.range(0));
    const MotionProfile profile{ConingMotion{}, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(generate_ground_truth(profile, opt));
}
BENCHMARK(BM_GroundTruth)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_Rk4(benchmark::State& state) {
    const Formulation form = static_cast<Formulation>(state.range(0));
    const int steps = 10000;
    GroundTruthOptions opt;
    opt.coarse_samples = 2 * steps;
    const GroundTruth truth = generate_ground_truth(MotionProfile{ConingMotion{}, 1.0}, opt);
    const InputSource inputs = ground_truth_inputs(truth);
    state.SetLabel(std::string(name(form)));
    for (auto _ : state) benchmark::DoNotOptimize(rk4_integrate(form, inputs, 0.0, 1.0, steps));
}
BENCHMARK(BM_Rk4)
    ->Arg(static_cast<int>(Formulation::PtvThrust))
    ->Arg(static_cast<int>(Formulation::PtvVtv))
    ->Arg(static_cast<int>(Formulation::SavageVtv))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
