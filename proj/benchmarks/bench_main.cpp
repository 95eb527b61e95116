#include <benchmark/benchmark.h>

#include <random>

#include "projdyn/dynamics.hpp"
#include "projdyn/sympow.hpp"

using namespace projdyn;

namespace {

Polynomial random_dense(std::mt19937_64& rng, std::size_t vars, unsigned degree, const Field& f) {
  Polynomial p(vars, f);
  for (const Monomial& m : monomials_of_degree(vars, degree)) {
    p += Polynomial::monomial(vars, random_element(f, rng()), m);
  }
  return p;
}

void BM_MultiplyQQ(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Field qq = Field::rationals();
  const unsigned d = unsigned(state.range(0));
  const Polynomial a = parse_polynomial("(x0+2*x1-3*x2+x3/5)^" + std::to_string(d), 4, qq);
  const Polynomial b = parse_polynomial("(x0-x1+7*x2-x3)^" + std::to_string(d), 4, qq);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_MultiplyQQ)->Arg(4)->Arg(8);

void BM_MultiplyFp(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Field fp = Field::prime(kDefaultPrime);
  const unsigned d = unsigned(state.range(0));
  const Polynomial a = random_dense(rng, 4, d, fp), b = random_dense(rng, 4, d, fp);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_MultiplyFp)->Arg(4)->Arg(8);

// Numeric Macaulay resultant of three random ternary forms over F_p.
void BM_MacaulayFp(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Field fp = Field::prime(kDefaultPrime);
  const unsigned d = unsigned(state.range(0));
  std::vector<Polynomial> forms;
  for (int i = 0; i < 3; ++i) forms.push_back(random_dense(rng, 3, d, fp));
  const MacaulaySystem system(forms);
  for (auto _ : state) benchmark::DoNotOptimize(macaulay_resultant(system));
}
BENCHMARK(BM_MacaulayFp)->DenseRange(2, 5);

void BM_SylvesterQQ(benchmark::State& state) {
  const Field qq = Field::rationals();
  const Endomorphism f(parse_polynomial_list("[x0^2-2*x1^2, x0^2]", 2, qq));
  const Endomorphism g = iterate(f, unsigned(state.range(0)));
  const Polynomial fixed = parse_polynomial("x0", 2, qq) * g.forms()[1] - parse_polynomial("x1", 2, qq) * g.forms()[0];
  const Polynomial jac = jacobian_determinant(f);
  for (auto _ : state) benchmark::DoNotOptimize(sylvester_resultant(jac, fixed));
}
BENCHMARK(BM_SylvesterQQ)->DenseRange(2, 6);

void BM_PushforwardLine(benchmark::State& state) {
  const Field qq = Field::rationals();
  const Endomorphism f(parse_polynomial_list("[x0^2+3*x1*x2, x1^2-x0*x2, x2^2+x0*x1]", 3, qq));
  const HypersurfaceForm line(parse_polynomial("x0-2*x1+5*x2", 3, qq), 3);
  for (auto _ : state) benchmark::DoNotOptimize(pushforward(f, line));
}
BENCHMARK(BM_PushforwardLine);

void BM_PushforwardGenericLine(benchmark::State& state) {
  const Field qq = Field::rationals();
  const Endomorphism f(parse_polynomial_list("[x0^2, x1^2, x2^2]", 6, qq));
  const HypersurfaceForm line(parse_polynomial("x3*x0+x4*x1+x5*x2", 6, qq), 3);
  for (auto _ : state) benchmark::DoNotOptimize(pushforward(f, line));
}
BENCHMARK(BM_PushforwardGenericLine);

void BM_ImproperCertificate(benchmark::State& state) {
  const Field qq = Field::rationals();
  const Endomorphism f(parse_polynomial_list("[x0^2, x1^2, x2^2]", 6, qq));
  const HypersurfaceForm line(parse_polynomial("x3*x0+x4*x1+x5*x2", 6, qq), 3);
  for (auto _ : state) benchmark::DoNotOptimize(improper_certificate(f, line, IndexTuple({0, 1, 2})));
}
BENCHMARK(BM_ImproperCertificate)->Unit(benchmark::kMillisecond);

void BM_SymmetricPower(benchmark::State& state) {
  const Field qq = Field::rationals();
  const Endomorphism f(parse_polynomial_list("[x0^2-x1^2, x0^2+x0*x1]", 2, qq));
  const std::size_t n = std::size_t(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_power(f, n));
}
BENCHMARK(BM_SymmetricPower)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
