// Serial reference vs OpenMP kernels: wall time and result equality.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "pkc/euclid2k.hpp"
#include "pkc/parallel.hpp"

using namespace pkc;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Point> instance(std::uint64_t seed, int n, bool ring) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> P;
  for (int i = 0; i < n; ++i) {
    if (ring) {
      const double a = 2 * 3.141592653589793 * (i + 0.6 * (u(rng) - 0.5)) / n, r = 1.0 - 0.1 * u(rng);
      P.push_back({r * std::cos(a), r * std::sin(a)});
    } else {
      const double x = 10 * u(rng);
      const double y = 10 * u(rng);
      P.push_back({x, y});
    }
  }
  return P;
}

bool same(const TwoCenter& a, const TwoCenter& b) {
  return a.radius == b.radius && a.c1.x == b.c1.x && a.c1.y == b.c1.y && a.c2.x == b.c2.x && a.c2.y == b.c2.y &&
         a.outliers == b.outliers;
}

}  // namespace

int main() {
  std::printf("openmp=%s threads=%d\n\n", parallel_available() ? "yes" : "no", parallel_threads());

  // Raw kernel: argmin over an expensive function.
  auto heavy = [](long i) {
    double s = 0;
    for (int t = 1; t < 2000; ++t) s += std::sin(i * 0.001 + t) / t;
    return s;
  };
  for (ExecPolicy pol : {ExecPolicy::serial, ExecPolicy::parallel}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto [v, i] = argmin(20000, heavy, pol);
    std::printf("argmin %-8s %9.2f ms  (index %ld, value %.6f)\n", pol == ExecPolicy::serial ? "serial" : "parallel",
                ms_since(t0), i, v);
  }
  std::printf("\n%-8s %3s %2s %12s %12s %8s %s\n", "family", "n", "k", "serial ms", "parallel ms", "speedup", "equal");
  int mismatches = 0;
  for (bool ring : {false, true})
    for (int n : {10, 14, 18})
      for (int k : {0, 2}) {
        const auto P = instance(1000 + n * 10 + k, n, ring);
        Euclid2kConfig ser, par;
        par.policy = ExecPolicy::parallel;
        auto t0 = std::chrono::steady_clock::now();
        const TwoCenter a = solve_two_center_outliers(P, k, SearchMode::randomized, 7, ser);
        const double ts = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        const TwoCenter b = solve_two_center_outliers(P, k, SearchMode::randomized, 7, par);
        const double tp = ms_since(t0);
        const bool eq = same(a, b);
        mismatches += eq ? 0 : 1;
        std::printf("%-8s %3d %2d %12.2f %12.2f %8.2f %s\n", ring ? "ring" : "uniform", n, k, ts, tp, ts / tp,
                    eq ? "yes" : "NO");
      }
  return mismatches == 0 ? 0 : 1;
}
