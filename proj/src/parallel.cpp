#include "pkc/parallel.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#ifdef PKC_HAVE_OPENMP
#include <omp.h>
#endif

namespace pkc {

namespace {

long serial_first_true(long n, const std::function<bool(long)>& pred) {
  for (long i = 0; i < n; ++i)
    if (pred(i)) return i;
  return -1;
}

std::pair<double, long> serial_argmin(long n, const std::function<double(long)>& fn) {
  std::pair<double, long> best{std::numeric_limits<double>::infinity(), -1};
  for (long i = 0; i < n; ++i) {
    const double v = fn(i);
    if (best.second < 0 || v < best.first) best = {v, i};
  }
  return best;
}

}  // namespace

bool parallel_available() {
#ifdef PKC_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int parallel_threads() {
#ifdef PKC_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

long first_true(long n, const std::function<bool(long)>& pred, ExecPolicy policy) {
#ifdef PKC_HAVE_OPENMP
  if (policy == ExecPolicy::parallel && omp_get_max_threads() > 1) {
    // Chunks of a few items per thread; stop after the first chunk with a hit.
    const long chunk = 4L * omp_get_max_threads();
    for (long lo = 0; lo < n; lo += chunk) {
      const long hi = std::min(n, lo + chunk);
      std::vector<char> hit(hi - lo, 0);
#pragma omp parallel for schedule(dynamic, 1)
      for (long i = lo; i < hi; ++i) hit[i - lo] = pred(i) ? 1 : 0;
      for (long i = lo; i < hi; ++i)
        if (hit[i - lo]) return i;
    }
    return -1;
  }
#endif
  (void)policy;
  return serial_first_true(n, pred);
}

std::pair<double, long> argmin(long n, const std::function<double(long)>& fn, ExecPolicy policy) {
#ifdef PKC_HAVE_OPENMP
  if (policy == ExecPolicy::parallel && omp_get_max_threads() > 1) {
    std::vector<double> v(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) v[i] = fn(i);
    return serial_argmin(n, [&](long i) { return v[i]; });
  }
#endif
  (void)policy;
  return serial_argmin(n, fn);
}

long count_if(long n, const std::function<bool(long)>& pred, ExecPolicy policy) {
  long total = 0;
#ifdef PKC_HAVE_OPENMP
  if (policy == ExecPolicy::parallel && omp_get_max_threads() > 1) {
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (long i = 0; i < n; ++i) total += pred(i) ? 1 : 0;
    return total;
  }
#endif
  (void)policy;
  for (long i = 0; i < n; ++i) total += pred(i) ? 1 : 0;
  return total;
}

}  // namespace pkc
