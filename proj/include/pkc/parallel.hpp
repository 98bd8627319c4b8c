#pragma once

#include <functional>
#include <utility>

namespace pkc {

/// Serial kernels are the reference; parallel ones must return identical
/// results (ties always resolve to the lowest index).
enum class ExecPolicy { serial, parallel };

bool parallel_available();
int parallel_threads();

/// Smallest i in [0, n) with pred(i), or -1.
long first_true(long n, const std::function<bool(long)>& pred, ExecPolicy policy);

/// (min value, lowest index attaining it) of fn over [0, n); (+inf, -1) if n == 0.
std::pair<double, long> argmin(long n, const std::function<double(long)>& fn, ExecPolicy policy);

/// Number of i in [0, n) with pred(i).
long count_if(long n, const std::function<bool(long)>& pred, ExecPolicy policy);

}  // namespace pkc
