#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "diraclab/error.hpp"

namespace diraclab {

struct QuadratureResult {
  double value = 0.0;
  // |S(n) - S(n/2)| / 15, the usual Simpson halving estimate.
  double error_estimate = 0.0;
};

inline constexpr int kDefaultSimpsonPanels = 4096;

// Composite Simpson on a uniform grid of `panels` subintervals (even), with
// one halving for the error estimate.
template <typename F>
QuadratureResult simpson(F&& f, double a, double b, int panels = kDefaultSimpsonPanels) {
  if (panels < 4 || panels % 2 != 0) throw InputError("simpson: panel count must be even and >= 4");
  const int n = panels;
  const double h = (b - a) / n;
  std::vector<double> y(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) y[i] = f(i == n ? b : a + i * h);

  auto rule = [&](int stride) {
    const int m = n / stride;
    double s = y[0] + y[n];
    for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * y[static_cast<std::size_t>(i) * stride];
    return s * (h * stride) / 3.0;
  };
  QuadratureResult r;
  r.value = rule(1);
  const double coarse = (n / 2) % 2 == 0 ? rule(2) : r.value;
  r.error_estimate = std::abs(r.value - coarse) / 15.0;
  return r;
}

// Worker count honoring DIRAC_LAB_THREADS.
inline unsigned worker_count(std::size_t tasks) {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DIRAC_LAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::min<std::size_t>(cap, std::max<std::size_t>(tasks, 1)));
}

// Evaluates fn(i) for i in [0, n) and returns the results in index order.
// Work is split into contiguous blocks, so the output never depends on the
// thread count.
template <typename R, typename Fn>
std::vector<R> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<R> out(n);
  const unsigned workers = worker_count(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  const std::size_t block = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * block; i < std::min(n, (w + 1) * block); ++i) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace diraclab
