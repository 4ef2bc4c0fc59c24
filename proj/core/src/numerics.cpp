#include "henon/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace henon {

double trapezoid(const RadialGrid& grid, std::span<const double> integrand) {
  if (integrand.size() != grid.size()) {
    throw std::invalid_argument("trapezoid: grid/value length mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    sum += 0.5 * (integrand[i] + integrand[i + 1]) * (grid[i + 1] - grid[i]);
  }
  return sum;
}

double simpson(const RadialGrid& grid, std::span<const double> integrand) {
  if (integrand.size() != grid.size()) {
    throw std::invalid_argument("simpson: grid/value length mismatch");
  }
  if (grid.size() < 3 || !grid.is_uniform(1e-8)) {
    return trapezoid(grid, integrand);
  }
  const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  std::size_t intervals = grid.size() - 1;
  std::size_t simpson_end = intervals;  // node index where the 1/3-rule part stops
  bool tail38 = false;
  if (intervals % 2 != 0) {
    if (intervals < 3) return trapezoid(grid, integrand);
    simpson_end = intervals - 3;
    tail38 = true;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    sum += (h / 3.0) * (integrand[i] + 4.0 * integrand[i + 1] + integrand[i + 2]);
  }
  if (tail38) {
    const std::size_t i = simpson_end;
    sum += (3.0 * h / 8.0) *
           (integrand[i] + 3.0 * integrand[i + 1] + 3.0 * integrand[i + 2] + integrand[i + 3]);
  }
  return sum;
}

namespace {

std::vector<double> weighted_integrand(std::span<const double> values, const RadialGrid& grid,
                                       double weight_exponent) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("integrate_radial: grid/value length mismatch");
  }
  if (!(weight_exponent > -1.0)) {
    throw std::invalid_argument("integrate_radial: weight exponent must exceed -1");
  }
  std::vector<double> g(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    g[i] = values[i] * std::pow(grid[i], weight_exponent + 1.0);
  }
  return g;
}

// Closes the [0, r_1] sliver of a ball grid with the limit value 0 of the
// integrand (valid for weight exponents > -1).
double origin_sliver(const RadialGrid& grid, double first_integrand) {
  return 0.5 * first_integrand * grid.front();
}

}  // namespace

double integrate_radial(std::span<const double> values, const RadialGrid& grid,
                        double weight_exponent) {
  const auto g = weighted_integrand(values, grid, weight_exponent);
  return 2.0 * std::numbers::pi * (trapezoid(grid, g) + origin_sliver(grid, g.front()));
}

double integrate_radial_simpson(std::span<const double> values, const RadialGrid& grid,
                                double weight_exponent) {
  const auto g = weighted_integrand(values, grid, weight_exponent);
  return 2.0 * std::numbers::pi * (simpson(grid, g) + origin_sliver(grid, g.front()));
}

double weighted_integral(const RadialGrid& grid, std::span<const double> values,
                         double weight_exponent, bool include_origin_sliver) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("weighted_integral: grid/value length mismatch");
  }
  if (!(weight_exponent > -2.0)) {
    throw std::invalid_argument("weighted_integral: weight exponent must exceed -2");
  }
  std::vector<double> integrand(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    integrand[i] = values[i] * std::pow(grid[i], weight_exponent + 1.0);
  }
  double sliver = 0.0;
  if (include_origin_sliver) {
    const double r1 = grid.front();
    sliver = values.front() * std::pow(r1, weight_exponent + 2.0) / (weight_exponent + 2.0);
  }
  return simpson(grid, integrand) + sliver;
}

namespace {

std::size_t locate_interval(const RadialGrid& grid, double r) {
  const double lo = grid.front();
  const double hi = grid.back();
  const double slack = 1e-9 * (hi - lo);
  if (r < lo - slack || r > hi + slack) {
    throw std::invalid_argument("interpolation point outside the grid");
  }
  if (r <= lo) return 0;
  if (r >= hi) return grid.size() - 2;
  const auto it = std::upper_bound(grid.nodes.begin(), grid.nodes.end(), r);
  std::size_t i = static_cast<std::size_t>(it - grid.nodes.begin());
  return std::min<std::size_t>(std::max<std::size_t>(i, 1) - 1, grid.size() - 2);
}

}  // namespace

double hermite_value(const RadialGrid& grid, std::span<const double> values,
                     std::span<const double> derivatives, double r) {
  if (values.size() != grid.size() || derivatives.size() != grid.size()) {
    throw std::invalid_argument("hermite_value: grid/value length mismatch");
  }
  const std::size_t i = locate_interval(grid, r);
  const double h = grid[i + 1] - grid[i];
  const double t = (r - grid[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * values[i] + h10 * h * derivatives[i] + h01 * values[i + 1] +
         h11 * h * derivatives[i + 1];
}

double hermite_derivative(const RadialGrid& grid, std::span<const double> values,
                          std::span<const double> derivatives, double r) {
  if (values.size() != grid.size() || derivatives.size() != grid.size()) {
    throw std::invalid_argument("hermite_derivative: grid/value length mismatch");
  }
  const std::size_t i = locate_interval(grid, r);
  const double h = grid[i + 1] - grid[i];
  const double t = (r - grid[i]) / h;
  const double t2 = t * t;
  const double d00 = (6.0 * t2 - 6.0 * t) / h;
  const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double d01 = (-6.0 * t2 + 6.0 * t) / h;
  const double d11 = 3.0 * t2 - 2.0 * t;
  return d00 * values[i] + d10 * derivatives[i] + d01 * values[i + 1] + d11 * derivatives[i + 1];
}

double lagrange_value(const RadialGrid& grid, std::span<const double> values, double r) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("lagrange_value: grid/value length mismatch");
  }
  if (grid.size() < 2) throw std::invalid_argument("lagrange_value: need >= 2 nodes");
  if (grid.size() < 4) {
    const std::size_t i = locate_interval(grid, r);
    const double t = (r - grid[i]) / (grid[i + 1] - grid[i]);
    return (1.0 - t) * values[i] + t * values[i + 1];
  }
  const std::size_t i = locate_interval(grid, r);
  const std::size_t start = std::min(std::max<std::size_t>(i, 1) - 1, grid.size() - 4);
  double result = 0.0;
  for (std::size_t a = start; a < start + 4; ++a) {
    double w = 1.0;
    for (std::size_t b = start; b < start + 4; ++b) {
      if (a == b) continue;
      w *= (r - grid[b]) / (grid[a] - grid[b]);
    }
    result += w * values[a];
  }
  return result;
}

std::vector<double> fd_derivative(const RadialGrid& grid, std::span<const double> values) {
  const std::size_t n = grid.size();
  if (values.size() != n) throw std::invalid_argument("fd_derivative: length mismatch");
  if (n < 5) throw std::invalid_argument("fd_derivative: need >= 5 nodes");
  const double h = grid.spacing();
  std::vector<double> d(n);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (values[i - 2] - 8.0 * values[i - 1] + 8.0 * values[i + 1] - values[i + 2]) / (12.0 * h);
  }
  // one-sided fourth-order stencils at the ends
  auto edge = [&](std::size_t i, int dir) {
    const auto v = [&](int k) {
      return values[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + dir * k)];
    };
    return dir *
           (-25.0 * v(0) + 48.0 * v(1) - 36.0 * v(2) + 16.0 * v(3) - 3.0 * v(4)) / (12.0 * h);
  };
  d[0] = edge(0, 1);
  d[1] = edge(1, 1);
  d[n - 1] = edge(n - 1, -1);
  d[n - 2] = edge(n - 2, -1);
  return d;
}

std::vector<double> fd_second_derivative(const RadialGrid& grid, std::span<const double> values) {
  const std::size_t n = grid.size();
  if (values.size() != n) throw std::invalid_argument("fd_second_derivative: length mismatch");
  if (n < 6) throw std::invalid_argument("fd_second_derivative: need >= 6 nodes");
  const double h = grid.spacing();
  const double h2 = h * h;
  std::vector<double> d(n);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (-values[i - 2] + 16.0 * values[i - 1] - 30.0 * values[i] + 16.0 * values[i + 1] -
            values[i + 2]) /
           (12.0 * h2);
  }
  auto edge = [&](std::size_t i, int dir) {
    const auto v = [&](int k) {
      return values[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + dir * k)];
    };
    return (45.0 * v(0) - 154.0 * v(1) + 214.0 * v(2) - 156.0 * v(3) + 61.0 * v(4) - 10.0 * v(5)) /
           (12.0 * h2);
  };
  d[0] = edge(0, 1);
  d[1] = edge(1, 1);
  d[n - 1] = edge(n - 1, -1);
  d[n - 2] = edge(n - 2, -1);
  return d;
}

int count_sign_changes(std::span<const double> values, double zero_tol) {
  int changes = 0;
  int last_sign = 0;
  for (double v : values) {
    if (std::abs(v) <= zero_tol) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

unsigned worker_limit() {
  if (const char* env = std::getenv("HENON_MORSE_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) return static_cast<unsigned>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void run_parallel(std::size_t count, const std::function<void(std::size_t)>& task) {
  const unsigned workers = std::min<std::size_t>(worker_limit(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace henon
