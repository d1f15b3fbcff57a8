#include "qineq/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <queue>
#include <sstream>
#include <vector>

#include "qineq/error.hpp"

namespace qineq {

namespace {

// QUADPACK qk21 abscissae and weights (positive half; the last node is 0).
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980926903, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd Kronrod nodes (indices 1, 3, 5, 7, 9).
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr std::size_t kNodeCount = 21;

struct Panel {
  double lo, hi, value, error;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

Panel evaluate_panel(const Integrand& f, double lo, double hi, Execution exec) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::array<double, kNodeCount> fx{};
  // Node layout: 0..9 = center - half*x_k, 10..19 = center + half*x_k, 20 = center.
  if (exec == Execution::parallel) {
    // Exceptions must not escape the parallel region; keep the first by node.
    std::array<std::exception_ptr, kNodeCount> failures{};
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < kNodeCount; ++i) {
      const std::size_t k = i % 10;
      const double x = i == 20 ? center : (i < 10 ? center - half * kKronrodNodes[k]
                                                  : center + half * kKronrodNodes[k]);
      try {
        fx[i] = f(x);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
    for (const auto& e : failures)
      if (e) std::rethrow_exception(e);
  } else {
    for (std::size_t i = 0; i < kNodeCount; ++i) {
      const std::size_t k = i % 10;
      const double x = i == 20 ? center : (i < 10 ? center - half * kKronrodNodes[k]
                                                  : center + half * kKronrodNodes[k]);
      fx[i] = f(x);
    }
  }
  double kronrod = kKronrodWeights[10] * fx[20];
  double gauss = 0.0;
  for (std::size_t k = 0; k < 10; ++k) {
    const double pair = fx[k] + fx[k + 10];
    kronrod += kKronrodWeights[k] * pair;
    if (k % 2 == 1) gauss += kGaussWeights[k / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol))
    throw InvalidArgument("quadrature abs_tol must be positive and finite");
  if (!(rel_tol >= 0.0) || !std::isfinite(rel_tol))
    throw InvalidArgument("quadrature rel_tol must be non-negative and finite");
  if (max_subdivisions == 0) throw InvalidArgument("quadrature max_subdivisions must be positive");
}

std::pair<double, double> gauss_kronrod21(const Integrand& f, double lo, double hi) {
  const Panel p = evaluate_panel(f, lo, hi, Execution::serial);
  return {p.value, p.error};
}

QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureSpec& spec,
                           std::span<const double> breakpoints, Execution exec) {
  spec.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    if (lo == hi) return {};
    throw InvalidArgument("integration bounds must be finite with lo < hi");
  }

  std::vector<double> cuts{lo};
  for (double b : breakpoints)
    if (b > lo && b < hi) cuts.push_back(b);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  QuadratureResult result;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    heap.push(evaluate_panel(f, cuts[i], cuts[i + 1], exec));
    result.evaluations += kNodeCount;
  }
  const std::size_t limit = std::max(spec.max_subdivisions, cuts.size() - 1);

  auto totals = [&heap]() {
    // Summed in left-to-right order so the total does not depend on refinement history.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    auto copy = heap;
    while (!copy.empty()) {
      panels.push_back(copy.top());
      copy.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    double value = 0.0, error = 0.0;
    for (const Panel& p : panels) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  bool stuck = false;
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value)) && heap.size() < limit) {
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      stuck = true;
      break;
    }
    heap.pop();
    const Panel left = evaluate_panel(f, worst.lo, mid, exec);
    const Panel right = evaluate_panel(f, mid, worst.hi, exec);
    result.evaluations += 2 * kNodeCount;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  std::tie(value, error) = totals();
  result.value = value;
  result.abs_error = error;
  result.subdivisions = heap.size();
  if (!std::isfinite(value)) throw NumericalError("quadrature produced a non-finite value");
  if (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
    std::ostringstream msg;
    msg << "quadrature on [" << lo << ", " << hi << "] did not reach tolerance "
        << spec.abs_tol << " (estimated error " << error << " after " << heap.size()
        << " subdivisions" << (stuck ? ", interval width exhausted" : "") << ")";
    throw NumericalError(msg.str());
  }
  return result;
}

}  // namespace qineq
