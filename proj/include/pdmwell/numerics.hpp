#pragma once

/**
 * @file numerics.hpp
 * @brief Adaptive quadrature and finite-difference differentiation.
 *
 * Every numerical oracle in the library goes through integrate() and
 * differentiate(), so the whole floating-point integration policy lives here.
 *
 * integrate() is a globally adaptive Gauss-Kronrod scheme: each panel is
 * evaluated with the nested 7/15-point pair, the panel with the largest error
 * estimate is bisected, and the loop stops once the summed error estimate is
 * below max(abs_tol, rel_tol * |value|). Semi-infinite and doubly infinite
 * domains are mapped onto finite ones by rational substitutions
 *
 *     [lo, inf)   : x = lo + c t / (1 - t),      t in [0, 1)
 *     (-inf, hi]  : x = hi - c t / (1 - t),      t in [0, 1)
 *     (-inf, inf) : x = c t / (1 - t^2),         t in (-1, 1)
 *
 * with c a length scale taken from the finite endpoint. Kronrod nodes never
 * touch a panel end, so the mapped integrand is never evaluated at t = 1.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "pdmwell/errors.hpp"

namespace pdmwell {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Integration domain; either endpoint may be infinite.
struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
      throw DomainError("Interval requires lo < hi");
    if (lo == kInf || hi == -kInf)
      throw DomainError("Interval endpoints point the wrong way");
  }

  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  double width() const { return hi - lo; }
  bool contains(double x) const { return x > lo && x < hi; }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  std::size_t evaluations = 0;
};

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr double kDefaultAbsTol = 1e-12;
inline constexpr std::size_t kDefaultEvaluationBudget = 1'000'000;

/// p ln p with the removable value 0 substituted at (numerical) zeros of p.
inline double xlogx(double p) { return p < 1e-300 ? 0.0 : p * std::log(p); }

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class G>
double checked_eval(G& g, double t) {
  const double v = g(t);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "integrand returned a non-finite value at mapped point " << t;
    throw NonFinite(msg.str());
  }
  return v;
}

template <class G>
Panel gauss_kronrod15(G& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked_eval(g, center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f_lo{};
  std::array<double, 7> f_hi{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    f_lo[j] = checked_eval(g, center - dx);
    f_hi[j] = checked_eval(g, center + dx);
    const double pair = f_lo[j] + f_hi[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(f_lo[j]) + std::abs(f_hi[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j)
    asc += kKronrodWeights[j] * (std::abs(f_lo[j] - mean) + std::abs(f_hi[j] - mean));

  const double result = kronrod * half;
  const double res_abs = abs_sum * std::abs(half);
  const double res_asc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (res_asc != 0.0 && err != 0.0)
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * res_abs, err);
  return {a, b, result, err};
}

template <class G>
QuadratureResult adaptive(G&& g, double a, double b, double rel_tol, double abs_tol,
                          std::size_t budget) {
  constexpr std::size_t kPerPanel = 15;
  std::priority_queue<Panel> heap;
  Panel first = gauss_kronrod15(g, a, b);
  std::size_t evaluations = kPerPanel;
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  // Panels too narrow to bisect keep their contribution here.
  double frozen_value = 0.0;
  double frozen_err = 0.0;

  auto converged = [&] { return total_err <= std::max(abs_tol, rel_tol * std::abs(total)); };

  std::size_t iterations = 0;
  while (!converged()) {
    if (heap.empty()) break;
    if (evaluations + 2 * kPerPanel > budget) {
      std::ostringstream msg;
      msg << "quadrature budget of " << budget << " evaluations exhausted; value " << total
          << ", error estimate " << total_err;
      throw NonConvergence(msg.str());
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      frozen_value += worst.value;
      frozen_err += worst.error;
      continue;
    }
    Panel left = gauss_kronrod15(g, worst.a, mid);
    Panel right = gauss_kronrod15(g, mid, worst.b);
    evaluations += 2 * kPerPanel;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);

    // Resum periodically so the running totals do not drift.
    if (++iterations % 256 == 0 || converged()) {
      total = frozen_value;
      total_err = frozen_err;
      auto copy = heap;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().error;
        copy.pop();
      }
    }
  }
  if (!converged()) {
    std::ostringstream msg;
    msg << "quadrature cannot refine further; value " << total << ", error estimate "
        << total_err;
    throw NonConvergence(msg.str());
  }
  return {total, total_err, evaluations};
}

}  // namespace detail

/// Adaptive integral of f over domain (finite, semi-infinite or doubly infinite).
///
/// Throws NonConvergence when the evaluation budget is exhausted before the
/// error estimate drops below max(abs_tol, rel_tol * |value|), and NonFinite
/// when f produces NaN or Inf inside the domain.
template <class F>
QuadratureResult integrate(F&& f, const Interval& domain, double rel_tol = kDefaultRelTol,
                           double abs_tol = kDefaultAbsTol,
                           std::size_t budget = kDefaultEvaluationBudget) {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw DomainError("integrate: tolerances must be positive");

  const double lo = domain.lo;
  const double hi = domain.hi;
  if (domain.finite()) return detail::adaptive(f, lo, hi, rel_tol, abs_tol, budget);

  if (std::isfinite(lo)) {
    const double c = std::max(1.0, std::abs(lo));
    auto g = [&](double t) {
      const double s = 1.0 - t;
      return c * f(lo + c * t / s) / (s * s);
    };
    return detail::adaptive(g, 0.0, 1.0, rel_tol, abs_tol, budget);
  }
  if (std::isfinite(hi)) {
    const double c = std::max(1.0, std::abs(hi));
    auto g = [&](double t) {
      const double s = 1.0 - t;
      return c * f(hi - c * t / s) / (s * s);
    };
    return detail::adaptive(g, 0.0, 1.0, rel_tol, abs_tol, budget);
  }
  auto g = [&](double t) {
    const double s = 1.0 - t * t;
    return f(t / s) * (1.0 + t * t) / (s * s);
  };
  return detail::adaptive(g, -1.0, 1.0, rel_tol, abs_tol, budget);
}

/// Sum of integrals over consecutive pieces lo = p0 < p1 < ... < pk = hi.
///
/// Breakpoints outside (lo, hi) are ignored. Each piece gets its own budget;
/// unbounded end pieces use tail_abs_tol instead of abs_tol.
template <class F>
QuadratureResult integrate_pieces(F&& f, const Interval& domain, std::vector<double> breakpoints,
                                  double rel_tol = kDefaultRelTol,
                                  double abs_tol = kDefaultAbsTol,
                                  double tail_abs_tol = kDefaultAbsTol) {
  std::erase_if(breakpoints, [&](double p) { return !domain.contains(p); });
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  QuadratureResult sum;
  double left = domain.lo;
  auto add = [&](double a, double b) {
    if (!(a < b)) return;
    const bool tail = !std::isfinite(a) || !std::isfinite(b);
    const QuadratureResult piece =
        integrate(f, Interval(a, b), rel_tol, tail ? tail_abs_tol : abs_tol);
    sum.value += piece.value;
    sum.error_estimate += piece.error_estimate;
    sum.evaluations += piece.evaluations;
  };
  for (double p : breakpoints) {
    add(left, p);
    left = p;
  }
  add(left, domain.hi);
  return sum;
}

/// Central-difference derivative of f at x.
///
/// The step is cbrt(eps) * max(scale, |x|), rounded so that x +- h are exact,
/// which balances truncation O(h^2 f''') against cancellation O(eps f / h).
template <class F>
double differentiate(F&& f, double x, double scale) {
  if (!(scale > 0.0)) throw DomainError("differentiate: scale must be positive");
  const double h0 = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(scale, std::abs(x));
  volatile double xp = x + h0;
  const double h = xp - x;
  const double fp = f(x + h);
  const double fm = f(x - h);
  const double d = (fp - fm) / (2.0 * h);
  if (!std::isfinite(d)) throw NonFinite("differentiate: non-finite function value near x");
  return d;
}

}  // namespace pdmwell
