#pragma once

/**
 * @file info_measures.hpp
 * @brief Shannon entropy, Fisher information, disequilibrium and the
 *        Heisenberg/Shannon/Fisher lengths of one-dimensional densities.
 *
 * Two independent routes are provided. numeric_measures() evaluates the
 * defining integrals of any DensityProfile by quadrature. closed_measures()
 * evaluates the analytic results for the eigenstates of the deformed well.
 *
 * Entropies are stored in their sigma-scaled form:
 *
 *     position   : S_x = -int rho ln(sigma rho) dx = S - ln sigma
 *     wavevector : S_k = -int rho ln(rho / sigma) dk = S + ln sigma
 *
 * and the Shannon length is always exp(S) of the unscaled entropy.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <iterator>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <vector>

#include "pdmwell/deformed_space.hpp"
#include "pdmwell/numerics.hpp"
#include "pdmwell/special_functions.hpp"
#include "pdmwell/well_model.hpp"

namespace pdmwell {

/// Scale sigma that makes the logarithm argument of the entropy dimensionless.
struct MeasureContext {
  double sigma = 1.0;

  static MeasureContext for_well(const DeformedWell& well) { return {well.a()}; }
};

/// Analytic replacement for the slowly converging moment integrals: beyond
/// |z| > cutoff, int z rho dz and int z^2 rho dz come from the model instead
/// of quadrature.
struct TailModel {
  double cutoff;
  std::function<double()> first_moment_tail;
  std::function<double()> second_moment_tail;
};

/// A normalized density over its support, tagged with the space it lives in.
struct DensityProfile {
  std::function<double(double)> eval;
  Interval support;
  Space space = Space::position;
  /// Points where the integrands are not smooth or vanish; integration is split there.
  std::vector<double> breakpoints;
  std::optional<TailModel> tail;
};

struct MeasureSet {
  double shannon = 0.0;         // sigma-scaled entropy
  double fisher = 0.0;          // +inf for densities with jump discontinuities
  double disequilibrium = 0.0;  // int rho^2
  double heisenberg_length = 0.0;
  double shannon_length = 0.0;
  double fisher_length = 0.0;
};

/// Unscaled entropy S recovered from the stored sigma-scaled value.
inline double raw_shannon(double scaled, Space space, const MeasureContext& ctx) {
  return space == Space::wavevector ? scaled - std::log(ctx.sigma) : scaled + std::log(ctx.sigma);
}

/// Normalization tolerance required by numeric_measures.
inline constexpr double kNormalizationTolerance = 1e-6;

/// Absolute tolerance for unbounded end pieces. Oscillating tails that decay
/// like 1/k^4 cost O(tol^(-1/3)) oscillations to resolve, so they are held to
/// a looser but still negligible target.
inline constexpr double kTailAbsTol = 1e-10;

/**
 * @brief All six measures of a density by quadrature.
 *
 * When sqrt_density_derivative is given (the derivative of a real amplitude
 * whose square is the density) the Fisher information is 4 int (amplitude')^2;
 * otherwise int rho'^2 / rho with rho' from finite differences and the
 * integrand dropped where rho underflows. A density that does not vanish at
 * a finite end of its support has infinite Fisher information and zero
 * Fisher length.
 */
inline MeasureSet numeric_measures(const DensityProfile& density,
                                   const std::function<double(double)>& sqrt_density_derivative,
                                   const MeasureContext& ctx, double rel_tol = kDefaultRelTol,
                                   double abs_tol = kDefaultAbsTol,
                                   double tail_abs_tol = kTailAbsTol) {
  const auto& rho = density.eval;
  auto quad = [&](auto&& f) {
    return integrate_pieces(f, density.support, density.breakpoints, rel_tol, abs_tol,
                            tail_abs_tol)
        .value;
  };

  const double norm = quad([&](double z) { return rho(z); });
  if (std::abs(norm - 1.0) > kNormalizationTolerance)
    throw NotNormalized("numeric_measures: density integrates to " + std::to_string(norm));

  const double sigma = ctx.sigma;
  const bool k_space = density.space == Space::wavevector;
  const double log_shift = k_space ? -std::log(sigma) : std::log(sigma);

  MeasureSet m;
  // -int rho ln(sigma^(+-1) rho) = -int rho ln rho - ln(sigma^(+-1)) int rho
  const double entropy = -quad([&](double z) { return xlogx(rho(z)); });
  m.shannon = entropy - log_shift * norm;
  m.disequilibrium = quad([&](double z) {
    const double p = rho(z);
    return p * p;
  });
  double mean = 0.0;
  double second = 0.0;
  if (density.tail) {
    const Interval core(-density.tail->cutoff, density.tail->cutoff);
    auto core_quad = [&](auto&& f) {
      return integrate_pieces(f, core, density.breakpoints, rel_tol, abs_tol).value;
    };
    mean = core_quad([&](double z) { return z * rho(z); }) + density.tail->first_moment_tail();
    second =
        core_quad([&](double z) { return z * z * rho(z); }) + density.tail->second_moment_tail();
  } else {
    mean = quad([&](double z) { return z * rho(z); });
    second = quad([&](double z) { return z * z * rho(z); });
  }
  m.heisenberg_length = std::sqrt(second - mean * mean);
  m.shannon_length = std::exp(raw_shannon(m.shannon, density.space, ctx));

  const Interval& s = density.support;
  bool jump = false;
  if (s.finite()) {
    const double inset = 1e-12 * s.width();
    const double scale = 1.0 / s.width();
    jump = rho(s.lo + inset) > 1e-8 * scale || rho(s.hi - inset) > 1e-8 * scale;
  }
  if (jump) {
    m.fisher = kInf;
    m.fisher_length = 0.0;
    return m;
  }

  if (sqrt_density_derivative) {
    m.fisher = 4.0 * quad([&](double z) {
      const double d = sqrt_density_derivative(z);
      return d * d;
    });
  } else {
    const double step_scale = s.finite() ? s.width() : 1.0;
    const double h = std::cbrt(std::numeric_limits<double>::epsilon());
    // the stencil shrinks near a finite end, so it never samples past a wall,
    // and near a breakpoint, where rho may vanish and truncation error dominates
    std::vector<double> marks = density.breakpoints;
    std::sort(marks.begin(), marks.end());
    auto slope = [&](double z) {
      double gap = std::min(z - s.lo, s.hi - z);
      const auto it = std::lower_bound(marks.begin(), marks.end(), z);
      if (it != marks.end()) gap = std::min(gap, *it - z);
      if (it != marks.begin()) gap = std::min(gap, z - *std::prev(it));
      const double base = h * std::max(step_scale, std::abs(z));
      const double step = gap > 0.0 ? std::min(base, 0.5 * gap) : base;
      return (rho(z + step) - rho(z - step)) / (2.0 * step);
    };
    m.fisher = quad([&](double z) {
      const double p = rho(z);
      if (p < 1e-300) return 0.0;
      const double d = slope(z);
      return d * d / p;
    });
  }
  m.fisher_length = 1.0 / std::sqrt(m.fisher);
  return m;
}

inline MeasureSet numeric_measures(const DensityProfile& density, const MeasureContext& ctx) {
  return numeric_measures(density, {}, ctx);
}

// ---------------------------------------------------------------------------
// Density profiles of the well model.

/// rho_n(x) with its nodes as breakpoints.
inline DensityProfile position_profile(const EigenState& state) {
  const double a = state.well().a();
  return {[state](double x) { return density_x(state, x); }, Interval(-a, a), Space::position,
          nodes_x(state), std::nullopt};
}

/// Derivative of the real eigenfunction, taken on its analytic continuation
/// so the stencil never straddles a wall.
inline std::function<double(double)> position_amplitude_derivative(const EigenState& state) {
  return [state](double x) {
    return differentiate([&](double y) { return eigenfunction_x_unclipped(state, y); }, x,
                         state.well().a());
  };
}

/**
 * Cutoff K for the explicit zero-to-zero panels of rho~_n(k).
 *
 * The envelope of rho~_n is 4 pi n^2 / (L^3 k^4), so the tails of
 * rho, |rho ln rho| and the Fisher integrand beyond K are bounded by roughly
 * 4 pi n^2 |ln rho| / (3 L^3 K^3). K is chosen so this is below 1e-11
 * (with |ln rho| <= 50), then moved up to the next zero of the density; the
 * unbounded remainders then converge on the first quadrature panel.
 */
inline double wavevector_cutoff(const EigenState& state) {
  const double length = state.box_length();
  const double nn = state.n();
  const double bound = 4.0 * std::numbers::pi * nn * nn * 50.0 / (3.0 * length * length * length);
  const double k = std::cbrt(bound / 1e-11);
  // zeros sit at k = m pi / L with m = n (mod 2), m != +-n
  long m = static_cast<long>(std::ceil(k * length / std::numbers::pi));
  if ((m - state.n()) % 2 != 0) ++m;
  if (m <= state.n()) m = state.n() + 2;
  return m * std::numbers::pi / length;
}

/**
 * int_{|k| > K} k^2 rho~_n dk with sin^2 replaced by its mean 1/2.
 *
 * rho~_n = (4 pi n^2/L^3) sin^2(.)/(k^2 - c^2)^2 with c = n pi/L, so the
 * averaged tail on both sides is
 *     (4 pi n^2/L^3) [K/(2(K^2 - c^2)) - ln((K - c)/(K + c))/(4c)].
 * With K on a zero of the density the boundary terms of the oscillating
 * remainder vanish and the error is O(1/K^3).
 */
inline double wavevector_second_moment_tail(const EigenState& state, double cutoff) {
  const double length = state.box_length();
  const double c = state.wavenumber();
  const double nn = state.n();
  const double scale = 4.0 * std::numbers::pi * nn * nn / (length * length * length);
  const double log_ratio = std::log1p(-2.0 * c / (cutoff + c));
  return scale * (cutoff / (2.0 * (cutoff * cutoff - c * c)) - log_ratio / (4.0 * c));
}

/// rho~_n(k) over the real line; zeros within the cutoff are breakpoints.
inline DensityProfile wavevector_profile(const EigenState& state) {
  const double cut = wavevector_cutoff(state);
  std::vector<double> breaks = zeros_k(state, cut);
  breaks.push_back(-cut);
  breaks.push_back(cut);
  return {[state](double k) { return density_k(state, k); }, Interval(-kInf, kInf),
          Space::wavevector, std::move(breaks),
          TailModel{cut, [] { return 0.0; },
                    [state, cut] { return wavevector_second_moment_tail(state, cut); }}};
}

inline std::function<double(double)> wavevector_amplitude_derivative(const EigenState& state) {
  return [state](double k) {
    return differentiate([&](double q) { return amplitude_k(state, q); }, k,
                         1.0 / state.well().a());
  };
}

/// varrho_n(eta) on the eta image of the well.
inline DensityProfile eta_profile(const EigenState& state) {
  std::vector<double> breaks;
  for (double x : nodes_x(state)) breaks.push_back(eta_of_x(state.well(), x));
  return {[state](double eta) { return density_eta(state, eta); },
          Interval(state.eta_left(), state.eta_right()), Space::deformed_eta, std::move(breaks), std::nullopt};
}

inline DensityProfile classical_profile(const ClassicalEnsemble& ens) {
  const double a = ens.well.a();
  return {[ens](double x) { return classical_density(ens, x); }, Interval(-a, a),
          Space::position, {}, std::nullopt};
}

/// Oracle measures of an eigenstate in any of the three spaces.
inline MeasureSet numeric_state_measures(const EigenState& state, Space space,
                                         const MeasureContext& ctx) {
  if (space == Space::wavevector)
    return numeric_measures(wavevector_profile(state), wavevector_amplitude_derivative(state), ctx);
  if (space == Space::position)
    return numeric_measures(position_profile(state), position_amplitude_derivative(state), ctx);
  auto amplitude_derivative = [state](double eta) {
    return state.amplitude() * state.wavenumber() *
           std::cos(state.wavenumber() * (eta - state.eta_left()));
  };
  return numeric_measures(eta_profile(state), amplitude_derivative, ctx);
}

// ---------------------------------------------------------------------------
// f(n): the trigonometric functional of the k-space entropy.

/// ln(8 pi) + 2(1 - c), the n -> infinity limit of f(n).
inline double f_limit() {
  return std::log(8.0 * std::numbers::pi) + 2.0 * (1.0 - special::kEulerGamma);
}

namespace detail {

/**
 * f(n) = ln(8/pi) - pi int_{-n pi/2}^{inf} g ln g du,  g = n^2 sin^2 u/(u^2 + pi n u)^2.
 *
 * The integral runs panel by panel between consecutive zeros of sin u (the
 * removable point u = 0 is a panel edge and g there is 1/pi^2 through sinc).
 * Past U = M pi the oscillation is averaged: g ln g is replaced by
 * (n^2/u^4)[ln(n^2/u^4)/2 + 1/2 - ln 2] using <sin^2> = 1/2 and
 * <sin^2 ln sin^2> = 1/2 - ln 2, and the resulting tail integrated in closed
 * form. The residual error of the averaged tail is O(n^2 ln U / U^4).
 */
inline double compute_f(int n) {
  const double pi = std::numbers::pi;
  const double nn = static_cast<double>(n);
  auto g_ln_g = [nn, pi](double u) {
    const double s = special::sinc(u);
    const double g = nn * nn * s * s / ((u + pi * nn) * (u + pi * nn));
    return xlogx(g);
  };
  const int panels = std::max(1000, 200 * n);
  const double lower = -0.5 * pi * nn;
  double sum = 0.0;
  double left = lower;
  for (int m = static_cast<int>(std::ceil(lower / pi)); m <= panels; ++m) {
    const double right = m * pi;
    if (right <= left) continue;
    sum += integrate(g_ln_g, Interval(left, right), 1e-12, 1e-16).value;
    left = right;
  }
  const double upper = left;
  // int_U^inf (n^2/u^4)[ln n^2 - 4 ln u]/2 du + (1/2 - ln 2) int_U^inf n^2/u^4 du
  const double u3 = upper * upper * upper;
  const double base = nn * nn / (3.0 * u3);  // int_U^inf n^2/u^4
  const double log_part = 0.5 * (std::log(nn * nn) * base -
                                 4.0 * nn * nn * (std::log(upper) / (3.0 * u3) + 1.0 / (9.0 * u3)));
  const double tail = log_part + (0.5 - std::numbers::ln2) * base;
  return std::log(8.0 / pi) - pi * (sum + tail);
}

}  // namespace detail

/// Memo table for f(n); each value is computed once per process, even under
/// concurrent requests for the same n.
class FTable {
 public:
  double get(int n) {
    if (n < 1) throw DomainError("f(n): n must be >= 1");
    std::shared_future<double> future;
    std::promise<double> promise;
    bool owner = false;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = values_.find(n);
      if (it == values_.end()) {
        future = promise.get_future().share();
        values_.emplace(n, future);
        owner = true;
      } else {
        future = it->second;
      }
    }
    if (owner) {
      try {
        promise.set_value(detail::compute_f(n));
      } catch (...) {
        promise.set_exception(std::current_exception());
        std::lock_guard<std::mutex> lock(mutex_);
        values_.erase(n);
      }
    }
    return future.get();
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return values_.size();
  }

  static FTable& global() {
    static FTable table;
    return table;
  }

 private:
  mutable std::mutex mutex_;
  std::map<int, std::shared_future<double>> values_;
};

inline double f_of_n(int n) { return FTable::global().get(n); }

// ---------------------------------------------------------------------------
// Closed forms for the eigenstates.

/// Fisher information of rho~_n: 4 Var(eta) = L^2 [1/3 - 2/(n pi)^2].
inline double fisher_k_closed(const EigenState& state) {
  const double length = state.box_length();
  const double big_n = state.n() * std::numbers::pi;
  return length * length * (1.0 / 3.0 - 2.0 / (big_n * big_n));
}

/**
 * 4 <eta^2> about eta = 0, i.e.
 * 4 L^2 [1/3 - ln(1+gamma a)/(gamma L) + ln^2(1+gamma a)/(gamma L)^2 - 1/(2 (n pi)^2)].
 *
 * Equals fisher_k_closed() only when the eta image of the well is centred on
 * the origin (gamma a = 0); otherwise it exceeds it by (2 eta_centre)^2. Kept
 * for the verify report, which lists the difference.
 */
inline double four_eta_second_moment(const EigenState& state) {
  const double length = state.box_length();
  const double big_n = state.n() * std::numbers::pi;
  const double h = state.eta_right() / length;
  return 4.0 * length * length * (1.0 / 3.0 - h + h * h - 1.0 / (2.0 * big_n * big_n));
}

inline MeasureSet closed_measures(const EigenState& state, Space space, const MeasureContext& ctx) {
  const DeformedWell& w = state.well();
  const detail::Deformation d(w.gamma_a());
  const double pi = std::numbers::pi;
  const double length = state.box_length();
  const double n = state.n();
  const double big_n = n * pi;
  const double n2 = big_n * big_n;
  const double t2 = d.t * d.t;
  const double sigma = ctx.sigma;

  MeasureSet m;
  if (space == Space::position) {
    const double k = state.wavenumber();
    // ln(2 L sqrt(1 - g^2 a^2)/sigma) - 1; independent of n.
    m.shannon = std::log(2.0 * length * std::sqrt(d.one_minus_ga2) / sigma) - 1.0;
    m.fisher = 4.0 * k * k / (d.r * d.one_minus_ga2 * d.one_minus_ga2) *
               (1.0 + t2 / (4.0 * t2 + n2));
    m.disequilibrium = 3.0 / (4.0 * w.a()) / (d.r * d.r * d.one_minus_ga2) * 4.0 * n2 * n2 /
                       ((t2 + n2) * (t2 + 4.0 * n2));
    const Moments mom = quantum_moments(state);
    m.heisenberg_length = std::sqrt(mom.x_variance());
    m.shannon_length = 2.0 * length / std::numbers::e * std::sqrt(d.one_minus_ga2);
  } else if (space == Space::wavevector) {
    const double f = f_of_n(state.n());
    m.shannon = -std::log(2.0 * length / sigma) + f;
    m.fisher = fisher_k_closed(state);
    m.disequilibrium = length / (6.0 * pi) * (1.0 + 15.0 / (2.0 * n2));
    m.heisenberg_length = state.wavenumber();
    m.shannon_length = std::exp(f) / (2.0 * length);
  } else {
    // eta: an ordinary box of length L.
    const double k = state.wavenumber();
    m.shannon = std::log(2.0 * length / sigma) - 1.0;
    m.fisher = 4.0 * k * k;
    m.disequilibrium = 3.0 / (2.0 * length);
    m.heisenberg_length = length * std::sqrt(1.0 / 12.0 - 1.0 / (2.0 * n2));
    m.shannon_length = 2.0 * length / std::numbers::e;
  }
  m.fisher_length = 1.0 / std::sqrt(m.fisher);
  return m;
}

/// Shannon entropy of the classical density, ln(L sqrt(1 - g^2 a^2)/sigma).
inline double classical_shannon_closed(const DeformedWell& well, const MeasureContext& ctx) {
  const detail::Deformation d(well.gamma_a());
  return std::log(box_length(well) * std::sqrt(d.one_minus_ga2) / ctx.sigma);
}

/// Pointwise entropy density whose integral is the sigma-scaled entropy.
inline double entropy_density(const EigenState& state, Space space, double z,
                              const MeasureContext& ctx) {
  switch (space) {
    case Space::position: {
      const double p = density_x(state, z);
      return -xlogx(ctx.sigma * p) / ctx.sigma;
    }
    case Space::wavevector: {
      const double p = density_k(state, z);
      return -ctx.sigma * xlogx(p / ctx.sigma);
    }
    case Space::deformed_eta: {
      const double p = density_eta(state, z);
      return -xlogx(ctx.sigma * p) / ctx.sigma;
    }
  }
  return 0.0;
}

struct EntropySums {
  double sum_xk;     // S_x + S_k
  double sum_eta_k;  // S_eta + S_k = f(n) - 1
  double bound;      // 1 + ln pi
};

inline EntropySums bbm_sum(const EigenState& state, const MeasureContext& ctx) {
  const double sx = closed_measures(state, Space::position, ctx).shannon;
  const double sk = closed_measures(state, Space::wavevector, ctx).shannon;
  // An ordinary box of length L in eta has S_eta = ln(2L/sigma) - 1.
  const double s_eta = std::log(2.0 * state.box_length() / ctx.sigma) - 1.0;
  return {sx + sk, s_eta + sk, 1.0 + std::log(std::numbers::pi)};
}

}  // namespace pdmwell
