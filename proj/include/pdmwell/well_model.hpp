#pragma once

/**
 * @file well_model.hpp
 * @brief Stationary states of the position-dependent-mass particle in the
 *        symmetric infinite well |x| < a.
 *
 * In eta the well is an ordinary box of length L_gamma, so the spectrum is
 * k_n = n pi / L_gamma and
 *
 *     psi_n(x) = A (1 + gamma x)^(-1/2) sin[k_n (eta(x) - eta(a))],  A = sqrt(2/L_gamma).
 *
 * Closed forms below are written in terms of t = atanh(gamma a),
 * r = t/(gamma a) and q = (r - 1)/(gamma a)^2 so that every expression stays
 * finite and accurate down to gamma a = 0.
 */

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pdmwell/deformed_space.hpp"
#include "pdmwell/special_functions.hpp"

namespace pdmwell {

/// Eigenstate n >= 1 of a DeformedWell with its derived constants.
class EigenState {
 public:
  EigenState(const DeformedWell& well, int n) : well_(well), n_(n) {
    if (n < 1) throw DomainError("EigenState: quantum number must be >= 1");
    box_length_ = pdmwell::box_length(well);
    wavenumber_ = n * std::numbers::pi / box_length_;
    amplitude_ = std::sqrt(2.0 / box_length_);
    eta_left_ = eta_of_x(well, -well.a());
    eta_right_ = eta_of_x(well, well.a());
  }

  const DeformedWell& well() const { return well_; }
  int n() const { return n_; }
  double box_length() const { return box_length_; }
  double wavenumber() const { return wavenumber_; }
  double amplitude() const { return amplitude_; }
  /// Walls of the well in eta.
  double eta_left() const { return eta_left_; }
  double eta_right() const { return eta_right_; }
  /// E_n = hbar^2 k_n^2 / (2 m0), in absolute units.
  double energy() const {
    return well_.hbar() * well_.hbar() * wavenumber_ * wavenumber_ / (2.0 * well_.m0());
  }
  /// Phase of the sine: k_n (eta(x) - eta(a)); runs monotonically from -n pi to 0.
  double phase(double x) const { return wavenumber_ * (eta_of_x(well_, x) - eta_right_); }

 private:
  DeformedWell well_;
  int n_;
  double box_length_;
  double wavenumber_;
  double amplitude_;
  double eta_left_;
  double eta_right_;
};

/// Classical particle of fixed energy bouncing between the walls.
struct ClassicalEnsemble {
  DeformedWell well;
  double energy;

  ClassicalEnsemble(const DeformedWell& w, double e) : well(w), energy(e) {
    if (!(e > 0.0) || !std::isfinite(e)) throw DomainError("ClassicalEnsemble: energy must be > 0");
  }
  /// Ensemble at the energy of a quantum state.
  static ClassicalEnsemble matching(const EigenState& state) {
    return ClassicalEnsemble(state.well(), state.energy());
  }
};

struct Moments {
  double x_mean;
  double x2_mean;
  double p_mean;
  double p2_mean;

  double x_variance() const { return x2_mean - x_mean * x_mean; }
};

struct WaveVectorMoments {
  double k_mean;
  double k2_mean;
};

namespace detail {

struct Deformation {
  double ga;   // gamma a
  double t;    // atanh(gamma a)
  double r;    // t / (gamma a)
  double q;    // (r - 1) / (gamma a)^2
  double one_minus_ga2;

  explicit Deformation(double gamma_a)
      : ga(gamma_a),
        t(std::atanh(gamma_a)),
        r(special::atanh_ratio(gamma_a)),
        q(special::atanh_ratio_excess(gamma_a)),
        one_minus_ga2((1.0 - gamma_a) * (1.0 + gamma_a)) {}
};

}  // namespace detail

/// E_n in units of epsilon0: n^2 [gamma a / atanh(gamma a)]^2.
inline double energy_level(const EigenState& state) {
  const double r = special::atanh_ratio(state.well().gamma_a());
  const double n = state.n();
  return n * n / (r * r);
}

/// psi_n(x) continued analytically past the walls (valid while 1 + gamma x > 0).
inline double eigenfunction_x_unclipped(const EigenState& state, double x) {
  return state.amplitude() / std::sqrt(state.well().stretch(x)) * std::sin(state.phase(x));
}

/// psi_n(x); zero outside the open well.
inline double eigenfunction_x(const EigenState& state, double x) {
  if (!(std::abs(x) < state.well().a())) return 0.0;
  return eigenfunction_x_unclipped(state, x);
}

inline double density_x(const EigenState& state, double x) {
  const double psi = eigenfunction_x(state, x);
  return psi * psi;
}

/// Interior zeros of psi_n, ascending; there are n - 1 of them.
inline std::vector<double> nodes_x(const EigenState& state) {
  std::vector<double> nodes;
  for (int m = state.n() - 1; m >= 1; --m) {
    const double eta = state.eta_right() - m * std::numbers::pi / state.wavenumber();
    nodes.push_back(x_of_eta(state.well(), eta));
  }
  return nodes;
}

/// Real modulus-with-sign zeta_n(k) of the k-space eigenfunction.
///
/// With u = k L/2, v = u - n pi/2 and w = u + n pi/2 this is
/// sqrt(pi n^2 L/4) sin(v)/(v w); the removable zeros of v and w are handled
/// through sinc, using sin(v) = (-1)^n sin(w).
inline double amplitude_k(const EigenState& state, double k) {
  const double length = state.box_length();
  const double half_n_pi = 0.5 * state.n() * std::numbers::pi;
  const double u = 0.5 * k * length;
  const double v = u - half_n_pi;
  const double w = u + half_n_pi;
  const double prefactor = std::sqrt(std::numbers::pi * state.n() * state.n() * length / 4.0);
  if (std::abs(v) <= std::abs(w)) return prefactor * special::sinc(v) / w;
  const double sign = (state.n() % 2 == 0) ? 1.0 : -1.0;
  return prefactor * sign * special::sinc(w) / v;
}

/// Phase alpha_n(k) = [k ln(1 - gamma^2 a^2)/gamma + pi (n + 1)] / 2.
inline double phase_k(const EigenState& state, double k) {
  const DeformedWell& w = state.well();
  // ln(1 - (gamma a)^2)/gamma, finite as gamma -> 0.
  const double g = w.gamma();
  const double ga = w.gamma_a();
  const double log_term = -g * w.a() * w.a() * special::log1p_ratio(-ga * ga);
  return 0.5 * (k * log_term + std::numbers::pi * (state.n() + 1));
}

/// psi~_n(k) = zeta_n(k) exp(-i alpha_n(k)).
inline std::complex<double> eigenfunction_k(const EigenState& state, double k) {
  return std::polar(1.0, -phase_k(state, k)) * amplitude_k(state, k);
}

inline double density_k(const EigenState& state, double k) {
  const double z = amplitude_k(state, k);
  return z * z;
}

/// Zeros of rho~_n(k) with |k| <= k_max, ascending. The two points
/// k = +-n pi/L where the sine factor vanishes but the density does not are excluded.
inline std::vector<double> zeros_k(const EigenState& state, double k_max) {
  std::vector<double> zeros;
  const double step = std::numbers::pi / state.box_length();
  const int n = state.n();
  const int m_max = static_cast<int>(std::floor(k_max / step)) + 1;
  for (int m = -m_max; m <= m_max; ++m) {
    if ((m - n) % 2 != 0 || m == n || m == -n) continue;
    const double k = m * step;
    if (std::abs(k) <= k_max) zeros.push_back(k);
  }
  return zeros;
}

/// rho_classic(x) = 1/[L_gamma (1 + gamma x)] on the closed well.
inline double classical_density(const ClassicalEnsemble& ens, double x) {
  if (std::abs(x) > ens.well.a()) throw DomainError("classical_density: x outside the well");
  return 1.0 / (box_length(ens.well) * ens.well.stretch(x));
}

/// rho_n transported to eta: A^2 sin^2(k_n (eta - eta_left)) inside the box.
inline double density_eta(const EigenState& state, double eta) {
  if (!(eta > state.eta_left() && eta < state.eta_right())) return 0.0;
  const double s = std::sin(state.wavenumber() * (eta - state.eta_left()));
  return state.amplitude() * state.amplitude() * s * s;
}

inline WaveFunction position_wavefunction(const EigenState& state) {
  const double a = state.well().a();
  return {Space::position,
          [state](double x) { return std::complex<double>(eigenfunction_x(state, x), 0.0); },
          Interval(-a, a)};
}

inline WaveFunction wavevector_wavefunction(const EigenState& state) {
  return {Space::wavevector, [state](double k) { return eigenfunction_k(state, k); },
          Interval(-kInf, kInf)};
}

/// <x>, <x^2>, <p>, <p^2> of the quantum state.
inline Moments quantum_moments(const EigenState& state) {
  const DeformedWell& w = state.well();
  const detail::Deformation d(w.gamma_a());
  const double a = w.a();
  const double big_n = state.n() * std::numbers::pi;
  const double n2 = big_n * big_n;
  const double t2 = d.t * d.t;

  // (1/gamma)[gamma a/atanh - 1] = -a (gamma a) q / r
  const double x_mean = -a * d.ga * d.q / d.r - a * d.t / (t2 + n2);
  // -(1/gamma^2)[gamma a/atanh - 1] = a^2 q / r and a atanh/gamma = a^2 r
  const double x2_mean =
      a * a * d.q / d.r - 4.0 * a * a * d.r / (4.0 * t2 + n2) + 2.0 * a * a * d.r / (t2 + n2);
  const double k = state.wavenumber();
  const double p2_mean = w.hbar() * w.hbar() * k * k / (d.r * d.one_minus_ga2 * d.one_minus_ga2) *
                         (1.0 + t2 / (4.0 * t2 + n2));
  return {x_mean, x2_mean, 0.0, p2_mean};
}

/// Time averages over the classical orbit at the ensemble energy.
inline Moments classical_moments(const ClassicalEnsemble& ens) {
  const detail::Deformation d(ens.well.gamma_a());
  const double a = ens.well.a();
  const double x_mean = -a * d.ga * d.q / d.r;
  const double x2_mean = a * a * d.q / d.r;
  const double p2_mean =
      2.0 * ens.well.m0() * ens.energy / (d.r * d.one_minus_ga2 * d.one_minus_ga2);
  return {x_mean, x2_mean, 0.0, p2_mean};
}

/// <k> = 0 and <k^2> = (n pi / L_gamma)^2.
inline WaveVectorMoments k_moments(const EigenState& state) {
  const double k = state.wavenumber();
  return {0.0, k * k};
}

}  // namespace pdmwell
