#pragma once

/**
 * @file deformed_space.hpp
 * @brief Kinematics of the nonadditive-translation (gamma-deformed) space.
 *
 * The effective mass m(x) = m0 / (1 + gamma x)^2 diverges at x_d = -1/gamma.
 * The coordinate eta = ln(1 + gamma x) / gamma turns the position-dependent
 * mass problem into a constant-mass one, so plane waves and Fourier
 * transforms become ordinary ones in eta.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string_view>

#include "pdmwell/errors.hpp"
#include "pdmwell/numerics.hpp"
#include "pdmwell/special_functions.hpp"

namespace pdmwell {

/// Largest |gamma a| accepted; the deformed well degenerates at |gamma a| = 1.
inline constexpr double kMaxGammaA = 1.0 - 1e-6;

enum class Space { position, wavevector, deformed_eta };

inline std::string_view to_string(Space s) {
  switch (s) {
    case Space::position: return "x";
    case Space::wavevector: return "k";
    case Space::deformed_eta: return "eta";
  }
  return "?";
}

/// Symmetric infinite well of half-width a for a particle of mass m0/(1+gamma x)^2.
class DeformedWell {
 public:
  explicit DeformedWell(double gamma_a, double a = 1.0, double m0 = 1.0, double hbar = 1.0)
      : gamma_a_(gamma_a), a_(a), m0_(m0), hbar_(hbar) {
    if (!std::isfinite(gamma_a) || std::abs(gamma_a) > kMaxGammaA)
      throw DomainError("DeformedWell: |gamma a| must be below 1");
    if (!(a > 0.0) || !(m0 > 0.0) || !(hbar > 0.0) || !std::isfinite(a) || !std::isfinite(m0) ||
        !std::isfinite(hbar))
      throw DomainError("DeformedWell: a, m0 and hbar must be positive and finite");
  }

  double gamma_a() const { return gamma_a_; }
  double a() const { return a_; }
  double m0() const { return m0_; }
  double hbar() const { return hbar_; }
  double gamma() const { return gamma_a_ / a_; }

  /// Position where the mass diverges; empty in the undeformed case.
  std::optional<double> singular_point() const {
    if (gamma_a_ == 0.0) return std::nullopt;
    return -1.0 / gamma();
  }

  /// Energy unit hbar^2 pi^2 / (8 m0 a^2).
  double epsilon0() const {
    return hbar_ * hbar_ * std::numbers::pi * std::numbers::pi / (8.0 * m0_ * a_ * a_);
  }

  /// 1 + gamma x.
  double stretch(double x) const { return 1.0 + gamma() * x; }

 private:
  double gamma_a_;
  double a_;
  double m0_;
  double hbar_;
};

/// A wavefunction in one of the three representations.
struct WaveFunction {
  Space space;
  std::function<std::complex<double>(double)> eval;
  Interval support;
};

inline double mass_at(const DeformedWell& well, double x) {
  const double s = well.stretch(x);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (std::abs(s) <= 4.0 * eps * std::max(1.0, std::abs(well.gamma() * x)))
    throw SingularPoint("mass_at: x is the singular point -1/gamma");
  return well.m0() / (s * s);
}

inline double eta_of_x(const DeformedWell& well, double x) {
  const double gx = well.gamma() * x;
  if (!(1.0 + gx > 0.0)) throw DomainError("eta_of_x: requires 1 + gamma x > 0");
  return x * special::log1p_ratio(gx);
}

inline double x_of_eta(const DeformedWell& well, double eta) {
  return eta * special::expm1_ratio(well.gamma() * eta);
}

/// (1 + gamma x) f'(x).
template <class F>
double deformed_derivative(const DeformedWell& well, F&& f, double x) {
  if (well.gamma_a() != 0.0) (void)mass_at(well, x);
  return well.stretch(x) * differentiate(f, x, well.a());
}

/// Width of the well measured in eta: 2a atanh(gamma a)/(gamma a).
inline double box_length(const DeformedWell& well) {
  return 2.0 * well.a() * special::atanh_ratio(well.gamma_a());
}

/// Deformed plane wave (1+gamma x)^(-1/2) exp(i k eta(x)) with unit amplitude.
inline std::complex<double> plane_wave(const DeformedWell& well, double k, double x) {
  const double s = well.stretch(x);
  if (!(s > 0.0)) throw DomainError("plane_wave: requires 1 + gamma x > 0");
  return std::polar(1.0 / std::sqrt(s), k * eta_of_x(well, x));
}

/**
 * @brief Deformed Fourier transform of a position-space wavefunction.
 *
 * Evaluated in eta-space as (2 pi)^(-1/2) int phi(eta) exp(-i k eta) d eta with
 * phi(eta) = sqrt(1 + gamma x) psi(x) at x = x(eta), which is the same
 * integral as the x-space form with the (1+gamma x)^(-1/2) weight.
 */
inline std::complex<double> deformed_fourier(const DeformedWell& well, const WaveFunction& psi,
                                             double k, double rel_tol = kDefaultRelTol,
                                             double abs_tol = kDefaultAbsTol) {
  if (psi.space != Space::position)
    throw DomainError("deformed_fourier: expects a position-space wavefunction");
  if (!psi.support.finite())
    throw DomainError("deformed_fourier: expects a finite support");
  const double eta_lo = eta_of_x(well, psi.support.lo);
  const double eta_hi = eta_of_x(well, psi.support.hi);
  auto phi = [&](double eta) {
    const double x = x_of_eta(well, eta);
    return std::sqrt(well.stretch(x)) * psi.eval(x);
  };
  const Interval domain(eta_lo, eta_hi);
  const double re =
      integrate([&](double eta) { return (phi(eta) * std::polar(1.0, -k * eta)).real(); }, domain,
                rel_tol, abs_tol)
          .value;
  const double im =
      integrate([&](double eta) { return (phi(eta) * std::polar(1.0, -k * eta)).imag(); }, domain,
                rel_tol, abs_tol)
          .value;
  return std::complex<double>(re, im) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace pdmwell
