#pragma once

/**
 * @file complexity.hpp
 * @brief Cramer-Rao, Fisher-Shannon and LMC complexities.
 *
 *     C_CR  = F L_H^2
 *     C_FS  = F L_S^2 / (2 pi e)
 *     C_LMC = D L_S
 *
 * complexity_numeric() combines any MeasureSet; complexity_closed() writes
 * out the analytic eigenstate results term by term rather than recombining
 * closed_measures(), so the two routes check each other.
 */

#include <cmath>
#include <numbers>

#include "pdmwell/info_measures.hpp"
#include "pdmwell/well_model.hpp"

namespace pdmwell {

struct ComplexitySet {
  double c_cr = 0.0;
  double c_fs = 0.0;
  double c_lmc = 0.0;
};

inline ComplexitySet complexity_numeric(const MeasureSet& m) {
  const double values[] = {m.fisher, m.disequilibrium, m.heisenberg_length, m.shannon_length};
  for (double v : values)
    if (!std::isfinite(v) || !(v > 0.0))
      throw NonFinite("complexity_numeric: measures must be finite and positive");
  const double two_pi_e = 2.0 * std::numbers::pi * std::numbers::e;
  return {m.fisher * m.heisenberg_length * m.heisenberg_length,
          m.fisher * m.shannon_length * m.shannon_length / two_pi_e,
          m.disequilibrium * m.shannon_length};
}

namespace detail {

// 1 + atanh^2/(4 atanh^2 + (n pi)^2), shared by F, C_CR and C_FS in x.
inline double fisher_bracket(double t2, double n2) { return 1.0 + t2 / (4.0 * t2 + n2); }

// 4 pi^4 n^4 / ([atanh^2 + pi^2 n^2][atanh^2 + 4 pi^2 n^2]), shared by D and C_LMC in x.
inline double diseq_bracket(double t2, double n2) {
  return 4.0 * n2 * n2 / ((t2 + n2) * (t2 + 4.0 * n2));
}

}  // namespace detail

inline ComplexitySet complexity_closed(const EigenState& state, Space space) {
  const double pi = std::numbers::pi;
  const double e = std::numbers::e;
  const detail::Deformation d(state.well().gamma_a());
  const double n = state.n();
  const double big_n = n * pi;
  const double n2 = big_n * big_n;

  if (space == Space::position) {
    const double t2 = d.t * d.t;
    const double ga2 = d.ga * d.ga;
    // (n pi g a/(1-g^2a^2))^2 atanh^-5 [..] {atanh N^2/(4 atanh^2+N^2) - g a N^4/(atanh^2+N^2)^2}
    // with the braces divided through by g a and regrouped over a common
    // denominator so the O((g a)^2) difference is formed without cancellation.
    const double s = t2 / n2;
    const double numer =
        d.q + (2.0 * d.r - 4.0) * d.r * d.r / n2 + std::pow(d.r, 5) * ga2 / (n2 * n2);
    const double denom = (1.0 + 4.0 * s) * (1.0 + s) * (1.0 + s);
    const double c_cr = n2 / (d.one_minus_ga2 * d.one_minus_ga2 * std::pow(d.r, 5)) *
                        detail::fisher_bracket(t2, n2) * numer / denom;
    const double c_fs = 8.0 * pi * n * n / (e * e * e) / (d.r * d.one_minus_ga2) *
                        detail::fisher_bracket(t2, n2);
    const double c_lmc =
        3.0 / e / (d.r * std::sqrt(d.one_minus_ga2)) * detail::diseq_bracket(t2, n2);
    return {c_cr, c_fs, c_lmc};
  }
  if (space == Space::wavevector) {
    const double f = f_of_n(state.n());
    const double bracket = 1.0 / 12.0 - 1.0 / (2.0 * n2);
    const double c_cr = 4.0 * n2 * bracket;
    const double c_fs = std::exp(2.0 * f - 1.0) / (2.0 * pi) * bracket;
    const double c_lmc = std::exp(f) / (12.0 * pi) * (1.0 + 15.0 / (2.0 * n2));
    return {c_cr, c_fs, c_lmc};
  }
  throw DomainError("complexity_closed: only position and wavevector spaces");
}

/// Leading n >> 1 behaviour of complexity_closed().
inline ComplexitySet rydberg_asymptotics(const DeformedWell& well, Space space, int n) {
  if (n < 1) throw DomainError("rydberg_asymptotics: n must be >= 1");
  const double pi = std::numbers::pi;
  const double e = std::numbers::e;
  const double c = special::kEulerGamma;
  const detail::Deformation d(well.gamma_a());
  const double big_n = n * pi;
  const double n2 = big_n * big_n;

  if (space == Space::position) {
    // (n pi g a/(1-g^2 a^2))^2 atanh^-4 [1 - g a/atanh] = N^2 q / (r^5 (1-g^2a^2)^2)
    const double c_cr = n2 * d.q / (std::pow(d.r, 5) * d.one_minus_ga2 * d.one_minus_ga2);
    const double c_fs = 8.0 * pi * n * n / (e * e * e) / (d.r * d.one_minus_ga2);
    const double c_lmc = 3.0 / e / (d.r * std::sqrt(d.one_minus_ga2));
    return {c_cr, c_fs, c_lmc};
  }
  if (space == Space::wavevector) {
    return {n2 / 3.0, 8.0 * pi / 3.0 * std::exp(3.0 - 4.0 * c), 2.0 / 3.0 * std::exp(2.0 * (1.0 - c))};
  }
  throw DomainError("rydberg_asymptotics: only position and wavevector spaces");
}

}  // namespace pdmwell
