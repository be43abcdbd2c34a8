#pragma once

/**
 * @file verify.hpp
 * @brief Self-verification suite run by the `verify` command.
 *
 * Every check records a measured deviation and the tolerance it is held to.
 * Inequality checks record the size of the violation (0 when satisfied).
 * INFO rows report a quantity without affecting the outcome.
 */

#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pdmwell/complexity.hpp"
#include "pdmwell/info_measures.hpp"
#include "pdmwell/report.hpp"

namespace pdmwell::report {

enum class Status { pass, fail, info };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::info: return "INFO";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  double deviation;
  std::optional<double> tolerance;
  Status status;
};

/// Closed forms under test; replaceable so the suite itself can be tested.
struct VerifyHooks {
  std::function<MeasureSet(const EigenState&, Space, const MeasureContext&)> closed =
      [](const EigenState& s, Space sp, const MeasureContext& c) {
        return closed_measures(s, sp, c);
      };
  std::function<ComplexitySet(const EigenState&, Space)> complexity =
      [](const EigenState& s, Space sp) { return complexity_closed(s, sp); };
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (c.status == Status::fail) return false;
    return true;
  }

  Table table() const {
    Table t{{"check", "deviation", "tolerance", "status"}, {}};
    for (const auto& c : checks)
      t.add({c.name, c.deviation, c.tolerance ? Cell(*c.tolerance) : Cell(),
             std::string(to_string(c.status))});
    return t;
  }
};

namespace detail {

class Recorder {
 public:
  explicit Recorder(VerifyReport& r) : report_(r) {}

  void compare(const std::string& name, double deviation, double tol) {
    const bool ok = std::isfinite(deviation) && deviation <= tol;
    report_.checks.push_back({name, finite_or_max(deviation), tol, ok ? Status::pass : Status::fail});
  }
  void require(const std::string& name, bool ok, double measured) {
    report_.checks.push_back({name, finite_or_max(measured), std::nullopt,
                              ok ? Status::pass : Status::fail});
  }
  void info(const std::string& name, double value) {
    report_.checks.push_back({name, finite_or_max(value), std::nullopt, Status::info});
  }
  /// Runs body; a library error inside it becomes a failed check.
  template <class Body>
  void guarded(const std::string& name, Body&& body) {
    try {
      body();
    } catch (const Error& e) {
      report_.checks.push_back({name + " (" + e.what() + ")",
                                std::numeric_limits<double>::max(), std::nullopt, Status::fail});
    }
  }

 private:
  static double finite_or_max(double v) {
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  }
  VerifyReport& report_;
};

inline std::string tag(Space s, int n, double ga) {
  std::ostringstream o;
  o << to_string(s) << "/n=" << n << "/ga=" << ga;
  return o.str();
}
inline std::string ga_tag(double ga) {
  std::ostringstream o;
  o << "ga=" << ga;
  return o.str();
}
inline std::string tag(int n, double ga) {
  std::ostringstream o;
  o << "n=" << n << "/ga=" << ga;
  return o.str();
}

/// |a - b| / max(1, |b|).
inline double mixed_dev(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
inline double rel_dev(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline double max_measure_dev(const MeasureSet& a, const MeasureSet& b) {
  return std::max({mixed_dev(a.shannon, b.shannon), mixed_dev(a.fisher, b.fisher),
                   mixed_dev(a.disequilibrium, b.disequilibrium),
                   mixed_dev(a.heisenberg_length, b.heisenberg_length),
                   mixed_dev(a.shannon_length, b.shannon_length),
                   mixed_dev(a.fisher_length, b.fisher_length)});
}

inline double integral_of(const std::function<double(double)>& f, const DensityProfile& p) {
  return integrate_pieces(f, p.support, p.breakpoints, kDefaultRelTol, kDefaultAbsTol, kTailAbsTol)
      .value;
}

/// Largest relative violation of L_F <= L_H and sqrt(2 pi e) L_F <= L_S <= sqrt(2 pi e) L_H.
inline double length_violation(const MeasureSet& m) {
  const double c = std::sqrt(2.0 * std::numbers::pi * std::numbers::e);
  return std::max({0.0, (m.fisher_length - m.heisenberg_length) / m.heisenberg_length,
                   (c * m.fisher_length - m.shannon_length) / m.shannon_length,
                   (m.shannon_length - c * m.heisenberg_length) / m.shannon_length});
}

}  // namespace detail

/// Runs every check; tol governs the oracle-equivalence class of checks.
inline VerifyReport run_verify(double tol = 1e-6, const VerifyHooks& hooks = {}) {
  using namespace detail;
  const double pi = std::numbers::pi;
  const double e = std::numbers::e;
  const MeasureContext ctx;
  VerifyReport report;
  Recorder rec(report);

  // f(n)
  rec.guarded("f_n", [&] {
    const double published[] = {3.21204, 3.60700, 3.75314};
    for (int n = 1; n <= 3; ++n)
      rec.compare("f_n/n=" + std::to_string(n), std::abs(f_of_n(n) - published[n - 1]), 1e-4);
    rec.compare("f_n/n=500_vs_limit", std::abs(f_of_n(500) - f_limit()), 1e-2);
    double violation = 0.0;
    for (int n = 1; n <= 10; ++n) {
      violation = std::max(violation, f_of_n(n) - f_limit());
      if (n > 1) violation = std::max(violation, f_of_n(n - 1) - f_of_n(n));
    }
    rec.compare("f_n/increasing_below_limit/n=1..10", violation, 0.0);
  });

  // Numeric oracle against closed forms, both spaces.
  std::vector<std::pair<StateKey, MeasureSet>> numeric_sets;
  const std::vector<double> oracle_gammas{-0.8, -0.5, -0.2, 0.0, 0.2, 0.5, 0.8};
  for (Space sp : {Space::position, Space::wavevector})
    for (int n : {1, 2, 3, 10})
      for (double g : oracle_gammas) {
        rec.guarded("oracle/" + tag(sp, n, g), [&] {
          const EigenState st(DeformedWell(g), n);
          const MeasureSet num = numeric_state_measures(st, sp, ctx);
          numeric_sets.push_back({{sp, n, g}, num});
          rec.compare("oracle/" + tag(sp, n, g), max_measure_dev(num, hooks.closed(st, sp, ctx)),
                      tol);
        });
      }

  for (Space sp : {Space::position, Space::wavevector}) {
    rec.guarded("complexity_consistency", [&] {
      double dev = 0.0;
      for (int n = 1; n <= 3; ++n)
        for (double g : {-0.8, -0.5, -0.2, 0.2, 0.5, 0.8}) {
          const EigenState st(DeformedWell(g), n);
          const ComplexitySet a = hooks.complexity(st, sp);
          const ComplexitySet b = complexity_numeric(hooks.closed(st, sp, ctx));
          dev = std::max({dev, rel_dev(a.c_cr, b.c_cr), rel_dev(a.c_fs, b.c_fs),
                          rel_dev(a.c_lmc, b.c_lmc)});
        }
      rec.compare("complexity_consistency/" + std::string(pdmwell::to_string(sp)), dev, 1e-9);
    });
  }

  // Undeformed limits.
  rec.guarded("limit", [&] {
    const double g = 1e-10;
    for (int n = 1; n <= 3; ++n) {
      const EigenState st(DeformedWell(g), n);
      const MeasureSet mx = hooks.closed(st, Space::position, ctx);
      const MeasureSet mk = hooks.closed(st, Space::wavevector, ctx);
      const ComplexitySet cx = hooks.complexity(st, Space::position);
      const ComplexitySet ck = hooks.complexity(st, Space::wavevector);
      const double n2 = pi * pi * n * n;
      const std::string s = "/n=" + std::to_string(n);
      rec.compare("limit/S_x" + s, std::abs(mx.shannon - (std::log(4.0) - 1.0)), 1e-8);
      rec.compare("limit/F_x" + s, rel_dev(mx.fisher, n2), tol);
      rec.compare("limit/F_k" + s, rel_dev(mk.fisher, 4.0 / 3.0 * (1.0 - 6.0 / n2)), tol);
      rec.compare("limit/C_CR_x" + s, rel_dev(cx.c_cr, n2 / 3.0 - 2.0), tol);
      rec.compare("limit/C_CR_k" + s, rel_dev(ck.c_cr, n2 / 3.0 - 2.0), tol);
      rec.compare("limit/C_FS_x" + s, rel_dev(cx.c_fs, 8.0 * pi * n * n / (e * e * e)), tol);
      rec.compare("limit/C_LMC_x" + s, rel_dev(cx.c_lmc, 3.0 / e), tol);
    }
  });

  // Normalization, transforms and moments.
  for (int n = 1; n <= 3; ++n)
    for (double g : {0.0, 0.5, 0.8}) {
      rec.guarded("normalization/" + tag(n, g), [&] {
        const EigenState st(DeformedWell(g), n);
        double dev = 0.0;
        for (const DensityProfile& p : {position_profile(st), wavevector_profile(st), eta_profile(st)})
          dev = std::max(dev, std::abs(integral_of(p.eval, p) - 1.0));
        rec.compare("normalization/" + tag(n, g), dev, tol);

        const WaveFunction psi = position_wavefunction(st);
        double fdev = 0.0;
        for (double k : {-3.1, -0.7, 0.4, 2.5, 6.0})
          fdev = std::max(fdev, std::abs(deformed_fourier(st.well(), psi, k) - eigenfunction_k(st, k)));
        rec.compare("fourier/" + tag(n, g), fdev, tol);

        const DensityProfile pk = wavevector_profile(st);
        const double cut = pk.tail->cutoff;
        const double k2 = integrate_pieces([&](double k) { return k * k * density_k(st, k); },
                                           Interval(-cut, cut), pk.breakpoints)
                              .value +
                          wavevector_second_moment_tail(st, cut);
        rec.compare("k2_moment/" + tag(n, g), rel_dev(k2, k_moments(st).k2_mean), 1e-5);
      });
    }

  for (int n = 1; n <= 3; ++n)
    for (double g : {-0.5, 0.0, 0.5}) {
      rec.guarded("moments/" + tag(n, g), [&] {
        const EigenState st(DeformedWell(g), n);
        const DensityProfile px = position_profile(st);
        const auto dpsi = position_amplitude_derivative(st);
        const Moments m = quantum_moments(st);
        const double x1 = integral_of([&](double x) { return x * density_x(st, x); }, px);
        const double x2 = integral_of([&](double x) { return x * x * density_x(st, x); }, px);
        const double p2 = integral_of([&](double x) { return dpsi(x) * dpsi(x); }, px);
        rec.compare("moments/" + tag(n, g),
                    std::max({mixed_dev(x1, m.x_mean), mixed_dev(x2, m.x2_mean),
                              mixed_dev(p2, m.p2_mean)}),
                    tol);
        rec.compare("fisher_momentum/" + tag(n, g),
                    rel_dev(hooks.closed(st, Space::position, ctx).fisher, 4.0 * m.p2_mean), 1e-12);
      });
    }

  // Classical limit.
  rec.guarded("classical", [&] {
    const EigenState st(DeformedWell(0.5), 200);
    const Moments q = quantum_moments(st);
    const Moments c = classical_moments(ClassicalEnsemble::matching(st));
    rec.compare("classical/moments/n=200/ga=0.5",
                std::max({rel_dev(q.x_mean, c.x_mean), rel_dev(q.x2_mean, c.x2_mean),
                          rel_dev(q.p2_mean, c.p2_mean)}),
                1e-2);

    const EigenState s10(DeformedWell(0.8), 10);
    const auto ens = ClassicalEnsemble::matching(s10);
    // Average rho_n over each oscillation, i.e. between consecutive nodes.
    std::vector<double> edges{-s10.well().a()};
    for (double x : nodes_x(s10)) edges.push_back(x);
    edges.push_back(s10.well().a());
    double sup = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      const double lo = edges[i];
      const double hi = edges[i + 1];
      const double mean =
          integrate([&](double x) { return density_x(s10, x); }, Interval(lo, hi)).value / (hi - lo);
      const double eta_mid = 0.5 * (eta_of_x(s10.well(), lo) + eta_of_x(s10.well(), hi));
      const double ref = classical_density(ens, x_of_eta(s10.well(), eta_mid));
      sup = std::max(sup, std::abs(mean / ref - 1.0));
    }
    rec.compare("classical/local_average/n=10/ga=0.8", sup, 2e-2);

    double excess = 0.0;
    for (double x : detail::linspace(-1.0, 1.0, 20001))
      excess = std::max(excess, density_x(s10, x) - 2.0 * classical_density(ens, x));
    rec.compare("classical/upper_bound/n=10/ga=0.8", excess, 1e-9);
  });

  // Symmetry and ordering over a 37-point grid.
  const std::vector<double> grid37 = detail::linspace(-0.9, 0.9, 37);
  for (Space sp : {Space::position, Space::wavevector}) {
    const std::string s(pdmwell::to_string(sp));
    rec.guarded("symmetry/" + s, [&] {
      double asym = 0.0;
      for (int n = 1; n <= 3; ++n)
        for (double g : grid37) {
          const ComplexitySet p = hooks.complexity(EigenState(DeformedWell(g), n), sp);
          const ComplexitySet m = hooks.complexity(EigenState(DeformedWell(-g), n), sp);
          asym = std::max({asym, rel_dev(m.c_cr, p.c_cr), rel_dev(m.c_fs, p.c_fs),
                           rel_dev(m.c_lmc, p.c_lmc)});
        }
      rec.compare("symmetry/" + s + "/n=1..3", asym, 1e-9);

      double violation = 0.0;
      for (double g : grid37) {
        const ComplexitySet c = hooks.complexity(EigenState(DeformedWell(g), 1), sp);
        violation = std::max({violation, c.c_fs - c.c_cr, c.c_lmc - c.c_fs, 1.0 - c.c_lmc});
      }
      rec.compare("ordering/" + s + "/n=1", violation, 0.0);
    });
  }
  rec.guarded("c_lmc_x_edge", [&] {
    const ComplexitySet c = hooks.complexity(EigenState(DeformedWell(kMaxGammaA), 1), Space::position);
    rec.info("c_lmc_x_minus_1/n=1/ga=max", c.c_lmc - 1.0);
  });

  // Entropy structure.
  for (Space sp : {Space::position, Space::wavevector})
    for (int n = 1; n <= 3; ++n)
      for (double g : {0.0, 0.8}) {
        rec.guarded("entropy_density/" + tag(sp, n, g), [&] {
          const EigenState st(DeformedWell(g), n);
          const DensityProfile p = sp == Space::position ? position_profile(st) : wavevector_profile(st);
          const double s = integral_of([&](double z) { return entropy_density(st, sp, z, ctx); }, p);
          rec.compare("entropy_density/" + tag(sp, n, g),
                      std::abs(s - hooks.closed(st, sp, ctx).shannon), 1e-8);
        });
      }
  rec.guarded("entropy_negative", [&] {
    const EigenState st(DeformedWell(0.8), 3);
    double lowest = 0.0;
    for (double x : detail::linspace(-1.0, 1.0, 2001))
      lowest = std::min(lowest, entropy_density(st, Space::position, x, ctx));
    rec.require("entropy_density_negative/x/n=3/ga=0.8", lowest < 0.0, lowest);
  });
  for (double g : {0.0, 0.5, 0.8}) {
    rec.guarded("entropy_x/" + ga_tag(g), [&] {
      auto shannon_x = [&](int n) {
        const EigenState st(DeformedWell(g), n);
        const DensityProfile p = position_profile(st);
        return integral_of([&](double x) { return -xlogx(density_x(st, x)); }, p);
      };
      const double s1 = shannon_x(1);
      double spread = 0.0;
      for (int n = 2; n <= 5; ++n) spread = std::max(spread, std::abs(shannon_x(n) - s1));
      rec.compare("entropy_x_n_independent/" + ga_tag(g), spread, 1e-8);

      const auto ens = ClassicalEnsemble(DeformedWell(g), 1.0);
      const double sc = integrate([&](double x) { return -xlogx(classical_density(ens, x)); },
                                  Interval(-1.0, 1.0))
                            .value;
      rec.compare("entropy_x_minus_classical/" + ga_tag(g),
                  std::abs(s1 - sc - (std::numbers::ln2 - 1.0)), 1e-8);
    });
  }

  // Entropic uncertainty sums.
  rec.guarded("bbm", [&] {
    const double bound = 1.0 + std::log(pi);
    double violation = 0.0;
    for (int n = 1; n <= 10; ++n) violation = std::max(violation, bound - (f_of_n(n) - 1.0));
    rec.compare("bbm/eta_k_above_bound/n=1..10", violation, 0.0);

    double dev = 0.0;
    for (std::size_t i = 0; i < numeric_sets.size(); ++i) {
      const auto& [kx, mx] = numeric_sets[i];
      if (kx.space != Space::position) continue;
      for (const auto& [kk, mk] : numeric_sets) {
        if (kk.space != Space::wavevector || kk.n != kx.n || kk.gamma_a != kx.gamma_a) continue;
        const double g = kx.gamma_a;
        const double expected = f_of_n(kx.n) - 1.0 + 0.5 * std::log((1.0 - g) * (1.0 + g));
        dev = std::max(dev, std::abs(mx.shannon + mk.shannon - expected));
      }
    }
    rec.compare("bbm/xk_sum_formula/oracle_cells", dev, 1e-8);

    const EntropySums sums = bbm_sum(EigenState(DeformedWell(0.5), 1), ctx);
    rec.info("bbm/xk_sum_minus_bound/n=1/ga=0.5", sums.sum_xk - sums.bound);
  });

  // Length inequalities and the Gaussian self-test.
  for (Space sp : {Space::position, Space::wavevector}) {
    double violation = 0.0;
    for (const auto& [key, m] : numeric_sets)
      if (key.space == sp) violation = std::max(violation, length_violation(m));
    rec.compare("lengths/" + std::string(pdmwell::to_string(sp)) + "/oracle_cells", violation, 1e-12);
  }
  rec.guarded("gaussian", [&] {
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * pi);
    const DensityProfile gauss{[=](double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); },
                               Interval(-kInf, kInf), Space::position, {0.0}, std::nullopt};
    auto amp_derivative = [=](double x) {
      return -0.5 * x * std::sqrt(inv_sqrt_2pi) * std::exp(-0.25 * x * x);
    };
    const MeasureSet m = numeric_measures(gauss, amp_derivative, ctx, 1e-13, 1e-15, 1e-15);
    const ComplexitySet c = complexity_numeric(m);
    rec.compare("gaussian/c_cr", std::abs(c.c_cr - 1.0), 1e-10);
    rec.compare("gaussian/c_fs", std::abs(c.c_fs - 1.0), 1e-10);
    rec.compare("gaussian/c_lmc", std::abs(c.c_lmc - std::sqrt(e / 2.0)), 1e-10);
  });

  rec.guarded("fisher_k_eta_moment", [&] {
    const EigenState st(DeformedWell(0.5), 1);
    rec.info("fisher_k/four_eta2_minus_F_k/n=1/ga=0.5", four_eta_second_moment(st) - fisher_k_closed(st));
  });

  return report;
}

}  // namespace pdmwell::report
