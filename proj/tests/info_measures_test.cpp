#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "pdmwell/info_measures.hpp"
#include "property.hpp"

using namespace pdmwell;
using std::numbers::pi;

namespace {

const double kGammas[] = {0.0, 0.4, -0.4, 0.8, -0.8};

void expect_measures_near(const MeasureSet& a, const MeasureSet& b, double tol) {
  auto near = [tol](double x, double y) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(y)); };
  EXPECT_TRUE(near(a.shannon, b.shannon)) << a.shannon << " vs " << b.shannon;
  EXPECT_TRUE(near(a.fisher, b.fisher)) << a.fisher << " vs " << b.fisher;
  EXPECT_TRUE(near(a.disequilibrium, b.disequilibrium)) << a.disequilibrium << " vs " << b.disequilibrium;
  EXPECT_TRUE(near(a.heisenberg_length, b.heisenberg_length));
  EXPECT_TRUE(near(a.shannon_length, b.shannon_length));
  EXPECT_TRUE(near(a.fisher_length, b.fisher_length));
}

DensityProfile uniform(double a) {
  return {[a](double) { return 1.0 / (2.0 * a); }, Interval(-a, a), Space::position, {},
          std::nullopt};
}

}  // namespace

TEST(MeasureContext, DefaultsToHalfWidth) {
  EXPECT_EQ(MeasureContext{}.sigma, 1.0);
  EXPECT_EQ(MeasureContext::for_well(DeformedWell(0.2, 3.5)).sigma, 3.5);
}

TEST(NumericMeasures, UniformDensity) {
  const double a = 1.5;
  const MeasureSet m = numeric_measures(uniform(a), MeasureContext{a});
  EXPECT_NEAR(m.shannon, std::log(2.0), 1e-12);
  EXPECT_TRUE(std::isinf(m.fisher));
  EXPECT_EQ(m.fisher_length, 0.0);
  EXPECT_NEAR(m.disequilibrium, 1.0 / (2.0 * a), 1e-14);
  EXPECT_NEAR(m.heisenberg_length, a / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(raw_shannon(m.shannon, Space::position, MeasureContext{a}), std::log(2.0 * a), 1e-12);
}

TEST(NumericMeasures, RejectsUnnormalizedDensity) {
  const DensityProfile p{[](double) { return 0.6; }, Interval(-1.0, 1.0), Space::position, {},
                         std::nullopt};
  EXPECT_THROW(numeric_measures(p, MeasureContext{}), NotNormalized);
}

TEST(NumericMeasures, UndeformedGroundState) {
  const EigenState st(DeformedWell(0.0), 1);
  const MeasureSet m = numeric_state_measures(st, Space::position, MeasureContext{});
  EXPECT_NEAR(m.shannon, std::log(4.0) - 1.0, 1e-9);
  EXPECT_NEAR(m.shannon, 0.386294, 1e-6);
  EXPECT_NEAR(m.fisher, pi * pi, 1e-7);
  EXPECT_NEAR(m.disequilibrium, 0.75, 1e-10);
}

TEST(NumericMeasures, MatchClosedFormsAllSpaces) {
  const EigenState st(DeformedWell(0.6), 2);
  const MeasureContext ctx;
  for (Space sp : {Space::position, Space::wavevector, Space::deformed_eta})
    expect_measures_near(numeric_state_measures(st, sp, ctx), closed_measures(st, sp, ctx), 1e-6);
}

TEST(NumericMeasures, FallbackFisherWithoutDerivative) {
  for (double ga : {0.0, 0.6}) {
    const EigenState st(DeformedWell(ga), 2);
    const MeasureSet m = numeric_measures(position_profile(st), MeasureContext{});
    EXPECT_NEAR(m.fisher / closed_measures(st, Space::position, MeasureContext{}).fisher, 1.0, 1e-5);
  }
}

TEST(NumericMeasures, OracleEquivalenceGrid) {
  const MeasureContext ctx;
  for (int n : {1, 2, 3, 10})
    for (double ga : {0.0, 0.2, -0.2, 0.5, -0.5, 0.8, -0.8})
      for (Space sp : {Space::position, Space::wavevector}) {
        SCOPED_TRACE("n=" + std::to_string(n) + " ga=" + std::to_string(ga) + " " +
                     std::string(to_string(sp)));
        const EigenState st(DeformedWell(ga), n);
        expect_measures_near(numeric_state_measures(st, sp, ctx), closed_measures(st, sp, ctx), 1e-6);
      }
}

TEST(NumericMeasures, SigmaScaling) {
  const EigenState st(DeformedWell(0.3, 2.0), 1);
  const MeasureContext ctx = MeasureContext::for_well(st.well());
  for (Space sp : {Space::position, Space::wavevector}) {
    const MeasureSet scaled = numeric_state_measures(st, sp, ctx);
    const MeasureSet unit = numeric_state_measures(st, sp, MeasureContext{});
    EXPECT_NEAR(raw_shannon(scaled.shannon, sp, ctx), unit.shannon, 1e-9);
    EXPECT_NEAR(scaled.shannon, closed_measures(st, sp, ctx).shannon, 1e-8);
  }
}

TEST(FOfN, ReproducesTabulatedValues) {
  EXPECT_NEAR(f_of_n(1), 3.21204, 1e-4);
  EXPECT_NEAR(f_of_n(2), 3.60700, 1e-4);
  EXPECT_NEAR(f_of_n(3), 3.75314, 1e-4);
  EXPECT_NEAR(f_limit(), std::log(8.0 * pi) + 2.0 * (1.0 - std::numbers::egamma), 1e-15);
  EXPECT_NEAR(f_limit(), 4.06974, 1e-5);
  EXPECT_NEAR(f_of_n(500), f_limit(), 1e-2);
  EXPECT_THROW(f_of_n(0), DomainError);
}

TEST(FOfN, IncreasingAndBelowLimit) {
  for (int n = 1; n < 20; ++n) {
    EXPECT_LT(f_of_n(n), f_of_n(n + 1));
    EXPECT_LT(f_of_n(n), f_limit());
  }
}

TEST(FOfN, MatchesEntropyOfDensityK) {
  // S_k = -ln(2L) + f(n) with sigma = 1 ties f to a direct quadrature
  for (int n : {1, 4}) {
    const EigenState st(DeformedWell(0.0), n);
    const DensityProfile p = wavevector_profile(st);
    const double s = integrate_pieces([&](double k) { return -xlogx(density_k(st, k)); }, p.support,
                                      p.breakpoints, 1e-11, 1e-13, kTailAbsTol)
                         .value;
    EXPECT_NEAR(s + std::log(2.0 * st.box_length()), f_of_n(n), 1e-8);
  }
}

TEST(FTable, ConcurrentRequestsComputeOnce) {
  FTable table;
  std::vector<double> results(8);
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i)
    threads.emplace_back([&, i] { results[i] = table.get(i % 2 ? 7 : 11); });
  for (auto& t : threads) t.join();
  EXPECT_EQ(table.size(), 2u);
  for (int i = 0; i < 8; ++i) EXPECT_EQ(results[i], results[i % 2]);
  EXPECT_EQ(results[1], f_of_n(7));
  EXPECT_EQ(results[0], f_of_n(11));
}

TEST(ClosedMeasures, Examples) {
  const MeasureContext ctx;
  EXPECT_NEAR(closed_measures(EigenState(DeformedWell(0.5), 1), Space::position, ctx).shannon,
              0.336501, 1e-6);
  for (int n = 1; n <= 3; ++n) {
    const EigenState st(DeformedWell(0.0), n);
    const double n2 = pi * pi * n * n;
    const MeasureSet mx = closed_measures(st, Space::position, ctx);
    const MeasureSet mk = closed_measures(st, Space::wavevector, ctx);
    EXPECT_NEAR(mx.shannon, std::log(4.0) - 1.0, 1e-15);
    EXPECT_NEAR(mx.fisher, n2, 1e-12);
    EXPECT_NEAR(mx.disequilibrium, 0.75, 1e-15);
    EXPECT_NEAR(mk.fisher, 4.0 / 3.0 * (1.0 - 6.0 / n2), 1e-15);
    EXPECT_NEAR(mk.disequilibrium, (1.0 + 15.0 / (2.0 * n2)) / (3.0 * pi), 1e-15);
    EXPECT_NEAR(mx.shannon_length, std::exp(mx.shannon), 1e-15);
    EXPECT_NEAR(mk.shannon_length, std::exp(mk.shannon), 1e-14);
  }
}

TEST(ClosedMeasures, SmoothThroughZeroDeformation) {
  const MeasureContext ctx;
  for (Space sp : {Space::position, Space::wavevector, Space::deformed_eta}) {
    const MeasureSet at0 = closed_measures(EigenState(DeformedWell(0.0), 2), sp, ctx);
    const MeasureSet tiny = closed_measures(EigenState(DeformedWell(1e-7), 2), sp, ctx);
    expect_measures_near(tiny, at0, 1e-12);
  }
}

TEST(ClosedMeasures, FisherMomentumIdentity) {
  proptest::for_all(50, 53, [](proptest::Gen& g) {
    const DeformedWell w(g.uniform(-0.95, 0.95), g.uniform(0.5, 3.0), g.uniform(0.5, 2.0),
                         g.uniform(0.3, 2.0));
    const EigenState st(w, g.integer(1, 30));
    const double f = closed_measures(st, Space::position, MeasureContext{}).fisher;
    EXPECT_NEAR(f, 4.0 * quantum_moments(st).p2_mean / (w.hbar() * w.hbar()), 1e-12 * f);
  });
}

TEST(ClosedMeasures, WavevectorFisherIsFourEtaVariance) {
  for (double ga : {0.0, 0.5, -0.7}) {
    const EigenState st(DeformedWell(ga), 2);
    const DensityProfile p = eta_profile(st);
    auto moment = [&](int k) {
      return integrate_pieces([&](double e) { return std::pow(e, k) * density_eta(st, e); },
                              p.support, p.breakpoints)
          .value;
    };
    const double m1 = moment(1);
    const double m2 = moment(2);
    EXPECT_NEAR(fisher_k_closed(st), 4.0 * (m2 - m1 * m1), 1e-10);
    EXPECT_NEAR(four_eta_second_moment(st), 4.0 * m2, 1e-10);
  }
}

TEST(ClosedMeasures, ScaleCovariance) {
  // a = 2.5 with sigma = a: entropies unchanged, F scales as 1/a^2 in x and a^2 in k
  const double a = 2.5;
  for (double ga : {0.0, 0.6}) {
    const EigenState unit(DeformedWell(ga), 2);
    const EigenState big(DeformedWell(ga, a), 2);
    const MeasureContext ctx{a};
    const MeasureSet ux = closed_measures(unit, Space::position, MeasureContext{});
    const MeasureSet bx = closed_measures(big, Space::position, ctx);
    EXPECT_NEAR(bx.shannon, ux.shannon, 1e-14);
    EXPECT_NEAR(bx.fisher * a * a, ux.fisher, 1e-11);
    const MeasureSet uk = closed_measures(unit, Space::wavevector, MeasureContext{});
    const MeasureSet bk = closed_measures(big, Space::wavevector, ctx);
    EXPECT_NEAR(bk.shannon, uk.shannon, 1e-14);
    EXPECT_NEAR(bk.fisher / (a * a), uk.fisher, 1e-12);
    expect_measures_near(numeric_state_measures(big, Space::position, ctx), bx, 1e-6);
  }
}

TEST(EntropyDensity, IntegratesToClosedEntropy) {
  const MeasureContext ctx;
  for (int n = 1; n <= 3; ++n)
    for (double ga : kGammas) {
      const EigenState st(DeformedWell(ga), n);
      const DensityProfile p = position_profile(st);
      const double s = integrate_pieces(
                           [&](double x) { return entropy_density(st, Space::position, x, ctx); },
                           p.support, p.breakpoints)
                           .value;
      EXPECT_NEAR(s, closed_measures(st, Space::position, ctx).shannon, 1e-8);
      const DensityProfile pk = wavevector_profile(st);
      const double sk = integrate_pieces(
                            [&](double k) { return entropy_density(st, Space::wavevector, k, ctx); },
                            pk.support, pk.breakpoints, 1e-10, 1e-12, kTailAbsTol)
                            .value;
      EXPECT_NEAR(sk, closed_measures(st, Space::wavevector, ctx).shannon, 1e-8);
    }
}

TEST(EntropyDensity, NegativeRegionsAndParity) {
  const MeasureContext ctx;
  const EigenState st(DeformedWell(0.8), 3);
  double lowest = 0.0;
  for (int i = 0; i <= 2000; ++i)
    lowest = std::min(lowest, entropy_density(st, Space::position, -1.0 + i / 1000.0, ctx));
  EXPECT_LT(lowest, 0.0);

  const EigenState flat(DeformedWell(0.0), 2);
  for (double x : {0.1, 0.45, 0.9})
    EXPECT_NEAR(entropy_density(flat, Space::position, x, ctx),
                entropy_density(flat, Space::position, -x, ctx), 1e-14);
  EXPECT_NEAR(entropy_density(flat, Space::position, 0.0, ctx), 0.0, 1e-28);
  EXPECT_NEAR(entropy_density(flat, Space::position, 1.0, ctx), 0.0, 1e-28);
}

TEST(Entropy, PositionEntropyIndependentOfN) {
  const MeasureContext ctx;
  for (double ga : {0.0, 0.5, -0.8}) {
    const double s1 = numeric_state_measures(EigenState(DeformedWell(ga), 1), Space::position, ctx).shannon;
    for (int n = 2; n <= 10; ++n)
      EXPECT_NEAR(numeric_state_measures(EigenState(DeformedWell(ga), n), Space::position, ctx).shannon,
                  s1, 1e-8);
  }
}

TEST(Entropy, QuantumMinusClassicalOffset) {
  const MeasureContext ctx;
  for (double ga : kGammas) {
    const DeformedWell w(ga);
    const EigenState st(w, 2);
    const ClassicalEnsemble ens = ClassicalEnsemble::matching(st);
    const double sq = numeric_state_measures(st, Space::position, ctx).shannon;
    const double sc = numeric_measures(classical_profile(ens), ctx).shannon;
    EXPECT_NEAR(sq - sc, std::numbers::ln2 - 1.0, 1e-8);
    EXPECT_NEAR(classical_shannon_closed(w, ctx), sc, 1e-10);
  }
}

TEST(BbmSum, Examples) {
  const MeasureContext ctx;
  const EntropySums s0 = bbm_sum(EigenState(DeformedWell(0.0), 1), ctx);
  EXPECT_NEAR(s0.bound, 2.144730, 1e-6);
  EXPECT_NEAR(s0.sum_xk, 2.21204, 1e-5);
  EXPECT_GE(s0.sum_xk, s0.bound);
  const EntropySums s5 = bbm_sum(EigenState(DeformedWell(0.5), 1), ctx);
  EXPECT_NEAR(s5.sum_xk, 2.06820, 1e-5);
  EXPECT_LT(s5.sum_xk, s5.bound);
  for (int n = 1; n <= 10; ++n) {
    const EntropySums s = bbm_sum(EigenState(DeformedWell(0.7), n), ctx);
    EXPECT_NEAR(s.sum_eta_k, f_of_n(n) - 1.0, 1e-13);
    EXPECT_GE(s.sum_eta_k, s.bound);
    EXPECT_NEAR(s.sum_xk, f_of_n(n) - 1.0 + 0.5 * std::log(1.0 - 0.49), 1e-13);
  }
}

TEST(LengthsProperty, InequalitiesHoldForComputedStates) {
  const double c = std::sqrt(2.0 * pi * std::numbers::e);
  proptest::for_all(12, 59, [c](proptest::Gen& g) {
    const EigenState st(DeformedWell(g.uniform(-0.9, 0.9)), g.integer(1, 6));
    for (Space sp : {Space::position, Space::wavevector, Space::deformed_eta}) {
      const MeasureSet m = numeric_state_measures(st, sp, MeasureContext{});
      EXPECT_LE(m.fisher_length, m.heisenberg_length);
      EXPECT_LE(c * m.fisher_length, m.shannon_length);
      EXPECT_LE(m.shannon_length, c * m.heisenberg_length);
      EXPECT_GT(m.fisher, 0.0);
      EXPECT_GT(m.disequilibrium, 0.0);
    }
  });
}
