#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <numbers>

#include "orthosteer/dynamics.hpp"
#include "orthosteer/steering.hpp"
#include "support.hpp"

using namespace orthosteer;
using std::numbers::pi;
namespace ts = testing_support;

namespace {

InputSignal sinusoid(double amp, double freq, double phase) {
  return InputSignal{SinusoidTerm{amp, freq, phase}};
}

std::vector<double> nhi_vec(const NhiState& s) { return {s.x1, s.x2, s.x3}; }

// Terminal state of the integrator by an adaptive Dormand-Prince run at
// tight tolerance, independent of the library's fixed-step scheme.
std::array<double, 3> odeint_nhi(const NhiInputs& u, const Interval& iv) {
  using State = std::array<double, 3>;
  State x{0.0, 0.0, 0.0};
  auto rhs = [&](const State& s, State& d, double t) {
    const double a = eval(u[0], t), b = eval(u[1], t);
    d = {a, b, s[0] * b - s[1] * a};
  };
  namespace oi = boost::numeric::odeint;
  oi::integrate_adaptive(oi::make_controlled<oi::runge_kutta_dopri5<State>>(1e-13, 1e-13), rhs, x,
                         iv.lo, iv.hi, 1e-3);
  return x;
}

}  // namespace

TEST(IntegrateNhi, ZeroInputsKeepTheStart) {
  const NhiState x0{0.3, -1.2, 2.5};
  const Trajectory tr = integrate_nhi({}, x0, kCanonical);
  EXPECT_EQ(nhi_terminal(tr), x0);
  for (const auto& s : tr.states) EXPECT_EQ(s, nhi_vec(x0));
}

TEST(IntegrateNhi, ConstantFirstChannel) {
  const NhiState xf =
      nhi_terminal(integrate_nhi({InputSignal::constant(1.0), {}}, {}, kShifted, 100));
  EXPECT_NEAR(xf.x1, 1.0, 1e-15);
  EXPECT_EQ(xf.x2, 0.0);
  EXPECT_EQ(xf.x3, 0.0);
}

TEST(IntegrateNhi, LegendreSteeringReachesUnitX3) {
  const double s = std::sqrt(15.0 / 4.0);
  const NhiInputs u{InputSignal::basis(legendre(1), s), InputSignal::basis(legendre(2), s)};
  const NhiState xf = nhi_terminal(integrate_nhi(u, {}, kCanonical, 4000));
  EXPECT_NEAR(xf.x1, 0.0, 1e-6);
  EXPECT_NEAR(xf.x2, 0.0, 1e-6);
  EXPECT_NEAR(xf.x3, 1.0, 1e-6);
}

TEST(IntegrateNhi, WeightedChebyshevUsesAngleSubstitution) {
  const double s = std::sqrt(2.0 / pi);
  const NhiInputs u{InputSignal::basis(chebyshev_first(2), s, true),
                    InputSignal::basis(chebyshev_second(1), -s)};
  const Trajectory tr = integrate_nhi(u, {}, kCanonical, 4000);
  EXPECT_TRUE(tr.substituted);
  EXPECT_TRUE(std::isinf(tr.inputs.front()[0]));
  const NhiState xf = nhi_terminal(tr);
  EXPECT_NEAR(xf.x1, 0.0, 1e-6);
  EXPECT_NEAR(xf.x2, 0.0, 1e-6);
  EXPECT_NEAR(xf.x3, 1.0, 1e-6);
  for (std::size_t k = 1; k < tr.t.size(); ++k) EXPECT_GT(tr.t[k], tr.t[k - 1]);
}

TEST(IntegrateNhi, Errors) {
  const InputSignal singular = InputSignal::basis(chebyshev_first(1), 1.0, true);
  EXPECT_THROW(integrate_nhi({singular, {}}, {}, Interval{-1.0, 2.0}), CapabilityError);
  EXPECT_THROW(integrate_nhi({}, {}, kCanonical, 99), ArgumentError);
}

TEST(IntegrateNhi, MatchesAdaptiveOdeOracle) {
  const NhiInputs u{sinusoid(1.3, 2.0, 0.4).add(ConstantTerm{0.2}),
                    InputSignal::basis(legendre(3), 0.8).add(SinusoidTerm{0.5, 5.0, 0.0})};
  const NhiState xf = nhi_terminal(integrate_nhi(u, {}, kCanonical, 4000));
  const auto ref = odeint_nhi(u, kCanonical);
  EXPECT_NEAR(xf.x1, ref[0], 1e-9);
  EXPECT_NEAR(xf.x2, ref[1], 1e-9);
  EXPECT_NEAR(xf.x3, ref[2], 1e-9);
}

TEST(IntegrateNhi, Rk4OrderFour) {
  const NhiInputs u{sinusoid(2.0, 9.0, 0.3), sinusoid(1.5, 13.0, -0.7)};
  const Interval iv{0.0, 3.0};
  const auto ref = nhi_vec(nhi_terminal(integrate_nhi(u, {}, iv, 4000)));
  const double e1 = max_abs_diff(nhi_vec(nhi_terminal(integrate_nhi(u, {}, iv, 200))), ref);
  const double e2 = max_abs_diff(nhi_vec(nhi_terminal(integrate_nhi(u, {}, iv, 400))), ref);
  EXPECT_GT(e1, 1e-12);
  EXPECT_GE(e1 / e2, 8.0) << e1 << " " << e2;
  EXPECT_LT(e1 / e2, 32.0);
}

TEST(IntegrateGnhi, TwoChannelsMatchTheIntegrator) {
  const InputSignal a = sinusoid(1.0, 3.0, 0.2), b = InputSignal::basis(legendre(2), 1.7);
  const Trajectory tn = integrate_nhi({a, b}, {0.1, 0.2, 0.3}, kCanonical, 500);
  GnhiState s0(2);
  s0.x(0) = 0.1;
  s0.x(1) = 0.2;
  s0.xx(0, 1) = 0.3;
  const Trajectory tg = integrate_gnhi({a, b}, s0, kCanonical, 500);
  ASSERT_EQ(tn.states.size(), tg.states.size());
  for (std::size_t k = 0; k < tn.states.size(); ++k) {
    EXPECT_NEAR(tn.states[k][2], tg.states[k][2], 1e-12);
  }
  EXPECT_EQ(tg.state_labels, (std::vector<std::string>{"x1", "x2", "x12"}));
}

TEST(IntegrateGnhi, EqualConstantInputsLeaveCouplingsAtZero) {
  const InputSignal c = InputSignal::constant(0.7);
  const Trajectory tr = integrate_gnhi({c, c, c, c}, GnhiState(4), kCanonical, 200);
  const GnhiState sf = gnhi_terminal(tr, 4);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(sf.x(i), 1.4, 1e-14);
    for (int j = i + 1; j < 4; ++j) EXPECT_EQ(sf.xx(i, j), 0.0);
  }
}

TEST(IntegrateGnhi, CountMismatchIsArgumentError) {
  EXPECT_THROW(integrate_gnhi({{}, {}}, GnhiState(3), kCanonical), ArgumentError);
  EXPECT_THROW(GnhiState(1), ArgumentError);
  EXPECT_THROW(GnhiState(kMaxChannels + 1), ArgumentError);
}

TEST(GnhiStateLayout, LexicographicPairs) {
  GnhiState s(3);
  s.x(0) = 1;
  s.x(1) = 2;
  s.x(2) = 3;
  s.xx(0, 1) = 12;
  s.xx(0, 2) = 13;
  s.xx(1, 2) = 23;
  EXPECT_EQ(s.flatten(), (std::vector<double>{1, 2, 3, 12, 13, 23}));
  EXPECT_EQ(GnhiState::unflatten(3, s.flatten()), s);
  EXPECT_THROW(s.xx(1, 0), ArgumentError);
}

TEST(IntegrateSo3, ZeroRateHoldsAttitude) {
  auto g = ts::rng(31);
  const Rotation g0 = ts::random_rotation(g);
  const Trajectory tr = integrate_so3({}, g0, kShifted, 100);
  for (std::size_t k = 0; k < tr.states.size(); ++k) EXPECT_EQ(so3_sample(tr, k), g0);
}

TEST(IntegrateSo3, ConstantThirdAxisRate) {
  const double c = 1.7, T = 2.0;
  const Trajectory tr =
      integrate_so3({InputSignal(), InputSignal(), InputSignal::constant(c)}, Rotation::Identity(), {0.0, T}, 100);
  EXPECT_LT((so3_terminal(tr) - so3::rot_z(c * T)).norm(), 1e-13);
}

TEST(IntegrateSo3, RandomSmoothRatesStayOnTheGroup) {
  auto g = ts::rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    So3Inputs w;
    for (auto& wi : w) {
      wi = sinusoid(ts::uniform(g, -3, 3), ts::uniform(g, 0, 6), ts::uniform(g, -pi, pi))
               .add(ConstantTerm{ts::uniform(g, -1, 1)});
    }
    const Trajectory tr = integrate_so3(w, ts::random_rotation(g), {0.0, 2.0}, 2000);
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
      const Rotation r = so3_sample(tr, k);
      EXPECT_LT((r.transpose() * r - Rotation::Identity()).norm(), 1e-9);
      EXPECT_NEAR(r.determinant(), 1.0, 1e-9);
    }
  }
}

TEST(IntegrateSo3, MatchesAdaptiveOdeOracle) {
  using State = std::array<double, 9>;
  const So3Inputs w{sinusoid(1.0, 2.0, 0.0), sinusoid(0.5, 3.0, 1.0), InputSignal::constant(0.8)};
  const Interval iv{0.0, 1.5};
  auto rhs = [&](const State& s, State& d, double t) {
    const Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> gm(s.data());
    const so3::Vec3 om(eval(w[0], t), eval(w[1], t), eval(w[2], t));
    Eigen::Map<Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(d.data()) = so3::hat(om) * gm;
  };
  State x{1, 0, 0, 0, 1, 0, 0, 0, 1};
  namespace oi = boost::numeric::odeint;
  oi::integrate_adaptive(oi::make_controlled<oi::runge_kutta_dopri5<State>>(1e-13, 1e-13), rhs, x,
                         iv.lo, iv.hi, 1e-3);
  const Rotation ref = Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(x.data());
  const Rotation got = so3_terminal(integrate_so3(w, Rotation::Identity(), iv, 4000));
  EXPECT_LT((got - ref).norm(), 1e-6);
}

TEST(Coupling, ShiftedLegendreExample) {
  const double d = coupling_displacement(InputSignal::basis(legendre(1, Domain::shifted)),
                                         InputSignal::basis(legendre(2, Domain::shifted)), kShifted);
  EXPECT_NEAR(d, 1.0 / 15.0, 1e-10);
}

TEST(Coupling, SameParityPairsVanish) {
  for (int i = 0; i <= 6; i += 2) {
    for (int j = i + 2; j <= 8; j += 2) {
      for (auto make : {+[](int n) { return legendre(n); }, +[](int n) { return chebyshev_second(n); }}) {
        EXPECT_NEAR(coupling_displacement(InputSignal::basis(make(i)), InputSignal::basis(make(j)),
                                          kCanonical),
                    0.0, 1e-10);
        EXPECT_NEAR(coupling_displacement(InputSignal::basis(make(i + 1)),
                                          InputSignal::basis(make(j + 1)), kCanonical),
                    0.0, 1e-10);
      }
    }
  }
}

TEST(Coupling, WeightedChebyshevByTwoRoutes) {
  const InputSignal u1 = InputSignal::basis(chebyshev_first(1), 1.0, true);
  const InputSignal u2 = InputSignal::basis(chebyshev_first(2), 1.0, true);
  const double generic = coupling_displacement(u1, u2, kCanonical);
  // t = sin(th): x1 = -cos(th), x2 = -sin(2 th)/2, and
  // (x1 u2 - x2 u1) dt = (cos(th) cos(2 th) + sin(2 th) sin(th) / 2) d(th).
  const double direct = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double th) { return std::cos(th) * std::cos(2 * th) + 0.5 * std::sin(2 * th) * std::sin(th); },
      -pi / 2, pi / 2, 0, 1e-14);
  EXPECT_NEAR(direct, 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(generic, 4.0 / 3.0, 1e-9);
}

TEST(Coupling, LegendreCanonicalPairAndTrigPair) {
  EXPECT_NEAR(coupling_displacement(InputSignal::basis(legendre(1)), InputSignal::basis(legendre(2)),
                                    kCanonical),
              4.0 / 15.0, 1e-10);
  EXPECT_NEAR(coupling_displacement(InputSignal::basis(trig_sin(1)), InputSignal::basis(trig_cos(1)),
                                    kCanonical),
              -2.0 / pi, 1e-10);
}

TEST(Coupling, BilinearAndAntisymmetric) {
  auto g = ts::rng(33);
  const InputSignal u1 = InputSignal::basis(legendre(3)).add(SinusoidTerm{0.4, 2.0, 0.1});
  const InputSignal u2 = InputSignal::basis(chebyshev_second(2)).add(ConstantTerm{0.3});
  const double d = coupling_displacement(u1, u2, kCanonical);
  EXPECT_NEAR(coupling_displacement(u2, u1, kCanonical), -d, 1e-10);
  for (int k = 0; k < 20; ++k) {
    const double a = ts::uniform(g, -3, 3), b = ts::uniform(g, -3, 3);
    EXPECT_NEAR(coupling_displacement(u1.scaled(a), u2.scaled(b), kCanonical), a * b * d, 1e-10);
  }
  // Additivity in the first slot.
  const InputSignal u3 = InputSignal::basis(legendre(1), 0.6);
  InputSignal sum = u1;
  sum.add(BasisTerm{legendre(1), 0.6});
  EXPECT_NEAR(coupling_displacement(sum, u2, kCanonical),
              d + coupling_displacement(u3, u2, kCanonical), 1e-10);
}

TEST(Coupling, ConsistentWithSimulation) {
  const std::vector<std::pair<InputSignal, InputSignal>> pairs{
      {InputSignal::basis(legendre(1)), InputSignal::basis(legendre(2))},
      {sinusoid(1.0, 2.0, 0.0), sinusoid(1.0, 3.0, 0.5)},
      {InputSignal::basis(chebyshev_second(3)), InputSignal::basis(chebyshev_second(2))},
      {InputSignal::basis(trig_sin(2)), InputSignal::basis(trig_cos(1))}};
  for (const auto& [a, b] : pairs) {
    const double d = coupling_displacement(a, b, kCanonical);
    EXPECT_NEAR(nhi_terminal(integrate_nhi({a, b}, {}, kCanonical, 4000)).x3, d, 1e-6);
  }
}

TEST(TrajectoryAppend, DropsTheJoinSample) {
  Trajectory a = integrate_nhi({InputSignal::constant(1.0), {}}, {}, kShifted, 100);
  Trajectory b = integrate_nhi({InputSignal(), InputSignal::constant(1.0)}, nhi_terminal(a), kShifted, 100);
  for (double& t : b.t) t += 1.0;
  a.append(b);
  EXPECT_EQ(a.states.size(), 201u);
  EXPECT_EQ(a.t.size(), 201u);
  EXPECT_NEAR(a.terminal()[2], 1.0, 1e-14);
  for (std::size_t k = 1; k < a.t.size(); ++k) EXPECT_GT(a.t[k], a.t[k - 1]);
}
