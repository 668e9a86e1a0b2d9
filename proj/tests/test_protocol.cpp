#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ptbrach/protocol.hpp"
#include "ptbrach/verify.hpp"

using namespace ptbrach;

namespace {
const cplx I(0.0, 1.0);
constexpr double kPi = 3.141592653589793;
// sin(0.1)^2 / 2, the filter probability at epsilon = 0.1
constexpr double kFilterProbAtEps01 = 0.0049833555396895926;
}  // namespace

TEST_CASE("two-qubit state splits and reassembles") {
  const PTSystem sys = build_system(PTParams(0.0, 1.0, 0.4));
  const TwoQubitState st = prepare_initial(sys);
  const CVector psi = st.psi_part();
  const CVector chi = st.chi_part();
  const CVector rebuilt = kron(CVector::basis(2, 0), psi) +
                          kron(CVector::basis(2, 1), chi);
  CHECK(max_abs_diff(rebuilt, st.vec) == 0.0);
  CHECK(std::abs(norm(st.vec) - 1.0) < 1e-15);
  CHECK_THROWS_AS(TwoQubitState(CVector{1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(TwoQubitState(CVector{1.0, 1.0, 0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("initial preparation in the Hermitian limit") {
  const PTSystem sys = build_system(PTParams(0.0, 1.0, 0.0));
  const TwoQubitState st = prepare_initial(sys);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(st.vec, CVector{r, 0.0, r, 0.0}) < 1e-15);
}

TEST_CASE("component weights near the exceptional point") {
  const PTSystem sys = build_system(PTParams::from_regime(0.0, 1.0, 0.1));
  const TwoQubitState st = prepare_initial(sys);
  const double w_psi = std::pow(norm(st.psi_part()), 2);
  const double w_chi = std::pow(norm(st.chi_part()), 2);
  CHECK(w_psi == Catch::Approx(kFilterProbAtEps01).margin(1e-12));
  CHECK(w_chi == Catch::Approx(1.0 - kFilterProbAtEps01).margin(1e-12));
}

TEST_CASE("weights always close to one") {
  for (double alpha : {-1.4, -0.7, 0.0, 0.7, 1.4}) {
    const PTSystem sys = build_system(PTParams(0.0, 1.0, alpha));
    const TwoQubitState st = prepare_initial(sys);
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    REQUIRE(std::pow(norm(st.psi_part()), 2) ==
            Catch::Approx(ca * ca / 2.0).margin(1e-14));
    REQUIRE(std::pow(norm(st.chi_part()), 2) ==
            Catch::Approx((1.0 + sa * sa) / 2.0).margin(1e-14));
  }
}

TEST_CASE("spin flip is recovered for every admitted point") {
  for (double alpha : {-1.4, -0.5, 0.0, 0.5, 1.4}) {
    for (double E0 : {0.0, 0.7}) {
      const PTSystem sys = build_system(PTParams(E0, 1.0, alpha));
      const MeasurementRecord rec = run_protocol(sys);
      REQUIRE(rec.flip_fidelity == Catch::Approx(1.0).margin(1e-10));
      REQUIRE(rec.p_sigma2_down == Catch::Approx(1.0).margin(1e-10));
      REQUIRE(rec.p_sigma2_up + rec.p_sigma2_down ==
              Catch::Approx(1.0).margin(1e-12));
      REQUIRE(rec.p_sigma1_up ==
              Catch::Approx(std::cos(alpha) * std::cos(alpha) / 2.0)
                  .margin(1e-10));
    }
  }
}

TEST_CASE("filter probability at epsilon = 0.1") {
  const PTSystem sys = build_system(PTParams::from_regime(0.0, 1.0, 0.1));
  const MeasurementRecord rec = run_protocol(sys);
  CHECK(rec.p_sigma1_up == Catch::Approx(kFilterProbAtEps01).margin(1e-12));
}

TEST_CASE("filter probability in the Hermitian limit") {
  const PTSystem sys = build_system(PTParams(0.0, 1.0, 0.0));
  CHECK(run_protocol(sys).p_sigma1_up == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("geodesic distance basics") {
  const CVector u = CVector::basis(2, 0);
  CHECK(geodesic_distance(u, u) == 0.0);
  CHECK(geodesic_distance(u, CVector::basis(2, 1)) ==
        Catch::Approx(kPi).margin(1e-15));
  // phases do not matter
  CHECK(geodesic_distance(u, (-I) * u) == Catch::Approx(0.0).margin(1e-15));
  CHECK_THROWS_AS(geodesic_distance(u, CVector{2.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(geodesic_distance(u, CVector::basis(3, 0)),
                  std::invalid_argument);
}

TEST_CASE("subsystem distance stays maximal while the dilated one contracts") {
  const PTSystem sys = build_system(PTParams::from_regime(0.0, 1.0, 0.1));
  const double tau = passage_times(sys.params).tau;
  const CVector psi_I = CVector::basis(2, 0);
  const CVector psi_F = normalized(evolution(sys, tau) * psi_I);
  CHECK(geodesic_distance(psi_I, psi_F) == Catch::Approx(kPi).margin(1e-12));

  const TwoQubitState phi_I = prepare_initial(sys);
  const CVector phi_F = dilated_evolution(sys, tau) * phi_I.vec;
  CHECK(geodesic_distance(phi_I.vec, phi_F) ==
        Catch::Approx(0.2).margin(1e-10));
}

TEST_CASE("regime report rows") {
  const std::vector<RegimeReport> rows = regime_report(1.0, {0.3, 0.1});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].epsilon == 0.1);  // sorted ascending
  CHECK(rows[1].epsilon == 0.3);
  const RegimeReport& r = rows[0];
  CHECK(r.tau == Catch::Approx(0.2).margin(1e-12));
  CHECK(r.tau_h == Catch::Approx(kPi).margin(1e-14));
  CHECK(r.delta2 == Catch::Approx(kPi).margin(1e-12));
  CHECK(r.delta4 == Catch::Approx(0.2).margin(1e-10));
  CHECK(r.p_success == Catch::Approx(kFilterProbAtEps01).margin(1e-10));
  CHECK(r.energy_spread == Catch::Approx(0.5).margin(1e-10));
  CHECK(r.aa_product == Catch::Approx(0.2).margin(1e-10));
}

TEST_CASE("regime report validates input") {
  CHECK_THROWS_AS(regime_report(1.0, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(regime_report(1.0, {kPi / 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(regime_report(-1.0, {0.1}), std::invalid_argument);
}

TEST_CASE("Hermitian limit saturates both distances") {
  const PTSystem sys = build_system(PTParams(0.0, 1.0, 0.0));
  const RegimeReport row = analyze_point(sys, dilate(sys));
  CHECK(row.tau == Catch::Approx(row.tau_h).margin(1e-14));
  CHECK(row.delta4 == Catch::Approx(kPi).margin(1e-12));
  CHECK(row.delta2 == Catch::Approx(kPi).margin(1e-12));
}

TEST_CASE("energy spread and the passage-time bound") {
  for (double alpha : {-1.4, -0.9, -0.2, 0.0, 0.4, 1.2}) {
    const PTSystem sys = build_system(PTParams(0.0, 1.0, alpha));
    const RegimeReport row = analyze_point(sys, dilate(sys));
    REQUIRE(row.energy_spread ==
            Catch::Approx(sys.params.omega0 / 2.0).margin(1e-10));
    REQUIRE(row.delta4 ==
            Catch::Approx(2.0 * std::acos(std::abs(std::sin(alpha))))
                .margin(1e-10));
    REQUIRE(row.tau >= row.delta4 / (2.0 * row.energy_spread) - 1e-10);
    if (alpha <= 0.0)
      REQUIRE(row.aa_product == Catch::Approx(row.delta4).margin(1e-10));
    else
      REQUIRE(row.aa_product > row.delta4 + 1e-3);
  }
}

TEST_CASE("monotone vanishing-passage behavior") {
  const std::vector<RegimeReport> rows =
      regime_report(1.0, {0.3, 0.1, 0.03, 0.01});
  REQUIRE(rows.size() == 4);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    REQUIRE(rows[k].tau / rows[k].tau_h > rows[k - 1].tau / rows[k - 1].tau_h);
    REQUIRE(rows[k].delta4 > rows[k - 1].delta4);
    REQUIRE(rows[k].p_success > rows[k - 1].p_success);
  }
}

TEST_CASE("norm is conserved along the dilated evolution") {
  for (double alpha : {-1.2, 0.5}) {
    const PTSystem sys = build_system(PTParams(0.0, 1.0, alpha));
    const TwoQubitState phi_I = prepare_initial(sys);
    const double tau = passage_times(sys.params).tau;
    for (int k = 0; k <= 50; ++k) {
      const double t = 2.0 * tau * k / 50.0;
      REQUIRE(std::abs(norm(dilated_evolution(sys, t) * phi_I.vec) - 1.0) <
              1e-12);
    }
  }
}
