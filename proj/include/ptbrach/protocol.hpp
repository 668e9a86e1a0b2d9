#pragma once

// Two-qubit reading of the dilated system: normalized state preparation,
// the Sigma1 post-selection / Sigma2 read-out protocol, Fubini-Study
// distances, and the vanishing-passage regime report.
//
// Qubit ordering: the first tensor factor selects brachistochrone vs ancilla
// (Sigma1 = sz (x) I2), the second is the internal spin (Sigma2 = I2 (x) sz).
// Basis order (e+ (x) e+, e+ (x) e-, e- (x) e+, e- (x) e-), i.e. a state is
// the stacked pair (psi, chi).

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "ptbrach/format.hpp"
#include "ptbrach/matrix.hpp"
#include "ptbrach/naimark.hpp"
#include "ptbrach/pt_system.hpp"

namespace ptbrach {

struct TwoQubitState {
  CVector vec;  // normalized 4-vector (psi0, psi1, chi0, chi1)

  explicit TwoQubitState(CVector v) : vec(std::move(v)) {
    if (vec.dim() != 4)
      throw std::invalid_argument("TwoQubitState: dimension must be 4");
    if (std::abs(norm(vec) - 1.0) > 1e-12)
      throw std::invalid_argument("TwoQubitState: vector is not normalized");
  }

  CVector psi_part() const { return CVector{vec[0], vec[1]}; }
  CVector chi_part() const { return CVector{vec[2], vec[3]}; }
};

// phi_I = g (psi_I, eta psi_I) with g = cos(alpha)/sqrt(2); component weights
// are |g psi_I|^2 = cos^2(a)/2 and |g chi_I|^2 = (1 + sin^2(a))/2.
inline TwoQubitState prepare_initial(const PTSystem& sys) {
  const CVector psi_I = CVector::basis(2, 0);
  const CVector chi_I = sys.eta * psi_I;
  const cplx g = sys.params.g;
  return TwoQubitState(
      CVector{g * psi_I[0], g * psi_I[1], g * chi_I[0], g * chi_I[1]});
}

struct MeasurementRecord {
  double p_sigma1_up = 0.0;   // probability of passing the Sigma1 filter
  CVector post_filter_state;  // normalized brachistochrone component
  double p_sigma2_up = 0.0;
  double p_sigma2_down = 0.0;
  double flip_fidelity = 0.0;  // overlap with the target e- = (0,1)^T
};

// Evolve phi_I through U4(tau), filter on the Sigma1 up-outcome, then read
// out Sigma2 on the surviving brachistochrone component.
inline MeasurementRecord run_protocol(const PTSystem& sys) {
  const double tau = passage_times(sys.params).tau;
  const CVector phi_F = dilated_evolution(sys, tau) * prepare_initial(sys).vec;

  MeasurementRecord rec;
  const CVector psi_slot{phi_F[0], phi_F[1]};
  const double w = norm(psi_slot);
  rec.p_sigma1_up = w * w;
  if (!(rec.p_sigma1_up > 1e-300))
    throw std::runtime_error("run_protocol: Sigma1 filtering impossible");
  rec.post_filter_state = cplx(1.0 / w) * psi_slot;
  rec.p_sigma2_up = std::norm(rec.post_filter_state[0]);
  rec.p_sigma2_down = std::norm(rec.post_filter_state[1]);
  rec.flip_fidelity = std::abs(rec.post_filter_state[1]);
  return rec;
}

// Fubini-Study angle 2 arccos |<u|v>| between normalized states.
inline double geodesic_distance(const CVector& u, const CVector& v) {
  if (u.dim() != v.dim())
    throw std::invalid_argument("geodesic_distance: dimension mismatch");
  if (std::abs(norm(u) - 1.0) > kDefaultTol ||
      std::abs(norm(v) - 1.0) > kDefaultTol)
    throw std::invalid_argument("geodesic_distance: inputs must be normalized");
  // rounding can push |<u|v>| past 1 by ~1e-16
  const double overlap = std::clamp(std::abs(dot(u, v)), 0.0, 1.0);
  return 2.0 * std::acos(overlap);
}

struct RegimeReport {
  double epsilon = 0.0;
  double alpha = 0.0;
  double s = 0.0;
  double tau = 0.0;
  double tau_h = 0.0;
  double delta2 = 0.0;         // subsystem geodesic distance (pi)
  double delta4 = 0.0;         // dilated geodesic distance 2 arccos|sin a|
  double p_success = 0.0;      // Sigma1 post-selection probability
  double energy_spread = 0.0;  // Delta E in phi_I, from matrix moments
  double aa_product = 0.0;     // 2 tau Delta E
};

inline RegimeReport analyze_point(const PTSystem& sys, const DilatedSystem& ds) {
  const PTParams& p = sys.params;
  const PassageTimes pt = passage_times(p);

  RegimeReport row;
  row.epsilon = p.epsilon;
  row.alpha = p.alpha;
  row.s = p.s;
  row.tau = pt.tau;
  row.tau_h = pt.tau_h;

  const TwoQubitState phi_I = prepare_initial(sys);
  const CVector phi_F = dilated_evolution(sys, pt.tau) * phi_I.vec;
  const CVector psi_I = CVector::basis(2, 0);
  const CVector psi_F = normalized(evolution(sys, pt.tau) * psi_I);
  row.delta2 = geodesic_distance(psi_I, psi_F);
  row.delta4 = geodesic_distance(phi_I.vec, phi_F);
  row.p_success = run_protocol(sys).p_sigma1_up;

  // moments of H4, not the analytic shortcut, so saturation stays a check
  const CVector hphi = ds.H4 * phi_I.vec;
  const double m1 = dot(phi_I.vec, hphi).real();
  const double m2 = dot(hphi, hphi).real();
  row.energy_spread = std::sqrt(std::max(0.0, m2 - m1 * m1));
  row.aa_product = 2.0 * row.tau * row.energy_spread;
  return row;
}

// One row per epsilon at fixed level spacing omega0; rows sorted by epsilon.
inline std::vector<RegimeReport> regime_report(double omega0,
                                               std::vector<double> epsilons,
                                               double E0 = 0.0) {
  std::sort(epsilons.begin(), epsilons.end());
  std::vector<RegimeReport> rows;
  rows.reserve(epsilons.size());
  for (double eps : epsilons) {
    const PTSystem sys = build_system(PTParams::from_regime(E0, omega0, eps));
    RegimeReport row = analyze_point(sys, dilate(sys));
    row.epsilon = eps;  // echo the requested grid value, not alpha + pi/2
    rows.push_back(row);
  }
  return rows;
}

inline void write_regime_csv(std::ostream& os,
                             const std::vector<RegimeReport>& rows) {
  os << "epsilon,alpha,s,tau,tau_h,delta2,delta4,p_success,energy_spread,"
        "aa_product\n";
  for (const RegimeReport& r : rows) {
    os << format_double(r.epsilon) << ',' << format_double(r.alpha) << ','
       << format_double(r.s) << ',' << format_double(r.tau) << ','
       << format_double(r.tau_h) << ',' << format_double(r.delta2) << ','
       << format_double(r.delta4) << ',' << format_double(r.p_success) << ','
       << format_double(r.energy_spread) << ',' << format_double(r.aa_product)
       << '\n';
  }
}

}  // namespace ptbrach
