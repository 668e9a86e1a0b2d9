#pragma once

// The PT-symmetric 2x2 Hamiltonian family H = E0*I + s*(i sin(a) sz + sx),
// its biorthogonal eigensystem, metric operator, Hermitian equivalent,
// closed-form non-unitary evolution and brachistochrone timing.

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "ptbrach/format.hpp"
#include "ptbrach/matrix.hpp"

namespace ptbrach {

// Scalar parameters plus all derived constants. alpha is restricted to the
// unbroken-symmetry sector (-pi/2, pi/2), with a guard band around the
// exceptional points |alpha| = pi/2 where cos(alpha) -> 0.
struct PTParams {
  double E0 = 0.0;
  double s = 1.0;
  double alpha = 0.0;

  // derived
  double beta = 0.0;     // tanh(beta) = sin(alpha)
  double omega0 = 2.0;   // level spacing 2*s*cos(alpha)
  double f = 0.0;        // POVM normalization sqrt(cos(alpha)/2)
  double g = 0.0;        // dilated-state normalization cos(alpha)/sqrt(2)
  double epsilon = 0.0;  // alpha + pi/2

  PTParams(double E0_, double s_, double alpha_) : E0(E0_), s(s_), alpha(alpha_) {
    constexpr double half_pi = 1.5707963267948966;
    if (!(std::isfinite(E0) && std::isfinite(s) && std::isfinite(alpha)))
      throw std::invalid_argument("PTParams: non-finite parameter");
    if (!(s > 0.0)) throw std::invalid_argument("PTParams: s must be positive");
    if (!(alpha > -half_pi && alpha < half_pi))
      throw std::invalid_argument("PTParams: alpha outside (-pi/2, pi/2)");
    if (std::abs(std::cos(alpha)) < 1e-8)
      throw std::invalid_argument("PTParams: alpha too close to exceptional point");
    beta = std::atanh(std::sin(alpha));
    omega0 = 2.0 * s * std::cos(alpha);
    f = std::sqrt(std::cos(alpha) / 2.0);
    g = std::cos(alpha) / std::sqrt(2.0);
    epsilon = alpha + half_pi;
  }

  // Vanishing-passage parametrization: alpha = epsilon - pi/2 with the level
  // spacing omega0 held fixed, so s grows as the exceptional point nears.
  static PTParams from_regime(double E0, double omega0, double epsilon) {
    constexpr double half_pi = 1.5707963267948966;
    if (!(omega0 > 0.0))
      throw std::invalid_argument("PTParams: omega0 must be positive");
    if (!(epsilon > 0.0 && epsilon < half_pi))
      throw std::invalid_argument("PTParams: epsilon outside (0, pi/2)");
    const double alpha = epsilon - half_pi;
    const double s = omega0 / (2.0 * std::cos(alpha));
    return PTParams(E0, s, alpha);
  }
};

// Eigenvectors of H(alpha); the adjoint's eigenvectors are the same closed
// forms at -alpha. The phases are fixed verbatim (including the global
// e^{+-i alpha/2} and i factors) because the dilation depends on them.
inline CVector eigvec_plus(double alpha) {
  const cplx pref =
      std::exp(cplx(0.0, alpha / 2.0)) / std::sqrt(2.0 * std::cos(alpha));
  return CVector{pref, pref * std::exp(cplx(0.0, -alpha))};
}

inline CVector eigvec_minus(double alpha) {
  const cplx pref = cplx(0.0, 1.0) * std::exp(cplx(0.0, -alpha / 2.0)) /
                    std::sqrt(2.0 * std::cos(alpha));
  return CVector{pref, -pref * std::exp(cplx(0.0, alpha))};
}

struct PTSystem {
  PTParams params;
  CMatrix H;        // PT-symmetric Hamiltonian
  CMatrix Hdag;
  double E_plus = 0.0, E_minus = 0.0;
  CMatrix Psi;      // eigenvectors of H as columns
  CMatrix Xi;       // eigenvectors of H^dagger as columns
  CMatrix eta;      // metric e^{beta sy}; eta H = H^dagger eta
  CMatrix rho;      // positive square root of eta, e^{(beta/2) sy}
  CMatrix rho_inv;  // rho(-beta)
  CMatrix h;        // Hermitian equivalent rho H rho^-1
  CMatrix Phi;      // unitary eigenvector matrix of h
};

// Indefinite PT inner product (u,v) = (sx conj(u))^T v. The eigenvectors are
// normalized so (E+,E+) = +1, (E-,E-) = -1, (E+,E-) = 0.
inline cplx pt_inner(const CVector& u, const CVector& v) {
  if (u.dim() != 2 || v.dim() != 2)
    throw std::invalid_argument("pt_inner: vectors must have dimension 2");
  return std::conj(u[1]) * v[0] + std::conj(u[0]) * v[1];
}

inline PTSystem build_system(const PTParams& p, double tol = kDefaultTol) {
  const double sa = std::sin(p.alpha);
  const cplx i(0.0, 1.0);

  PTSystem sys{p,
               CMatrix{{p.E0 + i * p.s * sa, p.s}, {p.s, p.E0 - i * p.s * sa}},
               CMatrix{},
               p.E0 + p.s * std::cos(p.alpha),
               p.E0 - p.s * std::cos(p.alpha),
               CMatrix::from_columns({eigvec_plus(p.alpha), eigvec_minus(p.alpha)}),
               CMatrix::from_columns({eigvec_plus(-p.alpha), eigvec_minus(-p.alpha)}),
               CMatrix{},
               CMatrix{},
               CMatrix{},
               CMatrix{},
               CMatrix{}};
  sys.Hdag = adjoint(sys.H);

  // cosh(beta) = 1/cos(alpha) and sinh(beta) = tan(alpha) directly; going
  // through atanh(sin(alpha)) would amplify rounding by 1/cos^2(alpha) near
  // the exceptional points. Half-angle values via sinh(b/2) = sinh(b)/(2
  // cosh(b/2)), which has no cancellation at small alpha.
  const double ca = std::cos(p.alpha);
  const double ch = 1.0 / ca, sh = std::sin(p.alpha) / ca;
  const double ch2 = std::sqrt((ch + 1.0) / 2.0);
  const double sh2 = sh / (2.0 * ch2);
  sys.eta = cplx(ch) * identity2() + cplx(sh) * sigma_y();
  // hyperbolic closed form rather than a numerical square root, so that
  // rho(-beta) is the exact inverse of rho(beta)
  sys.rho = cplx(ch2) * identity2() + cplx(sh2) * sigma_y();
  sys.rho_inv = cplx(ch2) * identity2() - cplx(sh2) * sigma_y();
  sys.h = sys.rho * sys.H * sys.rho_inv;
  sys.Phi = sys.rho * sys.Psi;

  // construction-time verification of the type invariants
  const CMatrix Etilde = CMatrix::diagonal({sys.E_plus, sys.E_minus});
  const auto check = [&](double err, const char* what) {
    if (!(err < tol))
      throw std::logic_error(std::string("build_system: invariant failed: ") + what);
  };
  check(max_abs_diff(sigma_x() * conjugate(sys.H) * sigma_x(), sys.H), "PT symmetry");
  check(max_abs_diff(sys.eta * sys.H, sys.Hdag * sys.eta), "pseudo-Hermiticity");
  check(max_abs_diff(sys.rho * sys.rho, sys.eta), "rho^2 = eta");
  check(max_abs_diff(adjoint(sys.Xi) * sys.Psi, identity2()), "biorthonormality");
  check(max_abs_diff(sys.Xi * adjoint(sys.Xi), sys.eta), "eta = Xi Xi^dagger");
  check(max_abs_diff(sys.Psi * adjoint(sys.Psi) * sys.eta, identity2()),
        "eta^-1 = Psi Psi^dagger");
  check(max_abs_diff(sys.h, adjoint(sys.h)), "h Hermitian");
  check(max_abs_diff(adjoint(sys.Phi) * sys.Phi, identity2()), "Phi unitary");
  check(max_abs_diff(sys.h * sys.Phi, sys.Phi * Etilde), "h eigensystem");
  check(max_abs_diff(sys.H * sys.Psi, sys.Psi * Etilde), "H eigensystem");
  return sys;
}

// Closed-form non-unitary evolution U(t) = e^{-itH}; y = omega0 t / 2.
inline CMatrix evolution(const PTSystem& sys, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("evolution: non-finite t");
  const double a = sys.params.alpha;
  const double y = sys.params.omega0 * t / 2.0;
  const cplx phase = std::exp(cplx(0.0, -sys.params.E0 * t)) / std::cos(a);
  const cplx off = cplx(0.0, -1.0) * std::sin(y);
  return phase * CMatrix{{std::cos(y - a), off}, {off, std::cos(y + a)}};
}

struct PassageTimes {
  double tau;    // first time U(t) maps (1,0)^T onto the ray of (0,1)^T
  double tau_h;  // Anandan-Aharonov bound pi/omega0 for Hermitian evolution
};

inline PassageTimes passage_times(const PTParams& p) {
  const double pi = 3.141592653589793;
  return {(p.alpha + pi / 2.0) / (p.s * std::cos(p.alpha)), pi / p.omega0};
}

struct Trajectory {
  std::vector<double> times;
  std::vector<CVector> psi;  // subsystem component, raw (unnormalized) values
  std::vector<CVector> chi;  // ancilla component chi(t) = eta psi(t)
};

// psi(t) = U(t) psi_I evaluated from the closed form, on a uniform grid.
inline Trajectory trajectory(const PTSystem& sys, double t_max, std::size_t n) {
  if (n < 2) throw std::invalid_argument("trajectory: need at least 2 samples");
  if (!(t_max > 0.0)) throw std::invalid_argument("trajectory: t_max must be positive");
  const double a = sys.params.alpha;
  Trajectory tr;
  tr.times.reserve(n);
  tr.psi.reserve(n);
  tr.chi.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * t_max / static_cast<double>(n - 1);
    const double y = sys.params.omega0 * t / 2.0;
    const cplx phase = std::exp(cplx(0.0, -sys.params.E0 * t)) / std::cos(a);
    const CVector psi{phase * std::cos(y - a),
                      phase * cplx(0.0, -1.0) * std::sin(y)};
    tr.times.push_back(t);
    tr.chi.push_back(sys.eta * psi);
    tr.psi.push_back(std::move(psi));
  }
  return tr;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,re_psi0,im_psi0,re_psi1,im_psi1,re_chi0,im_chi0,re_chi1,im_chi1\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const CVector& p = tr.psi[k];
    const CVector& c = tr.chi[k];
    os << format_double(tr.times[k]);
    for (const CVector* v : {&p, &c})
      for (std::size_t j = 0; j < 2; ++j)
        os << ',' << format_double((*v)[j].real()) << ','
           << format_double((*v)[j].imag());
    os << '\n';
  }
}

}  // namespace ptbrach
