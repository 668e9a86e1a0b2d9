#pragma once

// Naimark dilation of the PT eigenvector POVM: the partial isometry M, its
// unitary completion V, the projector set P_k, the dilated Hamiltonian
// H4 = V E4 V^dagger with its Lambda/Omega block structure, and the dilated
// closed-form evolution. Also a general rank-one POVM dilation routine.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptbrach/matrix.hpp"
#include "ptbrach/pt_system.hpp"

namespace ptbrach {

struct Povm {
  std::vector<CMatrix> elements;
  std::size_t count() const { return elements.size(); }
};

// Four rank-one elements A_k = f^2 |v_k><v_k| over the eigenvectors of H
// (k = 1,2) and of H^dagger (k = 3,4). Completeness sum A_k = I2 follows
// from f^2 (eta^-1 + eta) = I2.
inline Povm build_povm(const PTSystem& sys) {
  const cplx f2 = sys.params.f * sys.params.f;
  Povm povm;
  for (const CMatrix* basis : {&sys.Psi, &sys.Xi})
    for (std::size_t j = 0; j < 2; ++j) {
      const CVector v = basis->column(j);
      povm.elements.push_back(f2 * outer(v, v));
    }
  CMatrix sum = CMatrix::zero(2, 2);
  for (const CMatrix& a : povm.elements) sum = sum + a;
  if (!(max_abs_diff(sum, identity2()) < 1e-12))
    throw std::logic_error("build_povm: completeness failed");
  return povm;
}

struct DilatedSystem {
  CMatrix M;                          // 2x4 partial isometry f[Psi, Xi]
  CMatrix V;                          // 4x4 unitary dilation
  std::array<CMatrix, 4> projectors;  // P_k = v_k v_k^dagger
  CMatrix E4;                         // I2 (x) diag(E+, E-)
  CMatrix H4;                         // V E4 V^dagger
  CMatrix Lambda;                     // E0 I2 + (omega0/2) cos(a) sx
  CMatrix Omega;                      // i (omega0/2) sin(a) sz
};

// V = f [sz (x) Psi + sx (x) Xi]; the bottom-row completion (X = rho,
// Y = -rho^-1) is pinned to this choice, column order matching A_1..A_4.
inline DilatedSystem dilate(const PTSystem& sys, double tol = kDefaultTol) {
  const PTParams& p = sys.params;
  const cplx f = p.f;
  const cplx i(0.0, 1.0);

  DilatedSystem ds;
  ds.M = CMatrix::from_columns({f * sys.Psi.column(0), f * sys.Psi.column(1),
                                f * sys.Xi.column(0), f * sys.Xi.column(1)});
  ds.V = f * (kron(sigma_z(), sys.Psi) + kron(sigma_x(), sys.Xi));
  for (std::size_t k = 0; k < 4; ++k) {
    const CVector v = ds.V.column(k);
    ds.projectors[k] = outer(v, v);
  }
  const CMatrix Etilde = CMatrix::diagonal({sys.E_plus, sys.E_minus});
  ds.E4 = kron(identity2(), Etilde);
  ds.H4 = ds.V * ds.E4 * adjoint(ds.V);
  ds.Lambda = cplx(p.E0) * identity2() +
              cplx(p.omega0 / 2.0 * std::cos(p.alpha)) * sigma_x();
  ds.Omega = i * cplx(p.omega0 / 2.0 * std::sin(p.alpha)) * sigma_z();

  const auto check = [](double err, double bound, const char* what) {
    if (!(err < bound))
      throw std::logic_error(std::string("dilate: invariant failed: ") + what);
  };
  check(max_abs_diff(ds.M * adjoint(ds.M), identity2()), 1e-12, "M M^dagger = I2");
  check(max_abs_diff(ds.V * adjoint(ds.V), identity4()), 1e-12, "V V^dagger = I4");
  check(max_abs_diff(adjoint(ds.V) * ds.V, identity4()), 1e-12, "V^dagger V = I4");
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      if (ds.V(r, c) != ds.M(r, c))
        throw std::logic_error("dilate: top block of V does not equal M");
  CMatrix psum = CMatrix::zero(4, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    psum = psum + ds.projectors[j];
    for (std::size_t k = 0; k < 4; ++k) {
      const CMatrix prod = ds.projectors[j] * ds.projectors[k];
      const CMatrix expect = (j == k) ? ds.projectors[k] : CMatrix::zero(4, 4);
      check(max_abs_diff(prod, expect), 1e-12, "projector orthogonality");
    }
  }
  check(max_abs_diff(psum, identity4()), 1e-12, "projector completeness");
  check(max_abs_diff(ds.H4, adjoint(ds.H4)), 1e-12, "H4 Hermitian");

  // block identity, with Lambda and Omega rebuilt algebraically
  const CMatrix blocks =
      kron(identity2(), ds.Lambda) + kron(i * sigma_y(), ds.Omega);
  check(max_abs_diff(ds.H4, blocks), 1e-12, "H4 block form");
  const cplx f2 = f * f;
  const CMatrix eta_inv = sys.Psi * adjoint(sys.Psi);
  const CMatrix lambda_alg = f2 * (sys.H * eta_inv + sys.eta * sys.H);
  const CMatrix omega_alg = f2 * (sys.H - sys.Hdag);
  check(max_abs_diff(ds.Lambda, lambda_alg), 1e-12, "Lambda closed form");
  check(max_abs_diff(ds.Omega, omega_alg), 1e-12, "Omega closed form");

  // double-degenerate spectrum {E+, E+, E-, E-}
  const EigenResult eig = hermitian_eigen(ds.H4, tol);
  const double spec_err = std::max(
      std::max(std::abs(eig.eigenvalues[0] - sys.E_plus),
               std::abs(eig.eigenvalues[1] - sys.E_plus)),
      std::max(std::abs(eig.eigenvalues[2] - sys.E_minus),
               std::abs(eig.eigenvalues[3] - sys.E_minus)));
  check(spec_err, tol, "H4 spectrum");
  return ds;
}

// Completes the partial isometry M = [x_1 ... x_n] (top N rows) to an n x n
// unitary. Completion rows come from Gram-Schmidt over canonical basis
// vectors in order; candidates whose residual is below 1e-12 are skipped.
inline CMatrix general_naimark(const std::vector<CVector>& x) {
  if (x.empty()) throw std::invalid_argument("general_naimark: empty vector set");
  const std::size_t N = x.front().dim();
  const std::size_t n = x.size();
  if (n < N)
    throw std::invalid_argument("general_naimark: need at least N vectors");
  for (const CVector& v : x)
    if (v.dim() != N)
      throw std::invalid_argument("general_naimark: mixed vector dimensions");

  CMatrix completeness = CMatrix::zero(N, N);
  for (const CVector& v : x) completeness = completeness + outer(v, v);
  if (!(max_abs_diff(completeness, CMatrix::identity(N)) < 1e-10))
    throw std::invalid_argument(
        "general_naimark: vectors do not resolve the identity");

  // rows of the output; the first N are the rows of M, copied exactly
  std::vector<std::vector<cplx>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < N; ++i) {
    std::vector<cplx> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = x[k][i];
    rows.push_back(std::move(r));
  }

  const auto project_out = [n](std::vector<cplx>& c,
                               const std::vector<cplx>& r) {
    cplx ip = 0.0;
    for (std::size_t k = 0; k < n; ++k) ip += std::conj(r[k]) * c[k];
    for (std::size_t k = 0; k < n; ++k) c[k] -= ip * r[k];
  };

  for (std::size_t j = 0; j < n && rows.size() < n; ++j) {
    std::vector<cplx> c(n, cplx(0.0));
    c[j] = 1.0;
    for (int pass = 0; pass < 2; ++pass)  // re-orthogonalize once
      for (const auto& r : rows) project_out(c, r);
    double nrm = 0.0;
    for (cplx z : c) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) continue;
    for (cplx& z : c) z /= nrm;
    rows.push_back(std::move(c));
  }
  if (rows.size() != n)
    throw std::logic_error("general_naimark: completion failed");

  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) e[i * n + k] = rows[i][k];
  CMatrix V(n, n, std::move(e));
  if (!is_unitary(V, 1e-10))
    throw std::logic_error("general_naimark: completion is not unitary");
  return V;
}

// Closed-form dilated evolution U4(t) = [[F, G], [-G, F]]. The spectral
// route V e^{-i E4 t} V^dagger and the series exponential are test oracles.
inline CMatrix dilated_evolution(const PTSystem& sys, double t) {
  if (!std::isfinite(t))
    throw std::invalid_argument("dilated_evolution: non-finite t");
  const double a = sys.params.alpha;
  const double y = sys.params.omega0 * t / 2.0;
  const cplx phase = std::exp(cplx(0.0, -sys.params.E0 * t));
  const cplx i(0.0, 1.0);
  const CMatrix F =
      phase * (cplx(std::cos(y)) * identity2() -
               i * cplx(std::sin(y) * std::cos(a)) * sigma_x());
  const CMatrix G = phase * cplx(std::sin(y) * std::sin(a)) * sigma_z();
  return kron(identity2(), F) + kron(i * sigma_y(), G);
}

enum class AncillaRoute {
  Metric,        // chi(t) = eta psi(t), valid for every admitted alpha
  OmegaInverse,  // chi(t) = Omega^-1 (H - Lambda) psi(t); Omega is singular
                 // at alpha = 0, so this route is refused near it
};

inline CVector ancilla_state(const PTSystem& sys, double t,
                             AncillaRoute route = AncillaRoute::Metric) {
  const double a = sys.params.alpha;
  const double y = sys.params.omega0 * t / 2.0;
  const cplx phase = std::exp(cplx(0.0, -sys.params.E0 * t)) / std::cos(a);
  const CVector psi{phase * std::cos(y - a),
                    phase * cplx(0.0, -1.0) * std::sin(y)};
  if (route == AncillaRoute::Metric) return sys.eta * psi;

  if (std::abs(std::sin(a)) < 1e-10)
    throw std::invalid_argument(
        "ancilla_state: Omega is singular at alpha = 0; use the metric route");
  const cplx i(0.0, 1.0);
  const CMatrix lambda = cplx(sys.params.E0) * identity2() +
                         cplx(sys.params.omega0 / 2.0 * std::cos(a)) * sigma_x();
  const cplx w = i * sys.params.omega0 / 2.0 * std::sin(a);
  const CMatrix omega_inv{{1.0 / w, 0.0}, {0.0, -1.0 / w}};
  return omega_inv * ((sys.H - lambda) * psi);
}

}  // namespace ptbrach
