#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "hermitlab/expr.hpp"
#include "hermitlab/forms.hpp"
#include "hermitlab/jet_matrix.hpp"
#include "hermitlab/tensor.hpp"

namespace hermitlab {

/// Chern connection data at one point.
///
/// Holomorphic-frame quantities use e_i = d/dz_i. Frame quantities use
/// e_a = sum_m P(a,m) d/dz_m with coframe phi_a = sum_m L(m,a) dz_m, L = P^{-1}.
/// For chern_at the frame is unitary: P = inverse of the Cholesky factor of g.
struct ChernData {
  int n = 0;
  std::vector<Complex> point;

  JetMatrix g;               // g_{i jbar}, order 2
  std::vector<JetMatrix> C;  // theta_hol = sum_m C[m] dz_m, C[m] = d_m g g^{-1}, order 1
  CTensor theta_curv_hol;    // (i,j,k,l): Theta_ij coefficient on dz_k ^ dzbar_l
  JTensor torsion_hol;       // (i,k,j): tau_i = sum T^i_{kj} dz_k ^ dz_j, order 1

  JetMatrix P;               // frame, order 2
  JetMatrix L;               // coframe matrix, P^{-1}
  Eigen::MatrixXcd frame;    // P values
  std::vector<JetMatrix> A;  // frame connection, coefficient of dz_m, order 1
  std::vector<JetMatrix> B;  // frame connection, coefficient of dzbar_m, order 1

  JTensor T;       // (k,i,j): T^k_{ij}, tau_k = sum over all (i,j) T^k_{ij} phi_i ^ phi_j, order 1
  CTensor Rh;      // (k,l,i,j): R^h_{k lbar i jbar}
  CTensor eta;     // (j): sum_i T^i_{ij}
  CTensor covT;    // (k,i,j,l): T^k_{ij,l}
  CTensor covTbar; // (k,i,j,l): T^k_{ij,lbar}

  /// Frame connection values theta_ij(e_l) and theta_ij(ebar_l).
  Complex theta_on_e(int i, int j, int l) const;
  Complex theta_on_ebar(int i, int j, int l) const;

  /// e_l(f) and ebar_l(f) for an order >= 1 jet.
  Complex e(int l, const Jet& f) const;
  Complex ebar(int l, const Jet& f) const;

  /// (1,0) vector e_a and (0,1) vector ebar_a in the (d/dz, d/dzbar) basis.
  Eigen::VectorXcd e_vec(int a) const;
  Eigen::VectorXcd ebar_vec(int a) const;

  Form phi(int a) const;
  Form omega() const;
  Form tau(int k) const;                 // frame torsion 2-form
  Form theta_form(int i, int j) const;   // frame connection 1-form
  Form curvature_form(int i, int j) const;  // frame curvature (1,1)-form
  Form eta_form() const;

  /// Largest frame connection coefficient at the point.
  double theta_max() const;
};

/// Chern data relative to an arbitrary frame field P (order-2 jet matrix).
ChernData chern_in_frame(const JetMatrix& g, std::span<const Complex> point, const JetMatrix& P);

/// Canonical unitary frame P = L^{-1}, g = L L^*.
JetMatrix unitary_frame(const JetMatrix& g);

ChernData chern_at(const MetricField& metric, std::span<const Complex> point);

/// Frame tensor of type (1,2) after the change e' = A e, with A evaluated
/// by value (A needs no jet data here).
CTensor transform_torsion(const CTensor& T, const Eigen::MatrixXcd& A);

/// Raw frame derivatives e_l(T^k_ij) and ebar_l(T^k_ij), no connection terms.
void raw_torsion_derivatives(const ChernData& d, CTensor& dT, CTensor& dTbar);

struct NormalFrame {
  JetMatrix A;      // unitary to first order at p, A(p) = I
  ChernData data;   // Chern data in the frame A * P
};

/// Frame with vanishing connection matrix at the point.
NormalFrame normal_frame_at(const MetricField& metric, std::span<const Complex> point);

// Pointwise identity residuals (max coefficient magnitudes).

/// d tau + theta^t ^ tau - Theta^t ^ phi in the holomorphic frame.
double bianchi_residual(const ChernData& d);
/// (2,0) part of d theta - theta ^ theta in the holomorphic frame.
double curvature_type_residual(const ChernData& d);
/// Theta + Theta^* in the unitary frame.
double curvature_skew_residual(const ChernData& d);
/// tTheta ^ phi in the unitary frame.
double kahler_like_wedge(const ChernData& d);
/// max |R^h_{k lbar i jbar} - R^h_{i lbar k jbar}|.
double kahler_like_symmetry(const ChernData& d);
/// sqrt(-1) del delbar omega - tau^t ^ taubar - phi^t ^ Theta ^ phibar.
double ddbar_omega_residual(const ChernData& d);
/// sqrt(-1) del delbar omega - sigma, sigma = tau^t ^ taubar (unitary frame).
double ddbar_omega_sigma_residual(const ChernData& d);
/// del omega^{n-1} + 2 eta ^ omega^{n-1}.
double balanced_identity_residual(const ChernData& d);
/// delbar eta.
double delbar_eta(const ChernData& d);
/// 2 T^k_{ij,lbar} - (R^h_{j lbar i kbar} - R^h_{i lbar j kbar}).
double torsion_derivative_residual(const ChernData& d);

double torsion_norm(const ChernData& d);   // max |T^k_ij|
double eta_norm(const ChernData& d);       // max |eta_j|
double curvature_norm(const ChernData& d); // max |R^h|

}  // namespace hermitlab
