#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "hermitlab/chern.hpp"
#include "hermitlab/forms.hpp"
#include "hermitlab/jet_matrix.hpp"
#include "hermitlab/tensor.hpp"

namespace hermitlab {

/// Levi-Civita data of the real metric underlying g at one point.
///
/// Real coordinates are ordered (x1, y1, .., xn, yn) with z = x + iy and the
/// real metric is the one for which <d/dz_i, d/dzbar_j> = g_{i jbar}.
/// Curvature: R(X,Y)Z = [nabla_X, nabla_Y]Z - nabla_[X,Y]Z and
/// R_{XYZW} = <R(X,Y)Z, W>, extended complex-bilinearly.
struct RiemannData {
  int n = 0;
  JetMatrix h;      // real metric, order 2
  JetMatrix hinv;
  JTensor Gamma;    // (a,b,c): nabla_{d_b} d_c = Gamma^a_{bc} d_a, order 1
  CTensor Rreal;    // (a,b,c,d): R(d_a, d_b, d_c, d_d) on real coordinate vectors

  /// Frame slot s in [0, 2n): s < n is e_s, s >= n is ebar_{s-n}.
  Eigen::MatrixXcd frame_real;  // (s, r): real components of frame vector s
  CTensor R;                    // frame components R(F_a, F_b, F_c, F_d)
  CTensor Rmixed;               // (a,b,c,d): first two slots d/dw_a (w = z, zbar), last two frame

  // Connection matrices of nabla in the frame (values), as forms in dz, dzbar.
  std::vector<Form> theta1;  // (i*n+j): <nabla e_i, ebar_j>
  std::vector<Form> theta2;  // (i*n+j): <nabla ebar_i, ebar_j>
  std::vector<Form> Theta2;  // (i*n+j): R(., ., ebar_i, ebar_j)

  const Form& th1(int i, int j) const { return theta1[static_cast<std::size_t>(i * n + j)]; }
  const Form& th2(int i, int j) const { return theta2[static_cast<std::size_t>(i * n + j)]; }
  const Form& Th2(int i, int j) const { return Theta2[static_cast<std::size_t>(i * n + j)]; }

  /// R on arbitrary complexified vectors given in real components.
  Complex curvature(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y, const Eigen::VectorXcd& z,
                    const Eigen::VectorXcd& w) const;
  /// Complex-bilinear inner product of vectors in real components.
  Complex inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const;
  /// Real Ricci form Ric(x, y) and scalar curvature.
  Complex ricci(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const;
  double scalar() const;
  /// Complex structure on real components.
  Eigen::VectorXcd J(const Eigen::VectorXcd& v) const;
  /// Real components of a (1,0) vector given in the unitary frame.
  Eigen::VectorXcd from_frame(const Eigen::VectorXcd& coeffs) const;
  /// Sectional curvature -R(u,v,u,v)/|u^v|^2 of a real plane.
  double sectional(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
};

RiemannData riemann_in_frame(const JetMatrix& g, const JetMatrix& P);
RiemannData riemann_at(const MetricField& metric, std::span<const Complex> point);

struct RiemannSymmetry {
  double antisym_first = 0.0;
  double antisym_last = 0.0;
  double pair_swap = 0.0;
  double bianchi = 0.0;
};
RiemannSymmetry riemann_symmetries(const RiemannData& r);

/// max |R_{ijkl}| over the (1,0) frame slots.
double gray_vanishing(const RiemannData& r);
/// Largest component of Theta2 (max over entries and frame pairs).
double theta2_norm(const RiemannData& r);
/// max of |R_{ij kbar lbar}| and |R_{i jbar kbar lbar}|.
double gk_blocks_norm(const RiemannData& r);
/// max |R_{i jbar k lbar} - R_{k jbar i lbar}|.
double gk_bianchi_symmetry(const RiemannData& r);

struct Theta2Check {
  double theta2_formula = 0.0;  // Christoffel theta2 vs sum conj(T^k_ij) phi_k
  double theta2_01_part = 0.0;  // (0,1) part of the Christoffel theta2
  double gamma_formula = 0.0;   // theta1 - theta vs the torsion expression for gamma
  double Theta2_routes = 0.0;   // structure-equation Theta2 vs curvature Theta2
  double Theta2_02_part = 0.0;  // (0,2) part of the curvature Theta2
};

/// Torsion-route connection forms: theta2 and gamma from T, theta1 = theta + gamma.
Form theta2_from_torsion(const ChernData& c, int i, int j);
Form gamma_from_torsion(const ChernData& c, int i, int j);
/// Theta2 = d theta2 - theta2 ^ theta1 - conj(theta1) ^ theta2 from torsion data only.
std::vector<Form> Theta2_from_torsion(const ChernData& c);

Theta2Check theta2_gamma_check(const ChernData& c, const RiemannData& r);

/// sigma1 = -sqrt(-1) tr(gamma' ^ gamma'') with gamma = theta1 - theta, and
/// sigma2 = sqrt(-1) tr(conj(theta2) ^ theta2), both from the Christoffel route.
Form sigma1_form(const ChernData& c, const RiemannData& r);
Form sigma2_form(const RiemannData& r);
/// Minimum eigenvalues of the (1,1) coefficient matrices in the unitary frame.
double sigma1_min_eigenvalue(const ChernData& c, const RiemannData& r);
double sigma2_min_eigenvalue(const ChernData& c, const RiemannData& r);

/// d sigma2 - sqrt(-1) tr(conj(Theta2) ^ theta2 - conj(theta2) ^ Theta2), left
/// side from the jet-valued torsion-route theta2.
double dsigma2_check(const ChernData& c, const RiemannData& r);

}  // namespace hermitlab
