#include "hermitlab/nilker.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "hermitlab/error.hpp"

namespace hermitlab {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

double max_norm(const std::vector<MatrixXcd>& mats) {
  double s = 0.0;
  for (const auto& A : mats) s = std::max(s, A.cwiseAbs().maxCoeff());
  return s;
}

Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  return {N(rng), N(rng)};
}

VectorXcd gaussian_vector(int n, std::mt19937_64& rng) {
  VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = gaussian(rng);
  return v;
}

// Sign of e_a ^ e_S relative to the sorted monomial, 0 if a is in S.
int wedge_in(int a, unsigned s) {
  if (s & (1u << a)) return 0;
  return std::popcount(s & ((1u << a) - 1u)) % 2 == 0 ? 1 : -1;
}

int tensor_dim(const CTensor& T) { return T.shape()[0]; }

VectorXcd e_unit(int n, int i) {
  VectorXcd e = VectorXcd::Zero(n);
  e(i) = 1.0;
  return e;
}

std::vector<MatrixXcd> representation_basis(const CTensor& T) {
  const int n = tensor_dim(T);
  std::vector<MatrixXcd> out;
  for (int i = 0; i < n; ++i) out.push_back(torsion_operator(T, e_unit(n, i)));
  return out;
}

// `ref` is the entry scale of the original family; blocks below 1e-12 * ref are zero.
VectorXcd inductive_step(const std::vector<MatrixXcd>& input, int n, std::mt19937_64& rng, int samples,
                         int depth, double ref) {
  if (depth > 64) throw PreconditionError("nilpotent kernel recursion depth exhausted");
  std::vector<MatrixXcd> mats;
  for (const auto& A : input)
    if (A.cwiseAbs().maxCoeff() > 1e-12 * ref) mats.push_back(A);
  if (mats.empty() || n == 1) return e_unit(n, 0);

  MatrixXcd best = mats.front();
  int rank = numerical_rank(best);
  for (std::size_t i = 1; i < mats.size(); ++i) {
    const int r = numerical_rank(mats[i]);
    if (r > rank) rank = r, best = mats[i];
  }
  for (int s = 0; s < samples && mats.size() > 1; ++s) {
    MatrixXcd c = MatrixXcd::Zero(n, n);
    for (const auto& A : mats) c += gaussian(rng) * A;
    const int r = numerical_rank(c);
    if (r > rank) rank = r, best = c;
  }
  if (rank == 0) return e_unit(n, 0);
  if (2 * rank > n) throw PreconditionError("square-zero element with rank above n/2");

  Eigen::JacobiSVD<MatrixXcd> svd(best, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int k = rank;
  if (n <= 2) return svd.matrixV().col(n - 1);

  const MatrixXcd Y = svd.matrixV().leftCols(k);
  const MatrixXcd Vk = best * Y;
  const MatrixXcd Uk = svd.matrixU().leftCols(k);
  const MatrixXcd ker = svd.matrixV().rightCols(n - k);
  const MatrixXcd rest = ker - Uk * (Uk.adjoint() * ker);
  MatrixXcd X(n, n - 2 * k);
  if (n - 2 * k > 0) {
    Eigen::JacobiSVD<MatrixXcd> rs(rest, Eigen::ComputeFullU);
    X = rs.matrixU().leftCols(n - 2 * k);
  }
  MatrixXcd B(n, n);
  B << Vk, X, Y;
  const Eigen::FullPivLU<MatrixXcd> lu(B);
  std::vector<MatrixXcd> blocks;
  for (const auto& A : mats) blocks.push_back(lu.solve(A * B).topLeftCorner(k, k));
  const VectorXcd wk = inductive_step(blocks, k, rng, samples, depth + 1, ref);
  VectorXcd w = Vk * wk;
  return w / w.norm();
}

}  // namespace

NilpotentFamily::NilpotentFamily(std::vector<MatrixXcd> matrices, double tol) : mats_(std::move(matrices)) {
  if (mats_.empty()) throw InvalidInput("nilpotent family needs at least one matrix");
  n_ = static_cast<int>(mats_.front().rows());
  for (const auto& A : mats_)
    if (A.rows() != n_ || A.cols() != n_) throw InvalidInput("nilpotent family matrices must all be n x n");
  const double s = max_norm(mats_);
  const double d = defect(mats_);
  if (!(d <= tol * (1.0 + s * s)))
    throw InvalidInput("family is not anti-commuting square-zero (defect " + std::to_string(d) + ")");
}

double NilpotentFamily::defect(const std::vector<MatrixXcd>& mats) {
  double d = 0.0;
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i; j < mats.size(); ++j)
      d = std::max(d, (mats[i] * mats[j] + mats[j] * mats[i]).cwiseAbs().maxCoeff());
  return d;
}

MatrixXcd torsion_operator(const CTensor& T, const VectorXcd& X) {
  const int n = tensor_dim(T);
  MatrixXcd A = MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) A(k, j) += X(i) * T(k, i, j);
  return A;
}

double commutation_residual(const CTensor& T) {
  const int n = tensor_dim(T);
  double worst = 0.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          Complex s{};
          for (int r = 0; r < n; ++r) s += T(k, r, i) * T(r, j, l) - T(k, r, j) * T(r, i, l);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

double antisymmetry_residual(const CTensor& T) {
  const int n = tensor_dim(T);
  double worst = 0.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(T(k, i, j) + T(k, j, i)));
  return worst;
}

NilpotentFamily family_from_torsion(const CTensor& T) {
  const double s = max_abs(T);
  const double tol = 1e-9 * (1.0 + s * s);
  if (antisymmetry_residual(T) > 1e-9 * (1.0 + s))
    throw InvalidInput("torsion is not antisymmetric in its lower indices");
  const double r = commutation_residual(T);
  if (r > tol) throw InvalidInput("torsion violates the quadratic commutation relation: residual " + std::to_string(r));
  return NilpotentFamily(representation_basis(T), 1e-9);
}

void validate_representation(const CTensor& T) {
  const double s = max_abs(T);
  if (antisymmetry_residual(T) > 1e-9 * (1.0 + s))
    throw InvalidInput("representation tensor is not antisymmetric in its lower indices");
  NilpotentFamily check(representation_basis(T), 1e-9);
}

int numerical_rank(const MatrixXcd& A) {
  Eigen::JacobiSVD<MatrixXcd> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > 1e-8 * s(0)) ++r;
  return r;
}

MatrixXcd kernel_oracle(const NilpotentFamily& F) {
  const int n = F.n();
  MatrixXcd S(n * F.m(), n);
  for (int i = 0; i < F.m(); ++i) S.middleRows(i * n, n) = F[i];
  Eigen::JacobiSVD<MatrixXcd> svd(S, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  if (s(0) > 0.0)
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > 1e-8 * s(0)) ++r;
  return svd.matrixV().rightCols(n - r);
}

double oracle_membership(const MatrixXcd& basis, const VectorXcd& w) {
  if (basis.cols() == 0) return w.norm();
  return (w - basis * (basis.adjoint() * w)).norm();
}

double kernel_residual(const NilpotentFamily& F, const VectorXcd& w) {
  double r = 0.0;
  for (const auto& A : F.matrices()) r = std::max(r, (A * w).norm());
  return r;
}

VectorXcd common_kernel_inductive(const NilpotentFamily& F, const InductiveOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  const double scale = std::max(1.0, max_norm(F.matrices()));
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    const VectorXcd w = inductive_step(F.matrices(), F.n(), rng, opt.samples, 0,
                                       std::max(max_norm(F.matrices()), 1e-300));
    if (kernel_residual(F, w) < 1e-9 * scale) return w;
  }
  throw PreconditionError("inductive common-kernel search did not validate");
}

ConstructiveResult common_kernel_constructive(const CTensor& T, const VectorXcd& X) {
  validate_representation(T);
  const std::vector<MatrixXcd> basis = representation_basis(T);
  ConstructiveResult res;
  const MatrixXcd A = torsion_operator(T, X);
  res.rank = numerical_rank(A);
  if (res.rank == 0) {
    res.fallback = true;
    res.w = common_kernel_inductive(NilpotentFamily(basis, 1e-9));
    return res;
  }
  const int k = res.rank;
  Eigen::JacobiSVD<MatrixXcd> svd(A, Eigen::ComputeFullV);
  const MatrixXcd Y = svd.matrixV().leftCols(k);
  const MatrixXcd V = A * Y;
  std::vector<MatrixXcd> Ay;
  std::vector<double> Ay_norm;
  for (int i = 0; i < k; ++i) {
    Ay.push_back(torsion_operator(T, Y.col(i)));
    Ay_norm.push_back(std::max(Ay.back().operatorNorm(), 1e-300));
  }
  double basis_norm = 0.0;
  for (const auto& B : basis) basis_norm = std::max(basis_norm, B.operatorNorm());

  for (int size = k; size >= 1; --size) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    std::function<bool(int, int)> walk = [&](int pos, int start) {
      if (pos == size) {
        VectorXcd W = V.col(idx.back());
        double bound = W.norm();
        for (int t = size - 2; t >= 0; --t) {
          W = Ay[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])] * W;
          bound *= Ay_norm[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])];
        }
        if (W.norm() <= 1e-8 * bound) return false;
        const VectorXcd w = W / W.norm();
        double worst = 0.0;
        for (const auto& B : basis) worst = std::max(worst, (B * w).norm());
        if (worst > 1e-9 * std::max(1.0, basis_norm)) return false;
        res.w = w;
        res.step = k - size + 1;
        res.indices = idx;
        return true;
      }
      for (int s = start; s < k; ++s) {
        idx[static_cast<std::size_t>(pos)] = s;
        if (walk(pos + 1, s + 1)) return true;
      }
      return false;
    };
    if (walk(0, 0)) return res;
  }
  throw PreconditionError("constructive chain exhausted without a kernel vector");
}

MatrixXcd random_gl(int n, std::mt19937_64& rng) {
  auto unitary = [&] {
    MatrixXcd G(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = gaussian(rng);
    Eigen::HouseholderQR<MatrixXcd> qr(G);
    return MatrixXcd(qr.householderQ());
  };
  std::uniform_real_distribution<double> U(-1.15, 1.15);
  Eigen::VectorXcd d(n);
  for (int i = 0; i < n; ++i) d(i) = std::exp(U(rng));
  return unitary() * d.asDiagonal() * unitary();
}

CTensor conjugate_torsion(const CTensor& T, const MatrixXcd& P) {
  const int n = tensor_dim(T);
  const MatrixXcd Q = P.inverse();
  CTensor a({n, n, n}, Complex{}), b({n, n, n}, Complex{}), c({n, n, n}, Complex{});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int q = 0; q < n; ++q) a(k, i, j) += T(k, i, q) * Q(q, j);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int q = 0; q < n; ++q) b(k, i, j) += a(k, q, j) * Q(q, i);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int q = 0; q < n; ++q) c(k, i, j) += P(k, q) * b(q, i, j);
  return c;
}

CTensor center_torsion(int p, int q, std::mt19937_64& rng) {
  const int n = p + q;
  CTensor T({n, n, n}, Complex{});
  for (int k = p; k < n; ++k)
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) {
        const Complex c = gaussian(rng);
        T(k, i, j) = c;
        T(k, j, i) = -c;
      }
  return T;
}

CTensor exterior_torsion(int pad) {
  // basis: e1 e2 e3 | e12 e13 e23 | e123, indexed by bitmask
  const std::vector<unsigned> masks = {1, 2, 4, 3, 5, 6, 7};
  const int n = 7 + pad;
  auto index = [&](unsigned m) {
    return static_cast<int>(std::find(masks.begin(), masks.end(), m) - masks.begin());
  };
  CTensor T({n, n, n}, Complex{});
  for (int a = 0; a < 3; ++a) {
    for (int s = 0; s < 6; ++s) {
      const unsigned ms = masks[static_cast<std::size_t>(s)];
      const int sign = wedge_in(a, ms);
      if (sign == 0) continue;
      const int target = index(ms | (1u << a));
      T(target, a, s) = sign;
      T(target, s, a) = -sign;
    }
  }
  return T;
}

CTensor direct_sum(const CTensor& a, const CTensor& b) {
  const int na = tensor_dim(a), nb = tensor_dim(b), n = na + nb;
  CTensor T({n, n, n}, Complex{});
  for (int k = 0; k < na; ++k)
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j) T(k, i, j) = a(k, i, j);
  for (int k = 0; k < nb; ++k)
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j) T(na + k, na + i, na + j) = b(k, i, j);
  return T;
}

std::vector<MatrixXcd> grassmann_family(int p) {
  const int n = 1 << p;
  std::vector<MatrixXcd> out;
  for (int a = 0; a < p; ++a) {
    MatrixXcd A = MatrixXcd::Zero(n, n);
    for (unsigned s = 0; s < static_cast<unsigned>(n); ++s) {
      const int sign = wedge_in(a, s);
      if (sign != 0) A(static_cast<int>(s | (1u << a)), static_cast<int>(s)) = sign;
    }
    out.push_back(A);
  }
  return out;
}

NilFixture random_fixture(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind_d(0, 3);
  NilFixture f;
  CTensor T;
  switch (kind_d(rng)) {
    case 0: {
      std::uniform_int_distribution<int> pd(2, 5);
      const int p = pd(rng);
      std::uniform_int_distribution<int> qd(1, std::min(3, 8 - p));
      T = center_torsion(p, qd(rng), rng);
      f.kind = "center";
      break;
    }
    case 1: {
      std::uniform_int_distribution<int> pad(0, 1);
      T = exterior_torsion(pad(rng));
      f.kind = "exterior";
      break;
    }
    case 2: {
      std::uniform_int_distribution<int> qd(1, 2);
      T = direct_sum(center_torsion(2, 1, rng), center_torsion(3, qd(rng), rng));
      f.kind = "center+center";
      break;
    }
    default: {
      std::uniform_int_distribution<int> q2(1, 3);
      const int d = q2(rng);
      T = direct_sum(center_torsion(3, 1, rng), CTensor({d, d, d}, Complex{}));
      f.kind = "center+trivial";
      break;
    }
  }
  const int n = tensor_dim(T);
  f.T = conjugate_torsion(T, random_gl(n, rng));
  std::uniform_int_distribution<int> md(1, 4);
  const int m = md(rng);
  std::vector<MatrixXcd> mats;
  for (int s = 0; s < m; ++s) mats.push_back(torsion_operator(f.T, gaussian_vector(n, rng)));
  f.family = NilpotentFamily(std::move(mats), 1e-9);
  f.X = gaussian_vector(n, rng);
  return f;
}

}  // namespace hermitlab
