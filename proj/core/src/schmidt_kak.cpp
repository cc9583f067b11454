// Copyright 2026 The BellForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bellforge/schmidt_kak.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bellforge/optics.hpp"

namespace bellforge {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

Matrix2 pauli_x() {
  Matrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Matrix2 pauli_y() {
  Matrix2 m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}
Matrix2 pauli_z() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
Matrix2 pauli(int k) {
  switch (k) {
    case 0:
      return pauli_x();
    case 1:
      return pauli_y();
    default:
      return pauli_z();
  }
}

/// Columns: (|00>+|11>)/r2, i(|00>-|11>)/r2, i(|01>+|10>)/r2, (|01>-|10>)/r2.
/// In this basis local SU(2)xSU(2) gates are real orthogonal and XX, YY, ZZ
/// are diagonal.
Matrix4 magic_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix4 q = Matrix4::Zero();
  q(0, 0) = r;
  q(3, 0) = r;
  q(0, 1) = kI * r;
  q(3, 1) = -kI * r;
  q(1, 2) = kI * r;
  q(2, 2) = kI * r;
  q(1, 3) = r;
  q(2, 3) = -r;
  return q;
}

/// Real orthogonal P (det +1) with P^T m P diagonal, for m complex symmetric
/// unitary. Re(m) and Im(m) commute, so a generic real combination shares
/// their eigenvectors.
Eigen::Matrix4d diagonalize_symmetric_unitary(const Matrix4& m) {
  const Eigen::Matrix4d re = m.real();
  const Eigen::Matrix4d im = m.imag();
  static constexpr std::array<double, 6> kMix = {
      0.6180339887, 1.7320508075, -0.4142135623, 2.2360679775, -1.4142135623,
      0.3183098861};
  Eigen::Matrix4d best;
  double best_off = INFINITY;
  for (double c : kMix) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(re + c * im);
    Eigen::Matrix4d p = es.eigenvectors();
    const Matrix4 d = p.transpose().cast<Complex>() * m * p.cast<Complex>();
    double off = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i != j) off = std::max(off, std::abs(d(i, j)));
      }
    }
    if (off < best_off) {
      best_off = off;
      best = p;
    }
    if (off < 1e-12) break;
  }
  if (best.determinant() < 0.0) best.col(0) *= -1.0;
  return best;
}

/// Tracks U = phase * (post_a x post_b) R(theta) (pre_a x pre_b) while the
/// angles are moved into the Weyl chamber.
struct KakCanonicalizer {
  KakFactors& k;

  // theta_j -> theta_j - s*pi/2, absorbing exp(i s pi/2 PP) = i s PP.
  void shift(int j, int s) {
    k.angles[j] -= s * kPi / 2.0;
    k.global_phase *= Complex(0.0, static_cast<double>(s));
    k.pre_a = pauli(j) * k.pre_a;
    k.pre_b = pauli(j) * k.pre_b;
  }

  // R(theta) = (C x C)^dag R(theta') (C x C) with theta' = theta, j <-> l.
  void swap(int j, int l) {
    Matrix2 c;
    const int other = 3 - j - l;
    const double r = 1.0 / std::sqrt(2.0);
    if (other == 2) {
      c << 1.0, 0.0, 0.0, kI;  // S: X <-> Y
    } else if (other == 1) {
      c << r, r, r, -r;  // Hadamard: X <-> Z
    } else {
      c = (pauli_y() + pauli_z()) * r;  // Y <-> Z
    }
    std::swap(k.angles[j], k.angles[l]);
    k.post_a = k.post_a * c.adjoint();
    k.post_b = k.post_b * c.adjoint();
    k.pre_a = c * k.pre_a;
    k.pre_b = c * k.pre_b;
  }

  // Negates theta_j and theta_l by conjugating qubit A with the Pauli that
  // anticommutes with both P_j and P_l.
  void flip(int j, int l) {
    const Matrix2 p = pauli(3 - j - l);
    k.angles[j] = -k.angles[j];
    k.angles[l] = -k.angles[l];
    k.post_a = k.post_a * p;
    k.pre_a = p * k.pre_a;
  }

  void run() {
    for (int j = 0; j < 3; ++j) {
      while (k.angles[j] > kPi / 4.0) shift(j, 1);
      while (k.angles[j] <= -kPi / 4.0) shift(j, -1);
    }
    auto mag = [&](int j) { return std::abs(k.angles[j]); };
    if (mag(0) < mag(1)) swap(0, 1);
    if (mag(1) < mag(2)) swap(1, 2);
    if (mag(0) < mag(1)) swap(0, 1);
    if (k.angles[0] < 0.0 && k.angles[1] < 0.0) {
      flip(0, 1);
    } else if (k.angles[0] < 0.0) {
      flip(0, 2);
    } else if (k.angles[1] < 0.0) {
      flip(1, 2);
    }
  }
};

int bit(int idx, int q) { return (idx >> (3 - q)) & 1; }

}  // namespace

/********************************** Schmidt ***********************************/

SchmidtData schmidt_14_23(const FourQubitState& psi, double tol) {
  if (!psi.is_normalized(1e-9)) {
    throw std::invalid_argument(
        "Schmidt decomposition expects a unit-norm state (norm = " +
        std::to_string(psi.norm()) + ")");
  }
  const Matrix4 m = psi.bipartite_matrix();
  Eigen::JacobiSVD<Matrix4> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SchmidtData out;
  const auto& s = svd.singularValues();
  Matrix4 ua = svd.matrixU();
  Matrix4 vb = svd.matrixV().conjugate();
  for (int k = 0; k < 4; ++k) {
    out.coefficients[k] = s(k);
    if (s(k) > tol) ++out.rank;
    int arg = 0;
    ua.col(k).cwiseAbs().maxCoeff(&arg);
    const Complex lead = ua(arg, k);
    if (std::abs(lead) > 0.0) {
      const Complex ph = lead / std::abs(lead);
      ua.col(k) *= std::conj(ph);
      vb.col(k) *= ph;
    }
  }
  out.basis_a = ua;
  out.basis_b = vb;
  return out;
}

bool theorem1_convertible(const FourQubitState& psi, double tol) {
  const SchmidtData sd = schmidt_14_23(psi, tol);
  if (sd.rank != 4) return false;
  for (double c : sd.coefficients) {
    if (std::abs(c - 0.5) > tol) return false;
  }
  return true;
}

/************************************ KAK *************************************/

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

Matrix4 interaction_unitary(double t1, double t2, double t3) {
  // XX, YY, ZZ commute, so the exponential factorizes.
  Matrix4 r = Matrix4::Identity();
  const std::array<double, 3> t = {t1, t2, t3};
  for (int j = 0; j < 3; ++j) {
    const Matrix4 pp = kron(pauli(j), pauli(j));
    r = r * (std::cos(t[j]) * Matrix4::Identity() + kI * std::sin(t[j]) * pp);
  }
  return r;
}

Matrix4 KakFactors::interaction() const {
  return interaction_unitary(angles[0], angles[1], angles[2]);
}

Matrix4 KakFactors::reconstruct() const {
  return global_phase * kron(post_a, post_b) * interaction() *
         kron(pre_a, pre_b);
}

std::pair<Matrix2, Matrix2> kron_factor(const Matrix4& m) {
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double n = m.block<2, 2>(2 * i, 2 * j).squaredNorm();
      if (n > best) {
        best = n;
        bi = i;
        bj = j;
      }
    }
  }
  Matrix2 b = m.block<2, 2>(2 * bi, 2 * bj);
  const Complex bb = (b.adjoint() * b).trace();
  Matrix2 a;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      a(i, j) = (b.adjoint() * m.block<2, 2>(2 * i, 2 * j)).trace() / bb;
    }
  }
  // Rescale so that both factors are unitary and det(a) = 1.
  const Complex det = a.determinant();
  const Complex root = std::sqrt(det);
  a /= root;
  b *= root;
  return {a, b};
}

KakFactors kak_decompose(const Matrix4& u) {
  const double err = unitarity_error(u);
  if (!(err <= kUnitarityTolerance)) {
    throw std::invalid_argument(
        "KAK decomposition requires a unitary (max |U^dag U - I| = " +
        std::to_string(err) + ")");
  }
  const Matrix4 q = magic_basis();
  const Complex det = u.determinant();
  const Complex phase0 = std::polar(1.0, std::arg(det) / 4.0);
  const Matrix4 ub = q.adjoint() * (u / phase0) * q;
  const Matrix4 m = ub.transpose() * ub;

  const Eigen::Matrix4d p = diagonalize_symmetric_unitary(m);
  const Matrix4 pc = p.cast<Complex>();
  const Matrix4 d = pc.transpose() * m * pc;

  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i) lambda[i] = std::arg(d(i, i)) / 2.0;

  auto left_factor = [&]() {
    Matrix4 e = Matrix4::Zero();
    for (int i = 0; i < 4; ++i) e(i, i) = std::polar(1.0, -lambda[i]);
    return Eigen::Matrix4d((ub * pc * e).real());
  };
  Eigen::Matrix4d k1 = left_factor();
  if (k1.determinant() < 0.0) {
    lambda[0] += kPi;
    k1 = left_factor();
  }

  const double total = lambda[0] + lambda[1] + lambda[2] + lambda[3];
  std::array<double, 4> lp{};
  for (int i = 0; i < 4; ++i) lp[i] = lambda[i] - total / 4.0;

  KakFactors out;
  out.global_phase = phase0 * std::polar(1.0, total / 4.0);
  out.angles = {(lp[0] + lp[2]) / 2.0, (lp[1] + lp[2]) / 2.0,
                (lp[0] + lp[1]) / 2.0};
  const Matrix4 post = q * k1.cast<Complex>() * q.adjoint();
  const Matrix4 pre = q * pc.transpose() * q.adjoint();
  std::tie(out.post_a, out.post_b) = kron_factor(post);
  std::tie(out.pre_a, out.pre_b) = kron_factor(pre);

  KakCanonicalizer{out}.run();
  return out;
}

/****************************** Four-qubit gates ******************************/

FourQubitState apply_two_qubit(
    const Matrix4& u, const FourQubitState& psi, int qa, int qb) {
  if (qa < 0 || qa > 3 || qb < 0 || qb > 3 || qa == qb) {
    throw std::invalid_argument("two-qubit gate needs distinct qubits in 0..3");
  }
  FourQubitState out;
  for (int i = 0; i < 16; ++i) {
    const int row = 2 * bit(i, qa) + bit(i, qb);
    Complex acc(0.0, 0.0);
    for (int col = 0; col < 4; ++col) {
      int j = i;
      j &= ~(1 << (3 - qa));
      j &= ~(1 << (3 - qb));
      j |= ((col >> 1) & 1) << (3 - qa);
      j |= (col & 1) << (3 - qb);
      acc += u(row, col) * psi[j];
    }
    out[i] = acc;
  }
  return out;
}

FourQubitState apply_one_qubit(
    const Matrix2& u, const FourQubitState& psi, int q) {
  if (q < 0 || q > 3) throw std::invalid_argument("qubit index out of range");
  FourQubitState out;
  for (int i = 0; i < 16; ++i) {
    const int row = bit(i, q);
    const int j0 = i & ~(1 << (3 - q));
    const int j1 = j0 | (1 << (3 - q));
    out[i] = u(row, 0) * psi[j0] + u(row, 1) * psi[j1];
  }
  return out;
}

/************************** Constructive conversion ***************************/

Matrix4 build_converter(const FourQubitState& target, double tol) {
  const SchmidtData sd = schmidt_14_23(target, tol);
  for (int k = 0; k < 4; ++k) {
    const double c = sd.coefficients[k];
    if (c <= tol || std::abs(c - 0.5) > tol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "state is not reachable by a two-qubit unitary on nodes 2,3: "
          << "Schmidt coefficient " << k << " is " << c
          << " (rank " << sd.rank << ", all four must equal 1/2)";
      throw NotConvertible(msg.str());
    }
  }
  const KakFactors kak = kak_decompose(sd.basis_a);
  return kak.global_phase * sd.basis_b *
         kron(kak.pre_a.transpose(), kak.pre_b.transpose()) *
         kak.interaction() *
         kron(kak.post_a.transpose(), kak.post_b.transpose());
}

FourQubitState apply_to_bell_pairs(const Matrix4& v23) {
  return FourQubitState::from_bipartite_matrix(0.5 * v23.transpose());
}

}  // namespace bellforge
