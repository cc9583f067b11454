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


#include "bellforge/random.hpp"

#include <Eigen/QR>
#include <cmath>

namespace bellforge {

Matrix haar_unitary(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("unitary dimension must be positive");
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Matrix2 haar_unitary2(Rng& rng) { return haar_unitary(2, rng); }

FourQubitState random_four_qubit_state(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  FourQubitState s;
  for (int i = 0; i < 16; ++i) s[i] = Complex(g(rng), g(rng));
  return s.normalized();
}

}  // namespace bellforge
