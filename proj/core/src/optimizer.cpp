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


#include "bellforge/optimizer.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

#include "bellforge/random.hpp"

namespace bellforge {

/*************************** Transfer coefficients ****************************/

const TransferCoefficients::Column& TransferCoefficients::column(
    int input, int pol) const {
  if (input == 0) return pol == 0 ? beta : gamma;
  return pol == 0 ? alpha : eta;
}

TransferCoefficients extract_transfer(const Matrix& u) {
  if (u.rows() < 4 || u.rows() != u.cols() || u.rows() % 2 != 0) {
    throw std::invalid_argument(
        "transfer coefficients need a square mode unitary of even size >= 4");
  }
  const int l = static_cast<int>(u.rows()) / 2;
  TransferCoefficients tc;
  auto read = [&](int col) {
    TransferCoefficients::Column c(l);
    for (int j = 0; j < l; ++j) c[j] = {u(2 * j, col), u(2 * j + 1, col)};
    return c;
  };
  tc.beta = read(0);
  tc.gamma = read(1);
  tc.alpha = read(2);
  tc.eta = read(3);
  return tc;
}

TransferCoefficients extract_transfer(const ModeUnitary& u) {
  return extract_transfer(u.matrix());
}

std::array<Complex, 16> constraint_residuals(
    const TransferCoefficients& tc, const FourQubitState& t, double p) {
  std::array<Complex, 16> bilinear{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto& c = tc.column(0, a);
      const auto& d = tc.column(1, b);
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          bilinear[8 * a + 4 * b + 2 * x + y] =
              c[0][x] * d[1][y] + c[1][y] * d[0][x];
        }
      }
    }
  }
  auto target = [&](int k) {
    const int a = (k >> 3) & 1, b = (k >> 2) & 1, x = (k >> 1) & 1, y = k & 1;
    return t[FourQubitState::index(a, x, y, b)];
  };
  Complex z(0.0, 0.0);
  for (int k = 0; k < 16; ++k) z += std::conj(target(k)) * bilinear[k];
  const Complex phase = std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0);
  const double scale = 2.0 * std::sqrt(std::max(p, 0.0));
  std::array<Complex, 16> r{};
  for (int k = 0; k < 16; ++k) r[k] = bilinear[k] - scale * phase * target(k);
  return r;
}

double objective(
    const ModeUnitary& u, const JointState& initial, const FourQubitState& t,
    double penalty) {
  const ConversionOutcome o = evaluate(apply(u, initial), t);
  if (!o.fidelity) return -penalty;
  const double gap = 1.0 - *o.fidelity;
  return o.p_suc - penalty * gap * gap;
}

/******************************** Merit ***************************************/

namespace {

struct Spectral {
  Matrix vectors;
  Eigen::VectorXd phases;
};

/// X = i V diag(h) V^dag from the Hermitian -iX.
Spectral generator_spectrum(const Eigen::VectorXd& x, int n) {
  Matrix h(n, n);
  int k = 0;
  for (int j = 0; j < n; ++j) h(j, j) = x(k++);
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l) {
      // X_jl = re + i im, X_lj = -re + i im; H = -iX.
      const Complex xjl(x(k), x(k + 1));
      k += 2;
      h(j, l) = Complex(0.0, -1.0) * xjl;
      h(l, j) = std::conj(h(j, l));
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return {es.eigenvectors(), es.eigenvalues()};
}

Matrix exp_from_spectrum(const Spectral& s) {
  const int n = static_cast<int>(s.phases.size());
  Eigen::VectorXcd e(n);
  for (int j = 0; j < n; ++j) e(j) = std::polar(1.0, s.phases(j));
  return s.vectors * e.asDiagonal() * s.vectors.adjoint();
}

}  // namespace

Matrix unitary_from_generator(const Eigen::VectorXd& x, int n) {
  if (x.size() != n * n) {
    throw std::invalid_argument("generator needs n^2 parameters");
  }
  return exp_from_spectrum(generator_spectrum(x, n));
}

PenaltyMerit::PenaltyMerit(
    const JointState& initial, const FourQubitState& t, double mu)
    : n_(initial.dim()), t_(t), mu_(mu) {
  if (!t.is_normalized(1e-9)) {
    throw std::invalid_argument("target state must be unit norm");
  }
  for (int b = 0; b < 4; ++b) blocks_.push_back(initial.block(b).amplitudes());
}

double PenaltyMerit::value_u(
    const Matrix& u, Matrix* grad_u, Stats* stats) const {
  std::array<Complex, 16> a{};
  std::vector<Matrix> carry(4);
  for (int b = 0; b < 4; ++b) {
    carry[b] = blocks_[b] * u.transpose();
    const Matrix m = u * carry[b];
    const int s1 = b >> 1, s4 = b & 1;
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        a[FourQubitState::index(s1, x, y, s4)] = 2.0 * m(x, 2 + y);
      }
    }
  }
  double p = 0.0;
  Complex z(0.0, 0.0);
  for (int k = 0; k < 16; ++k) {
    p += std::norm(a[k]);
    z += std::conj(t_[k]) * a[k];
  }
  const double zz = std::norm(z);
  if (stats) *stats = {p, zz};
  if (grad_u) {
    grad_u->setZero(n_, n_);
    for (int b = 0; b < 4; ++b) {
      const int s1 = b >> 1, s4 = b & 1;
      Matrix w = Matrix::Zero(n_, n_);
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          const int k = FourQubitState::index(s1, x, y, s4);
          w(x, 2 + y) = (1.0 - mu_) * a[k] + mu_ * z * t_[k];
        }
      }
      *grad_u += 4.0 * (w + w.transpose()) * carry[b].adjoint();
    }
  }
  return (1.0 - mu_) * p + mu_ * zz;
}

double PenaltyMerit::value(
    const Eigen::VectorXd& x, Eigen::VectorXd* grad, Stats* stats) const {
  const Spectral s = generator_spectrum(x, n_);
  const Matrix u = exp_from_spectrum(s);
  if (!grad) return value_u(u, nullptr, stats);

  Matrix gu;
  const double f = value_u(u, &gu, stats);
  // Daleckii-Krein: dU = V (Phi o (V^dag dX V)) V^dag.
  Matrix gt = s.vectors.adjoint() * gu * s.vectors;
  for (int j = 0; j < n_; ++j) {
    for (int l = 0; l < n_; ++l) {
      const double mid = 0.5 * (s.phases(j) + s.phases(l));
      const double half = 0.5 * (s.phases(j) - s.phases(l));
      const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0
                                                : std::sin(half) / half;
      gt(j, l) *= std::conj(std::polar(sinc, mid));
    }
  }
  const Matrix e = s.vectors * gt * s.vectors.adjoint();
  grad->resize(n_ * n_);
  int k = 0;
  for (int j = 0; j < n_; ++j) (*grad)(k++) = e(j, j).imag();
  for (int j = 0; j < n_; ++j) {
    for (int l = j + 1; l < n_; ++l) {
      (*grad)(k++) = e(j, l).real() - e(l, j).real();
      (*grad)(k++) = e(j, l).imag() + e(l, j).imag();
    }
  }
  return f;
}

/******************************* Optimization *********************************/

std::vector<double> geometric_schedule(double start, double ratio, double stop) {
  if (!(start > 0.0) || !(ratio > 1.0) || !(stop >= start)) {
    throw std::invalid_argument(
        "geometric schedule needs start > 0, ratio > 1, stop >= start");
  }
  std::vector<double> out;
  for (double mu = start; mu <= stop * (1.0 + 1e-12); mu *= ratio) {
    out.push_back(mu);
  }
  if (out.back() < stop) out.push_back(stop);
  return out;
}

void OptimizerConfig::validate() const {
  if (spatial_modes < 2) {
    throw std::invalid_argument("optimizer needs at least 2 spatial modes");
  }
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (penalty_schedule.empty()) {
    throw std::invalid_argument("penalty schedule must not be empty");
  }
  for (double mu : penalty_schedule) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
      throw std::invalid_argument("penalty weights must be positive");
    }
  }
  if (max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be >= 1");
  }
  if (!(tolerance >= 0.0)) {
    throw std::invalid_argument("tolerance must be non-negative");
  }
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

int resolve_thread_count(int requested) {
  int n = requested > 0
              ? requested
              : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  if (const char* env = std::getenv("BELLFORGE_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) n = std::min(n, cap);
    } catch (const std::exception&) {
    }
  }
  return n;
}

namespace {

constexpr double kArmijo = 1e-4;
// Perturbation applied between penalty stages to leave saddle points.
constexpr double kStageKick = 1e-2;

struct AscentResult {
  int iterations = 0;
};

/// BFGS ascent with Armijo backtracking; the merit never decreases.
AscentResult bfgs_ascend(
    const PenaltyMerit& merit, Eigen::VectorXd& x, int max_iterations,
    double tolerance, int stage, std::vector<TracePoint>* trace) {
  const int m = static_cast<int>(x.size());
  Eigen::VectorXd g;
  PenaltyMerit::Stats st;
  double f = merit.value(x, &g, &st);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m);
  bool fresh = true;
  const double gtol = tolerance * std::max(1.0, merit.mu());
  AscentResult out;

  auto record = [&](int it) {
    if (!trace) return;
    const double fid = st.p > 0.0 ? std::sqrt(st.overlap_sq / st.p) : 0.0;
    trace->push_back({stage, it, f, st.p, std::min(1.0, fid)});
  };
  record(0);

  for (int it = 1; it <= max_iterations; ++it) {
    if (g.lpNorm<Eigen::Infinity>() <= gtol) break;
    Eigen::VectorXd d = h * g;
    double slope = g.dot(d);
    if (!(slope > 0.0)) {
      h.setIdentity();
      d = g;
      slope = g.squaredNorm();
    }
    double step = 1.0;
    Eigen::VectorXd xn, gn;
    PenaltyMerit::Stats sn;
    double fn = f;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      xn = x + step * d;
      fn = merit.value(xn, &gn, &sn);
      if (std::isfinite(fn) && fn >= f + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (fresh) break;
      h.setIdentity();
      fresh = true;
      continue;
    }
    const Eigen::VectorXd s = xn - x;
    // Ascent on f is descent on -f, whose gradient change is -(gn - g).
    const Eigen::VectorXd y = g - gn;
    const double sy = s.dot(y);
    const double df = fn - f;
    x = xn;
    g = gn;
    f = fn;
    st = sn;
    out.iterations = it;
    record(it);
    if (sy > 1e-300) {
      if (fresh) h *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = h * y;
      h += (rho * rho * y.dot(hy) + rho) * s * s.transpose() -
           rho * (hy * s.transpose() + s * hy.transpose());
      fresh = false;
    }
    if (df <= 1e-16 * std::max(1.0, std::abs(f)) &&
        s.lpNorm<Eigen::Infinity>() < 1e-13) {
      break;
    }
  }
  return out;
}

RestartRecord run_restart(
    const JointState& initial, const FourQubitState& t,
    const OptimizerConfig& cfg, int index, Matrix* unitary) {
  RestartRecord rec;
  rec.index = index;
  rec.seed = cfg.seed + static_cast<std::uint64_t>(index);
  const int n = initial.dim();
  Rng rng(rec.seed);
  std::uniform_real_distribution<double> init(
      -std::numbers::pi, std::numbers::pi);
  Eigen::VectorXd x(n * n);
  for (int k = 0; k < x.size(); ++k) x(k) = init(rng);

  PenaltyMerit merit(initial, t, cfg.penalty_schedule.front());
  std::vector<TracePoint>* trace = cfg.record_trace ? &rec.trace : nullptr;
  std::normal_distribution<double> kick(0.0, kStageKick);
  for (std::size_t s = 0; s < cfg.penalty_schedule.size(); ++s) {
    if (s > 0) {
      for (int k = 0; k < x.size(); ++k) x(k) += kick(rng);
    }
    merit.set_mu(cfg.penalty_schedule[s]);
    const AscentResult a = bfgs_ascend(
        merit, x, cfg.max_iterations, cfg.tolerance, static_cast<int>(s),
        trace);
    rec.iterations += a.iterations;
    rec.stages = static_cast<int>(s) + 1;
    PenaltyMerit::Stats st;
    merit.value(x, nullptr, &st);
    if (st.p <= kZeroProbability) break;
    const double fid = std::sqrt(st.overlap_sq / st.p);
    if (fid >= cfg.fidelity_floor()) break;
  }

  *unitary = unitary_from_generator(x, n);
  const ConversionOutcome o = evaluate(bellforge::apply(*unitary, initial), t);
  rec.p = o.p_suc;
  rec.fidelity = o.fidelity.value_or(0.0);
  rec.feasible = o.fidelity.has_value() && rec.fidelity >= cfg.fidelity_floor();
  const double mu_max = *std::max_element(
      cfg.penalty_schedule.begin(), cfg.penalty_schedule.end());
  rec.final_merit =
      rec.p - mu_max * rec.p * (1.0 - rec.fidelity * rec.fidelity);
  return rec;
}

}  // namespace

OptimizationResult optimize_success(
    const JointState& initial, const FourQubitState& t,
    const OptimizerConfig& cfg) {
  cfg.validate();
  if (initial.spatial_modes() != cfg.spatial_modes) {
    throw std::invalid_argument(
        "initial state has L=" + std::to_string(initial.spatial_modes()) +
        " but the optimizer config has L=" +
        std::to_string(cfg.spatial_modes));
  }
  if (!t.is_normalized(1e-9)) {
    throw std::invalid_argument("target state must be unit norm");
  }

  std::vector<RestartRecord> records(cfg.restarts);
  std::vector<Matrix> unitaries(cfg.restarts);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next++; i < cfg.restarts; i = next++) {
      records[i] = run_restart(initial, t, cfg, i, &unitaries[i]);
    }
  };
  const int workers = std::min(resolve_thread_count(cfg.threads), cfg.restarts);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  int best = -1;
  for (int i = 0; i < cfg.restarts; ++i) {
    if (records[i].feasible && (best < 0 || records[i].p > records[best].p)) {
      best = i;
    }
  }
  const bool converged = best >= 0;
  if (!converged) {
    best = 0;
    for (int i = 1; i < cfg.restarts; ++i) {
      if (records[i].fidelity > records[best].fidelity) best = i;
    }
  }

  OptimizationResult res;
  res.best_effort_p = records[best].p;
  res.best_p = converged ? records[best].p : 0.0;
  res.fidelity = records[best].fidelity;
  res.best_unitary = ModeUnitary(cfg.spatial_modes, unitaries[best]);
  res.converged = converged;
  res.restarts_used = cfg.restarts;
  res.best_restart = best;
  res.history = std::move(records);
  return res;
}

}  // namespace bellforge
