#pragma once

// Independent reference constructions used as test oracles. Everything here is
// built from explicit Kronecker products and Kraus sums so it shares no code
// path with the index-twiddling kernels in the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ghzline/netmodel.hpp"
#include "ghzline/qdm.hpp"

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;

inline M kron(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline M kron_all(const std::vector<M>& ops) {
  M out = M::Identity(1, 1);
  for (const auto& op : ops) out = kron(out, op);
  return out;
}

inline M I2() { return M::Identity(2, 2); }
inline M X() {
  M m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline M Y() {
  M m(2, 2);
  m << 0, C(0, -1), C(0, 1), 0;
  return m;
}
inline M Z() {
  M m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline M H() {
  M m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

// `op` on qubit q of an n-qubit register, identity elsewhere (qubit 0 leftmost).
inline M embed(const M& op, int q, int n) {
  std::vector<M> ops(static_cast<std::size_t>(n), I2());
  ops[static_cast<std::size_t>(q)] = op;
  return kron_all(ops);
}

// CZ = |0><0| (x) I + |1><1| (x) Z, embedded on qubits (a, b).
inline M cz(int a, int b, int n) {
  M p0 = M::Zero(2, 2), p1 = M::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  std::vector<M> t0(static_cast<std::size_t>(n), I2()), t1 = t0;
  t0[static_cast<std::size_t>(a)] = p0;
  t1[static_cast<std::size_t>(a)] = p1;
  t1[static_cast<std::size_t>(b)] = Z();
  return kron_all(t0) + kron_all(t1);
}

// Depolarizing channel written as a Pauli twirl: (1 - 3a/4) rho + a/4 sum P rho P.
inline M depolarize(const M& rho, int q, int n, double a) {
  M out = (1.0 - 0.75 * a) * rho;
  for (const M& p : {X(), Y(), Z()}) {
    const M e = embed(p, q, n);
    out += 0.25 * a * e * rho * e.adjoint();
  }
  return out;
}

// Phase flip with probability lam.
inline M dephase(const M& rho, int q, int n, double lam) {
  const M z = embed(Z(), q, n);
  return (1.0 - lam) * rho + lam * z * rho * z;
}

// Two-qubit maximal depolarization as a uniform average over the 16 Pauli pairs.
inline M two_qubit_twirl(const M& rho, int a, int b, int n) {
  M out = M::Zero(rho.rows(), rho.cols());
  const M paulis[4] = {I2(), X(), Y(), Z()};
  for (const auto& p : paulis)
    for (const auto& q : paulis) {
      const M e = embed(p, a, n) * embed(q, b, n);
      out += e * rho * e.adjoint() / 16.0;
    }
  return out;
}

inline Eigen::VectorXcd ket(std::initializer_list<Eigen::VectorXcd> parts) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Ones(1);
  for (const auto& p : parts) {
    Eigen::VectorXcd next(out.size() * p.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * p.size(), p.size()) = out(i) * p;
    out = next;
  }
  return out;
}

inline Eigen::VectorXcd v2(C a, C b) {
  Eigen::VectorXcd v(2);
  v << a, b;
  return v;
}
inline Eigen::VectorXcd k0() { return v2(1, 0); }
inline Eigen::VectorXcd k1() { return v2(0, 1); }
inline Eigen::VectorXcd kp() { return v2(1, 1) / std::sqrt(2.0); }
inline Eigen::VectorXcd km() { return v2(1, -1) / std::sqrt(2.0); }
inline Eigen::VectorXcd kpy() { return v2(1, C(0, 1)) / std::sqrt(2.0); }
inline Eigen::VectorXcd kmy() { return v2(1, C(0, -1)) / std::sqrt(2.0); }

inline double max_abs(const M& a) { return a.cwiseAbs().maxCoeff(); }

// Random mixed state from a complex Ginibre matrix: G G^dagger / Tr.
inline M random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Eigen::Index d = Eigen::Index{1} << n;
  M gm(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) gm(i, j) = C(g(rng), g(rng));
  M rho = gm * gm.adjoint();
  return rho / rho.trace();
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// E[max(N_A, N_C)] for independent geometrics by direct tail summation.
inline double expected_max_series(double pa, double pc, double tol = 1e-17) {
  double sum = 0.0;
  for (long k = 1;; ++k) {
    // P(max >= k) = 1 - P(N_A < k) P(N_C < k)
    const double fa = 1.0 - std::pow(1.0 - pa, static_cast<double>(k - 1));
    const double fc = 1.0 - std::pow(1.0 - pc, static_cast<double>(k - 1));
    const double tail = 1.0 - fa * fc;
    sum += tail;
    if (tail < tol || k > 50'000'000) break;
  }
  return sum;
}

// E[x^|N_near - N_far|] * latency by summing the joint pmf on a square.
inline double dephasing_factor_series(double p_near, double p_far, double x, double latency) {
  const double qn = 1.0 - p_near, qf = 1.0 - p_far;
  const auto cutoff = [](double q) {
    return q <= 0.0 ? 1L : static_cast<long>(std::ceil(std::log(1e-18) / std::log(q))) + 1;
  };
  const long kn = cutoff(qn), kf = cutoff(qf);
  double sum = 0.0;
  double pa = p_near;
  for (long a = 1; a <= kn; ++a, pa *= qn) {
    double pc = p_far;
    for (long c = 1; c <= kf; ++c, pc *= qf) sum += pa * pc * std::pow(x, static_cast<double>(std::labs(a - c)));
  }
  return latency * sum;
}

// A trio with explicit outer click probabilities and zero dark counts.
inline ghzline::netmodel::TrioConfig trio(double eta_a, double t_ab, double eta_b, double eta_c, double t_bc,
                                          double l_ab = 50.0, double l_bc = 50.0) {
  ghzline::netmodel::TrioConfig cfg;
  cfg.segment = "test";
  cfg.node_a = {"A", eta_a, 0.0};
  cfg.node_b = {"B", eta_b, 0.0};
  cfg.node_c = {"C", eta_c, 0.0};
  cfg.link_ab = {l_ab, t_ab, std::nullopt};
  cfg.link_bc = {l_bc, t_bc, std::nullopt};
  return cfg;
}

inline ghzline::netmodel::TrioConfig perfect_trio() { return trio(1, 1, 1, 1, 1); }

}  // namespace oracle
