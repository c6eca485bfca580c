#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "bdmix/chain.hpp"
#include "bdmix/families.hpp"

namespace testutil {

// Random valid chain with rates log-uniform in [1e-4, 1/2]. p+q <= 1 always,
// so the holding rate absorbs the remainder.
inline bdmix::BDChain random_chain(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(std::log(1e-4), std::log(0.5));
  std::vector<double> p(n + 1, 0.0), q(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) p[i] = std::exp(u(rng));
  for (std::size_t i = 1; i <= n; ++i) q[i] = std::exp(u(rng));
  return bdmix::make_chain(std::move(p), std::move(q));
}

inline Eigen::MatrixXd kernel(const bdmix::BDChain& c) {
  const auto m = static_cast<Eigen::Index>(c.size());
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    K(i, i) = c.r[i];
    if (i + 1 < m) K(i, i + 1) = c.p[i];
    if (i > 0) K(i, i - 1) = c.q[i];
  }
  return K;
}

// Independent spectrum oracle: dense symmetric eigensolve of I-K conjugated
// by diag(sqrt(pi)). All m eigenvalues ascending, the zero one included.
inline std::vector<double> dense_spectrum(const bdmix::BDChain& c) {
  const auto m = static_cast<Eigen::Index>(c.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    T(i, i) = 1.0 - c.r[i];
    if (i + 1 < m) {
      T(i, i + 1) = -std::sqrt(c.p[i] * c.q[i + 1]);
      T(i + 1, i) = T(i, i + 1);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T,
                                                    Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + m);
  return out;
}

inline double worst_row_tv(const Eigen::MatrixXd& M,
                           const std::vector<double>& pi) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      s += std::fabs(M(i, j) - pi[j]);
    best = std::max(best, 0.5 * s);
  }
  return best;
}

inline Eigen::MatrixXd matrix_power(Eigen::MatrixXd base, std::uint64_t m) {
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(base.rows(), base.cols());
  while (m != 0) {
    if (m & 1) acc = acc * base;
    base = base * base;
    m >>= 1;
  }
  return acc;
}

inline bdmix::BDChain simple_walk(std::size_t n) {
  return bdmix::build({bdmix::FamilyKind::kSimpleWalk, n, {}});
}

inline bdmix::BDChain ehrenfest(std::size_t n) {
  return bdmix::build({bdmix::FamilyKind::kEhrenfest, n, {}});
}

// period-2 flip chain on two states
inline bdmix::BDChain flip_chain() {
  return bdmix::make_chain({1.0, 0.0}, {0.0, 1.0});
}

}  // namespace testutil
