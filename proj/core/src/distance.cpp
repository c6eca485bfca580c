#include "bdmix/distance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bdmix/detail/sturm.hpp"
#include "bdmix/hitting.hpp"
#include "bdmix/spectral.hpp"

namespace bdmix {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void check_size(const BDChain& c, std::size_t dense_limit) {
  if (c.size() > dense_limit)
    throw SizeError("state space of " + std::to_string(c.size()) +
                    " exceeds the dense limit " + std::to_string(dense_limit));
}

MatrixXd kernel(const BDChain& c) {
  const auto m = static_cast<Eigen::Index>(c.size());
  MatrixXd K = MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    K(i, i) = c.r[i];
    if (i + 1 < m) K(i, i + 1) = c.p[i];
    if (i > 0) K(i, i - 1) = c.q[i];
  }
  return K;
}

void renormalize_rows(MatrixXd& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    const double s = M.row(i).sum();
    if (s > 0.0) M.row(i) /= s;
  }
}

// B <- B * K with K tridiagonal, O(3 n^2)
MatrixXd mul_tridiag(const MatrixXd& B, const BDChain& c) {
  const Eigen::Index m = B.cols();
  MatrixXd out(B.rows(), m);
  for (Eigen::Index j = 0; j < m; ++j) {
    out.col(j) = B.col(j) * c.r[j];
    if (j > 0) out.col(j) += B.col(j - 1) * c.p[j - 1];
    if (j + 1 < m) out.col(j) += B.col(j + 1) * c.q[j + 1];
  }
  return out;
}

double worst_row_tv(const MatrixXd& M, const std::vector<double>& pi) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      s += std::fabs(M(i, j) - pi[j]);
    best = std::max(best, 0.5 * s);
  }
  return best;
}

// Table of squarings A^(2^k); products renormalized to stay stochastic.
// Capped at ~2 GiB so deep doublings on large state spaces fail loudly.
class PowTable {
 public:
  explicit PowTable(MatrixXd base) {
    const auto bytes =
        static_cast<std::size_t>(base.size()) * sizeof(double);
    max_entries_ = std::max<std::size_t>(32, (2ULL << 30) / bytes);
    table_.push_back(std::move(base));
  }

  const MatrixXd& pow2(std::size_t k) {
    if (k >= max_entries_)
      throw SizeError("time horizon needs too many cached kernel powers");
    while (table_.size() <= k) {
      MatrixXd s = table_.back() * table_.back();
      renormalize_rows(s);
      table_.push_back(std::move(s));
    }
    return table_[k];
  }

 private:
  std::vector<MatrixXd> table_;
  std::size_t max_entries_ = 0;
};

// acc * base^m by binary exponentiation, constant extra memory
MatrixXd dense_power(MatrixXd base, std::uint64_t m) {
  MatrixXd acc = MatrixXd::Identity(base.rows(), base.cols());
  while (m != 0) {
    if (m & 1) {
      acc = acc * base;
      renormalize_rows(acc);
    }
    m >>= 1;
    if (m != 0) {
      base = base * base;
      renormalize_rows(base);
    }
  }
  return acc;
}

// H_s = e^{-s(I-K)} for s small enough that the Poisson series is short:
// sum_k pois(k; s) K^k, truncated when the right tail drops below 1e-13.
MatrixXd uniformized_small(const BDChain& c, double s) {
  const auto m = static_cast<Eigen::Index>(c.size());
  MatrixXd acc = MatrixXd::Zero(m, m);
  MatrixXd term = MatrixXd::Identity(m, m);
  const double logs = std::log(s);
  double cum = 0.0;
  const std::size_t cap =
      static_cast<std::size_t>(s + 40.0 + 12.0 * std::sqrt(s));
  for (std::size_t k = 0;; ++k) {
    const double w =
        std::exp(-s + static_cast<double>(k) * logs - std::lgamma(k + 1.0));
    acc += w * term;
    cum += w;
    if (1.0 - cum < 1e-13 || k >= cap) break;
    term = mul_tridiag(term, c);
  }
  renormalize_rows(acc);
  return acc;
}

// H_t for arbitrary t >= 0: halve down to a short series, square back up.
MatrixXd semigroup_at(const BDChain& c, double t) {
  const auto m = static_cast<Eigen::Index>(c.size());
  if (!std::isfinite(t) || t < 0.0)
    throw DomainError("time must be finite and nonnegative");
  if (t == 0.0) return MatrixXd::Identity(m, m);
  int halvings = 0;
  double s = t;
  while (s > 64.0) {
    s /= 2.0;
    ++halvings;
  }
  MatrixXd H = uniformized_small(c, s);
  for (int k = 0; k < halvings; ++k) {
    H = H * H;
    renormalize_rows(H);
  }
  return H;
}

std::vector<double> integral_times(const std::vector<double>& times) {
  std::vector<double> out = times;
  for (double t : out) {
    if (!(t >= 0.0) || t > 4.6e18 || std::fabs(t - std::round(t)) > 1e-9)
      throw DomainError("discrete times must be nonnegative integers");
  }
  if (!std::is_sorted(out.begin(), out.end()))
    throw DomainError("times must be sorted ascending");
  return out;
}

TVProfile profile_discrete_kernel(const BDChain& c, TimeMode mode,
                                  const std::vector<double>& times,
                                  std::size_t dense_limit) {
  check_size(c, dense_limit);
  const auto ts = integral_times(times);
  const auto pi = stationary(c).prob;
  const MatrixXd K = kernel(c);
  TVProfile prof{mode, ts, {}};
  prof.values.reserve(ts.size());
  const auto m = static_cast<Eigen::Index>(c.size());
  MatrixXd cur = MatrixXd::Identity(m, m);
  std::uint64_t cur_m = 0;
  for (double td : ts) {
    const auto target = static_cast<std::uint64_t>(std::llround(td));
    if (target > cur_m) {
      cur = cur * dense_power(K, target - cur_m);
      renormalize_rows(cur);
      cur_m = target;
    }
    prof.values.push_back(worst_row_tv(cur, pi));
  }
  return prof;
}

}  // namespace

double tv_distance(const std::vector<double>& mu,
                   const std::vector<double>& nu) {
  if (mu.size() != nu.size())
    throw DimensionError("probability vectors of unequal length");
  double smu = 0.0, snu = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    smu += mu[i];
    snu += nu[i];
    acc += std::fabs(mu[i] - nu[i]);
  }
  if (std::fabs(smu - 1.0) > 1e-12 || std::fabs(snu - 1.0) > 1e-12)
    throw DomainError("inputs must be normalized probability vectors");
  return 0.5 * acc;
}

TVProfile tv_profile_discrete(const BDChain& c,
                              const std::vector<double>& times,
                              std::size_t dense_limit) {
  return profile_discrete_kernel(c, TimeMode::discrete(), times, dense_limit);
}

TVProfile tv_profile_lazy(const BDChain& c, double delta,
                          const std::vector<double>& times,
                          std::size_t dense_limit) {
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("laziness must lie in (0,1)");
  return profile_discrete_kernel(lazy(c, delta), TimeMode::lazy(delta), times,
                                 dense_limit);
}

TVProfile tv_profile_continuous(const BDChain& c,
                                const std::vector<double>& times,
                                std::size_t dense_limit) {
  check_size(c, dense_limit);
  if (!std::is_sorted(times.begin(), times.end()))
    throw DomainError("times must be sorted ascending");
  const auto pi = stationary(c).prob;
  TVProfile prof{TimeMode::continuous(), times, {}};
  prof.values.reserve(times.size());
  for (double t : times) {
    if (!(t >= 0.0)) throw DomainError("times must be nonnegative");
    prof.values.push_back(worst_row_tv(semigroup_at(c, t), pi));
  }
  return prof;
}

TVProfile tv_profile(const BDChain& c, TimeMode mode,
                     const std::vector<double>& times,
                     std::size_t dense_limit) {
  switch (mode.kind) {
    case TimeMode::Kind::kDiscrete:
      return tv_profile_discrete(c, times, dense_limit);
    case TimeMode::Kind::kLazy:
      return tv_profile_lazy(c, mode.delta, times, dense_limit);
    case TimeMode::Kind::kContinuous:
      return tv_profile_continuous(c, times, dense_limit);
  }
  throw DomainError("unknown time mode");
}

namespace {

double mixing_time_discrete(const BDChain& c, double eps,
                            std::size_t dense_limit) {
  check_size(c, dense_limit);
  const auto pi = stationary(c).prob;
  const double d0 = 1.0 - *std::min_element(pi.begin(), pi.end());
  if (eps >= d0) return 0.0;
  const bool period2 =
      std::all_of(c.r.begin(), c.r.end(), [](double r) { return r == 0.0; });

  PowTable pows(kernel(c));
  // doubling phase: find k with d(2^k) <= eps. Step counts are tracked in
  // double (powers of two stay exact); integers beyond 2^53 round to the
  // nearest representable, which is also all the return type can carry.
  std::size_t k = 0;
  for (;; ++k) {
    if (k >= 200) throw SizeError("mixing time out of range");
    const double d = worst_row_tv(pows.pow2(k), pi);
    if (d <= eps) break;
    if (period2 && k >= 24)
      throw PeriodicityError(
          "2-periodic chain: d(m) cannot drop below the requested level");
  }
  if (k == 0) return 1.0;
  // refine: d(lo) > eps invariant, answer is lo + 1
  double lo = std::ldexp(1.0, static_cast<int>(k - 1));
  MatrixXd cur = pows.pow2(k - 1);
  for (std::size_t bit = k - 1; bit-- > 0;) {
    MatrixXd cand = cur * pows.pow2(bit);
    renormalize_rows(cand);
    if (worst_row_tv(cand, pi) > eps) {
      cur = std::move(cand);
      lo += std::ldexp(1.0, static_cast<int>(bit));
    }
  }
  return lo + 1.0;
}

double mixing_time_continuous(const BDChain& c, double eps,
                              std::size_t dense_limit) {
  check_size(c, dense_limit);
  const auto pi = stationary(c).prob;
  const double d0 = 1.0 - *std::min_element(pi.begin(), pi.end());
  if (eps >= d0) return 0.0;

  // computed gaps below ~1e-13 are bisection noise (the true gap is smaller
  // than the solver can resolve); the floor keeps the bracket finite and the
  // doubling extension below finds the actual decay scale
  const double gap = std::max(eigenvalues(c).gap, 1e-13);
  double hi = 50.0 / gap;
  const double res = hi / 67108864.0;  // 50/2^26 < 1e-6, step < 1e-6/gap
  std::size_t steps = 26;
  MatrixXd Hhi = semigroup_at(c, hi);
  while (worst_row_tv(Hhi, pi) > eps) {
    Hhi = Hhi * Hhi;  // doubles hi; grid step unchanged
    renormalize_rows(Hhi);
    hi *= 2.0;
    ++steps;
    if (steps >= 200 || !std::isfinite(hi))
      throw SizeError("mixing time out of range");
  }
  PowTable pows(semigroup_at(c, res));
  // smallest grid point m*res with d <= eps; invariant d(lo*res) > eps.
  // grid counts accumulate in double, exact up to 2^53 grid cells.
  double lo = 0.0;
  MatrixXd cur = MatrixXd::Identity(Hhi.rows(), Hhi.cols());
  for (std::size_t bit = steps; bit-- > 0;) {
    MatrixXd cand = cur * pows.pow2(bit);
    renormalize_rows(cand);
    if (worst_row_tv(cand, pi) > eps) {
      cur = std::move(cand);
      lo += std::ldexp(1.0, static_cast<int>(bit));
    }
  }
  return (lo + 1.0) * res;
}

}  // namespace

double mixing_time(const BDChain& c, double eps, TimeMode mode,
                   std::size_t dense_limit) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1)");
  switch (mode.kind) {
    case TimeMode::Kind::kDiscrete:
      return mixing_time_discrete(c, eps, dense_limit);
    case TimeMode::Kind::kLazy:
      if (!(mode.delta > 0.0 && mode.delta < 1.0))
        throw DomainError("laziness must lie in (0,1)");
      return mixing_time_discrete(lazy(c, mode.delta), eps, dense_limit);
    case TimeMode::Kind::kContinuous:
      return mixing_time_continuous(c, eps, dense_limit);
  }
  throw DomainError("unknown time mode");
}

namespace {

// Sub-spectrum of I-K on {0..i-1} in long double.
std::vector<long double> sub_spectrum_ld(const BDChain& c, std::size_t i) {
  std::vector<long double> d(i), e(i > 0 ? i - 1 : 0);
  for (std::size_t k = 0; k < i; ++k) d[k] = 1.0L - (long double)c.r[k];
  for (std::size_t k = 0; k + 1 < i; ++k)
    e[k] = -sqrtl((long double)c.p[k] * (long double)c.q[k + 1]);
  return detail::tridiagonal_eigenvalues(d, e);
}

long double pow_int_ld(long double base, std::uint64_t t) {
  long double acc = 1.0L;
  while (t != 0) {
    if (t & 1) acc *= base;
    base *= base;
    t >>= 1;
  }
  return acc;
}

}  // namespace

double passage_survival(const BDChain& c, std::size_t i, double t,
                        TimeMode mode) {
  if (i < 1 || i > c.n()) throw DomainError("target state must lie in [1,n]");
  if (mode.kind == TimeMode::Kind::kLazy)
    throw DomainError("survival is defined for discrete or continuous time");
  const bool discrete = mode.kind == TimeMode::Kind::kDiscrete;
  std::uint64_t ti = 0;
  if (discrete) {
    if (!(t >= 0.0) || std::fabs(t - std::round(t)) > 1e-9)
      throw DomainError("discrete time must be a nonnegative integer");
    ti = static_cast<std::uint64_t>(std::llround(t));
  } else if (!(t >= 0.0)) {
    throw DomainError("time must be nonnegative");
  }

  const auto lam = sub_spectrum_ld(c, i);
  for (std::size_t j = 0; j + 1 < i; ++j) {
    if (lam[j + 1] - lam[j] < 1e-13L)
      throw DegenerateSpectrumError("sub-spectrum eigenvalues closer than 1e-13");
  }

  // weights prod_{k != j} lam_k / (lam_k - lam_j), log magnitude + sign.
  // The sum is evaluated twice, in long double and in double; the spread of
  // the two runs measures the actual cancellation sensitivity (the double
  // pass perturbs every eigenvalue relatively by ~2^-52), and the long
  // double value is ~eps_ld/eps_dbl (about 2e3 times) more accurate.
  long double value = 0.0L, carry = 0.0L;
  double value_dbl = 0.0;
  for (std::size_t j = 0; j < i; ++j) {
    long double logmag = 0.0L;
    double logmag_dbl = 0.0;
    int sign = 1;
    for (std::size_t k = 0; k < i; ++k) {
      if (k == j) continue;
      const long double diff = lam[k] - lam[j];
      logmag += logl(fabsl(lam[k])) - logl(fabsl(diff));
      const double diff_dbl = (double)lam[k] - (double)lam[j];
      logmag_dbl += std::log(std::fabs((double)lam[k])) -
                    std::log(std::fabs(diff_dbl));
      if (lam[k] < 0.0L) sign = -sign;
      if (diff < 0.0L) sign = -sign;
    }
    const long double w = (long double)sign * expl(logmag);
    const long double factor =
        discrete ? pow_int_ld(1.0L - lam[j], ti) : expl(-(long double)t * lam[j]);
    const long double term = w * factor;
    const long double y = term - carry;  // Kahan in long double
    const long double s = value + y;
    carry = (s - value) - y;
    value = s;
    const double factor_dbl =
        discrete ? (double)pow_int_ld(1.0L - (long double)(double)lam[j], ti)
                 : std::exp(-t * (double)lam[j]);
    value_dbl += sign * std::exp(logmag_dbl) * factor_dbl;
  }
  const double spread = std::fabs((double)value - value_dbl);
  if (spread > 1e-7)
    throw AccuracyError("alternating sum ill-conditioned (two-precision "
                        "spread " +
                        std::to_string(spread) + ")");
  if (value < -1e-9L || value > 1.0L + 1e-9L)
    throw AccuracyError("survival " + std::to_string((double)value) +
                        " outside [0,1] beyond tolerance");
  return std::min(1.0, std::max(0.0, (double)value));
}

double tv_lower_hitting(const BDChain& c, const StationaryDist& d,
                        std::size_t i, double t, TimeMode mode) {
  const double surv = passage_survival(c, i, t, mode);
  const double below = i >= 1 ? d.prefix[i - 1] : 0.0;
  return std::max(0.0, surv - below);
}

namespace {

void require_upper_mode(TimeMode mode, double min_delta) {
  if (mode.kind == TimeMode::Kind::kDiscrete)
    throw DomainError("bound applies to continuous or lazy time");
  if (mode.kind == TimeMode::Kind::kLazy && !(mode.delta >= min_delta))
    throw DomainError("lazy bound requires delta >= 1/2");
}

}  // namespace

double mix_upper_bound(const BDChain& c, const StationaryDist& d, double eps,
                       TimeMode mode) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1)");
  require_upper_mode(mode, 0.5);
  const std::size_t i0 = median(d);
  const double sum = expected_passage(c, d, 0, i0) +
                     expected_passage(c, d, c.n(), i0);
  double bound = 9.0 * sum / (eps * eps);
  if (mode.kind == TimeMode::Kind::kLazy) bound /= 1.0 - mode.delta;
  return bound;
}

double mix_lower_bound(const BDChain& c, const StationaryDist& d,
                       TimeMode mode) {
  require_upper_mode(mode, 0.5);
  const std::size_t i0 = median(d);
  const double mx = std::max(expected_passage(c, d, 0, i0),
                             expected_passage(c, d, c.n(), i0));
  double bound = mx / 6.0;
  if (mode.kind == TimeMode::Kind::kLazy) bound /= 2.0 * (1.0 - mode.delta);
  return bound;
}

double lazy_passage_variance(const BDChain& c, std::size_t i) {
  if (i < 1 || i > c.n()) throw DomainError("target state must lie in [1,n]");
  const auto lam = sub_spectrum_ld(c, i);
  long double var = 0.0L;
  for (std::size_t j = 0; j < i; ++j)
    var += 4.0L * (1.0L - lam[j] / 2.0L) / (lam[j] * lam[j]);
  return (double)var;
}

}  // namespace bdmix
