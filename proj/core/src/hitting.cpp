#include "bdmix/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bdmix {

namespace {

// Compensated (Kahan) accumulator; the hitting sums mix terms spanning many
// orders of magnitude.
struct Kahan {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Running log of a sum of exponentials. The inverse-weight sums 1/(pi(k)p_k)
// can overflow double on their own even when the product with pi([0,j]) is
// representable, so the accumulation is kept in log scale.
struct LogSum {
  double maxv = -std::numeric_limits<double>::infinity();
  Kahan sum;
  void add(double x) {
    if (x <= maxv) {
      sum.add(std::exp(x - maxv));
    } else {
      const double scale = std::exp(maxv - x);
      sum.sum *= scale;
      sum.carry *= scale;
      sum.add(1.0);
      maxv = x;
    }
  }
  double log() const { return maxv + std::log(sum.sum); }
};

}  // namespace

double expected_passage(const BDChain& c, const StationaryDist& d,
                        std::size_t i, std::size_t j) {
  Kahan acc;
  if (i < j) {
    for (std::size_t k = j; k-- > i;) acc.add(d.prefix_over(k) / c.p[k]);
  } else if (i > j) {
    for (std::size_t k = j + 1; k <= i; ++k)
      acc.add(d.suffix_over(k) / c.q[k]);
  }
  return acc.sum;
}

double t_constant(const BDChain& c, const StationaryDist& d, std::size_t i0) {
  // accumulate outward from i0 on each side
  Kahan left, right;
  for (std::size_t k = i0; k-- > 0;) left.add(d.prefix_over(k) / c.p[k]);
  for (std::size_t k = i0 + 1; k <= d.n(); ++k)
    right.add(d.suffix_over(k) / c.q[k]);
  return std::max(left.sum, right.sum);
}

double t_constant_at(const BDChain& c, const StationaryDist& d, double cprob) {
  return t_constant(c, d, quantile_state(d, cprob));
}

double ell_constant(const BDChain& c, const StationaryDist& d,
                    std::size_t i0) {
  const std::size_t n = d.n();
  double best = 0.0;
  // pi([0,j]) * sum_{k=j}^{i0-1} 1/(pi(k)p_k) = exp(lcum[j]) * sum exp(-logw[k])/p_k:
  // the normalizer cancels between the prefix mass and the inverse weights.
  LogSum inv;
  for (std::size_t j = i0; j-- > 0;) {
    inv.add(-d.logw[j] - std::log(c.p[j]));
    best = std::max(best, std::exp(d.lcum[j] + inv.log()));
  }
  LogSum invr;
  for (std::size_t j = i0 + 1; j <= n; ++j) {
    invr.add(-d.logw[j] - std::log(c.q[j]));
    best = std::max(best, std::exp(d.rcum[j] + invr.log()));
  }
  return best;
}

double hardy_C(const StationaryDist& d, const std::vector<double>& nu,
               std::size_t i) {
  const std::size_t n = d.n();
  if (nu.size() != n)
    throw DimensionError("expected one edge weight per edge");
  for (double v : nu) {
    if (!(v > 0.0)) throw ZeroWeightError("edge weight must be positive");
  }
  double cplus = 0.0;
  {
    Kahan inv;  // sum over k = i+1 .. j of 1/nu(k-1,k)
    for (std::size_t j = i + 1; j <= n; ++j) {
      inv.add(1.0 / nu[j - 1]);
      cplus = std::max(cplus, d.suffix[j] * inv.sum);
    }
  }
  double cminus = 0.0;
  {
    Kahan inv;  // sum over k = j .. i-1 of 1/nu(k,k+1)
    for (std::size_t j = i; j-- > 0;) {
      inv.add(1.0 / nu[j]);
      cminus = std::max(cminus, d.prefix[j] * inv.sum);
    }
  }
  return std::max(cplus, cminus);
}

std::vector<double> chain_edge_weights(const BDChain& c,
                                       const StationaryDist& d) {
  std::vector<double> nu(c.n());
  for (std::size_t k = 0; k < nu.size(); ++k) nu[k] = d.prob[k] * c.p[k];
  return nu;
}

double hardy_B(const std::vector<double>& mu, const std::vector<double>& pi) {
  if (mu.empty() || mu.size() != pi.size())
    throw DimensionError("mu and pi must be nonempty and of equal length");
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!(mu[i] > 0.0) || !(pi[i] > 0.0))
      throw ZeroWeightError("weights must be positive");
  }
  const std::size_t n = mu.size();
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + pi[i];
  double best = 0.0;
  Kahan inv;
  for (std::size_t i = 0; i < n; ++i) {
    inv.add(1.0 / mu[i]);
    best = std::max(best, tail[i] * inv.sum);
  }
  return best;
}

double sym_C(const BDChain& c, const StationaryDist& d) {
  const std::size_t n = c.n();
  for (std::size_t i = 0; i <= n; ++i) {
    if (std::fabs(c.p[i] - c.q[n - i]) > 1e-12)
      throw SymmetryError("p[i] != q[n-i] at state " + std::to_string(i));
  }
  const std::size_t N = (n + 1) / 2;
  if (N == 0) return 0.0;
  const bool odd = (n % 2) != 0;
  double best = 0.0;
  LogSum inv;  // sum over j = i .. N-1 of 1/(pi(j)p_j), split edge halved
  for (std::size_t i = N; i-- > 0;) {
    double logterm = -d.logw[i] - std::log(c.p[i]);
    if (odd && i == N - 1) logterm -= std::log(2.0);
    inv.add(logterm);
    best = std::max(best, std::exp(d.lcum[i] + inv.log()));
  }
  return best;
}

BoundsReport bounds_report(const BDChain& c, const StationaryDist& d) {
  BoundsReport b;
  b.i0 = median(d);
  b.t = t_constant(c, d, b.i0);
  b.ell = ell_constant(c, d, b.i0);
  b.gap_lo = b.ell > 0.0 ? 1.0 / (4.0 * b.ell)
                         : std::numeric_limits<double>::infinity();
  b.gap_hi = b.ell > 0.0 ? 2.0 / b.ell
                         : std::numeric_limits<double>::infinity();
  b.mix_lo = b.t / 6.0;
  return b;
}

}  // namespace bdmix
