#include "bdmix/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bdmix {

namespace {

std::string at(std::size_t i) { return "state " + std::to_string(i); }

}  // namespace

void validate(const BDChain& c) {
  const std::size_t m = c.p.size();
  if (m == 0 || c.q.size() != m || c.r.size() != m)
    throw RangeError("rate sequences empty or of unequal length");
  const std::size_t n = m - 1;
  for (std::size_t i = 0; i <= n; ++i) {
    for (double v : {c.p[i], c.q[i], c.r[i]}) {
      if (!(v >= 0.0 && v <= 1.0))
        throw RangeError("rate outside [0,1] at " + at(i));
    }
    const double rowsum = c.p[i] + c.q[i] + c.r[i];
    if (std::fabs(rowsum - 1.0) > kRowSumTol)
      throw RowSumError("rates sum to " + std::to_string(rowsum) + " at " +
                        at(i));
  }
  if (c.q[0] != 0.0) throw BoundaryError("q[0] must be exactly 0");
  if (c.p[n] != 0.0) throw BoundaryError("p[n] must be exactly 0");
  for (std::size_t i = 0; i < n; ++i) {
    if (c.p[i] <= 0.0) throw ReducibleError("p = 0 at " + at(i));
    if (c.q[i + 1] <= 0.0) throw ReducibleError("q = 0 at " + at(i + 1));
  }
}

BDChain make_chain(std::vector<double> p, std::vector<double> q) {
  BDChain c;
  c.p = std::move(p);
  c.q = std::move(q);
  if (c.p.size() != c.q.size() || c.p.empty())
    throw RangeError("rate sequences empty or of unequal length");
  c.r.resize(c.p.size());
  for (std::size_t i = 0; i < c.p.size(); ++i) {
    c.r[i] = 1.0 - c.p[i] - c.q[i];
    // p + q == 1 can round to 1 +- ulp; keep r a valid rate
    if (c.r[i] < 0.0 && c.r[i] >= -kRowSumTol) c.r[i] = 0.0;
  }
  validate(c);
  return c;
}

BDChain make_chain(std::vector<double> p, std::vector<double> q,
                   std::vector<double> r) {
  BDChain c;
  c.p = std::move(p);
  c.q = std::move(q);
  c.r = std::move(r);
  if (c.p.size() != c.q.size() || c.p.size() != c.r.size() || c.p.empty())
    throw RangeError("rate sequences empty or of unequal length");
  // Builders leave rounding residue in r; fold it away before validating.
  for (std::size_t i = 0; i < c.p.size(); ++i) {
    const double want = 1.0 - c.p[i] - c.q[i];
    if (std::fabs(c.r[i] - want) <= kRowSumTol) c.r[i] = want;
  }
  validate(c);
  return c;
}

double StationaryDist::prefix_over(std::size_t k) const {
  return std::exp(lcum[k] - logw[k]);
}

double StationaryDist::suffix_over(std::size_t k) const {
  return std::exp(rcum[k] - logw[k]);
}

namespace {

// Streaming log-sum-exp: given running (maxv, sum of exp(x-maxv)), fold in x.
inline void lse_add(double x, double& maxv, double& sum) {
  if (x <= maxv) {
    sum += std::exp(x - maxv);
  } else {
    sum = sum * std::exp(maxv - x) + 1.0;
    maxv = x;
  }
}

}  // namespace

StationaryDist stationary(const BDChain& c) {
  const std::size_t n = c.n();
  StationaryDist d;
  d.logw.assign(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    d.logw[i] = d.logw[i - 1] + std::log(c.p[i - 1]) - std::log(c.q[i]);
    if (!std::isfinite(d.logw[i]))
      throw OverflowError("non-finite log weight at state " +
                          std::to_string(i));
  }
  const double mx = *std::max_element(d.logw.begin(), d.logw.end());

  d.prob.resize(n + 1);
  double total = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    d.prob[i] = std::exp(d.logw[i] - mx);
    total += d.prob[i];
  }
  for (double& v : d.prob) v /= total;

  d.prefix.resize(n + 1);
  d.suffix.resize(n + 1);
  double acc = 0.0;
  for (std::size_t i = 0; i <= n; ++i) d.prefix[i] = (acc += d.prob[i]);
  acc = 0.0;
  for (std::size_t i = n + 1; i-- > 0;) d.suffix[i] = (acc += d.prob[i]);

  d.lcum.resize(n + 1);
  d.rcum.resize(n + 1);
  double m1 = d.logw[0], s1 = 1.0;
  d.lcum[0] = d.logw[0];
  for (std::size_t i = 1; i <= n; ++i) {
    lse_add(d.logw[i], m1, s1);
    d.lcum[i] = m1 + std::log(s1);
  }
  double m2 = d.logw[n], s2 = 1.0;
  d.rcum[n] = d.logw[n];
  for (std::size_t i = n; i-- > 0;) {
    lse_add(d.logw[i], m2, s2);
    d.rcum[i] = m2 + std::log(s2);
  }
  return d;
}

std::size_t median(const StationaryDist& d) {
  const std::size_t n = d.n();
  for (std::size_t i = 0; i <= n; ++i) {
    if (d.prefix[i] >= 0.5 && d.suffix[i] >= 0.5) return i;
  }
  return n;  // unreachable for a normalized distribution
}

std::size_t quantile_state(const StationaryDist& d, double c) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("quantile level outside (0,1)");
  const std::size_t n = d.n();
  for (std::size_t i = 0; i <= n; ++i) {
    const double below = i == 0 ? 0.0 : d.prefix[i - 1];
    const double above = i == n ? 0.0 : d.suffix[i + 1];
    if (below <= c && above <= 1.0 - c) return i;
  }
  return n;  // unreachable
}

BDChain lazy(const BDChain& c, double delta) {
  if (!(delta >= 0.0 && delta < 1.0))
    throw DomainError("laziness must lie in [0,1)");
  BDChain out;
  const std::size_t m = c.size();
  out.p.resize(m);
  out.q.resize(m);
  out.r.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.p[i] = (1.0 - delta) * c.p[i];
    out.q[i] = (1.0 - delta) * c.q[i];
    out.r[i] = 1.0 - out.p[i] - out.q[i];
  }
  return out;
}

}  // namespace bdmix
