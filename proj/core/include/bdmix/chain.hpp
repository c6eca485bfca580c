#pragma once

#include <cstddef>
#include <vector>

#include "bdmix/errors.hpp"

namespace bdmix {

// Birth-and-death chain on {0,...,n}: per-state birth rate p[i] = K(i,i+1),
// death rate q[i] = K(i,i-1) and holding rate r[i] = K(i,i).
//
// Construction invariants (enforced by validate / the checked factory):
//   p[i]+q[i]+r[i] == 1 within 1e-12 (r is renormalized to 1-p-q on entry),
//   q[0] == 0 and p[n] == 0 exactly,
//   every entry in [0,1],
//   p[i] > 0 for i < n and q[i] > 0 for i > 0 (irreducibility).
struct BDChain {
  std::vector<double> p, q, r;

  std::size_t n() const { return p.empty() ? 0 : p.size() - 1; }
  std::size_t size() const { return p.size(); }
};

inline constexpr double kRowSumTol = 1e-12;

// Throws the specific violation; returns normally iff `c` is a valid chain.
void validate(const BDChain& c);

// Builds a chain from birth/death rates, setting r = 1 - p - q, and validates.
BDChain make_chain(std::vector<double> p, std::vector<double> q);

// Builds a chain from all three rate sequences. Holding rates within
// kRowSumTol of 1 - p - q are renormalized exactly; larger residues throw.
BDChain make_chain(std::vector<double> p, std::vector<double> q,
                   std::vector<double> r);

// Stationary distribution pi(i) proportional to p[0]...p[i-1] / (q[1]...q[i]), built in
// log space. prob/prefix/suffix are the normalized values; logw keeps the
// unnormalized log weights so that ratio queries stay finite for weight
// ranges far beyond double (see prefix_over/suffix_over).
struct StationaryDist {
  std::vector<double> logw;    // logw[i] = log(w_i), logw[0] = 0
  std::vector<double> prob;    // pi(i), sums to 1
  std::vector<double> prefix;  // pi([0,i]), forward-accumulated
  std::vector<double> suffix;  // pi([i,n]), backward-accumulated

  // log of cumulative weights, streaming log-sum-exp; lcum[i] = log sum_{j<=i} w_j
  std::vector<double> lcum, rcum;

  std::size_t n() const { return prob.size() - 1; }

  // pi([0,k]) / pi(k), exact in log space.
  double prefix_over(std::size_t k) const;
  // pi([k,n]) / pi(k).
  double suffix_over(std::size_t k) const;
};

StationaryDist stationary(const BDChain& c);

// Smallest state i0 with pi([0,i0]) >= 1/2 and pi([i0,n]) >= 1/2.
std::size_t median(const StationaryDist& d);

// Smallest state i with pi([0,i-1]) <= c and pi([i+1,n]) <= 1-c.
// quantile_state(d, 1/2) == median(d).
std::size_t quantile_state(const StationaryDist& d, double c);

// delta*I + (1-delta)*K as a chain; stationary distribution unchanged,
// spectrum of I-K scaled by (1-delta). Requires 0 <= delta < 1.
BDChain lazy(const BDChain& c, double delta);

}  // namespace bdmix
