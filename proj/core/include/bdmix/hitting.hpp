#pragma once

#include <cstddef>
#include <vector>

#include "bdmix/chain.hpp"

namespace bdmix {

// Expected first passage time E_i[tau_j] of the non-lazy discrete chain
// (equals the continuous-time expectation; the delta-lazy one is this over
// 1-delta). i == j gives 0.
double expected_passage(const BDChain& c, const StationaryDist& d,
                        std::size_t i, std::size_t j);

// t(i0) = max of the two one-sided hitting sums
//   sum_{k<i0} pi([0,k])/(pi(k) p_k)  and  sum_{k>i0} pi([k,n])/(pi(k) q_k),
// i.e. max{E_0 tau_i0, E_n tau_i0}. Empty sides contribute 0.
double t_constant(const BDChain& c, const StationaryDist& d, std::size_t i0);

// t_constant at the c-quantile state.
double t_constant_at(const BDChain& c, const StationaryDist& d, double cprob);

// ell(i0) = max over j of prefix/suffix-weighted partial sums; the gap
// satisfies 1/(4 ell) <= lambda <= 2/ell when i0 is a median. O(n).
double ell_constant(const BDChain& c, const StationaryDist& d, std::size_t i0);

// Path Hardy constant C(i) = max{C+(i), C-(i)} for edge weights nu
// (nu[k] sits on edge {k,k+1}; all entries must be positive). With chain
// weights nu[k] = pi(k) p_k and i a median this equals ell_constant.
double hardy_C(const StationaryDist& d, const std::vector<double>& nu,
               std::size_t i);

// Chain edge weights pi(k) p_k, the nu used throughout for chains.
std::vector<double> chain_edge_weights(const BDChain& c,
                                       const StationaryDist& d);

// Explicit two-sided bound for the weighted Hardy inequality on n points
// (mu, pi positive, not necessarily normalized). The optimal constant A of
// sum_i (g(1)+..+g(i))^2 pi(i) <= A sum_i g(i)^2 mu(i) satisfies B <= A <= 4B.
double hardy_B(const std::vector<double>& mu, const std::vector<double>& pi);

// Half-spectrum constant for chains with the mirror symmetry p_i == q_{n-i}
// (checked to 1e-12): 1/(4C) <= lambda <= 1/C.
double sym_C(const BDChain& c, const StationaryDist& d);

// Summary of the hitting-based bounds at the median state.
struct BoundsReport {
  std::size_t i0 = 0;  // median state
  double t = 0.0;      // hitting constant
  double ell = 0.0;    // Hardy constant at the median
  double gap_lo = 0.0;  // 1/(4 ell)
  double gap_hi = 0.0;  // 2/ell
  double mix_lo = 0.0;  // t/6, lower bound on T_c(1/10)
  double mix_hi(double eps) const { return 18.0 * t / (eps * eps); }
};

BoundsReport bounds_report(const BDChain& c, const StationaryDist& d);

}  // namespace bdmix
