#pragma once

#include <cstdint>
#include <vector>

#include "bdmix/chain.hpp"

namespace bdmix {

// Time parameterization of a profile or mixing-time query.
struct TimeMode {
  enum class Kind { kDiscrete, kLazy, kContinuous };
  Kind kind = Kind::kDiscrete;
  double delta = 0.0;  // laziness, kLazy only

  static TimeMode discrete() { return {Kind::kDiscrete, 0.0}; }
  static TimeMode lazy(double delta) { return {Kind::kLazy, delta}; }
  static TimeMode continuous() { return {Kind::kContinuous, 0.0}; }
};

// Kernel powers are dense; refuse state spaces above this unless the caller
// raises the limit explicitly.
inline constexpr std::size_t kDenseLimit = 2000;

// Half L1 distance between probability vectors (both normalized to 1e-12).
double tv_distance(const std::vector<double>& mu,
                   const std::vector<double>& nu);

// Worst-start total variation distance to stationarity at the given times.
struct TVProfile {
  TimeMode mode;
  std::vector<double> times;
  std::vector<double> values;
};

// Exact d(m) by dense kernel powers (binary exponentiation, row
// renormalization guard). times must be sorted ascending, integral.
TVProfile tv_profile_discrete(const BDChain& c,
                              const std::vector<double>& times,
                              std::size_t dense_limit = kDenseLimit);

// Same for the delta-lazy kernel.
TVProfile tv_profile_lazy(const BDChain& c, double delta,
                          const std::vector<double>& times,
                          std::size_t dense_limit = kDenseLimit);

// Exact continuous-time d(t); H_t by uniformization (Poisson tail cut at
// 1e-13) combined with repeated squaring for large t.
TVProfile tv_profile_continuous(const BDChain& c,
                                const std::vector<double>& times,
                                std::size_t dense_limit = kDenseLimit);

TVProfile tv_profile(const BDChain& c, TimeMode mode,
                     const std::vector<double>& times,
                     std::size_t dense_limit = kDenseLimit);

// Smallest time with d <= eps. Discrete/lazy: exact integer (doubling plus
// monotone binary refinement). Continuous: smallest point of a dyadic grid
// with step <= 1e-6/gap, initial bracket [0, 50/gap] extended by doubling
// if the tail decay has not kicked in yet.
double mixing_time(const BDChain& c, double eps, TimeMode mode,
                   std::size_t dense_limit = kDenseLimit);

// P_0(tau_i > t) via the sub-spectrum alternating sum; the weights are
// formed in long double (log magnitude + sign) and a first-order error
// estimate guards the result. Modes: discrete (integer t) or continuous.
double passage_survival(const BDChain& c, std::size_t i, double t,
                        TimeMode mode);

// Certified lower bound on d(t) from start 0: survival minus pi([0,i-1]),
// clamped at 0.
double tv_lower_hitting(const BDChain& c, const StationaryDist& d,
                        std::size_t i, double t, TimeMode mode);

// 9(E_0 tau_i0 + E_n tau_i0)/eps^2, divided by (1-delta) in lazy mode
// (delta >= 1/2). Upper bound on the corresponding mixing time.
double mix_upper_bound(const BDChain& c, const StationaryDist& d, double eps,
                       TimeMode mode);

// max{E_0 tau_i0, E_n tau_i0}/6: lower bound on T_c(1/10); divided by
// 2(1-delta) in lazy mode it bounds T_delta(1/20).
double mix_lower_bound(const BDChain& c, const StationaryDist& d,
                       TimeMode mode);

// Var_0(tau_i) of the 1/2-lazy chain from the sub-spectrum; diagnostic only.
double lazy_passage_variance(const BDChain& c, std::size_t i);

}  // namespace bdmix
