#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bdmix/chain.hpp"

namespace bdmix {

enum class FamilyKind {
  kSimpleWalk,       // p_i = q_{i+1} = 1/2, holding 1/2 at both ends
  kEhrenfest,        // p_i = 1 - i/n, q_i = i/n
  kMetropolisValley, // Metropolis chain for an explicit valley target
  kMetropolisCheck,  // target (|i|+1)^a on {0,+-1,..,+-n}, reindexed 0..2n
  kMetropolisHat,    // target (n-|i|+1)^a on the same space
  kBottleneck,       // uniform walk with slow edges at given positions
  kPrecut,           // single central bottleneck, holding 1/2 at the ends
  kMonotoneWeight,   // Metropolis chain for pi proportional to f, a Case 1-4 weight
};

FamilyKind family_kind_from_string(const std::string& s);
std::string to_string(FamilyKind k);

// A parameterized family member: kind, index n, kind-specific params.
//
// params by kind:
//   simple_walk, ehrenfest: {}
//   metropolis_valley: {"pi": [..], "j": int}   (pi > 0, valley-shaped at j)
//   metropolis_check / metropolis_hat: {"a": real > 0}
//   bottleneck: {"x": [int..] | "x_frac": [real..], "eps": real | [real..]}
//               (positions in [1,n], distinct; x_frac gives round(f*n))
//   precut: {"eps": real in (0,1/2]}   (n >= 3)
//   monotone_weight: {"case": 1..4, "alpha": real, "beta": real}
struct FamilySpec {
  FamilyKind kind = FamilyKind::kSimpleWalk;
  std::size_t n = 1;
  nlohmann::json params = nlohmann::json::object();
};

FamilySpec family_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FamilySpec& s);

// Instantiates the chain of the given spec. check/hat specs live on
// {0,...,2n}; every output passes validate. SpecError on bad parameters.
BDChain build(const FamilySpec& s);

// Metropolis chain (simple-random-walk proposal) for the target
// pi proportional to exp(logpi); boundary rejections fold into the holding rate.
BDChain metropolis_from_logpi(const std::vector<double>& logpi);

// Closed-form constants of the bottleneck family.
struct BottleneckConstants {
  double t = 0.0;    // n^2 + sum min(x, n+1-x)/eps
  double ell = 0.0;  // n^2 + max_j sum_{|x-n/2|<=j} (n/2+1-j)/eps
  double a = 0.0;    // sum min(x, n+1-x)
  double b = 0.0;    // max_j (j+1) * #{x in (j, n-j]}
};

BottleneckConstants bottleneck_constants(const FamilySpec& s);

// u/v/w of the monotone-target analysis; requires p_i >= q_{i+1} everywhere.
struct MonotoneConstants {
  double u = 0.0;  // sum_{k<j} pi([0,k])/pi(k)
  double v = 0.0;  // max_{j'<j} pi([0,j']) sum_{k=j'}^{j-1} 1/pi(k)
  double w = 0.0;  // sum_{k>=j} 1/pi(k)
};

MonotoneConstants mono_constants(const BDChain& c, const StationaryDist& d,
                                 std::size_t j);

// Relaxation-order constant for a valley-shaped chain:
// max{ (1/q_j) sum_{i<=j} 1/pi(i), (1/p_j) sum_{i>=j} 1/pi(i) };
// the boundary side is dropped when j is an endpoint.
struct ValleyConstants {
  double value = 0.0;
  double left = 0.0;
  double right = 0.0;
};

ValleyConstants valley_constants(const BDChain& c, const StationaryDist& d,
                                 std::size_t j);

// Edge perturbation that preserves the stationary distribution of a chain
// with the mirror condition p_i p_{n-i-1} = q_{i+1} q_{n-i}:
//   p'_i = c_i p_i + (1-c_i) min{p_i, q_{n-i}},  q'_{i+1} = q_{i+1} p'_i / p_i
// on the listed edges, untouched elsewhere.
BDChain perturb_uniform2(const BDChain& c,
                         const std::vector<std::size_t>& edges,
                         const std::vector<double>& coeff);

}  // namespace bdmix
