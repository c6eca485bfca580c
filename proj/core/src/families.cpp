#include "bdmix/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace bdmix {

namespace {

using nlohmann::json;

[[noreturn]] void spec_fail(const std::string& msg) { throw SpecError(msg); }

double require_number(const json& params, const char* key) {
  if (!params.contains(key) || !params[key].is_number())
    spec_fail(std::string("missing numeric param \"") + key + "\"");
  return params[key].get<double>();
}

// edge rates e[1..n] (e[i] on {i-1,i}) -> chain with p[i-1] = q[i] = e[i]
BDChain chain_from_edges(const std::vector<double>& e) {
  const std::size_t n = e.size() - 1;  // e[0] unused
  std::vector<double> p(n + 1, 0.0), q(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[i - 1] = e[i];
    q[i] = e[i];
  }
  return make_chain(std::move(p), std::move(q));
}

void require_valley_shape(const std::vector<double>& logpi, std::size_t j) {
  for (std::size_t i = 0; i + 1 < logpi.size(); ++i) {
    if (i < j && logpi[i + 1] > logpi[i] + 1e-12)
      spec_fail("target not non-increasing left of the valley");
    if (i >= j && logpi[i + 1] < logpi[i] - 1e-12)
      spec_fail("target not non-decreasing right of the valley");
  }
}

BDChain build_simple_walk(std::size_t n) {
  return chain_from_edges(std::vector<double>(n + 1, 0.5));
}

BDChain build_ehrenfest(std::size_t n) {
  std::vector<double> p(n + 1), q(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    p[i] = static_cast<double>(n - i) / static_cast<double>(n);
    q[i] = static_cast<double>(i) / static_cast<double>(n);
  }
  return make_chain(std::move(p), std::move(q));
}

BDChain build_bottleneck(std::size_t n, const std::vector<std::size_t>& xs,
                         const std::vector<double>& eps) {
  std::set<std::size_t> seen;
  std::vector<double> e(n + 1, 0.5);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 1 || xs[i] > n) spec_fail("bottleneck position outside [1,n]");
    if (!seen.insert(xs[i]).second) spec_fail("duplicate bottleneck position");
    if (!(eps[i] > 0.0 && eps[i] <= 0.5))
      spec_fail("bottleneck strength outside (0,1/2]");
    e[xs[i]] = eps[i];
  }
  return chain_from_edges(e);
}

BDChain build_precut(std::size_t n, double eps) {
  if (n < 3) spec_fail("precut needs n >= 3");
  if (!(eps > 0.0 && eps <= 0.5)) spec_fail("eps outside (0,1/2]");
  std::vector<double> e(n + 1, 0.5);
  e[n / 2 + 1] = eps;  // edge {floor(n/2), floor(n/2)+1}
  return chain_from_edges(e);
}

std::vector<double> check_logpi(std::size_t n, double a) {
  std::vector<double> logpi(2 * n + 1);
  for (std::size_t s = 0; s <= 2 * n; ++s) {
    const double dist = std::fabs(static_cast<double>(s) - static_cast<double>(n));
    logpi[s] = a * std::log(dist + 1.0);
  }
  return logpi;
}

std::vector<double> hat_logpi(std::size_t n, double a) {
  std::vector<double> logpi(2 * n + 1);
  for (std::size_t s = 0; s <= 2 * n; ++s) {
    const double dist = std::fabs(static_cast<double>(s) - static_cast<double>(n));
    logpi[s] = a * std::log(static_cast<double>(n) - dist + 1.0);
  }
  return logpi;
}

// positions either absolute ("x") or as fractions of n ("x_frac", for scan
// templates whose bottlenecks track the state-space size)
std::vector<std::size_t> bottleneck_positions(const json& params,
                                              std::size_t n) {
  if (params.contains("x") && params["x"].is_array())
    return params["x"].get<std::vector<std::size_t>>();
  if (params.contains("x_frac") && params["x_frac"].is_array()) {
    std::vector<std::size_t> xs;
    for (double f : params["x_frac"].get<std::vector<double>>()) {
      if (!(f >= 0.0 && f <= 1.0)) spec_fail("x_frac entries must lie in [0,1]");
      const double pos = std::round(f * static_cast<double>(n));
      xs.push_back(static_cast<std::size_t>(std::clamp(pos, 1.0,
                                                       static_cast<double>(n))));
    }
    return xs;
  }
  spec_fail("bottleneck needs an \"x\" or \"x_frac\" array");
}

std::vector<double> bottleneck_eps(const json& params, std::size_t count) {
  std::vector<double> eps;
  if (params.contains("eps") && params["eps"].is_array())
    eps = params["eps"].get<std::vector<double>>();
  else if (count > 0)
    eps.assign(count, require_number(params, "eps"));
  if (eps.size() != count)
    spec_fail("\"eps\" must be scalar or match \"x\" in length");
  return eps;
}

std::vector<double> monotone_logf(std::size_t n, int cas, double alpha,
                                  double beta) {
  if (alpha <= 0.0 || beta <= 0.0) spec_fail("alpha and beta must be positive");
  switch (cas) {
    case 1:
      if (beta < 1.0) spec_fail("case 1 needs beta >= 1");
      break;
    case 2:
      if (!(beta < 1.0)) spec_fail("case 2 needs beta in (0,1)");
      break;
    case 3:
      if (!(beta > 1.0)) spec_fail("case 3 needs beta > 1");
      break;
    case 4:
      if (beta > 1.0) spec_fail("case 4 needs beta <= 1");
      break;
    default:
      spec_fail("weight case must be 1..4");
  }
  std::vector<double> logf(n + 1);
  for (std::size_t x = 0; x <= n; ++x) {
    const double xd = static_cast<double>(x);
    logf[x] = (cas <= 2) ? alpha * std::pow(xd, beta)
                         : alpha * std::pow(std::log(xd + 1.0), beta);
  }
  return logf;
}

}  // namespace

BDChain metropolis_from_logpi(const std::vector<double>& logpi) {
  const std::size_t n = logpi.size() - 1;
  std::vector<double> p(n + 1, 0.0), q(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    if (i < n) p[i] = 0.5 * std::exp(std::min(0.0, logpi[i + 1] - logpi[i]));
    if (i > 0) q[i] = 0.5 * std::exp(std::min(0.0, logpi[i - 1] - logpi[i]));
  }
  return make_chain(std::move(p), std::move(q));
}

FamilyKind family_kind_from_string(const std::string& s) {
  if (s == "simple_walk") return FamilyKind::kSimpleWalk;
  if (s == "ehrenfest") return FamilyKind::kEhrenfest;
  if (s == "metropolis_valley") return FamilyKind::kMetropolisValley;
  if (s == "metropolis_check") return FamilyKind::kMetropolisCheck;
  if (s == "metropolis_hat") return FamilyKind::kMetropolisHat;
  if (s == "bottleneck") return FamilyKind::kBottleneck;
  if (s == "precut") return FamilyKind::kPrecut;
  if (s == "monotone_weight") return FamilyKind::kMonotoneWeight;
  spec_fail("unknown family kind \"" + s + "\"");
}

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::kSimpleWalk: return "simple_walk";
    case FamilyKind::kEhrenfest: return "ehrenfest";
    case FamilyKind::kMetropolisValley: return "metropolis_valley";
    case FamilyKind::kMetropolisCheck: return "metropolis_check";
    case FamilyKind::kMetropolisHat: return "metropolis_hat";
    case FamilyKind::kBottleneck: return "bottleneck";
    case FamilyKind::kPrecut: return "precut";
    case FamilyKind::kMonotoneWeight: return "monotone_weight";
  }
  spec_fail("unknown family kind");
}

FamilySpec family_spec_from_json(const json& j) {
  FamilySpec s;
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    spec_fail("family spec needs a string \"kind\"");
  s.kind = family_kind_from_string(j["kind"].get<std::string>());
  if (!j.contains("n") || !j["n"].is_number_integer() ||
      j["n"].get<long long>() < 0)
    spec_fail("family spec needs a nonnegative integer \"n\"");
  s.n = j["n"].get<std::size_t>();
  s.params = j.value("params", json::object());
  return s;
}

json to_json(const FamilySpec& s) {
  return json{{"kind", to_string(s.kind)}, {"n", s.n}, {"params", s.params}};
}

namespace {
BDChain build_checked(const FamilySpec& s);
}  // namespace

BDChain build(const FamilySpec& s) {
  if (s.n < 1) spec_fail("family index n must be >= 1");
  try {
    return build_checked(s);
  } catch (const json::exception& e) {
    spec_fail(std::string("bad family params: ") + e.what());
  }
}

namespace {

BDChain build_checked(const FamilySpec& s) {
  switch (s.kind) {
    case FamilyKind::kSimpleWalk:
      return build_simple_walk(s.n);
    case FamilyKind::kEhrenfest:
      return build_ehrenfest(s.n);
    case FamilyKind::kMetropolisValley: {
      if (!s.params.contains("pi") || !s.params["pi"].is_array())
        spec_fail("metropolis_valley needs a \"pi\" array");
      const auto pi = s.params["pi"].get<std::vector<double>>();
      if (pi.size() != s.n + 1)
        spec_fail("\"pi\" must have n+1 entries");
      const auto j = static_cast<std::size_t>(require_number(s.params, "j"));
      if (j > s.n) spec_fail("valley index outside [0,n]");
      std::vector<double> logpi(pi.size());
      for (std::size_t i = 0; i < pi.size(); ++i) {
        if (!(pi[i] > 0.0)) spec_fail("target weights must be positive");
        logpi[i] = std::log(pi[i]);
      }
      require_valley_shape(logpi, j);
      return metropolis_from_logpi(logpi);
    }
    case FamilyKind::kMetropolisCheck:
      return metropolis_from_logpi(check_logpi(s.n, require_number(s.params, "a")));
    case FamilyKind::kMetropolisHat:
      return metropolis_from_logpi(hat_logpi(s.n, require_number(s.params, "a")));
    case FamilyKind::kBottleneck: {
      const auto xs = bottleneck_positions(s.params, s.n);
      return build_bottleneck(s.n, xs, bottleneck_eps(s.params, xs.size()));
    }
    case FamilyKind::kPrecut:
      return build_precut(s.n, require_number(s.params, "eps"));
    case FamilyKind::kMonotoneWeight:
      return metropolis_from_logpi(
          monotone_logf(s.n, static_cast<int>(require_number(s.params, "case")),
                        require_number(s.params, "alpha"),
                        require_number(s.params, "beta")));
  }
  spec_fail("unknown family kind");
}

}  // namespace

BottleneckConstants bottleneck_constants(const FamilySpec& s) {
  if (s.kind != FamilyKind::kBottleneck)
    spec_fail("bottleneck_constants needs a bottleneck spec");
  const auto xs = bottleneck_positions(s.params, s.n);
  const auto eps = bottleneck_eps(s.params, xs.size());
  const double n = static_cast<double>(s.n);

  BottleneckConstants out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = static_cast<double>(xs[i]);
    const double depth = std::min(x, n + 1.0 - x);
    out.a += depth;
    out.t += depth / eps[i];
  }
  out.t += n * n;

  double best_ell = 0.0, best_b = 0.0;
  for (std::size_t j = 0; j <= s.n / 2; ++j) {
    const double jd = static_cast<double>(j);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = static_cast<double>(xs[i]);
      if (std::fabs(x - n / 2.0) <= jd) sum += (n / 2.0 + 1.0 - jd) / eps[i];
      if (jd < x && x <= n - jd) ++count;
    }
    best_ell = std::max(best_ell, sum);
    best_b = std::max(best_b, (jd + 1.0) * static_cast<double>(count));
  }
  out.ell = n * n + best_ell;
  out.b = best_b;
  return out;
}

namespace {

// log of sum over k in [a,b] of 1/pi(k), using unnormalized weights:
// log sum exp(-logw[k]) + lcum[n]
double log_inv_pi_sum(const StationaryDist& d, std::size_t a, std::size_t b) {
  double maxv = -std::numeric_limits<double>::infinity(), sum = 0.0;
  for (std::size_t k = a; k <= b; ++k) {
    const double x = -d.logw[k];
    if (x <= maxv) {
      sum += std::exp(x - maxv);
    } else {
      sum = sum * std::exp(maxv - x) + 1.0;
      maxv = x;
    }
  }
  return maxv + std::log(sum) + d.lcum[d.n()];
}

}  // namespace

MonotoneConstants mono_constants(const BDChain& c, const StationaryDist& d,
                                 std::size_t j) {
  const std::size_t n = c.n();
  if (j > n) throw DomainError("split index outside [0,n]");
  for (std::size_t i = 0; i < n; ++i) {
    if (c.p[i] < c.q[i + 1] - 1e-12)
      throw ShapeError("monotone condition p_i >= q_{i+1} fails at edge " +
                       std::to_string(i));
  }
  MonotoneConstants out;
  if (n == 0) return out;  // single-state convention: everything empty
  for (std::size_t k = 0; k < j; ++k) out.u += d.prefix_over(k);
  // v: max over j' < j of pi([0,j']) sum_{k=j'}^{j-1} 1/pi(k), in log scale
  double maxv = -std::numeric_limits<double>::infinity(), sum = 0.0;
  for (std::size_t jp = j; jp-- > 0;) {
    const double x = -d.logw[jp];
    if (x <= maxv) {
      sum += std::exp(x - maxv);
    } else {
      sum = sum * std::exp(maxv - x) + 1.0;
      maxv = x;
    }
    out.v = std::max(out.v, std::exp(d.lcum[jp] + maxv + std::log(sum)));
  }
  out.w = std::exp(log_inv_pi_sum(d, j, n));
  return out;
}

ValleyConstants valley_constants(const BDChain& c, const StationaryDist& d,
                                 std::size_t j) {
  const std::size_t n = c.n();
  if (j > n) throw DomainError("valley index outside [0,n]");
  for (std::size_t i = 0; i < n; ++i) {
    if (i < j && c.p[i] > c.q[i + 1] + 1e-12)
      throw ShapeError("valley condition p_i <= q_{i+1} fails at edge " +
                       std::to_string(i));
    if (i >= j && c.p[i] < c.q[i + 1] - 1e-12)
      throw ShapeError("valley condition p_i >= q_{i+1} fails at edge " +
                       std::to_string(i));
  }
  ValleyConstants out;
  if (n == 0) return out;
  if (j > 0) out.left = std::exp(log_inv_pi_sum(d, 0, j)) / c.q[j];
  if (j < n) out.right = std::exp(log_inv_pi_sum(d, j, n)) / c.p[j];
  out.value = std::max(out.left, out.right);
  return out;
}

BDChain perturb_uniform2(const BDChain& c,
                         const std::vector<std::size_t>& edges,
                         const std::vector<double>& coeff) {
  const std::size_t n = c.n();
  if (edges.size() != coeff.size())
    throw DomainError("edge and coefficient lists of unequal length");
  for (std::size_t i = 0; i <= n / 2 && i < n; ++i) {
    const double lhs = c.p[i] * c.p[n - i - 1];
    const double rhs = c.q[i + 1] * c.q[n - i];
    if (std::fabs(lhs - rhs) > 1e-10 * std::max({lhs, rhs, 1e-300}))
      throw SymmetryError("p_i p_{n-i-1} != q_{i+1} q_{n-i} at i = " +
                          std::to_string(i));
  }
  BDChain out = c;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::size_t i = edges[k];
    if (i >= n) throw DomainError("edge index outside [0,n-1]");
    const double ci = coeff[k];
    if (!(ci >= 0.0 && ci <= 1.0))
      throw DomainError("coefficients must lie in [0,1]");
    const double pnew = ci * c.p[i] + (1.0 - ci) * std::min(c.p[i], c.q[n - i]);
    out.q[i + 1] = c.q[i + 1] * pnew / c.p[i];
    out.p[i] = pnew;
  }
  for (std::size_t i = 0; i <= n; ++i) out.r[i] = 1.0 - out.p[i] - out.q[i];
  validate(out);
  return out;
}

}  // namespace bdmix
