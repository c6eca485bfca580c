#include "bdmix/spectral.hpp"

#include <cmath>
#include <string>

#include "bdmix/detail/sturm.hpp"

namespace bdmix {

Tridiagonal symmetrize(const BDChain& c, const StationaryDist&) {
  const std::size_t n = c.n();
  Tridiagonal t;
  t.diag.resize(n + 1);
  t.off.resize(n);
  for (std::size_t i = 0; i <= n; ++i) t.diag[i] = 1.0 - c.r[i];
  for (std::size_t i = 0; i < n; ++i) t.off[i] = -std::sqrt(c.p[i] * c.q[i + 1]);
  return t;
}

std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t) {
  return detail::tridiagonal_eigenvalues(t.diag, t.off);
}

SpectrumReport eigenvalues(const BDChain& c, const StationaryDist& d) {
  const auto all = tridiagonal_eigenvalues(symmetrize(c, d));
  if (std::fabs(all[0]) > 1e-9)
    throw SpectralError("smallest eigenvalue of I-K is " +
                        std::to_string(all[0]) + ", expected ~0");
  SpectrumReport r;
  r.eigs.assign(all.begin() + 1, all.end());
  r.gap = r.eigs.empty() ? 0.0 : r.eigs.front();
  double s = 0.0;
  for (double v : r.eigs) s += 1.0 / v;
  r.inv_sum = s;
  return r;
}

SpectrumReport eigenvalues(const BDChain& c) {
  return eigenvalues(c, stationary(c));
}

double s_constant(const SpectrumReport& r) { return r.inv_sum; }

double gap_mixing_lower(double lambda, double eps, GapBoundMode mode,
                        double delta, std::uint64_t statecount) {
  if (!(eps > 0.0 && eps < 0.5))
    throw DomainError("eps must lie in (0, 1/2)");
  if (!(lambda > 0.0)) throw DomainError("spectral gap must be positive");
  const double num = -std::log(2.0 * eps);
  if (mode == GapBoundMode::kContinuous) return num / lambda;
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("laziness must lie in (0,1)");
  if (static_cast<double>(statecount) < 2.0 / delta)
    throw SideConditionError("state count below 2/delta");
  return std::floor(num /
                    (2.0 * std::max(1.0 - delta, std::log(2.0 / delta)) *
                     lambda));
}

}  // namespace bdmix
