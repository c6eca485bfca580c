#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace bdmix::detail {

// Eigenvalues of a symmetric tridiagonal matrix by bisection on the Sturm
// negcount. Deterministic, O(m^2) per spectrum, each eigenvalue bracketed to
// width ~2*eps*max(|a|,|b|) + pivmin. F is double or long double.
//
// diag has length m, off length m-1 (off[i] couples i and i+1).
template <typename F>
class SturmSolver {
 public:
  SturmSolver(const std::vector<F>& diag, const std::vector<F>& off)
      : d_(diag), e2_(off.size()) {
    for (std::size_t i = 0; i < off.size(); ++i) e2_[i] = off[i] * off[i];
    F maxabs = F(0);
    for (std::size_t i = 0; i < d_.size(); ++i) {
      F rad = F(0);
      if (i > 0) rad += std::abs(off[i - 1]);
      if (i + 1 < d_.size()) rad += std::abs(off[i]);
      lo_ = std::min(lo_, d_[i] - rad);
      hi_ = std::max(hi_, d_[i] + rad);
      maxabs = std::max(maxabs, std::abs(d_[i]) + rad);
    }
    F maxe2 = F(0);
    for (F v : e2_) maxe2 = std::max(maxe2, v);
    pivmin_ = std::max(std::numeric_limits<F>::min() * maxe2,
                       std::numeric_limits<F>::min());
    // widen so the outermost eigenvalues are strictly inside the bracket
    const F pad = std::numeric_limits<F>::epsilon() * F(d_.size()) * maxabs +
                  F(2) * pivmin_;
    lo_ -= pad;
    hi_ += pad;
  }

  // number of sign changes of the Sturm sequence at x (eigenvalues <= x up
  // to pivmin perturbation); zero pivots are pushed to -pivmin
  std::size_t negcount(F x) const {
    std::size_t cnt = 0;
    F t = d_[0] - x;
    if (std::abs(t) <= pivmin_) t = -pivmin_;
    if (t <= F(0)) ++cnt;
    for (std::size_t i = 1; i < d_.size(); ++i) {
      t = d_[i] - x - e2_[i - 1] / t;
      if (std::abs(t) <= pivmin_) t = -pivmin_;
      if (t <= F(0)) ++cnt;
    }
    return cnt;
  }

  // all eigenvalues ascending; the bisections run in lockstep so that one
  // sweep of the recurrence serves every shift (vectorizes across shifts)
  std::vector<F> eigenvalues() const {
    const std::size_t m = d_.size();
    std::vector<F> lo(m, lo_), hi(m, hi_), mid(m), q(m);
    std::vector<std::size_t> cnt(m);
    const F eps = std::numeric_limits<F>::epsilon();
    for (int iter = 0; iter < 40 + std::numeric_limits<F>::digits; ++iter) {
      bool active = false;
      for (std::size_t k = 0; k < m; ++k) {
        mid[k] = (lo[k] + hi[k]) / F(2);
        if (hi[k] - lo[k] > F(2) * eps * std::max(std::abs(lo[k]),
                                                  std::abs(hi[k])) +
                                F(2) * pivmin_ &&
            mid[k] != lo[k] && mid[k] != hi[k])
          active = true;
      }
      if (!active) break;
      for (std::size_t k = 0; k < m; ++k) {
        F t = d_[0] - mid[k];
        if (std::abs(t) <= pivmin_) t = -pivmin_;
        q[k] = t;
        cnt[k] = t <= F(0) ? 1 : 0;
      }
      for (std::size_t i = 1; i < m; ++i) {
        const F di = d_[i], e2i = e2_[i - 1];
        for (std::size_t k = 0; k < m; ++k) {
          F t = di - mid[k] - e2i / q[k];
          if (std::abs(t) <= pivmin_) t = -pivmin_;
          q[k] = t;
          cnt[k] += t <= F(0) ? 1 : 0;
        }
      }
      for (std::size_t k = 0; k < m; ++k) {
        if (cnt[k] <= k)
          lo[k] = mid[k];
        else
          hi[k] = mid[k];
      }
    }
    std::vector<F> out(m);
    for (std::size_t k = 0; k < m; ++k) out[k] = (lo[k] + hi[k]) / F(2);
    return out;
  }

 private:
  std::vector<F> d_, e2_;
  F lo_ = std::numeric_limits<F>::max();
  F hi_ = std::numeric_limits<F>::lowest();
  F pivmin_ = F(0);
};

template <typename F>
std::vector<F> tridiagonal_eigenvalues(const std::vector<F>& diag,
                                       const std::vector<F>& off) {
  return SturmSolver<F>(diag, off).eigenvalues();
}

}  // namespace bdmix::detail
