#pragma once

#include <cstdint>
#include <vector>

#include "bdmix/chain.hpp"

namespace bdmix {

// Symmetric tridiagonal matrix similar to I-K under conjugation by
// diag(sqrt(pi)): diag[i] = 1 - r[i], off[i] = -sqrt(p[i] q[i+1]).
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

Tridiagonal symmetrize(const BDChain& c, const StationaryDist& d);

// Nonzero spectrum of I-K: eigs sorted ascending (length n, the zero
// eigenvalue removed), gap = eigs[0], inv_sum = sum of 1/eigs.
struct SpectrumReport {
  std::vector<double> eigs;
  double gap = 0.0;
  double inv_sum = 0.0;
};

// Full eigensolve of the symmetrized matrix (Sturm bisection, deterministic).
// The eigenvalue nearest 0 must come out below 1e-9 in magnitude; it is
// dropped and the rest returned ascending. SpectralError otherwise.
SpectrumReport eigenvalues(const BDChain& c);
SpectrumReport eigenvalues(const BDChain& c, const StationaryDist& d);

// All m eigenvalues of a symmetric tridiagonal matrix, ascending.
std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t);

double s_constant(const SpectrumReport& r);

enum class GapBoundMode { kContinuous, kLazy };

// Mixing-time lower bound from the spectral gap alone:
//   continuous: -log(2 eps) / lambda, for eps in (0, 1/2);
//   lazy:       floor(-log(2 eps) / (2 max{1-delta, log(2/delta)} lambda)),
//               valid only when statecount >= 2/delta.
double gap_mixing_lower(double lambda, double eps, GapBoundMode mode,
                        double delta = 0.5, std::uint64_t statecount = 0);

}  // namespace bdmix
