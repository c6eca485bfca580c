#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bdmix/distance.hpp"
#include "bdmix/families.hpp"

namespace bdmix {

struct ScanOptions {
  std::vector<double> eps = {0.1};
  std::vector<double> delta = {};      // lazy mixing-time columns, one per delta
  std::size_t exact_limit = 512;       // exact TV columns only for n <= this
  std::size_t dense_limit = kDenseLimit;
};

// One family member. Mixing-time columns are NaN above exact_limit.
struct ScanRow {
  std::size_t n = 0;
  double t = 0.0;
  double ell = 0.0;
  double lambda = 0.0;
  double s = 0.0;
  std::vector<double> t_cont;               // T_c(eps), per requested eps
  std::vector<std::vector<double>> t_lazy;  // T_delta(eps), [delta][eps]
  double ratio_t_over_ell = 0.0;
  double product_t_gap = 0.0;  // T_c(eps[0]) * lambda
  double product_s_gap = 0.0;  // s * lambda
};

struct FamilyScan {
  FamilySpec base;  // template; n is taken from `indices`
  ScanOptions options;
  std::vector<std::size_t> indices;
  std::vector<ScanRow> rows;
};

// Scans the family over ascending indices. Each row is checked against the
// hard two-sided bounds: 1/(4 ell) <= lambda <= 2/ell, t >= ell, and, when
// exact columns are on, t/6 <= T_c(1/10) and T_c(eps) <= 18 t/eps^2.
// A violation throws InvariantViolationError.
FamilyScan family_scan(const FamilySpec& tmpl,
                       const std::vector<std::size_t>& indices,
                       const ScanOptions& opts = {});

enum class VerdictKind { kGrowing, kBounded, kInconclusive };

std::string to_string(VerdictKind k);

// Finite-sample trend heuristic with fixed thresholds; evidence, not proof.
//   growing: >= 2x increase across the range, monotone up to 10% dips;
//   bounded: max/min <= 2; otherwise inconclusive.
struct Verdict {
  VerdictKind kind = VerdictKind::kInconclusive;
  double growth_overall = 0.0;     // last / first
  double growth_last_window = 0.0; // last / second-to-last
  std::vector<double> values;
};

Verdict classify_trend(const std::vector<double>& values);

// Verdict on the t_n / ell_n column. Needs >= 4 rows.
Verdict cutoff_criterion(const FamilyScan& scan);

// Verdicts on the product columns T_c(eps[0])*lambda and s*lambda. The
// T-column verdict is absent when fewer than 4 rows carry exact values.
struct ProductVerdicts {
  Verdict s_gap;
  std::optional<Verdict> t_gap;
};

ProductVerdicts product_criterion(const FamilyScan& scan);

}  // namespace bdmix
