#include "bdmix/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bdmix/hitting.hpp"
#include "bdmix/spectral.hpp"

namespace bdmix {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRelSlack = 1e-9;
// additive slack: below this scale double-precision eigenvalues carry no
// absolute information, so the bracket cannot be resolved either way
constexpr double kAbsSlack = 1e-12;

void check_row(const ScanRow& row, double tc_tenth,
               const std::vector<double>& eps) {
  const auto fail = [&](const std::string& what) {
    throw InvariantViolationError("n = " + std::to_string(row.n) + ": " + what);
  };
  if (row.t < row.ell * (1.0 - kRelSlack))
    fail("t < ell (t = " + std::to_string(row.t) +
         ", ell = " + std::to_string(row.ell) + ")");
  const double lo = 1.0 / (4.0 * row.ell), hi = 2.0 / row.ell;
  if (row.lambda < lo * (1.0 - kRelSlack) - kAbsSlack ||
      row.lambda > hi * (1.0 + kRelSlack) + kAbsSlack)
    fail("gap " + std::to_string(row.lambda) + " outside [1/(4 ell), 2/ell]");
  if (!std::isnan(tc_tenth)) {
    if (tc_tenth < row.t / 6.0 * (1.0 - kRelSlack))
      fail("T_c(1/10) = " + std::to_string(tc_tenth) + " below t/6");
    for (std::size_t e = 0; e < eps.size(); ++e) {
      const double ub = 18.0 * row.t / (eps[e] * eps[e]);
      if (row.t_cont[e] > ub * (1.0 + kRelSlack))
        fail("T_c(" + std::to_string(eps[e]) + ") above 18 t/eps^2");
    }
  }
}

}  // namespace

FamilyScan family_scan(const FamilySpec& tmpl,
                       const std::vector<std::size_t>& indices,
                       const ScanOptions& opts) {
  if (indices.empty()) throw InsufficientDataError("no indices to scan");
  if (!std::is_sorted(indices.begin(), indices.end()))
    throw DomainError("indices must be ascending");
  for (double e : opts.eps) {
    if (!(e > 0.0 && e < 1.0)) throw DomainError("eps must lie in (0,1)");
  }
  for (double d : opts.delta) {
    if (!(d > 0.0 && d < 1.0)) throw DomainError("delta must lie in (0,1)");
  }

  FamilyScan scan;
  scan.base = tmpl;
  scan.options = opts;
  scan.indices.assign(indices.begin(), indices.end());
  scan.rows.reserve(indices.size());

  for (std::size_t n : indices) {
    FamilySpec spec = tmpl;
    spec.n = n;
    const BDChain chain = build(spec);
    const StationaryDist dist = stationary(chain);
    const std::size_t i0 = median(dist);

    ScanRow row;
    row.n = n;
    row.t = t_constant(chain, dist, i0);
    row.ell = ell_constant(chain, dist, i0);
    const SpectrumReport spec_report = eigenvalues(chain, dist);
    row.lambda = spec_report.gap;
    row.s = spec_report.inv_sum;

    double tc_tenth = kNaN;
    if (n <= opts.exact_limit) {
      row.t_cont.reserve(opts.eps.size());
      for (double e : opts.eps)
        row.t_cont.push_back(
            mixing_time(chain, e, TimeMode::continuous(), opts.dense_limit));
      const auto it = std::find(opts.eps.begin(), opts.eps.end(), 0.1);
      tc_tenth = it != opts.eps.end()
                     ? row.t_cont[static_cast<std::size_t>(
                           it - opts.eps.begin())]
                     : mixing_time(chain, 0.1, TimeMode::continuous(),
                                   opts.dense_limit);
      for (double d : opts.delta) {
        std::vector<double> col;
        col.reserve(opts.eps.size());
        for (double e : opts.eps)
          col.push_back(
              mixing_time(chain, e, TimeMode::lazy(d), opts.dense_limit));
        row.t_lazy.push_back(std::move(col));
      }
    } else {
      row.t_cont.assign(opts.eps.size(), kNaN);
      row.t_lazy.assign(opts.delta.size(),
                        std::vector<double>(opts.eps.size(), kNaN));
    }

    row.ratio_t_over_ell = row.t / row.ell;
    row.product_t_gap =
        row.t_cont.empty() ? kNaN : row.t_cont[0] * row.lambda;
    row.product_s_gap = row.s * row.lambda;
    check_row(row, tc_tenth, opts.eps);
    scan.rows.push_back(std::move(row));
  }
  return scan;
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::kGrowing: return "growing";
    case VerdictKind::kBounded: return "bounded";
    case VerdictKind::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify_trend(const std::vector<double>& values) {
  if (values.size() < 2)
    throw InsufficientDataError("need at least two points to classify");
  Verdict v;
  v.values = values;
  v.growth_overall = values.back() / values.front();
  v.growth_last_window = values.back() / values[values.size() - 2];

  bool monotone_enough = true;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i + 1] < 0.9 * values[i]) monotone_enough = false;
  }
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  if (v.growth_overall >= 2.0 && monotone_enough)
    v.kind = VerdictKind::kGrowing;
  else if (*mx <= 2.0 * *mn)
    v.kind = VerdictKind::kBounded;
  else
    v.kind = VerdictKind::kInconclusive;
  return v;
}

namespace {

void require_rows(const FamilyScan& scan) {
  if (scan.rows.size() < 4)
    throw InsufficientDataError("need at least 4 scanned indices, have " +
                                std::to_string(scan.rows.size()));
}

}  // namespace

Verdict cutoff_criterion(const FamilyScan& scan) {
  require_rows(scan);
  std::vector<double> ratios;
  ratios.reserve(scan.rows.size());
  for (const auto& r : scan.rows) ratios.push_back(r.ratio_t_over_ell);
  return classify_trend(ratios);
}

ProductVerdicts product_criterion(const FamilyScan& scan) {
  require_rows(scan);
  ProductVerdicts out;
  std::vector<double> s_gap;
  std::vector<double> t_gap;
  for (const auto& r : scan.rows) {
    s_gap.push_back(r.product_s_gap);
    if (!std::isnan(r.product_t_gap)) t_gap.push_back(r.product_t_gap);
  }
  out.s_gap = classify_trend(s_gap);
  if (t_gap.size() >= 4) out.t_gap = classify_trend(t_gap);
  return out;
}

}  // namespace bdmix
