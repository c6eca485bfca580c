// Command-line front end: analyze / eigs / tv-curve / bounds-check / scan.
//
// Exit codes: 0 ok, 1 input error, 2 invariant violation, 3 resource limit.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bdmix/cutoff.hpp"
#include "bdmix/distance.hpp"
#include "bdmix/hitting.hpp"
#include "bdmix/io.hpp"
#include "bdmix/spectral.hpp"

namespace {

using bdmix::TimeMode;
using nlohmann::json;

TimeMode parse_mode(const std::string& s) {
  if (s == "discrete") return TimeMode::discrete();
  if (s == "continuous") return TimeMode::continuous();
  if (s.starts_with("lazy:")) {
    double delta = 0.0;
    try {
      delta = std::stod(s.substr(5));
    } catch (const std::exception&) {
      throw bdmix::ParseError("bad laziness in \"" + s + "\"");
    }
    if (!(delta > 0.0 && delta < 1.0))
      throw bdmix::DomainError("laziness must lie in (0,1)");
    return TimeMode::lazy(delta);
  }
  throw bdmix::ParseError("mode must be discrete, lazy:D or continuous");
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw bdmix::ParseError(std::string("bad ") + what + " \"" + tok + "\"");
    }
  }
  if (out.empty()) throw bdmix::ParseError(std::string("empty ") + what + " list");
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bdmix::ParseError("cannot open \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw bdmix::ParseError("invalid JSON in \"" + path + "\": " + e.what());
  }
  return j;
}

int run_analyze(const std::string& chain_path, bool csv) {
  const auto chain = bdmix::read_chain_file(chain_path);
  const auto dist = bdmix::stationary(chain);
  const auto bounds = bdmix::bounds_report(chain, dist);
  const auto spectrum = bdmix::eigenvalues(chain, dist);

  json out{{"bounds", to_json(bounds)}, {"spectrum", to_json(spectrum)}};
  if (csv) {
    std::cout << "key,value\n";
    for (const auto& [k, v] : out.flatten().items()) {
      std::cout << k << ',';
      if (v.is_number())
        std::cout << bdmix::format_double(v.get<double>());
      else
        std::cout << v.dump();
      std::cout << '\n';
    }
  } else {
    std::cout << out.dump(2) << '\n';
  }

  // a falsified bracket means a broken implementation; flag via exit code
  std::vector<std::string> violations;
  if (bounds.t < bounds.ell * (1.0 - 1e-9)) violations.push_back("t >= ell");
  if (spectrum.gap < bounds.gap_lo * (1.0 - 1e-9) ||
      spectrum.gap > bounds.gap_hi * (1.0 + 1e-9))
    violations.push_back("1/(4 ell) <= gap <= 2/ell");
  for (const auto& v : violations) std::cerr << "violated: " << v << '\n';
  return violations.empty() ? 0 : 2;
}

int run_eigs(const std::string& chain_path) {
  const auto chain = bdmix::read_chain_file(chain_path);
  std::cout << to_json(bdmix::eigenvalues(chain)).dump(2) << '\n';
  return 0;
}

int run_tv_curve(const std::string& chain_path, const std::string& mode_str,
                 const std::string& times_str) {
  const auto chain = bdmix::read_chain_file(chain_path);
  const auto mode = parse_mode(mode_str);
  const auto times = parse_list(times_str, "time");
  std::cout << to_csv(bdmix::tv_profile(chain, mode, times));
  return 0;
}

int run_bounds_check(const std::string& chain_path, double eps,
                     const std::string& mode_str) {
  const auto chain = bdmix::read_chain_file(chain_path);
  const auto mode = parse_mode(mode_str);
  const auto dist = bdmix::stationary(chain);
  const auto gap = bdmix::eigenvalues(chain, dist).gap;
  const double measured = bdmix::mixing_time(chain, eps, mode);
  std::cout << "measured T(" << bdmix::format_double(eps)
            << ") = " << bdmix::format_double(measured) << '\n';

  bool ok = true;
  const auto line = [&](const std::string& name, bool pass,
                        const std::string& detail) {
    std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    ok = ok && pass;
  };

  if (mode.kind == TimeMode::Kind::kContinuous ||
      (mode.kind == TimeMode::Kind::kLazy && mode.delta >= 0.5)) {
    const double ub = bdmix::mix_upper_bound(chain, dist, eps, mode);
    line("upper-bound", measured <= ub * (1.0 + 1e-9),
         bdmix::format_double(measured) + " <= " + bdmix::format_double(ub));
  } else {
    std::cout << "skip upper-bound: needs continuous or lazy:D with D >= 1/2\n";
  }

  if (eps < 0.5 && mode.kind != TimeMode::Kind::kDiscrete) {
    try {
      const double lb =
          mode.kind == TimeMode::Kind::kContinuous
              ? bdmix::gap_mixing_lower(gap, eps,
                                        bdmix::GapBoundMode::kContinuous)
              : bdmix::gap_mixing_lower(gap, eps, bdmix::GapBoundMode::kLazy,
                                        mode.delta, chain.size());
      line("gap-lower-bound", measured >= lb * (1.0 - 1e-9),
           bdmix::format_double(measured) + " >= " + bdmix::format_double(lb));
    } catch (const bdmix::SideConditionError&) {
      std::cout << "skip gap-lower-bound: state count below 2/delta\n";
    }
  } else {
    std::cout << "skip gap-lower-bound: needs eps < 1/2, continuous or lazy\n";
  }

  const bool lower_applies =
      (mode.kind == TimeMode::Kind::kContinuous && eps == 0.1) ||
      (mode.kind == TimeMode::Kind::kLazy && mode.delta >= 0.5 && eps == 0.05);
  if (lower_applies) {
    const double lb = bdmix::mix_lower_bound(chain, dist, mode);
    line("hitting-lower-bound", measured >= lb * (1.0 - 1e-9),
         bdmix::format_double(measured) + " >= " + bdmix::format_double(lb));
  } else {
    std::cout << "skip hitting-lower-bound: stated for continuous eps=0.1 or "
                 "lazy eps=0.05\n";
  }
  return ok ? 0 : 2;
}

int run_scan(const std::string& family_path, const std::string& indices_str,
             const std::string& eps_str, const std::string& delta_str,
             std::size_t exact_limit, bool as_json) {
  auto tmpl_json = read_json_file(family_path);
  if (!tmpl_json.contains("n")) tmpl_json["n"] = 1;
  const auto tmpl = bdmix::family_spec_from_json(tmpl_json);

  std::vector<std::size_t> indices;
  for (double v : parse_list(indices_str, "index")) {
    if (v < 1 || v != std::floor(v))
      throw bdmix::ParseError("indices must be positive integers");
    indices.push_back(static_cast<std::size_t>(v));
  }

  bdmix::ScanOptions opts;
  opts.eps = parse_list(eps_str, "eps");
  if (!delta_str.empty()) opts.delta = parse_list(delta_str, "delta");
  opts.exact_limit = exact_limit;

  const auto scan = bdmix::family_scan(tmpl, indices, opts);

  json verdicts = json::object();
  try {
    verdicts["ratio_t_over_ell"] = to_json(bdmix::cutoff_criterion(scan));
    const auto prod = bdmix::product_criterion(scan);
    verdicts["product_s_gap"] = to_json(prod.s_gap);
    if (prod.t_gap) verdicts["product_T_gap"] = to_json(*prod.t_gap);
  } catch (const bdmix::InsufficientDataError& e) {
    verdicts["note"] = e.what();
  }

  if (as_json) {
    json out = to_json(scan);
    out["verdicts"] = verdicts;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << to_csv(scan);
    std::cerr << "verdicts: " << verdicts.dump() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact spectral-gap and mixing-time bounds for birth and death chains"};
  app.require_subcommand(1);

  std::string chain_path, mode_str = "continuous", times_str, family_path;
  std::string indices_str, eps_list = "0.1", delta_list;
  double eps = 0.1;
  std::size_t exact_limit = 512;
  bool as_json = false, as_csv = false;

  auto* analyze =
      app.add_subcommand("analyze", "hitting/Hardy bounds plus exact spectrum");
  analyze->add_option("--chain", chain_path, "chain JSON file")->required();
  analyze->add_flag("--json", as_json, "JSON output (default)");
  analyze->add_flag("--csv", as_csv, "key,value CSV output");

  auto* eigs = app.add_subcommand("eigs", "exact spectrum of I-K");
  eigs->add_option("--chain", chain_path, "chain JSON file")->required();

  auto* curve = app.add_subcommand("tv-curve", "exact total variation profile");
  curve->add_option("--chain", chain_path, "chain JSON file")->required();
  curve->add_option("--mode", mode_str, "discrete | lazy:D | continuous")
      ->required();
  curve->add_option("--times", times_str, "comma-separated times")->required();

  auto* bounds = app.add_subcommand(
      "bounds-check", "measured mixing time vs certified bounds");
  bounds->add_option("--chain", chain_path, "chain JSON file")->required();
  bounds->add_option("--eps", eps, "target accuracy")->required();
  bounds->add_option("--mode", mode_str, "discrete | lazy:D | continuous")
      ->required();

  auto* scan =
      app.add_subcommand("scan", "per-index diagnostics for a chain family");
  scan->add_option("--family", family_path, "family spec JSON file")
      ->required();
  scan->add_option("--indices", indices_str, "comma-separated family indices")
      ->required();
  scan->add_option("--eps", eps_list, "comma-separated eps values");
  scan->add_option("--delta", delta_list, "comma-separated laziness values");
  scan->add_option("--exact-limit", exact_limit,
                   "largest n with exact TV columns");
  scan->add_flag("--json", as_json, "JSON output instead of CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(chain_path, as_csv);
    if (eigs->parsed()) return run_eigs(chain_path);
    if (curve->parsed()) return run_tv_curve(chain_path, mode_str, times_str);
    if (bounds->parsed()) return run_bounds_check(chain_path, eps, mode_str);
    if (scan->parsed())
      return run_scan(family_path, indices_str, eps_list, delta_list,
                      exact_limit, as_json);
  } catch (const bdmix::SizeError& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const bdmix::InvariantViolationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const bdmix::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
