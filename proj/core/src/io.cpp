#include "bdmix/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace bdmix {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void parse_fail(const std::string& msg) {
  throw ParseError(msg);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    parse_fail("bad number \"" + std::string(s) + "\"");
  return v;
}

// shortest exact representation, used for header labels
std::string format_short(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

BDChain chain_from_json(const json& j) {
  if (!j.is_object()) parse_fail("chain document must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer() ||
      j["n"].get<long long>() < 0)
    parse_fail("chain document needs a nonnegative integer \"n\"");
  const auto n = j["n"].get<std::size_t>();
  const auto get_rates = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_array())
      parse_fail(std::string("chain document needs an array \"") + key + "\"");
    std::vector<double> v;
    try {
      v = j[key].get<std::vector<double>>();
    } catch (const json::exception& e) {
      parse_fail(std::string("bad \"") + key + "\" array: " + e.what());
    }
    if (v.size() != n + 1)
      parse_fail(std::string("\"") + key + "\" must have n+1 entries");
    return v;
  };
  auto p = get_rates("p");
  auto q = get_rates("q");
  if (j.contains("r")) return make_chain(p, q, get_rates("r"));
  return make_chain(p, q);
}

json to_json(const BDChain& c) {
  return json{{"n", c.n()}, {"p", c.p}, {"q", c.q}, {"r", c.r}};
}

BDChain read_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    parse_fail("invalid JSON in \"" + path + "\": " + e.what());
  }
  return chain_from_json(j);
}

json to_json(const SpectrumReport& r) {
  return json{{"eigs", r.eigs}, {"gap", r.gap}, {"inv_sum", r.inv_sum}};
}

json to_json(const BoundsReport& b) {
  json mix_hi = json::object();
  for (double eps : {0.05, 0.1, 0.25})
    mix_hi[format_short(eps)] = b.mix_hi(eps);
  return json{{"i0", b.i0},         {"t", b.t},
              {"ell", b.ell},       {"gap_lo", b.gap_lo},
              {"gap_hi", b.gap_hi}, {"mix_lo", b.mix_lo},
              {"mix_hi", mix_hi}};
}

std::string to_csv(const TVProfile& p) {
  std::ostringstream out;
  out << "time,d_tv\n";
  for (std::size_t i = 0; i < p.times.size(); ++i)
    out << format_double(p.times[i]) << ',' << format_double(p.values[i])
        << '\n';
  return out.str();
}

TVProfile tv_profile_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split(line, ',') !=
                                     std::vector<std::string>{"time", "d_tv"})
    parse_fail("expected header \"time,d_tv\"");
  TVProfile p;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line, ',');
    if (cells.size() != 2) parse_fail("expected two columns per row");
    p.times.push_back(parse_double(cells[0]));
    p.values.push_back(parse_double(cells[1]));
  }
  return p;
}

json to_json(const TVProfile& p) {
  json mode;
  switch (p.mode.kind) {
    case TimeMode::Kind::kDiscrete:
      mode = "discrete";
      break;
    case TimeMode::Kind::kLazy:
      mode = json{{"lazy", p.mode.delta}};
      break;
    case TimeMode::Kind::kContinuous:
      mode = "continuous";
      break;
  }
  return json{{"mode", mode}, {"times", p.times}, {"d_tv", p.values}};
}

namespace {

std::vector<std::string> scan_header(const ScanOptions& o) {
  std::vector<std::string> h = {"n", "t", "ell", "lambda", "s"};
  for (double e : o.eps) h.push_back("T_c[" + format_short(e) + "]");
  for (double d : o.delta)
    for (double e : o.eps)
      h.push_back("T_lazy[" + format_short(d) + "][" + format_short(e) + "]");
  h.insert(h.end(), {"ratio_t_over_ell", "product_T_gap", "product_s_gap"});
  return h;
}

}  // namespace

std::string to_csv(const FamilyScan& s) {
  std::ostringstream out;
  const auto header = scan_header(s.options);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : s.rows) {
    out << r.n << ',' << format_double(r.t) << ',' << format_double(r.ell)
        << ',' << format_double(r.lambda) << ',' << format_double(r.s);
    for (double v : r.t_cont) out << ',' << format_double(v);
    for (const auto& col : r.t_lazy)
      for (double v : col) out << ',' << format_double(v);
    out << ',' << format_double(r.ratio_t_over_ell) << ','
        << format_double(r.product_t_gap) << ','
        << format_double(r.product_s_gap) << '\n';
  }
  return out.str();
}

FamilyScan family_scan_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) parse_fail("empty scan CSV");
  const auto header = split(line, ',');
  if (header.size() < 8 || header[0] != "n" || header[1] != "t" ||
      header[2] != "ell" || header[3] != "lambda" || header[4] != "s")
    parse_fail("unexpected scan CSV header");

  FamilyScan s;
  s.options.eps.clear();
  std::size_t col = 5;
  while (col < header.size() && header[col].starts_with("T_c[")) {
    const auto& h = header[col];
    s.options.eps.push_back(parse_double(
        std::string_view(h).substr(4, h.size() - 5)));
    ++col;
  }
  while (col < header.size() && header[col].starts_with("T_lazy[")) {
    const auto& h = header[col];
    const auto mid = h.find("][");
    if (mid == std::string::npos || !h.ends_with("]"))
      parse_fail("bad lazy column label \"" + h + "\"");
    const double d = parse_double(std::string_view(h).substr(7, mid - 7));
    if (s.options.delta.empty() || s.options.delta.back() != d)
      s.options.delta.push_back(d);
    ++col;
  }
  if (header.size() - col != 3) parse_fail("unexpected trailing scan columns");

  const std::size_t ne = s.options.eps.size();
  const std::size_t nd = s.options.delta.size();
  const std::size_t want = 5 + ne + nd * ne + 3;
  if (header.size() != want) parse_fail("scan column count mismatch");

  const auto cell = [](const std::string& c) {
    return c.empty() ? kNaN : parse_double(c);
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line, ',');
    if (cells.size() != want) parse_fail("scan row width mismatch");
    ScanRow r;
    r.n = static_cast<std::size_t>(parse_double(cells[0]));
    r.t = cell(cells[1]);
    r.ell = cell(cells[2]);
    r.lambda = cell(cells[3]);
    r.s = cell(cells[4]);
    std::size_t k = 5;
    for (std::size_t e = 0; e < ne; ++e) r.t_cont.push_back(cell(cells[k++]));
    for (std::size_t d = 0; d < nd; ++d) {
      std::vector<double> colv;
      for (std::size_t e = 0; e < ne; ++e) colv.push_back(cell(cells[k++]));
      r.t_lazy.push_back(std::move(colv));
    }
    r.ratio_t_over_ell = cell(cells[k++]);
    r.product_t_gap = cell(cells[k++]);
    r.product_s_gap = cell(cells[k++]);
    s.indices.push_back(r.n);
    s.rows.push_back(std::move(r));
  }
  return s;
}

json to_json(const FamilyScan& s) {
  json rows = json::array();
  for (const auto& r : s.rows) {
    json lazy = json::array();
    for (const auto& col : r.t_lazy) lazy.push_back(col);
    rows.push_back(json{{"n", r.n},
                        {"t", r.t},
                        {"ell", r.ell},
                        {"lambda", r.lambda},
                        {"s", r.s},
                        {"T_c", r.t_cont},
                        {"T_lazy", lazy},
                        {"ratio_t_over_ell", r.ratio_t_over_ell},
                        {"product_T_gap", r.product_t_gap},
                        {"product_s_gap", r.product_s_gap}});
  }
  return json{{"family", to_json(s.base)},
              {"eps", s.options.eps},
              {"delta", s.options.delta},
              {"exact_limit", s.options.exact_limit},
              {"rows", rows}};
}

json to_json(const Verdict& v) {
  return json{{"verdict", to_string(v.kind)},
              {"growth_overall", v.growth_overall},
              {"growth_last_window", v.growth_last_window},
              {"values", v.values}};
}

}  // namespace bdmix
