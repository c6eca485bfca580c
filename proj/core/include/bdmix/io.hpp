#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "bdmix/chain.hpp"
#include "bdmix/cutoff.hpp"
#include "bdmix/distance.hpp"
#include "bdmix/hitting.hpp"
#include "bdmix/spectral.hpp"

namespace bdmix {

// Chain document {"n": int, "p": [..], "q": [..], "r": [..]}; r is optional
// and computed as 1 - p - q when absent. ParseError on malformed input,
// the usual validation errors on an invalid chain.
BDChain chain_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BDChain& c);
BDChain read_chain_file(const std::string& path);

nlohmann::json to_json(const SpectrumReport& r);

// BoundsReport with mix_hi evaluated at the standard eps grid.
nlohmann::json to_json(const BoundsReport& b);

// 17-significant-digit formatting; round-trips doubles exactly.
std::string format_double(double v);

// TVProfile <-> CSV with header "time,d_tv".
std::string to_csv(const TVProfile& p);
TVProfile tv_profile_from_csv(const std::string& text);
nlohmann::json to_json(const TVProfile& p);

// FamilyScan <-> CSV. Column order: n, t, ell, lambda, s, one T_c column per
// eps, one T_lazy column per (delta, eps) pair, ratio_t_over_ell,
// product_T_gap, product_s_gap. eps/delta values are embedded in the header
// labels; empty cells are NaN. Lines starting with '#' are ignored on parse.
std::string to_csv(const FamilyScan& s);
FamilyScan family_scan_from_csv(const std::string& text);

nlohmann::json to_json(const FamilyScan& s);
nlohmann::json to_json(const Verdict& v);

}  // namespace bdmix
