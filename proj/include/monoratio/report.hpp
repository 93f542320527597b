#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "monoratio/construct.hpp"
#include "monoratio/parallel.hpp"
#include "monoratio/rules.hpp"
#include "monoratio/verify.hpp"

namespace monoratio {

using json = nlohmann::ordered_json;

json to_json(const Interval& iv);
json to_json(const Pattern& p);
json to_json(const MicSet& set);
json to_json(const Tolerances& tol);

/// Stable field names: pair, window, sign_gg, rho_pattern, predicted_family,
/// observed_pattern, switch, level0, mics{r, rho, rho_tilde},
/// checks{prop1, prop2, uniqueness, sign_identity}, tolerances.
json to_json(const AnalysisReport& report);

json to_json(const CampaignSummary& summary);

/// {"flats": [[lo, hi], ...], "slopes": [...], "direction": "up"|"down",
///  "anchor": [x, value], "breakpoints": [...]}. "breakpoints" is derived and
/// ignored when reading; "slopes" may also be a single number.
json to_json(const StaircaseSpec& spec);
StaircaseSpec staircase_from_json(const json& j);

/// The three rule tables, generated from rule_rows().
json tables_json();
std::string tables_text();

/// Header x,f,g,r,rho,rho_tilde, one row per grid point.
void write_csv(std::ostream& out, const GridTable& table);

}  // namespace monoratio
