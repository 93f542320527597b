#include "monoratio/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace monoratio {

json to_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

json to_json(const Pattern& p) {
    return {{"kind", to_string(p.kind)}, {"switch", to_json(p.switch_interval)}};
}

json to_json(const MicSet& set) {
    json out = json::array();
    for (const auto& m : set.intervals) {
        out.push_back({{"lo", m.interval.lo},
                       {"hi", m.interval.hi},
                       {"lo_closed", m.interval.lo_closed},
                       {"hi_closed", m.interval.hi_closed},
                       {"level", m.level},
                       {"truncated_lo", m.truncated_lo},
                       {"truncated_hi", m.truncated_hi}});
    }
    return out;
}

json to_json(const Tolerances& tol) {
    return {{"tol_zero", tol.tol_zero},         {"tol_const", tol.tol_const},
            {"min_ic_steps", tol.min_ic_steps}, {"switch_tol", tol.switch_tol},
            {"mic_match_steps", tol.mic_match_steps}, {"c_tol", tol.c_tol},
            {"fit_tol", tol.fit_tol}};
}

json to_json(const AnalysisReport& rep) {
    json j;
    j["pair"] = {{"f", rep.f_label}, {"g", rep.g_label}};
    j["window"] = to_json(rep.window);
    j["grid_n"] = rep.grid_n;
    j["sign_gg"] = rep.sign_gg;
    j["rho_shape"] = to_string(rep.rho_shape);
    j["rho_pattern"] = to_json(rep.rho_pattern);
    j["predicted_family"] = rep.predicted_family ? json(to_string(*rep.predicted_family)) : json(nullptr);
    j["predicted_rho_tilde_dir"] =
        rep.predicted_rho_tilde_dir ? json(to_string(*rep.predicted_rho_tilde_dir)) : json(nullptr);
    j["observed_pattern"] = to_string(rep.observed_r_pattern.kind);
    j["switch"] = to_json(rep.observed_r_pattern.switch_interval);
    j["raw_r_pattern"] = to_json(rep.raw_r_pattern);
    j["rho_tilde_pattern"] = to_json(rep.rho_tilde_pattern);
    if (rep.level0) {
        j["level0"] = {{"lo", rep.level0->interval.lo},
                       {"hi", rep.level0->interval.hi},
                       {"switch_point", rep.level0->switch_point}};
    } else {
        j["level0"] = nullptr;
    }
    j["mics"] = {{"r", to_json(rep.mics_r)}, {"rho", to_json(rep.mics_rho)}, {"rho_tilde", to_json(rep.mics_rho_tilde)}};
    j["mic_sets_agree"] = rep.mic_sets_agree;
    json fits = json::array();
    for (const auto& f : rep.fits) {
        fits.push_back({{"interval", to_json(f.interval)},
                        {"K1", f.K1},
                        {"C", f.C},
                        {"residual", f.residual},
                        {"c_is_zero", f.c_is_zero},
                        {"is_mic_of_r", f.is_mic_of_r}});
    }
    j["fits"] = fits;
    j["sign_identity"] = {{"points", rep.sign_points}, {"violations", rep.sign_violations}};
    j["checks"] = {{"prop1", rep.prop1_ok},
                   {"prop2", rep.prop2_ok},
                   {"uniqueness", rep.uniqueness_ok},
                   {"sign_identity", rep.sign_identity_ok}};
    j["tolerances"] = to_json(rep.tolerances);
    j["error"] = rep.error.empty() ? json(nullptr) : json(rep.error);
    j["notes"] = rep.notes;
    return j;
}

json to_json(const CampaignSummary& s) {
    json failures = json::array();
    for (const auto& f : s.failures) {
        json failed = json::array();
        if (!f.prop1) failed.push_back("prop1");
        if (!f.prop2) failed.push_back("prop2");
        if (!f.uniqueness) failed.push_back("uniqueness");
        if (!f.sign_identity) failed.push_back("sign_identity");
        if (!f.constructor) failed.push_back("constructor");
        failures.push_back({{"seed", f.seed}, {"row", f.row}, {"failed", failed}, {"error", f.error}});
    }
    auto tally = [&](std::size_t pass) { return json{{"pass", pass}, {"fail", s.cases - pass}}; };
    return {{"seed", s.seed},
            {"cases", s.cases},
            {"checks",
             {{"prop1", tally(s.prop1_pass)},
              {"prop2", tally(s.prop2_pass)},
              {"uniqueness", tally(s.uniqueness_pass)},
              {"sign_identity", tally(s.sign_identity_pass)},
              {"constructor", tally(s.constructor_pass)}}},
            {"rows", s.row_counts},
            {"failing_seeds", failures},
            {"all_pass", s.all_pass()}};
}

json to_json(const StaircaseSpec& spec) {
    json flats = json::array();
    for (const auto& f : spec.flats) flats.push_back(to_json(f));
    return {{"flats", flats},
            {"slopes", spec.slopes},
            {"direction", spec.direction == Direction::Up ? "up" : "down"},
            {"anchor", json::array({spec.anchor_x, spec.anchor_value})},
            {"breakpoints", spec.breakpoints()}};
}

StaircaseSpec staircase_from_json(const json& j) {
    StaircaseSpec spec;
    for (const auto& f : j.at("flats")) {
        if (!f.is_array() || f.size() != 2) throw std::invalid_argument("each flat must be [lo, hi]");
        spec.flats.push_back(Interval::closed(f[0].get<double>(), f[1].get<double>()));
    }
    if (j.contains("slopes")) {
        const json& s = j["slopes"];
        spec.slopes = s.is_number() ? std::vector<double>{s.get<double>()} : s.get<std::vector<double>>();
    }
    if (j.contains("direction")) {
        std::string d = j["direction"].get<std::string>();
        std::transform(d.begin(), d.end(), d.begin(), [](unsigned char c) { return std::tolower(c); });
        if (d == "up") {
            spec.direction = Direction::Up;
        } else if (d == "down") {
            spec.direction = Direction::Down;
        } else {
            throw std::invalid_argument("direction must be \"up\" or \"down\"");
        }
    }
    if (j.contains("anchor")) {
        const json& a = j["anchor"];
        if (!a.is_array() || a.size() != 2) throw std::invalid_argument("anchor must be [x, value]");
        spec.anchor_x = a[0].get<double>();
        spec.anchor_value = a[1].get<double>();
    }
    return spec;
}

namespace {

const char* sign_text(int s) { return s > 0 ? ">0" : "<0"; }

std::string nonstrict_text(Family f) {
    return f == Family::DownUp ? "non-increasing on (a,c), non-decreasing on (c,b)"
                               : "non-decreasing on (a,c), non-increasing on (c,b)";
}

std::string improved_text(Family f) {
    return f == Family::DownUp ? "r'<0 on (a,c), constant on (c,d), r'>0 on (d,b)"
                               : "r'>0 on (a,c), constant on (c,d), r'<0 on (d,b)";
}

}  // namespace

json tables_json() {
    json t1 = json::array();
    json t2 = json::array();
    json t3 = json::array();
    for (const auto& row : rule_rows()) {
        const json cond = {{"rho", to_string(row.rho_dir)}, {"sign_gg", row.sign_gg}};
        json a = cond;
        a["r"] = to_string(row.r_family);
        a["form"] = nonstrict_text(row.r_family);
        t1.push_back(a);
        json b = cond;
        b["r"] = to_string(row.r_family);
        b["form"] = improved_text(row.r_family);
        t2.push_back(b);
        json c = cond;
        c["rho_tilde"] = to_string(row.rho_tilde_dir);
        t3.push_back(c);
    }
    return {{"table1", {{"title", "non-strict rules for r"}, {"rows", t1}}},
            {"table2", {{"title", "improved rules for r"}, {"rows", t2}}},
            {"table3", {{"title", "direction of rho-tilde"}, {"rows", t3}}}};
}

std::string tables_text() {
    std::ostringstream out;
    const auto rows = rule_rows();
    out << "table1: non-strict rules for r\n";
    out << "  rho   gg'  | r\n";
    for (const auto& row : rows) {
        out << "  " << to_string(row.rho_dir) << (row.rho_dir == Direction::Up ? "    " : "  ") << sign_text(row.sign_gg)
            << "   | " << to_string(row.r_family) << "  (" << nonstrict_text(row.r_family) << ")\n";
    }
    out << "\ntable2: improved rules for r\n";
    out << "  rho   gg'  | r\n";
    for (const auto& row : rows) {
        out << "  " << to_string(row.rho_dir) << (row.rho_dir == Direction::Up ? "    " : "  ") << sign_text(row.sign_gg)
            << "   | " << to_string(row.r_family) << "  (" << improved_text(row.r_family) << ")\n";
    }
    out << "\ntable3: direction of rho-tilde\n";
    out << "  rho   gg'  | rho_tilde\n";
    for (const auto& row : rows) {
        out << "  " << to_string(row.rho_dir) << (row.rho_dir == Direction::Up ? "    " : "  ") << sign_text(row.sign_gg)
            << "   | " << to_string(row.rho_tilde_dir) << "\n";
    }
    return out.str();
}

void write_csv(std::ostream& out, const GridTable& table) {
    out << "x,f,g,r,rho,rho_tilde\n";
    auto num = [](double v) {
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, ptr);
    };
    for (std::size_t i = 0; i < table.size(); ++i) {
        const PointEval p = table.at(i);
        out << num(p.x) << ',' << num(p.f.value) << ',' << num(p.g.value) << ',' << num(p.r()) << ','
            << num(p.rho()) << ',' << num(p.rho_tilde()) << '\n';
    }
}

}  // namespace monoratio
