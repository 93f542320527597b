#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "monoratio/construct.hpp"
#include "monoratio/rules.hpp"

namespace monoratio {

/// Result of checking one generated pair.
struct CaseOutcome {
    std::uint64_t seed = 0;
    int row = 0;
    bool prop1 = false;
    bool prop2 = false;
    bool uniqueness = false;
    bool sign_identity = false;
    /// The constructed r has exactly the prescribed m.i.c. (or none, when the
    /// prescribed set is a point) and f'/g' reproduces rho.
    bool constructor = false;
    std::string error;

    bool passed() const { return prop1 && prop2 && uniqueness && sign_identity && constructor; }
};

/// Checks the constructor guarantee on a generated case given its report.
bool constructor_ok(const GeneratedCase& gen, const AnalysisReport& report, double endpoint_tol = 1e-3);

/// max over the grid of |f'/g' - rho| / (1 + |rho|).
double rho_roundtrip_error(const GeneratedCase& gen);

CaseOutcome run_case(std::uint64_t seed, const GeneratorConfig& gen = {}, const Tolerances& tol = {});

struct CampaignSummary {
    std::uint64_t seed = 0;
    std::size_t cases = 0;
    std::size_t prop1_pass = 0;
    std::size_t prop2_pass = 0;
    std::size_t uniqueness_pass = 0;
    std::size_t sign_identity_pass = 0;
    std::size_t constructor_pass = 0;
    std::array<std::size_t, 4> row_counts{};
    /// In seed order.
    std::vector<CaseOutcome> failures;

    bool all_pass() const { return failures.empty(); }
};

/// Cases use seeds seed, seed + 1, ..., seed + cases - 1 and run in parallel;
/// the summary is assembled in seed order.
CampaignSummary run_campaign(std::uint64_t seed, std::size_t cases, const GeneratorConfig& gen = {},
                             const Tolerances& tol = {});

/// Serial reference for run_campaign.
CampaignSummary run_campaign_serial(std::uint64_t seed, std::size_t cases, const GeneratorConfig& gen = {},
                                    const Tolerances& tol = {});

}  // namespace monoratio
