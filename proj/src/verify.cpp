#include "monoratio/verify.hpp"

#include <algorithm>
#include <cmath>

#include "monoratio/parallel.hpp"

namespace monoratio {

bool constructor_ok(const GeneratedCase& gen, const AnalysisReport& report, double endpoint_tol) {
    if (rho_roundtrip_error(gen) > 1e-9) return false;
    if (gen.chosen_is_flat) {
        return report.mics_r.size() == 1 && report.mics_r[0].interval.near(gen.chosen, endpoint_tol);
    }
    return report.mics_r.empty() && report.level0.has_value() && report.level0->switch_point &&
           std::abs(report.level0->interval.lo - gen.z) <= endpoint_tol;
}

double rho_roundtrip_error(const GeneratedCase& gen) {
    double worst = 0.0;
    for (double x : uniform_grid(gen.pair.window(), gen.pair.grid_n())) {
        const double expected = gen.rho.value(x);
        const double got = rho_at(gen.pair, x);
        worst = std::max(worst, std::abs(got - expected) / (1.0 + std::abs(expected)));
    }
    return worst;
}

CaseOutcome run_case(std::uint64_t seed, const GeneratorConfig& gen, const Tolerances& tol) {
    CaseOutcome out;
    out.seed = seed;
    out.row = generator_row(seed);
    try {
        const GeneratedCase c = random_pair(seed, gen);
        const AnalysisReport rep = check_pair(c.pair, tol);
        out.prop1 = rep.prop1_ok;
        out.prop2 = rep.prop2_ok;
        out.uniqueness = rep.uniqueness_ok;
        out.sign_identity = rep.sign_identity_ok;
        out.constructor = constructor_ok(c, rep);
        out.error = rep.error;
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

namespace {

CampaignSummary summarize(std::uint64_t seed, const std::vector<CaseOutcome>& outcomes) {
    CampaignSummary s;
    s.seed = seed;
    s.cases = outcomes.size();
    for (const auto& o : outcomes) {
        s.prop1_pass += o.prop1;
        s.prop2_pass += o.prop2;
        s.uniqueness_pass += o.uniqueness;
        s.sign_identity_pass += o.sign_identity;
        s.constructor_pass += o.constructor;
        ++s.row_counts[static_cast<std::size_t>(o.row)];
        if (!o.passed()) s.failures.push_back(o);
    }
    return s;
}

}  // namespace

CampaignSummary run_campaign(std::uint64_t seed, std::size_t cases, const GeneratorConfig& gen,
                             const Tolerances& tol) {
    std::vector<CaseOutcome> outcomes(cases);
    parallel_for(cases, [&](std::size_t i) { outcomes[i] = run_case(seed + i, gen, tol); });
    return summarize(seed, outcomes);
}

CampaignSummary run_campaign_serial(std::uint64_t seed, std::size_t cases, const GeneratorConfig& gen,
                                    const Tolerances& tol) {
    std::vector<CaseOutcome> outcomes;
    outcomes.reserve(cases);
    for (std::size_t i = 0; i < cases; ++i) outcomes.push_back(run_case(seed + i, gen, tol));
    return summarize(seed, outcomes);
}

}  // namespace monoratio
