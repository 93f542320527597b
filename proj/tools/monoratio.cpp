// monoratio: analyze monotonicity patterns of f/g, construct ratios with a
// prescribed interval of constancy, and run seeded verification campaigns.
//
// Exit codes: 0 all checks passed, 1 parse error, 2 validation or evaluation
// error, 3 a check failed, 64 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monoratio/construct.hpp"
#include "monoratio/errors.hpp"
#include "monoratio/parallel.hpp"
#include "monoratio/report.hpp"
#include "monoratio/rules.hpp"
#include "monoratio/verify.hpp"

namespace {

using namespace monoratio;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCheckFailed = 3;
constexpr int kExitUsage = 64;

struct Common {
    std::vector<double> window;
    int grid_n = kDefaultGrid;
    Tolerances tol;
    std::string out;
    std::string csv;
};

void add_common(CLI::App* cmd, Common& c, bool with_window) {
    if (with_window) {
        cmd->add_option("--window", c.window, "Analysis window LO HI")->expected(2)->required();
    }
    cmd->add_option("--grid-n", c.grid_n, "Number of uniform analysis samples")->check(CLI::Range(kMinGrid, 1 << 24));
    cmd->add_option("--tol-zero", c.tol.tol_zero, "Relative zero threshold for rho-tilde")->check(CLI::PositiveNumber);
    cmd->add_option("--tol-const", c.tol.tol_const, "Relative constancy band for m.i.c. detection")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", c.out, "Write the JSON document here instead of stdout");
}

Interval window_of(const Common& c) { return Interval::open(c.window[0], c.window[1]); }

void emit(const json& doc, const std::string& path) {
    if (path.empty()) {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << doc.dump(2) << '\n';
}

void dump_csv(const FunctionPair& pair, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_csv(out, evaluate_grid(pair, uniform_grid(pair.window(), pair.grid_n())));
}

int report_exit(const AnalysisReport& rep) { return rep.all_ok() ? kExitOk : kExitCheckFailed; }

int run_analyze(const Common& c, const std::string& f_text, const std::string& g_text) {
    DifferentiableFn f;
    DifferentiableFn g;
    try {
        f = DifferentiableFn::from_text(f_text);
    } catch (const ParseError& e) {
        std::cerr << "--f: " << e.what() << '\n';
        return kExitParse;
    }
    try {
        g = DifferentiableFn::from_text(g_text);
    } catch (const ParseError& e) {
        std::cerr << "--g: " << e.what() << '\n';
        return kExitParse;
    }
    const FunctionPair pair = make_pair(f, g, window_of(c), c.grid_n);
    const AnalysisReport rep = check_pair(pair, c.tol);
    emit(to_json(rep), c.out);
    dump_csv(pair, c.csv);
    return report_exit(rep);
}

struct ConstructArgs {
    std::string g;
    std::string rho;
    std::string staircase;
    int flat = 0;
    std::optional<double> z;
    std::optional<double> K;
    double quad_tol = 1e-10;
};

int run_construct(const Common& c, const ConstructArgs& a) {
    DifferentiableFn g;
    DifferentiableFn rho;
    try {
        g = DifferentiableFn::from_text(a.g);
        if (!a.rho.empty()) rho = DifferentiableFn::from_text(a.rho);
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitParse;
    }
    const Interval window = window_of(c);

    json info;
    std::vector<double> breakpoints;
    double z = a.z.value_or(window.midpoint());
    if (!a.staircase.empty()) {
        std::ifstream in(a.staircase);
        if (!in) throw std::runtime_error("cannot open " + a.staircase);
        const StaircaseSpec spec = staircase_from_json(json::parse(in));
        const Staircase stairs = make_staircase_rho(spec);
        rho = stairs.fn();
        breakpoints = stairs.breakpoints();
        info["staircase"] = to_json(spec);
        if (!a.z && !spec.flats.empty()) {
            if (a.flat < 0 || static_cast<std::size_t>(a.flat) >= spec.flats.size()) {
                std::cerr << "--flat out of range\n";
                return kExitUsage;
            }
            z = spec.flats[static_cast<std::size_t>(a.flat)].midpoint();
        }
    }
    const double K = a.K.value_or(rho.value(z));
    const ConstructedFn f = construct_f(g, rho, z, K, window, a.quad_tol, breakpoints);
    const FunctionPair pair = make_pair(f.fn(), g, window, c.grid_n);
    const AnalysisReport rep = check_pair(pair, c.tol);

    info["g"] = g.label();
    info["rho"] = rho.label();
    info["z"] = z;
    info["K"] = K;
    info["window"] = to_json(window);
    info["quad_tol"] = a.quad_tol;
    info["checkpoints"] = f.checkpoint_count();
    emit({{"construct", info}, {"report", to_json(rep)}}, c.out);
    dump_csv(pair, c.csv);
    return report_exit(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monotonicity patterns of ratios f/g via the derivative ratio f'/g'"};
    app.require_subcommand(1);

    Common common;
    std::string f_text;
    std::string g_text;
    auto* analyze = app.add_subcommand("analyze", "Analyze a user-supplied pair f, g");
    analyze->add_option("--f", f_text, "Numerator expression in x")->required();
    analyze->add_option("--g", g_text, "Denominator expression in x")->required();
    add_common(analyze, common, true);
    analyze->add_option("--csv", common.csv, "Write x,f,g,r,rho,rho_tilde samples here");

    ConstructArgs cargs;
    auto* construct = app.add_subcommand("construct", "Build f = K g(z) + int_z^x rho dg and analyze f/g");
    construct->add_option("--g", cargs.g, "Denominator expression in x")->required();
    auto* rho_opt = construct->add_option("--rho", cargs.rho, "Monotone continuous rho as an expression");
    auto* stairs_opt = construct->add_option("--staircase", cargs.staircase, "Staircase rho as a JSON file");
    rho_opt->excludes(stairs_opt);
    construct->add_option("--flat", cargs.flat, "Index of the staircase flat that holds z");
    construct->add_option("--z", cargs.z, "Base point of the integral (default: middle of the chosen flat)");
    construct->add_option("--K", cargs.K, "Constant K (default: rho(z))");
    construct->add_option("--quad-tol", cargs.quad_tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);
    add_common(construct, common, true);
    construct->add_option("--csv", common.csv, "Write x,f,g,r,rho,rho_tilde samples here");

    std::uint64_t seed = 42;
    std::size_t cases = 500;
    GeneratorConfig gen;
    auto* verify = app.add_subcommand("verify", "Run a seeded verification campaign on generated pairs");
    verify->add_option("--seed", seed, "First seed");
    verify->add_option("--cases", cases, "Number of generated pairs");
    verify->add_option("--min-flats", gen.min_flats, "Fewest flats in a generated rho")->check(CLI::Range(0, 3));
    verify->add_option("--max-flats", gen.max_flats, "Most flats in a generated rho")->check(CLI::Range(0, 3));
    verify->add_option("--quad-tol", gen.quad_tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);
    add_common(verify, common, false);

    std::string tables_out;
    auto* tables = app.add_subcommand("tables", "Print the encoded rule tables as text and JSON");
    tables->add_option("--out", tables_out, "Write the JSON document here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (!common.window.empty() && !(common.window[0] < common.window[1])) {
        std::cerr << "--window needs LO < HI\n";
        return kExitUsage;
    }
    if (*construct && cargs.rho.empty() && cargs.staircase.empty()) {
        std::cerr << "construct needs --rho or --staircase\n";
        return kExitUsage;
    }
    if (*verify && (cases < 1 || gen.min_flats > gen.max_flats)) {
        std::cerr << "verify needs --cases >= 1 and --min-flats <= --max-flats\n";
        return kExitUsage;
    }

    try {
        if (*analyze) return run_analyze(common, f_text, g_text);
        if (*construct) return run_construct(common, cargs);
        if (*verify) {
            gen.grid_n = common.grid_n;
            const CampaignSummary summary = run_campaign(seed, cases, gen, common.tol);
            json doc = to_json(summary);
            doc["tolerances"] = to_json(common.tol);
            doc["generator"] = {{"min_flats", gen.min_flats}, {"max_flats", gen.max_flats},
                                {"grid_n", gen.grid_n},       {"quad_tol", gen.quad_tol}};
            emit(doc, common.out);
            return summary.all_pass() ? kExitOk : kExitCheckFailed;
        }
        if (*tables) {
            std::cout << tables_text() << '\n';
            emit(tables_json(), tables_out);
            return kExitOk;
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const DomainFault& e) {
        std::cerr << "evaluation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}
