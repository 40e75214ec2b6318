// Command-line front end: analyze instances, run theorem suites, generate
// fixtures, and cross-check against the exhaustive oracles.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gtdyn/gtdyn.hpp"

namespace {

int run_analyze(const std::string& path, const std::string& which,
                const gtdyn::AnalyzeOptions& opts, const std::string& format) {
    gtdyn::StructuredSystem s = gtdyn::load_instance(path);
    gtdyn::AnalysisReport rep = gtdyn::analyze(s, which, opts);
    if (!gtdyn::verify_report(s, rep)) {
        std::cerr << "internal error: report witnesses failed replay\n";
        return 1;
    }
    if (format == "csv")
        std::cout << gtdyn::report_to_csv(rep);
    else
        std::cout << rep.canonical() << "\n";
    return 0;
}

int run_suite(const std::string& name, int budget, std::uint64_t seed, bool falsify) {
    gtdyn::SuiteResult res = gtdyn::theorem_suite(name, budget, seed, falsify);
    std::cout << res.to_report().canonical() << "\n";
    if (res.violations > 0) return 1;
    if (falsify && res.found == 0) return 1;  // falsification must produce evidence
    return 0;
}

int run_oracle(const std::string& path, const std::string& which) {
    gtdyn::StructuredSystem s = gtdyn::load_instance(path);
    gtdyn::AnalysisReport rep;
    rep.analysis = "oracle:" + which;
    if (which == "commutator" || which == "setwise") {
        auto o = gtdyn::oracle_commutator(s);
        rep.verdicts["noncommutative"] = o.noncommutative;
        if (o.noncommutative) {
            rep.witnesses["time"] = o.time;
            rep.witnesses["set"] = o.witness_set.members();
        }
    } else if (which == "fixed") {
        nlohmann::json per = nlohmann::json::array();
        for (int z = 0; z < s.universe_size(); ++z)
            per.push_back(gtdyn::oracle_fixed_sensitive_at(s, z));
        rep.verdicts["per_state"] = per;
    } else if (which == "coloc") {
        rep.verdicts["coloc"] = gtdyn::oracle_coloc(s).members();
    } else {
        throw gtdyn::BadParams("unknown oracle: " + which);
    }
    std::cout << rep.canonical() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis engine for structured flow functions"};
    app.require_subcommand(1);

    std::string path, which = "setwise", format = "json", kind, out_path;
    gtdyn::AnalyzeOptions opts;
    int budget = 100;
    std::uint64_t seed = 0;
    bool falsify = false;
    gtdyn::GenerateParams gen;
    std::string suite_name;

    auto* analyze = app.add_subcommand("analyze", "run one analysis on an instance file");
    analyze->add_option("file", path)->required();
    analyze->add_option("--analysis", which)
        ->check(CLI::IsMember({"closure", "commutator", "cantor", "setwise", "sord", "fixed",
                               "quantified", "intrinsic", "coloc", "statewise", "comanence",
                               "converse", "probe"}));
    analyze->add_option("--t-cap", opts.t_cap);
    analyze->add_option("--depth-cap", opts.depth_cap);
    analyze->add_option("--scale", opts.scale);
    analyze->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* suite = app.add_subcommand("suite", "run a theorem property-test suite");
    suite->add_option("name", suite_name)
        ->required()
        ->check(CLI::IsMember(gtdyn::suite_names()));
    suite->add_option("--budget", budget);
    suite->add_option("--seed", seed);
    suite->add_flag("--falsify", falsify,
                    "drop the hypotheses and hunt for certified counterexamples");

    auto* generate = app.add_subcommand("generate", "write a generated instance file");
    generate->add_option("kind", kind)->required();
    generate->add_option("-o,--out", out_path)->required();
    generate->add_option("--n", gen.n);
    generate->add_option("--sets", gen.sets);
    generate->add_option("--grid", gen.grid);
    generate->add_option("--shift", gen.shift);
    generate->add_option("--seed", gen.seed);

    auto* oracle = app.add_subcommand("oracle", "exhaustive ground-truth scan");
    oracle->add_option("file", path)->required();
    oracle->add_option("--which", which)
        ->check(CLI::IsMember({"commutator", "setwise", "fixed", "coloc"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (analyze->parsed()) return run_analyze(path, which, opts, format);
        if (suite->parsed()) return run_suite(suite_name, budget, seed, falsify);
        if (generate->parsed()) {
            gtdyn::save_instance(gtdyn::generate(kind, gen), out_path);
            return 0;
        }
        if (oracle->parsed()) return run_oracle(path, which);
    } catch (const gtdyn::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gtdyn::BadParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gtdyn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
