#include <iostream>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "echinf/version.hpp"

int main(int argc, char** argv)
{
    using namespace echinf::cli;
    Options opt;
    CLI::App app{"Exact homology and verification engine for the ech / HF comparison complexes"};
    app.set_version_flag("--version", std::string("echinf ") + echinf::engine_version);
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--cache-dir", opt.cache_dir, "Cache directory (default: $ECHINF_CACHE_DIR)");
        sub->add_option("--report", opt.report_path, "Write the JSON report here");
    };
    auto add_budgets = [&](CLI::App* sub) {
        sub->add_option("--g", opt.g, "Number of handle factors")->check(CLI::PositiveNumber);
        sub->add_option("--L", opt.L, "Handle truncation (default 3g+1)");
        sub->add_option("--window", opt.window, "i-window A:B")->capture_default_str();
    };

    auto* validate = app.add_subcommand("validate", "Parse and validate an input document");
    validate->add_option("file", opt.input, "Input document")->required();
    add_common(validate);

    auto* homology = app.add_subcommand("homology", "Stabilized ech homology of one flavor");
    homology->add_option("file", opt.input, "Input document")->required();
    homology->add_option("--flavor", opt.flavor, "inf, minus or plus")
        ->check(CLI::IsMember({"inf", "minus", "plus"}))
        ->capture_default_str();
    homology->add_option("--coeff", opt.coeff, "z, q or f<p>")->capture_default_str();
    add_budgets(homology);
    add_common(homology);

    auto* verify = app.add_subcommand("verify", "Check one statement");
    verify->add_option("statement", opt.statement, "lemma25, thm24, collapse or modules")
        ->required()
        ->check(CLI::IsMember({"lemma25", "thm24", "collapse", "modules"}));
    verify->add_option("file", opt.input, "Input document (not used by lemma25)");
    verify->add_option("--coeff", opt.coeff, "z, q or f<p>")->capture_default_str();
    verify->add_option("--Lmax", opt.L_max, "Largest O-window for lemma25")->capture_default_str();
    verify->add_option("--engine-mutation", opt.mutation, "Test hook: corrupt the O-complex differential")
        ->group("");
    add_budgets(verify);
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }
    opt.command = app.get_subcommands().front()->get_name();
    return run(opt, std::cout, std::cerr);
}
