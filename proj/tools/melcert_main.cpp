#include <iostream>

#include <CLI11.hpp>

#include "melcert/commands.hpp"

int main(int argc, char** argv)
{
    using namespace melcert;
    CLI::App app{"Rigorous certificates for transversal intersections of perturbed invariant manifolds"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    CommandOptions opt;
    int threads = 0;
    app.add_option("--threads", threads, "worker threads for box-parallel stages")->check(CLI::Range(1, 4096));
    app.add_flag("--verbose", opt.verbose, "print progress and diagnostics to stderr");

    auto* lu = app.add_subcommand("lu-verify", "certify the transversal splitting for the Lerman-Umanskii system");
    lu->add_option("--config", opt.config, "JSON config")->required();
    lu->add_option("--out", opt.out, "certificate JSON path")->required();

    auto* root = app.add_subcommand("certify-root", "interval Newton certificate for a polynomial system");
    root->add_option("--config", opt.config, "JSON config")->required();
    root->add_option("--out", opt.out, "certificate JSON path")->required();

    auto* exp = app.add_subcommand("export-samples", "write manifold samples and local enclosure boxes as CSV");
    exp->add_option("--config", opt.config, "JSON config")->required();
    exp->add_option("--out-dir", opt.out, "output directory")->required();

    for (auto* sub : {lu, root, exp}) {
        sub->add_option("--threads", threads, "worker threads for box-parallel stages")->check(CLI::Range(1, 4096));
        sub->add_flag("--verbose", opt.verbose, "print progress and diagnostics to stderr");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exitConfigError;
    }
    if (threads > 0) opt.threads = threads;

    if (lu->parsed()) return cmd_lu_verify(opt, std::cout, std::cerr);
    if (root->parsed()) return cmd_certify_root(opt, std::cout, std::cerr);
    return cmd_export_samples(opt, std::cout, std::cerr);
}
