#include <toric/cli.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    using namespace toric::cli;
    CLI::App app{"Exact intersection theory on toric bundles"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    std::string format = "text", output;
    app.add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("-o,--output", output, "also write the JSON report to this file");
    app.add_flag("-v,--verbose", o.verbosity, "print reduction traces");

    auto* fan = app.add_subcommand("fan", "fan commands");
    fan->require_subcommand(1);
    auto* check = fan->add_subcommand("check", "smoothness, completeness and projectivity of a fan");
    check->add_option("input", o.input, "catalog name or JSON file")->required();

    auto* ring = app.add_subcommand("ring", "cohomology ring of a toric bundle");
    ring->add_option("input", o.input, "catalog name or bundle spec JSON")->required();
    ring->add_option("--builder", o.builder, "sd, sr or diff")->check(CLI::IsMember({"sd", "sr", "diff"}));
    ring->add_option("--ell", o.ell, "functional normalization for sd")->check(CLI::IsMember({"intersection", "raw"}));

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("input", o.input, "catalog name or JSON file")->required();
    verify->add_option("--suite", o.suite, "bkk, cross, ider, cc, bk, pbundle or gz")
        ->required()
        ->check(CLI::IsMember({"bkk", "cross", "ider", "cc", "bk", "pbundle", "gz"}));
    verify->add_option("--seed", o.seed, "seed for the randomized inputs");

    auto* inter = app.add_subcommand("intersect", "evaluate a top-degree monomial");
    inter->add_option("input", o.input, "catalog name or bundle spec JSON")->required();
    inter->add_option("--expr", o.expr, "monomial such as x1^2 or H*x1")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Exit::PreconditionFailed;
    }

    if (fan->parsed()) o.command = "fan-check";
    else if (ring->parsed()) o.command = "ring";
    else if (verify->parsed()) o.command = "verify";
    else o.command = "intersect";

    Outcome out = run(o);
    if (format == "json") std::cout << out.report.dump(2) << "\n";
    else
        for (const auto& l : out.lines) std::cout << l << "\n";
    if (!output.empty()) {
        std::ofstream f(output);
        if (!f) {
            std::cerr << "cannot write " << output << "\n";
            return Exit::PreconditionFailed;
        }
        f << out.report.dump(2) << "\n";
    }
    return out.exit_code;
}
