#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "normcheck/compliance.hpp"
#include "normcheck/errors.hpp"
#include "normcheck/turtle.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw normcheck::Error("cannot write " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"normcheck — SHACL-based norm compliance checker"};
    app.require_subcommand(1);

    normcheck::CheckOptions options;
    std::string format = "text";
    std::string dump_inferred;
    std::string emit_shapes;
    bool no_infer = false;

    CLI::App* cmd = app.add_subcommand("check", "check data graphs against norms or shapes");
    cmd->add_option("--data", options.data_files, "Turtle data file (repeatable)")
        ->required()
        ->check(CLI::ExistingFile);
    auto* norms_opt = cmd->add_option("--norms", options.norms_file, "norm rule file");
    auto* shapes_opt =
        cmd->add_option("--shapes", options.shapes_file, "SHACL shapes Turtle file");
    norms_opt->excludes(shapes_opt);
    shapes_opt->excludes(norms_opt);
    cmd->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_flag("--explain", options.explain,
                  "attach authority explanations to transparency violations");
    cmd->add_flag("--no-infer", no_infer, "validate without running inference rules");
    cmd->add_option("--dump-inferred", dump_inferred,
                    "write the post-inference graph as Turtle to this file");
    cmd->add_option("--emit-shapes", emit_shapes,
                    "write the effective shapes as SHACL Turtle to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        if (options.norms_file.empty() && options.shapes_file.empty())
            throw normcheck::Error("one of --norms or --shapes is required");
        options.infer = !no_infer;

        normcheck::CheckOutcome outcome = normcheck::check(options);
        if (!dump_inferred.empty())
            write_file(dump_inferred, normcheck::serialize_turtle(outcome.graph));
        if (!emit_shapes.empty())
            write_file(emit_shapes,
                       normcheck::serialize_turtle(normcheck::shapes_to_graph(
                           outcome.doc, outcome.shape_prefixes)));

        std::cout << (format == "json" ? normcheck::to_json(outcome.report)
                                       : normcheck::to_text(outcome.report));
        return outcome.report.conforms ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
