#include "tgwa/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Simple weight modules over twisted generalized Weyl algebras"};
    app.require_subcommand(1);

    tgwa::CliOptions opts;
    std::string window_str;
    for (const char* name : {"orbit", "gtilde", "gm", "bm", "classify", "build", "verify", "diagram"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opts.config_path, "session config file (TOML)")->required();
        sub->add_option("--window", opts.window, "index window for infinite support");
        sub->add_option("--out", opts.out_path, "write output to a file");
        sub->add_option("--format", opts.format, "text | json | dot");
        sub->add_option("--in", opts.in_path, "module JSON to verify");
        sub->add_flag("--oracle", opts.use_oracle, "build through the generic induced construction");
    }

    CLI11_PARSE(app, argc, argv);
    opts.subcommand = app.get_subcommands().front()->get_name();
    return tgwa::run_cli(opts, std::cout, std::cerr);
}
