#include <CLI11.hpp>
#include <sstream>
#include <string>

#include "openup/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rational open-up conformal maps: prescribed critical points/values and arc opening"};
    app.require_subcommand(1);

    openup::RunConfig rc;
    std::string emit = "json";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", rc.input_path, "input JSON file")->required();
        sub->add_option("--output", rc.output_path, "output path (JSON; default: stdout)");
        sub->add_option("--seed", rc.seed, "RNG seed (default 0)");
        sub->add_option("--starts", rc.starts, "number of homotopy starts");
        sub->add_option("--workers", rc.workers, "worker threads");
        sub->add_option("--emit", emit, "comma-separated subset of json,csv,svg");
        sub->add_option("--tol-newton", [&rc](const std::vector<std::string>& v) {
            rc.tol_newton = std::stod(v.front());
            return true;
        }, "Newton residual tolerance override");
        sub->add_option("--tol-dedup", [&rc](const std::vector<std::string>& v) {
            rc.tol_dedup = std::stod(v.front());
            return true;
        }, "solution dedup radius override");
    };

    for (const char* name : {"critpts", "critvals", "openup", "verify"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);

    rc.command = app.get_subcommands().front()->get_name();
    rc.emit.clear();
    std::stringstream ss(emit);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) rc.emit.push_back(item);

    return openup::run(rc);
}
