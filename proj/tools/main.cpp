#include "commands.hpp"
#include "config.hpp"

#include "hexlat/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"hexlat: doubly-periodic hexagonally perforated plane under remote tension"};
    app.set_version_flag("--version", "hexlat 0.1.0");

    std::string command;
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    app.add_option("command", command, "sums | solve | field | moduli | sweep")
        ->required()
        ->check(CLI::IsMember({"sums", "solve", "field", "moduli", "sweep"}));
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--out", out_dir, "output directory (overrides the 'out' key)");
    app.add_option("overrides", overrides, "key=value overrides applied after the config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : hexlat::app::kExitConfig;
    }

    hexlat::app::RunConfig cfg;
    try {
        std::optional<std::filesystem::path> path;
        if (!config_path.empty()) path = config_path;
        if (!out_dir.empty()) overrides.push_back("out=" + out_dir);
        cfg = hexlat::app::load_config(path, overrides);
    } catch (const hexlat::Error& e) {
        std::cerr << "hexlat: " << e.what() << "\n";
        return hexlat::app::kExitConfig;
    }
    return hexlat::app::run_command(command, cfg);
}
