#pragma once

#include <CLI11.hpp>

#include <nlohmann/json.hpp>

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace idphase::cli {

// Registers options on a subcommand and remembers how to echo each bound
// variable, so the resolved config can be written to the manifest.
class Command {
public:
    explicit Command(CLI::App* app);

    template <class T>
    CLI::Option* option(const std::string& flags, T& var, const std::string& help) {
        auto* opt = app_->add_option(flags, var, help)->capture_default_str();
        echo_.emplace_back(opt->get_lnames().front(), [&var] { return nlohmann::json(var); });
        return opt;
    }

    CLI::App* app() const { return app_; }
    nlohmann::json resolved() const;

    // Fills options not given on the command line from the `--config` file:
    // a flat JSON object keyed by long flag names, or a manifest.json written
    // by this tool (its "config" member is used). Throws CLI::ParseError.
    void apply_config();

private:
    CLI::App* app_;
    std::string config_path_;
    std::vector<std::pair<std::string, std::function<nlohmann::json()>>> echo_;
};

}  // namespace idphase::cli
