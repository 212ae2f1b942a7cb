#include "json_config.hpp"

#include <fstream>

namespace idphase::cli {

namespace {

std::string scalar_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

}  // namespace

Command::Command(CLI::App* app) : app_(app) {
    app_->add_option("--config", config_path_, "JSON config with the same keys as the flags; flags win");
}

void Command::apply_config() {
    if (config_path_.empty()) return;
    std::ifstream input(config_path_);
    if (!input) throw CLI::FileError::Missing(config_path_);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(input);
    } catch (const nlohmann::json::parse_error& e) {
        throw CLI::ConversionError(config_path_ + " is not valid JSON: " + e.what());
    }
    if (j.is_object() && j.contains("tool") && j.contains("config")) j = j["config"];
    if (!j.is_object()) throw CLI::ConversionError(config_path_ + " must hold a JSON object");

    for (const auto& [key, value] : j.items()) {
        if (key == "config") continue;
        CLI::Option* opt = app_->get_option_no_throw("--" + key);
        if (opt == nullptr) throw CLI::ExtrasError("unknown config key '" + key + "' in " + config_path_,
                                                    CLI::ExitCodes::ExtrasError);
        if (opt->count() > 0 || value.is_null() || (value.is_array() && value.empty())) continue;
        if (value.is_object()) throw CLI::ConversionError("config key '" + key + "' holds an object");
        if (value.is_array()) {
            for (const auto& v : value) opt->add_result(scalar_text(v));
        } else {
            opt->add_result(scalar_text(value));
        }
        opt->run_callback();
    }
}

nlohmann::json Command::resolved() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, get] : echo_) j[name] = get();
    return j;
}

}  // namespace idphase::cli
