#include "clearvoice/cli/manifest.hpp"

#include <set>

#include "json.hpp"

#include "clearvoice/error.hpp"
#include "clearvoice/gain.hpp"

namespace clearvoice::cli {

namespace {

using json = nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& raw) {
    std::filesystem::path p(raw);
    return p.is_absolute() ? p : base / p;
}

} // namespace

BatchManifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(Errc::bad_config, std::string("manifest: ") + e.what());
    }
    if (!doc.is_object()) {
        throw Error(Errc::bad_config, "manifest: document must be a JSON object");
    }

    BatchManifest manifest;

    if (doc.contains("defaults")) {
        const auto& defaults = doc["defaults"];
        if (!defaults.is_object()) {
            throw Error(Errc::bad_config, "manifest: \"defaults\" must be an object");
        }
        if (defaults.contains("normalize")) {
            if (!defaults["normalize"].is_boolean()) {
                throw Error(Errc::bad_config, "manifest: defaults.normalize must be a boolean");
            }
            manifest.policy.enabled = defaults["normalize"].get<bool>();
        }
        if (defaults.contains("target_peak_db")) {
            if (!defaults["target_peak_db"].is_number()) {
                throw Error(Errc::bad_config, "manifest: defaults.target_peak_db must be a number");
            }
            double db = defaults["target_peak_db"].get<double>();
            if (db > 0.0) {
                throw Error(Errc::bad_config, "manifest: defaults.target_peak_db must be <= 0");
            }
            manifest.policy.target_peak = db_to_gain(db);
        }
        if (defaults.contains("format")) {
            if (!defaults["format"].is_string()) {
                throw Error(Errc::bad_config, "manifest: defaults.format must be a string");
            }
            auto format = format_from_name(defaults["format"].get<std::string>());
            if (!format) {
                throw Error(Errc::bad_config,
                            "manifest: unknown defaults.format \"" +
                                defaults["format"].get<std::string>() +
                                "\" (use pcm16, pcm24, pcm32, float32 or float64)");
            }
            manifest.output_format = *format;
        }
    }
    manifest.policy.validate();

    if (!doc.contains("entries") || !doc["entries"].is_array()) {
        throw Error(Errc::bad_config, "manifest: missing array field \"entries\"");
    }

    std::set<std::filesystem::path> outputs;
    std::size_t index = 0;
    for (const auto& node : doc["entries"]) {
        const std::string where = "manifest entry " + std::to_string(index);
        if (!node.is_object()) {
            throw Error(Errc::bad_config, where + ": must be an object");
        }
        ManifestEntry entry;
        for (const char* key : {"input", "output"}) {
            if (!node.contains(key) || !node[key].is_string() ||
                node[key].get<std::string>().empty()) {
                throw Error(Errc::bad_config,
                            where + ": missing string field \"" + std::string(key) + "\"");
            }
        }
        entry.input = resolve(base_dir, node["input"].get<std::string>());
        entry.output = resolve(base_dir, node["output"].get<std::string>());
        if (entry.input == entry.output) {
            throw Error(Errc::bad_config, where + ": output path equals input path");
        }
        if (!outputs.insert(entry.output).second) {
            throw Error(Errc::bad_config,
                        where + ": duplicate output path " + entry.output.string());
        }

        if (node.contains("preset")) {
            if (!node["preset"].is_string()) {
                throw Error(Errc::bad_config, where + ": \"preset\" must be a string");
            }
            entry.preset = node["preset"].get<std::string>();
        }
        if (node.contains("matrix")) {
            if (!node["matrix"].is_string()) {
                throw Error(Errc::bad_config, where + ": \"matrix\" must be a string");
            }
            entry.matrix_path = resolve(base_dir, node["matrix"].get<std::string>());
        }
        if (entry.preset && entry.matrix_path) {
            throw Error(Errc::bad_config, where + ": give either \"preset\" or \"matrix\", not both");
        }

        if (node.contains("excluded")) {
            if (!node["excluded"].is_boolean()) {
                throw Error(Errc::bad_config, where + ": \"excluded\" must be a boolean");
            }
            entry.excluded = node["excluded"].get<bool>();
        }
        if (node.contains("exclusion_reason")) {
            if (!node["exclusion_reason"].is_string()) {
                throw Error(Errc::bad_config, where + ": \"exclusion_reason\" must be a string");
            }
            entry.exclusion_reason = node["exclusion_reason"].get<std::string>();
        }

        if (!entry.excluded && !entry.preset && !entry.matrix_path) {
            throw Error(Errc::bad_config, where + ": needs a \"preset\" or a \"matrix\"");
        }
        manifest.entries.push_back(std::move(entry));
        ++index;
    }
    return manifest;
}

} // namespace clearvoice::cli
