#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clearvoice/mix.hpp"
#include "clearvoice/sample_format.hpp"

namespace clearvoice::cli {

struct ManifestEntry {
    std::filesystem::path input;
    std::filesystem::path output;
    std::optional<std::string> preset;          // one of preset/matrix_path is set
    std::optional<std::filesystem::path> matrix_path;
    bool excluded = false;                      // skipped but still reported
    std::optional<std::string> exclusion_reason;
};

struct BatchManifest {
    NormalizationPolicy policy;
    SampleFormat output_format = SampleFormat::pcm24;
    std::vector<ManifestEntry> entries;
};

// Parses the batch manifest JSON document; relative paths are resolved
// against base_dir (the manifest's own directory). Rejects duplicate output
// paths and entries whose output equals their input.
BatchManifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir);

} // namespace clearvoice::cli
