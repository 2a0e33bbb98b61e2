#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "clearvoice/meter.hpp"
#include "clearvoice/mix.hpp"
#include "clearvoice/wav.hpp"

namespace clearvoice::cli {

// All emitted JSON uses ordered_json so key order is fixed and reports are
// diff-stable. Non-finite meter values serialize as null (JSON has no
// infinity); the README documents the convention.
using ojson = nlohmann::ordered_json;

ojson json_number_or_null(double value);
ojson meter_set_json(const MeterSet& meters);

// Fixed block naming the measurement conventions (dBFS reference, sample
// peak); embedded in every report so numbers are self-describing.
ojson conventions_json();

// Describes a parsed input file: path, format, layout, duration, recorded
// channel mask and reader warnings.
ojson wav_file_json(const std::string& path, const WavFile& wav);

ojson mix_report_json(const std::string& input_path, const WavFile& input,
                      const std::string& output_path, SampleFormat output_format,
                      const NormalizationPolicy& policy, const AudioClip& output,
                      const MixReport& report);

} // namespace clearvoice::cli
