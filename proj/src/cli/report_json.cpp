#include "clearvoice/cli/report_json.hpp"

#include <cmath>

namespace clearvoice::cli {

ojson json_number_or_null(double value) {
    if (!std::isfinite(value)) {
        return nullptr;
    }
    return value;
}

namespace {

ojson dbfs_array(const std::vector<double>& values) {
    ojson arr = ojson::array();
    for (double v : values) {
        arr.push_back(json_number_or_null(v));
    }
    return arr;
}

ojson channel_names_json(ChannelLayout layout) {
    ojson names = ojson::array();
    for (Channel c : layout.channels()) {
        names.push_back(std::string(channel_name(c)));
    }
    return names;
}

} // namespace

ojson meter_set_json(const MeterSet& meters) {
    ojson doc;
    doc["sample_peak_dbfs"] = dbfs_array(meters.sample_peak_dbfs);
    doc["rms_dbfs"] = dbfs_array(meters.rms_dbfs);
    doc["speech_background_ratio_db"] = meters.speech_background_ratio_db
                                            ? json_number_or_null(*meters.speech_background_ratio_db)
                                            : ojson(nullptr);
    return doc;
}

ojson conventions_json() {
    ojson doc;
    doc["dbfs_reference"] = "amplitude: a full-scale sine reads -3.01 dBFS RMS";
    doc["peak"] = "sample peak, not inter-sample true peak";
    doc["silence"] = "silent meters serialize as null";
    return doc;
}

ojson wav_file_json(const std::string& path, const WavFile& wav) {
    ojson doc;
    doc["path"] = path;
    doc["format"] = std::string(format_name(wav.format));
    doc["layout"] = std::string(wav.clip.layout().name());
    doc["channels"] = channel_names_json(wav.clip.layout());
    doc["sample_rate"] = wav.clip.sample_rate();
    doc["frames"] = wav.clip.frame_count();
    doc["duration_s"] = wav.clip.duration_seconds();
    doc["channel_mask"] = wav.channel_mask ? ojson(*wav.channel_mask) : ojson(nullptr);
    doc["warnings"] = wav.warnings;
    return doc;
}

ojson mix_report_json(const std::string& input_path, const WavFile& input,
                      const std::string& output_path, SampleFormat output_format,
                      const NormalizationPolicy& policy, const AudioClip& output,
                      const MixReport& report) {
    ojson doc;
    doc["schema"] = 1;
    doc["matrix_id"] = report.matrix_id;
    doc["input"] = wav_file_json(input_path, input);

    ojson out;
    out["path"] = output_path;
    out["format"] = std::string(format_name(output_format));
    out["layout"] = std::string(output.layout().name());
    out["channels"] = channel_names_json(output.layout());
    out["sample_rate"] = output.sample_rate();
    out["frames"] = output.frame_count();
    doc["output"] = std::move(out);

    ojson norm;
    norm["enabled"] = policy.enabled;
    norm["target_peak"] = policy.target_peak;
    norm["scalar"] = report.normalization_scalar;
    doc["normalization"] = std::move(norm);

    doc["pre_norm_peak"] = report.pre_norm_peak;
    doc["output_peak"] = report.output_peak;
    doc["metrics"] = meter_set_json(report.metrics);
    doc["conventions"] = conventions_json();
    return doc;
}

} // namespace clearvoice::cli
