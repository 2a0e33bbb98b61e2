#include "clearvoice/cli/commands.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "clearvoice/cli/manifest.hpp"
#include "clearvoice/cli/report_json.hpp"
#include "clearvoice/cli/signal_spec.hpp"
#include "clearvoice/gain.hpp"
#include "clearvoice/matrix.hpp"
#include "clearvoice/meter.hpp"
#include "clearvoice/mix.hpp"
#include "clearvoice/wav.hpp"

namespace clearvoice::cli {

namespace fs = std::filesystem;

int exit_code_for(Errc code) {
    switch (code) {
    case Errc::malformed_riff:
    case Errc::truncated_data:
    case Errc::bad_config:
    case Errc::invalid_argument:
    case Errc::io_failure:
        return 2;
    default:
        return 1;
    }
}

namespace {

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io_failure, "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in) {
        throw Error(Errc::io_failure, "cannot read " + path.string());
    }
    return std::move(buffer).str();
}

std::string db_text(double db) {
    if (!std::isfinite(db)) {
        return db < 0 ? "-inf" : "+inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", db);
    return buf;
}

std::string num_text(double v, const char* fmt = "%.6g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

bool eligible_for_enhancement(ChannelLayout layout) {
    return layout.channel_count() >= 3;
}

// Builds the mixing matrix an entry or mix invocation asked for: a preset by
// name, or a custom-matrix JSON file checked against the input layout.
DownmixMatrix resolve_matrix(const std::optional<std::string>& preset,
                             const std::optional<fs::path>& matrix_path,
                             ChannelLayout input_layout) {
    if (preset) {
        auto p = preset_from_name(*preset);
        if (!p) {
            throw Error(Errc::invalid_argument, "unknown preset \"" + *preset +
                                                    "\" (use es-stereo, ebu-stereo or es-51)");
        }
        return preset_matrix(*p, input_layout);
    }
    DownmixMatrix m = matrix_from_json(read_text_file(*matrix_path));
    if (m.input_layout() != input_layout) {
        throw Error(Errc::layout_mismatch, "matrix " + matrix_path->string() + " expects " +
                                               std::string(m.input_layout().name()) +
                                               " input but the file is " +
                                               std::string(input_layout.name()));
    }
    return m;
}

// ---------------------------------------------------------------- info ----

int cmd_info(const std::string& input, bool json_mode, std::ostream& out) {
    WavFile wav = read_wav_file(input);
    const AudioClip& clip = wav.clip;
    MeterSet meters = measure(clip);

    std::vector<std::string> warnings = wav.warnings;
    if (!eligible_for_enhancement(clip.layout())) {
        warnings.push_back(
            "not eligible for Enhanced Speech: conversion requires multichannel audio "
            "(3.0, 5.1 or 5.1+2)");
    }

    if (json_mode) {
        ojson doc;
        doc["schema"] = 1;
        doc["path"] = input;
        doc["format"] = std::string(format_name(wav.format));
        doc["format_description"] = std::string(format_description(wav.format));
        doc["channels"] = clip.channel_count();
        doc["layout"] = std::string(clip.layout().name());
        ojson names = ojson::array();
        for (Channel c : clip.layout().channels()) {
            names.push_back(std::string(channel_name(c)));
        }
        doc["channel_names"] = std::move(names);
        doc["sample_rate"] = clip.sample_rate();
        doc["frames"] = clip.frame_count();
        doc["duration_s"] = clip.duration_seconds();
        doc["channel_mask"] = wav.channel_mask ? ojson(*wav.channel_mask) : ojson(nullptr);
        doc["enhanced_speech_eligible"] = eligible_for_enhancement(clip.layout());
        doc["metrics"] = meter_set_json(meters);
        doc["warnings"] = warnings;
        out << doc.dump(2) << "\n";
        return 0;
    }

    out << "file: " << input << "\n";
    out << "format: " << format_name(wav.format) << " (" << format_description(wav.format)
        << ")\n";
    out << "sample_rate: " << clip.sample_rate() << " Hz\n";
    out << "channels: " << clip.channel_count() << "\n";
    out << "layout: " << clip.layout().name() << " (";
    auto channels = clip.layout().channels();
    for (std::size_t i = 0; i < channels.size(); ++i) {
        out << (i ? " " : "") << channel_name(channels[i]);
    }
    out << ")\n";
    out << "frames: " << clip.frame_count() << "\n";
    out << "duration: " << num_text(clip.duration_seconds(), "%.3f") << " s\n";
    out << "levels:\n";
    for (std::size_t c = 0; c < clip.channel_count(); ++c) {
        char line[96];
        std::snprintf(line, sizeof line, "  %-11s  peak %8s dBFS   rms %8s dBFS\n",
                      std::string(channel_name(channels[c])).c_str(),
                      db_text(meters.sample_peak_dbfs[c]).c_str(),
                      db_text(meters.rms_dbfs[c]).c_str());
        out << line;
    }
    if (meters.speech_background_ratio_db) {
        out << "speech_background_ratio: " << db_text(*meters.speech_background_ratio_db)
            << " dB\n";
    }
    for (const auto& w : warnings) {
        out << "warning: " << w << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- mix ----

struct MixOptions {
    std::string input;
    std::string output;
    std::optional<std::string> preset;
    std::optional<fs::path> matrix_path;
    double target_peak_db = 0.0;
    bool no_normalize = false;
    std::string format_name = "pcm24";
    std::optional<fs::path> report_path;
};

int cmd_mix(const MixOptions& options, std::ostream& out, std::ostream& err) {
    auto format = format_from_name(options.format_name);
    if (!format) {
        throw Error(Errc::invalid_argument,
                    "unknown format \"" + options.format_name +
                        "\" (use pcm16, pcm24, pcm32, float32 or float64)");
    }
    if (options.target_peak_db > 0.0) {
        throw Error(Errc::invalid_argument, "--target-peak must be <= 0 dBFS");
    }
    NormalizationPolicy policy = options.no_normalize
                                     ? NormalizationPolicy::disabled()
                                     : NormalizationPolicy::with_target(
                                           db_to_gain(options.target_peak_db));

    WavFile input = read_wav_file(options.input);
    for (const auto& w : input.warnings) {
        err << "warning: " << w << "\n";
    }
    require_multichannel(input.clip);

    DownmixMatrix matrix =
        resolve_matrix(options.preset, options.matrix_path, input.clip.layout());
    DownmixResult result = downmix(input.clip, matrix, policy);
    write_wav_file(options.output, result.clip, *format);

    if (options.report_path) {
        ojson report = mix_report_json(options.input, input, options.output, *format, policy,
                                       result.clip, result.report);
        std::ofstream report_out(*options.report_path, std::ios::trunc);
        if (!report_out) {
            throw Error(Errc::io_failure,
                        "cannot open " + options.report_path->string() + " for writing");
        }
        report_out << report.dump(2) << "\n";
    }

    out << "wrote " << options.output << " (" << result.clip.layout().name() << ", "
        << format_name(*format) << ", " << result.clip.frame_count() << " frames)\n";
    double max_pre = 0.0;
    for (double p : result.report.pre_norm_peak) {
        max_pre = std::max(max_pre, p);
    }
    out << "matrix " << result.report.matrix_id << ", pre-normalization peak "
        << num_text(max_pre) << ", scalar " << num_text(result.report.normalization_scalar)
        << "\n";
    return 0;
}

// --------------------------------------------------------------- batch ----

struct EntryOutcome {
    enum class Status { done, skipped, failed };
    Status status = Status::failed;
    std::string matrix_id;
    double scalar = 1.0;
    std::string error_category;
    std::string error_message;
};

EntryOutcome process_entry(const ManifestEntry& entry, const BatchManifest& manifest) {
    EntryOutcome outcome;
    if (entry.excluded) {
        outcome.status = EntryOutcome::Status::skipped;
        return outcome;
    }
    try {
        WavFile input = read_wav_file(entry.input);
        require_multichannel(input.clip);
        DownmixMatrix matrix =
            resolve_matrix(entry.preset, entry.matrix_path, input.clip.layout());
        DownmixResult result = downmix(input.clip, matrix, manifest.policy);
        write_wav_file(entry.output, result.clip, manifest.output_format);
        outcome.status = EntryOutcome::Status::done;
        outcome.matrix_id = result.report.matrix_id;
        outcome.scalar = result.report.normalization_scalar;
    } catch (const Error& e) {
        outcome.status = EntryOutcome::Status::failed;
        outcome.error_category = std::string(errc_name(e.code()));
        outcome.error_message = e.what();
    } catch (const std::exception& e) {
        outcome.status = EntryOutcome::Status::failed;
        outcome.error_category = "internal";
        outcome.error_message = e.what();
    }
    return outcome;
}

int cmd_batch(const std::string& manifest_path, int jobs, std::ostream& out) {
    fs::path path(manifest_path);
    BatchManifest manifest = parse_manifest(read_text_file(path), path.parent_path());

    std::vector<EntryOutcome> outcomes(manifest.entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= manifest.entries.size()) {
                return;
            }
            outcomes[i] = process_entry(manifest.entries[i], manifest);
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
        for (auto& thread : pool) {
            thread.join();
        }
    }

    // The summary is assembled after all entries complete, in manifest order,
    // so it is identical for any job count.
    std::size_t done = 0;
    std::size_t skipped = 0;
    std::size_t failed = 0;
    ojson entries = ojson::array();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const ManifestEntry& entry = manifest.entries[i];
        const EntryOutcome& outcome = outcomes[i];
        ojson node;
        node["input"] = entry.input.string();
        node["output"] = entry.output.string();
        switch (outcome.status) {
        case EntryOutcome::Status::done:
            ++done;
            node["status"] = "done";
            node["matrix_id"] = outcome.matrix_id;
            node["normalization_scalar"] = outcome.scalar;
            break;
        case EntryOutcome::Status::skipped:
            ++skipped;
            node["status"] = "skipped";
            node["exclusion_reason"] =
                entry.exclusion_reason ? ojson(*entry.exclusion_reason) : ojson(nullptr);
            break;
        case EntryOutcome::Status::failed:
            ++failed;
            node["status"] = "failed";
            node["error"] = {{"category", outcome.error_category},
                             {"message", outcome.error_message}};
            break;
        }
        entries.push_back(std::move(node));
    }

    ojson summary;
    summary["schema"] = 1;
    summary["done"] = done;
    summary["skipped"] = skipped;
    summary["failed"] = failed;
    summary["entries"] = std::move(entries);
    out << summary.dump(2) << "\n";
    return failed == 0 ? 0 : 1;
}

// ----------------------------------------------------------------- gen ----

int cmd_gen(const std::string& spec_path, const std::string& output, std::ostream& out) {
    TestSignalSpec spec = parse_signal_spec(read_text_file(spec_path));
    AudioClip clip = render_signal(spec);
    // Generated reference signals are exact doubles; keep them that way.
    write_wav_file(output, clip, SampleFormat::float64);
    out << "wrote " << output << " (" << clip.layout().name() << ", float64, "
        << clip.frame_count() << " frames, " << clip.sample_rate() << " Hz)\n";
    return 0;
}

// ------------------------------------------------------------- analyze ----

fs::path envelope_path_for(const fs::path& base, std::size_t file_index, std::size_t file_count) {
    if (file_count == 1) {
        return base;
    }
    fs::path stem = base.stem();
    stem += (file_index == 0 ? "_a" : "_b");
    stem += base.extension();
    fs::path result = base;
    result.replace_filename(stem);
    return result;
}

struct AnalyzeOptions {
    std::vector<std::string> inputs; // one or two files
    std::optional<fs::path> envelope_path;
    std::size_t bins = 0; // 0 = min(512, frame_count)
};

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out) {
    std::vector<WavFile> files;
    for (const auto& input : options.inputs) {
        files.push_back(read_wav_file(input));
    }

    if (files.size() == 2) {
        const AudioClip& a = files[0].clip;
        const AudioClip& b = files[1].clip;
        if (a.sample_rate() != b.sample_rate() || a.frame_count() != b.frame_count()) {
            throw Error(Errc::unsupported_input,
                        "two-file analysis requires equal duration and sample rate");
        }
        if (a.layout() != b.layout()) {
            throw Error(Errc::unsupported_input,
                        "two-file analysis requires matching channel layouts, got " +
                            std::string(a.layout().name()) + " and " +
                            std::string(b.layout().name()));
        }
    }

    ojson doc;
    doc["schema"] = 1;
    ojson file_nodes = ojson::array();
    std::vector<MeterSet> meters;
    for (std::size_t i = 0; i < files.size(); ++i) {
        meters.push_back(measure(files[i].clip));
        ojson node = wav_file_json(options.inputs[i], files[i]);
        node["metrics"] = meter_set_json(meters.back());
        file_nodes.push_back(std::move(node));
    }
    doc["files"] = std::move(file_nodes);

    if (files.size() == 2) {
        auto delta_array = [](const std::vector<double>& a, const std::vector<double>& b) {
            ojson arr = ojson::array();
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (std::isfinite(a[i]) && std::isfinite(b[i])) {
                    arr.push_back(b[i] - a[i]);
                } else {
                    arr.push_back(nullptr);
                }
            }
            return arr;
        };
        ojson delta;
        delta["sample_peak_dbfs"] =
            delta_array(meters[0].sample_peak_dbfs, meters[1].sample_peak_dbfs);
        delta["rms_dbfs"] = delta_array(meters[0].rms_dbfs, meters[1].rms_dbfs);
        doc["delta"] = std::move(delta);
    }

    if (options.envelope_path) {
        ojson envelope_info;
        ojson paths = ojson::array();
        std::size_t bins_used = 0;
        for (std::size_t i = 0; i < files.size(); ++i) {
            const AudioClip& clip = files[i].clip;
            std::size_t bins = options.bins;
            if (bins == 0) {
                bins = std::min<std::size_t>(512, clip.frame_count());
                if (bins == 0) {
                    throw Error(Errc::invalid_argument, "cannot compute an envelope of an empty clip");
                }
            }
            auto envelope = waveform_envelope(clip, bins);
            fs::path csv_path = envelope_path_for(*options.envelope_path, i, files.size());
            std::ofstream csv(csv_path, std::ios::trunc | std::ios::binary);
            if (!csv) {
                throw Error(Errc::io_failure, "cannot open " + csv_path.string() + " for writing");
            }
            csv << envelope_to_csv(envelope);
            paths.push_back(csv_path.string());
            bins_used = bins;
        }
        envelope_info["bins"] = bins_used;
        envelope_info["paths"] = std::move(paths);
        doc["envelope"] = std::move(envelope_info);
    }
    doc["conventions"] = conventions_json();

    out << doc.dump(2) << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Enhanced Speech downmix toolkit: converts multichannel broadcast audio "
                 "into dialogue-enhanced mixes and verifies them"};
    app.name("clearvoice");
    app.require_subcommand(1);

    // info
    std::string info_input;
    bool info_json = false;
    CLI::App* info = app.add_subcommand("info", "Describe a WAV file: format, layout, levels");
    info->add_option("input", info_input, "input WAV file")->required();
    info->add_flag("--json", info_json, "emit JSON instead of text");

    // mix
    MixOptions mix_options;
    std::string mix_preset;
    std::string mix_matrix;
    std::string mix_report;
    CLI::App* mix = app.add_subcommand("mix", "Downmix one file with a preset or custom matrix");
    mix->add_option("input", mix_options.input, "input WAV file (3.0, 5.1 or 5.1+2)")->required();
    mix->add_option("output", mix_options.output, "output WAV file")->required();
    CLI::Option* preset_opt =
        mix->add_option("--preset", mix_preset, "matrix preset: es-stereo, ebu-stereo or es-51");
    CLI::Option* matrix_opt = mix->add_option("--matrix", mix_matrix, "custom matrix JSON file");
    mix->add_option("--target-peak", mix_options.target_peak_db,
                    "normalization ceiling in dBFS (<= 0, default 0)");
    mix->add_flag("--no-normalize", mix_options.no_normalize,
                  "skip the clip check (output may exceed full scale)");
    mix->add_option("--format", mix_options.format_name,
                    "output sample format (pcm16, pcm24, pcm32, float32, float64)")
        ->default_val("pcm24");
    mix->add_option("--report", mix_report, "write a mix report JSON to this path");

    // batch
    std::string batch_manifest;
    int batch_jobs = 1;
    CLI::App* batch = app.add_subcommand("batch", "Process a manifest of files");
    batch->add_option("manifest", batch_manifest, "manifest JSON file")->required();
    batch->add_option("--jobs", batch_jobs, "parallel workers (default 1)")
        ->envname("CLEARVOICE_JOBS");

    // gen
    std::string gen_spec;
    std::string gen_output;
    CLI::App* gen = app.add_subcommand("gen", "Generate a deterministic test signal");
    gen->add_option("spec", gen_spec, "signal spec JSON file")->required();
    gen->add_option("output", gen_output, "output WAV file")->required();

    // analyze
    AnalyzeOptions analyze_options;
    std::string analyze_envelope;
    CLI::App* analyze =
        app.add_subcommand("analyze", "Meter one file, or compare two mixes of a program");
    analyze->add_option("files", analyze_options.inputs, "one or two WAV files")
        ->required()
        ->expected(1, 2);
    analyze->add_option("--envelope", analyze_envelope,
                        "write waveform envelope CSV(s) to this path");
    analyze->add_option("--bins", analyze_options.bins,
                        "envelope bins (default min(512, frames))");

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("clearvoice");
        for (const auto& a : args) {
            argv.push_back(a.c_str());
        }
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*info) {
            return cmd_info(info_input, info_json, out);
        }
        if (*mix) {
            if (preset_opt->count() + matrix_opt->count() != 1) {
                err << "error: invalid-argument: give exactly one of --preset or --matrix\n";
                return 2;
            }
            if (preset_opt->count()) {
                mix_options.preset = mix_preset;
            }
            if (matrix_opt->count()) {
                mix_options.matrix_path = fs::path(mix_matrix);
            }
            if (!mix_report.empty()) {
                mix_options.report_path = fs::path(mix_report);
            }
            return cmd_mix(mix_options, out, err);
        }
        if (*batch) {
            if (batch_jobs < 1) {
                throw Error(Errc::invalid_argument, "--jobs (or CLEARVOICE_JOBS) must be >= 1");
            }
            return cmd_batch(batch_manifest, batch_jobs, out);
        }
        if (*gen) {
            return cmd_gen(gen_spec, gen_output, out);
        }
        if (*analyze) {
            if (!analyze_envelope.empty()) {
                analyze_options.envelope_path = fs::path(analyze_envelope);
            }
            return cmd_analyze(analyze_options, out);
        }
    } catch (const Error& e) {
        err << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace clearvoice::cli
