#include "clearvoice/meter.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "clearvoice/error.hpp"
#include "clearvoice/gain.hpp"
#include "clearvoice/mix.hpp"

namespace clearvoice {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

double mean_square(std::span<const double> samples) {
    double acc = 0.0;
    for (double x : samples) {
        acc += x * x;
    }
    return acc / static_cast<double>(samples.size());
}

} // namespace

std::vector<double> rms_per_channel(const AudioClip& clip) {
    if (clip.frame_count() == 0) {
        throw Error(Errc::empty_clip, "cannot measure RMS of an empty clip");
    }
    std::vector<double> rms(clip.channel_count());
    for (std::size_t c = 0; c < clip.channel_count(); ++c) {
        rms[c] = gain_to_db(std::sqrt(mean_square(clip.channel(c))));
    }
    return rms;
}

double speech_background_ratio(const AudioClip& clip) {
    if (!clip.layout().has(Channel::C)) {
        throw Error(Errc::layout_mismatch, "layout " + std::string(clip.layout().name()) +
                                               " has no center channel to treat as speech");
    }
    if (clip.frame_count() == 0) {
        throw Error(Errc::empty_clip, "cannot measure an empty clip");
    }

    double speech_ms = mean_square(clip.channel(Channel::C));

    // Background: every non-center, non-LFE channel that actually carries
    // signal. Pool = root of the mean of the per-channel mean squares.
    double pooled = 0.0;
    std::size_t pooled_count = 0;
    auto channels = clip.layout().channels();
    for (std::size_t c = 0; c < channels.size(); ++c) {
        if (channels[c] == Channel::C || channels[c] == Channel::LFE) {
            continue;
        }
        double ms = mean_square(clip.channel(c));
        if (ms > 0.0) {
            pooled += ms;
            ++pooled_count;
        }
    }
    if (pooled_count == 0) {
        return kPosInf;
    }
    double background_ms = pooled / static_cast<double>(pooled_count);
    if (speech_ms == 0.0) {
        return kNegInf;
    }
    return 10.0 * std::log10(speech_ms / background_ms);
}

MeterSet measure(const AudioClip& clip) {
    MeterSet meters;
    if (clip.frame_count() == 0) {
        meters.sample_peak_dbfs.assign(clip.channel_count(), kNegInf);
        meters.rms_dbfs.assign(clip.channel_count(), kNegInf);
        if (clip.layout().has(Channel::C)) {
            meters.speech_background_ratio_db = kPosInf;
        }
        return meters;
    }
    meters.sample_peak_dbfs.reserve(clip.channel_count());
    for (double p : peak_scan(clip)) {
        meters.sample_peak_dbfs.push_back(gain_to_db(p));
    }
    meters.rms_dbfs = rms_per_channel(clip);
    if (clip.layout().has(Channel::C)) {
        meters.speech_background_ratio_db = speech_background_ratio(clip);
    }
    return meters;
}

std::vector<std::vector<EnvelopeBin>> waveform_envelope(const AudioClip& clip, std::size_t bins) {
    if (bins == 0) {
        throw Error(Errc::invalid_argument, "envelope needs at least one bin");
    }
    if (bins > clip.frame_count()) {
        throw Error(Errc::invalid_argument,
                    "envelope bins (" + std::to_string(bins) + ") exceed frame count (" +
                        std::to_string(clip.frame_count()) + ")");
    }

    const std::size_t frames = clip.frame_count();
    const std::size_t base = frames / bins;
    const std::size_t remainder = frames % bins; // spread over the leading bins

    std::vector<std::vector<EnvelopeBin>> envelope(clip.channel_count());
    for (std::size_t c = 0; c < clip.channel_count(); ++c) {
        auto samples = clip.channel(c);
        auto& channel_bins = envelope[c];
        channel_bins.reserve(bins);
        std::size_t start = 0;
        for (std::size_t b = 0; b < bins; ++b) {
            std::size_t len = base + (b < remainder ? 1 : 0);
            EnvelopeBin bin{samples[start], samples[start]};
            for (std::size_t t = start + 1; t < start + len; ++t) {
                bin.min = std::min(bin.min, samples[t]);
                bin.max = std::max(bin.max, samples[t]);
            }
            channel_bins.push_back(bin);
            start += len;
        }
    }
    return envelope;
}

std::string envelope_to_csv(const std::vector<std::vector<EnvelopeBin>>& envelope) {
    std::string csv;
    if (envelope.empty()) {
        return csv;
    }
    const std::size_t bins = envelope.front().size();
    char buf[32];
    for (std::size_t b = 0; b < bins; ++b) {
        csv += std::to_string(b);
        for (const auto& channel_bins : envelope) {
            std::snprintf(buf, sizeof buf, "%.17g", channel_bins[b].min);
            csv += ',';
            csv += buf;
            std::snprintf(buf, sizeof buf, "%.17g", channel_bins[b].max);
            csv += ',';
            csv += buf;
        }
        csv += '\n';
    }
    return csv;
}

} // namespace clearvoice
