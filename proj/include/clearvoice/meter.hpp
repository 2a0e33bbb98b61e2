#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "clearvoice/audio_clip.hpp"

namespace clearvoice {

// Per-channel level measurements. Silent channels report -infinity, never
// NaN. dBFS reference is amplitude: a full-scale sine reads -3.01 dBFS RMS.
struct MeterSet {
    std::vector<double> sample_peak_dbfs;
    std::vector<double> rms_dbfs;
    // Present only for layouts with a center channel. +infinity when the
    // background pool is silent.
    std::optional<double> speech_background_ratio_db;
};

// rms[c] = 20*log10(sqrt(mean(x^2))). Throws on an empty clip.
std::vector<double> rms_per_channel(const AudioClip& clip);

// Center-channel RMS over the pooled background, in dB. The background pool
// is every non-center, non-LFE channel that carries signal (silent channels
// would dilute the pool and say nothing about audible background); pooling
// is the root of the mean of the per-channel mean squares. All-silent
// background yields +infinity.
double speech_background_ratio(const AudioClip& clip);

// Peak + RMS meters, and the speech/background ratio when the layout has a
// center channel.
MeterSet measure(const AudioClip& clip);

struct EnvelopeBin {
    double min;
    double max;
};

// Per-channel min/max over `bins` contiguous near-equal frame ranges (the
// remainder is spread over the leading bins). This is the reduction a
// waveform view draws. envelope[channel][bin].
std::vector<std::vector<EnvelopeBin>> waveform_envelope(const AudioClip& clip,
                                                        std::size_t bins);

// CSV rows "bin_index,ch0_min,ch0_max,ch1_min,ch1_max,..." with no header,
// one row per bin.
std::string envelope_to_csv(const std::vector<std::vector<EnvelopeBin>>& envelope);

} // namespace clearvoice
