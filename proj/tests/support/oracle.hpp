#pragma once

// Naive reference implementations the optimized library paths are checked
// against. Kept deliberately simple and independent: plain per-frame dot
// products and a literal reading of the max-peak rule.

#include <cmath>
#include <utility>

#include "clearvoice/audio_clip.hpp"
#include "clearvoice/matrix.hpp"
#include "clearvoice/mix.hpp"

namespace oracle {

inline clearvoice::AudioClip naive_apply(const clearvoice::AudioClip& clip,
                                         const clearvoice::DownmixMatrix& m) {
    clearvoice::AudioClip out(m.output_layout(), clip.sample_rate(), clip.frame_count());
    for (std::size_t t = 0; t < clip.frame_count(); ++t) {
        for (std::size_t o = 0; o < out.channel_count(); ++o) {
            double acc = 0.0;
            for (std::size_t i = 0; i < clip.channel_count(); ++i) {
                acc += m.at(o, i) * clip.channel(i)[t];
            }
            out.channel(o)[t] = acc;
        }
    }
    return out;
}

struct NaiveDownmix {
    clearvoice::AudioClip clip;
    double scalar;
};

inline NaiveDownmix naive_downmix(const clearvoice::AudioClip& clip,
                                  const clearvoice::DownmixMatrix& m,
                                  const clearvoice::NormalizationPolicy& policy) {
    clearvoice::AudioClip mixed = naive_apply(clip, m);
    double peak = 0.0;
    for (std::size_t c = 0; c < mixed.channel_count(); ++c) {
        for (double x : mixed.channel(c)) {
            peak = std::max(peak, std::abs(x));
        }
    }
    double scalar = 1.0;
    if (policy.enabled && peak > policy.target_peak) {
        scalar = policy.target_peak / peak;
        for (std::size_t c = 0; c < mixed.channel_count(); ++c) {
            for (double& x : mixed.channel(c)) {
                x *= scalar;
            }
        }
    }
    return NaiveDownmix{std::move(mixed), scalar};
}

inline double max_abs_difference(const clearvoice::AudioClip& a, const clearvoice::AudioClip& b) {
    double max_diff = 0.0;
    for (std::size_t c = 0; c < a.channel_count(); ++c) {
        for (std::size_t t = 0; t < a.frame_count(); ++t) {
            max_diff = std::max(max_diff, std::abs(a.channel(c)[t] - b.channel(c)[t]));
        }
    }
    return max_diff;
}

} // namespace oracle
