#include "clearvoice/mix.hpp"

#include <cmath>
#include <string>

#include "clearvoice/error.hpp"

namespace clearvoice {

NormalizationPolicy NormalizationPolicy::with_target(double target_peak) {
    NormalizationPolicy p{true, target_peak};
    p.validate();
    return p;
}

NormalizationPolicy NormalizationPolicy::disabled() {
    return NormalizationPolicy{false, 1.0};
}

void NormalizationPolicy::validate() const {
    if (!(target_peak > 0.0) || target_peak > 1.0) {
        throw Error(Errc::invalid_argument, "normalization target must be in (0, 1], got " +
                                                std::to_string(target_peak));
    }
}

AudioClip apply_matrix(const AudioClip& clip, const DownmixMatrix& m) {
    if (clip.layout() != m.input_layout()) {
        throw Error(Errc::layout_mismatch, "clip layout " + std::string(clip.layout().name()) +
                                               " does not match matrix input layout " +
                                               std::string(m.input_layout().name()));
    }

    const std::size_t frames = clip.frame_count();
    const std::size_t in_count = clip.channel_count();
    AudioClip out(m.output_layout(), clip.sample_rate(), frames);

    for (std::size_t o = 0; o < out.channel_count(); ++o) {
        auto dst = out.channel(o);
        // Accumulate in input-channel order; keeping the order fixed makes the
        // output bit-reproducible and frame-independent.
        for (std::size_t t = 0; t < frames; ++t) {
            double acc = 0.0;
            for (std::size_t i = 0; i < in_count; ++i) {
                acc += m.at(o, i) * clip.channel(i)[t];
            }
            dst[t] = acc;
        }
    }
    return out;
}

std::vector<double> peak_scan(const AudioClip& clip) {
    std::vector<double> peaks(clip.channel_count(), 0.0);
    for (std::size_t c = 0; c < clip.channel_count(); ++c) {
        double peak = 0.0;
        for (double x : clip.channel(c)) {
            peak = std::max(peak, std::abs(x));
        }
        peaks[c] = peak;
    }
    return peaks;
}

NormalizeResult normalize_by_peak(AudioClip clip, const NormalizationPolicy& policy) {
    policy.validate();
    if (!policy.enabled) {
        return {std::move(clip), 1.0};
    }
    double global_peak = 0.0;
    for (double p : peak_scan(clip)) {
        global_peak = std::max(global_peak, p);
    }
    if (global_peak <= policy.target_peak) {
        return {std::move(clip), 1.0};
    }
    const double scalar = policy.target_peak / global_peak;
    for (std::size_t c = 0; c < clip.channel_count(); ++c) {
        for (double& x : clip.channel(c)) {
            x *= scalar;
        }
    }
    return {std::move(clip), scalar};
}

void require_multichannel(const AudioClip& clip) {
    if (clip.channel_count() < 3) {
        throw Error(Errc::unsupported_input,
                    "the conversion only handles multichannel audio; " +
                        std::string(clip.layout().name()) +
                        " input cannot be processed (no mono-to-mono or stereo-to-stereo)");
    }
}

DownmixResult downmix(const AudioClip& clip, const DownmixMatrix& m,
                      const NormalizationPolicy& policy) {
    require_multichannel(clip);
    AudioClip mixed = apply_matrix(clip, m);

    MixReport report;
    report.matrix_id = m.id();
    report.pre_norm_peak = peak_scan(mixed);

    auto [normalized, scalar] = normalize_by_peak(std::move(mixed), policy);
    report.normalization_scalar = scalar;
    report.output_peak = peak_scan(normalized);
    report.metrics = measure(normalized);

    return DownmixResult{std::move(normalized), std::move(report)};
}

} // namespace clearvoice
