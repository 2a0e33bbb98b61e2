#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "clearvoice/audio_clip.hpp"
#include "clearvoice/matrix.hpp"
#include "clearvoice/meter.hpp"

namespace clearvoice {

// Peak ceiling for the clip check. target_peak is linear full scale,
// default 1.0 = 0 dBFS.
struct NormalizationPolicy {
    bool enabled = true;
    double target_peak = 1.0;

    static NormalizationPolicy with_target(double target_peak);
    static NormalizationPolicy disabled();
    void validate() const; // requires 0 < target_peak <= 1.0
};

// Provenance of one mix: which matrix ran, what the peaks looked like before
// the clip check, and the single scalar the whole track was scaled by.
struct MixReport {
    std::string matrix_id;
    std::vector<double> pre_norm_peak;     // per output channel, linear
    double normalization_scalar = 1.0;     // 1.0 exactly when no clip risk
    std::vector<double> output_peak;       // per output channel, linear
    MeterSet metrics;                      // measured on the final output
};

// out[o][t] = sum_i m[o][i] * in[i][t], accumulated in input-channel order
// so results are bit-reproducible. Output may exceed full scale.
AudioClip apply_matrix(const AudioClip& clip, const DownmixMatrix& m);

// Largest absolute sample per channel; zeros for an empty clip.
std::vector<double> peak_scan(const AudioClip& clip);

struct NormalizeResult {
    AudioClip clip;
    double scalar; // 1.0 when nothing was done
};

// The clip check: if the global sample peak exceeds the target, every sample
// of every channel is scaled by one global scalar target/peak, preserving
// inter-channel balance. Otherwise the clip passes through untouched.
NormalizeResult normalize_by_peak(AudioClip clip, const NormalizationPolicy& policy);

struct DownmixResult {
    AudioClip clip;
    MixReport report;
};

// Throws unsupported_input unless the clip has at least three channels; the
// conversion handles neither mono-to-mono nor stereo-to-stereo.
void require_multichannel(const AudioClip& clip);

// Two-pass enhancement pipeline: apply_matrix, peak scan, then the clip
// check. Mono cannot be represented at all and stereo input is rejected
// here: the conversion only handles multichannel sources.
DownmixResult downmix(const AudioClip& clip, const DownmixMatrix& m,
                      const NormalizationPolicy& policy);

} // namespace clearvoice
