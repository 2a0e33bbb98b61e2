#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "clearvoice/channel_layout.hpp"

namespace clearvoice {

// Planar 64-bit float audio at full scale +/-1.0 (1.0 = 0 dBFS). Samples may
// exceed full scale only on unnormalized intermediates, e.g. right after a
// matrix has been applied and before normalization.
class AudioClip {
public:
    // Zero-filled clip.
    AudioClip(ChannelLayout layout, std::uint32_t sample_rate, std::size_t frame_count);

    // Takes ownership of planar channel data. Channel count must match the
    // layout and all channels must have equal length.
    AudioClip(ChannelLayout layout, std::uint32_t sample_rate,
              std::vector<std::vector<double>> channels);

    ChannelLayout layout() const { return layout_; }
    std::uint32_t sample_rate() const { return sample_rate_; }
    std::size_t frame_count() const { return frame_count_; }
    std::size_t channel_count() const { return channels_.size(); }
    double duration_seconds() const;

    std::span<const double> channel(std::size_t index) const;
    std::span<double> channel(std::size_t index);

    // Channel access by identifier; the channel must exist in the layout.
    std::span<const double> channel(Channel c) const;
    std::span<double> channel(Channel c);

    // Value equality, sample for sample.
    friend bool operator==(const AudioClip& a, const AudioClip& b);
    friend bool operator!=(const AudioClip& a, const AudioClip& b) { return !(a == b); }

private:
    ChannelLayout layout_;
    std::uint32_t sample_rate_;
    std::size_t frame_count_;
    std::vector<std::vector<double>> channels_;
};

} // namespace clearvoice
