#include "clearvoice/audio_clip.hpp"

#include <string>

#include "clearvoice/error.hpp"

namespace clearvoice {

AudioClip::AudioClip(ChannelLayout layout, std::uint32_t sample_rate, std::size_t frame_count)
    : layout_(layout), sample_rate_(sample_rate), frame_count_(frame_count),
      channels_(layout.channel_count(), std::vector<double>(frame_count, 0.0)) {
    if (sample_rate == 0) {
        throw Error(Errc::invalid_argument, "sample rate must be positive");
    }
}

AudioClip::AudioClip(ChannelLayout layout, std::uint32_t sample_rate,
                     std::vector<std::vector<double>> channels)
    : layout_(layout), sample_rate_(sample_rate), frame_count_(0),
      channels_(std::move(channels)) {
    if (sample_rate == 0) {
        throw Error(Errc::invalid_argument, "sample rate must be positive");
    }
    if (channels_.size() != layout.channel_count()) {
        throw Error(Errc::layout_mismatch,
                    "got " + std::to_string(channels_.size()) + " channels for layout " +
                        std::string(layout.name()));
    }
    frame_count_ = channels_.empty() ? 0 : channels_.front().size();
    for (const auto& ch : channels_) {
        if (ch.size() != frame_count_) {
            throw Error(Errc::invalid_argument, "channels have unequal lengths");
        }
    }
}

double AudioClip::duration_seconds() const {
    return static_cast<double>(frame_count_) / static_cast<double>(sample_rate_);
}

std::span<const double> AudioClip::channel(std::size_t index) const {
    return channels_.at(index);
}

std::span<double> AudioClip::channel(std::size_t index) {
    return channels_.at(index);
}

std::span<const double> AudioClip::channel(Channel c) const {
    auto index = layout_.index_of(c);
    if (!index) {
        throw Error(Errc::layout_mismatch, "layout " + std::string(layout_.name()) +
                                               " has no " + std::string(channel_name(c)) +
                                               " channel");
    }
    return channels_[*index];
}

std::span<double> AudioClip::channel(Channel c) {
    auto index = layout_.index_of(c);
    if (!index) {
        throw Error(Errc::layout_mismatch, "layout " + std::string(layout_.name()) +
                                               " has no " + std::string(channel_name(c)) +
                                               " channel");
    }
    return channels_[*index];
}

bool operator==(const AudioClip& a, const AudioClip& b) {
    return a.layout_ == b.layout_ && a.sample_rate_ == b.sample_rate_ &&
           a.channels_ == b.channels_;
}

} // namespace clearvoice
