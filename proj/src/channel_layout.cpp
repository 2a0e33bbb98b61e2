#include "clearvoice/channel_layout.hpp"

#include <array>
#include <string>

#include "clearvoice/error.hpp"

namespace clearvoice {

namespace {

constexpr std::array<Channel, 2> kStereo20 = {Channel::L, Channel::R};
constexpr std::array<Channel, 3> kSurround30 = {Channel::L, Channel::R, Channel::C};
constexpr std::array<Channel, 6> kSurround51 = {Channel::L,   Channel::R,  Channel::C,
                                                Channel::LFE, Channel::Ls, Channel::Rs};
constexpr std::array<Channel, 8> kSurround51Plus2 = {
    Channel::L,  Channel::R,  Channel::C,          Channel::LFE,
    Channel::Ls, Channel::Rs, Channel::StereoLeft, Channel::StereoRight};

} // namespace

std::string_view channel_name(Channel c) {
    switch (c) {
    case Channel::L: return "L";
    case Channel::R: return "R";
    case Channel::C: return "C";
    case Channel::LFE: return "LFE";
    case Channel::Ls: return "Ls";
    case Channel::Rs: return "Rs";
    case Channel::StereoLeft: return "StereoLeft";
    case Channel::StereoRight: return "StereoRight";
    }
    return "?";
}

std::optional<Channel> channel_from_name(std::string_view name) {
    for (Channel c : kSurround51Plus2) {
        if (channel_name(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

std::span<const Channel> ChannelLayout::channels() const {
    switch (kind_) {
    case Kind::stereo20: return kStereo20;
    case Kind::surround30: return kSurround30;
    case Kind::surround51: return kSurround51;
    case Kind::surround51plus2: return kSurround51Plus2;
    }
    return {};
}

std::optional<std::size_t> ChannelLayout::index_of(Channel c) const {
    auto chans = channels();
    for (std::size_t i = 0; i < chans.size(); ++i) {
        if (chans[i] == c) {
            return i;
        }
    }
    return std::nullopt;
}

std::string_view ChannelLayout::name() const {
    switch (kind_) {
    case Kind::stereo20: return "2.0";
    case Kind::surround30: return "3.0";
    case Kind::surround51: return "5.1";
    case Kind::surround51plus2: return "5.1+2";
    }
    return "?";
}

std::optional<ChannelLayout> ChannelLayout::from_channel_count(std::size_t count) {
    switch (count) {
    case 2: return stereo20();
    case 3: return surround30();
    case 6: return surround51();
    case 8: return surround51plus2();
    default: return std::nullopt;
    }
}

std::optional<ChannelLayout> ChannelLayout::from_name(std::string_view name) {
    if (name == "2.0") return stereo20();
    if (name == "3.0") return surround30();
    if (name == "5.1") return surround51();
    if (name == "5.1+2") return surround51plus2();
    return std::nullopt;
}

ChannelLayout infer_layout(std::size_t channel_count, std::optional<ChannelLayout> override) {
    if (override) {
        if (override->channel_count() != channel_count) {
            throw Error(Errc::unsupported_layout,
                        "layout override " + std::string(override->name()) + " has " +
                            std::to_string(override->channel_count()) + " channels, stream has " +
                            std::to_string(channel_count));
        }
        return *override;
    }
    auto layout = ChannelLayout::from_channel_count(channel_count);
    if (!layout) {
        throw Error(Errc::unsupported_layout,
                    "no standard layout for " + std::to_string(channel_count) +
                        " channels (supported: 2, 3, 6, 8)");
    }
    return *layout;
}

} // namespace clearvoice
