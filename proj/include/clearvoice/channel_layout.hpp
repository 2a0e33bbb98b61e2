#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace clearvoice {

enum class Channel {
    L,
    R,
    C,
    LFE,
    Ls,
    Rs,
    StereoLeft,
    StereoRight,
};

std::string_view channel_name(Channel c);
std::optional<Channel> channel_from_name(std::string_view name);

// The four standard layouts the pipeline accepts. Channel order is fixed:
//   2.0   -> L R
//   3.0   -> L R C
//   5.1   -> L R C LFE Ls Rs
//   5.1+2 -> L R C LFE Ls Rs StereoLeft StereoRight
// Arbitrary layouts are not representable; anything that is not one of
// these is rejected when the file is read.
class ChannelLayout {
public:
    enum class Kind { stereo20, surround30, surround51, surround51plus2 };

    constexpr explicit ChannelLayout(Kind kind) : kind_(kind) {}

    static constexpr ChannelLayout stereo20() { return ChannelLayout(Kind::stereo20); }
    static constexpr ChannelLayout surround30() { return ChannelLayout(Kind::surround30); }
    static constexpr ChannelLayout surround51() { return ChannelLayout(Kind::surround51); }
    static constexpr ChannelLayout surround51plus2() { return ChannelLayout(Kind::surround51plus2); }

    Kind kind() const { return kind_; }
    std::span<const Channel> channels() const;
    std::size_t channel_count() const { return channels().size(); }

    bool has(Channel c) const { return index_of(c).has_value(); }
    std::optional<std::size_t> index_of(Channel c) const;

    std::string_view name() const; // "2.0", "3.0", "5.1", "5.1+2"

    static std::optional<ChannelLayout> from_channel_count(std::size_t count);
    static std::optional<ChannelLayout> from_name(std::string_view name);

    friend bool operator==(ChannelLayout a, ChannelLayout b) { return a.kind_ == b.kind_; }
    friend bool operator!=(ChannelLayout a, ChannelLayout b) { return !(a == b); }

private:
    Kind kind_;
};

// Maps a channel count to its canonical layout. Counts without one
// (1, 4, 5, 7, >8) throw unless the caller supplies an override, which
// must itself match the count.
ChannelLayout infer_layout(std::size_t channel_count,
                           std::optional<ChannelLayout> override = std::nullopt);

} // namespace clearvoice
