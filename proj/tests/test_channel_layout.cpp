#include "doctest.h"

#include <vector>

#include "clearvoice/channel_layout.hpp"
#include "clearvoice/error.hpp"

using namespace clearvoice;

TEST_CASE("canonical layouts have the fixed channel orders") {
    auto check_order = [](ChannelLayout layout, std::vector<Channel> expected) {
        auto channels = layout.channels();
        REQUIRE(channels.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(channels[i] == expected[i]);
        }
    };
    check_order(ChannelLayout::stereo20(), {Channel::L, Channel::R});
    check_order(ChannelLayout::surround30(), {Channel::L, Channel::R, Channel::C});
    check_order(ChannelLayout::surround51(), {Channel::L, Channel::R, Channel::C, Channel::LFE,
                                              Channel::Ls, Channel::Rs});
    check_order(ChannelLayout::surround51plus2(),
                {Channel::L, Channel::R, Channel::C, Channel::LFE, Channel::Ls, Channel::Rs,
                 Channel::StereoLeft, Channel::StereoRight});
}

TEST_CASE("infer_layout maps the standard channel counts") {
    CHECK(infer_layout(2) == ChannelLayout::stereo20());
    CHECK(infer_layout(3) == ChannelLayout::surround30());
    CHECK(infer_layout(6) == ChannelLayout::surround51());
    CHECK(infer_layout(8) == ChannelLayout::surround51plus2());
}

TEST_CASE("infer_layout rejects counts without a standard layout") {
    for (std::size_t count : {std::size_t(1), std::size_t(4), std::size_t(5), std::size_t(7),
                              std::size_t(9), std::size_t(16)}) {
        CHECK_THROWS_AS(infer_layout(count), Error);
        try {
            infer_layout(count);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::unsupported_layout);
        }
    }
}

TEST_CASE("infer_layout override must match the channel count") {
    CHECK(infer_layout(6, ChannelLayout::surround51()) == ChannelLayout::surround51());
    CHECK_THROWS_AS(infer_layout(6, ChannelLayout::stereo20()), Error);
    CHECK_THROWS_AS(infer_layout(5, ChannelLayout::surround51()), Error);
}

TEST_CASE("layout names round-trip") {
    for (auto layout : {ChannelLayout::stereo20(), ChannelLayout::surround30(),
                        ChannelLayout::surround51(), ChannelLayout::surround51plus2()}) {
        auto parsed = ChannelLayout::from_name(layout.name());
        REQUIRE(parsed.has_value());
        CHECK(*parsed == layout);
    }
    CHECK(!ChannelLayout::from_name("7.1").has_value());
    CHECK(!ChannelLayout::from_name("").has_value());
}

TEST_CASE("channel names round-trip and index lookup works") {
    for (Channel c : ChannelLayout::surround51plus2().channels()) {
        auto parsed = channel_from_name(channel_name(c));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == c);
    }
    CHECK(!channel_from_name("center").has_value());

    auto surround = ChannelLayout::surround51();
    CHECK(surround.index_of(Channel::C) == 2);
    CHECK(surround.index_of(Channel::Rs) == 5);
    CHECK(!surround.index_of(Channel::StereoLeft).has_value());
    CHECK(!ChannelLayout::stereo20().has(Channel::C));
}
