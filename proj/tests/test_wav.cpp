#include "doctest.h"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <vector>

#include "clearvoice/error.hpp"
#include "clearvoice/wav.hpp"
#include "support/test_util.hpp"

using namespace clearvoice;

namespace {

std::vector<std::byte> bytes_of(const std::vector<std::uint8_t>& raw) {
    std::vector<std::byte> out(raw.size());
    std::memcpy(out.data(), raw.data(), raw.size());
    return out;
}

void push_u16(std::vector<std::uint8_t>& v, std::uint16_t x) {
    v.push_back(x & 0xFF);
    v.push_back(x >> 8 & 0xFF);
}

void push_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    for (int shift = 0; shift < 32; shift += 8) {
        v.push_back(x >> shift & 0xFF);
    }
}

void push_tag(std::vector<std::uint8_t>& v, const char* tag) {
    v.insert(v.end(), tag, tag + 4);
}

// Classic 16-bit PCM stereo file, three frames at 44100 Hz.
std::vector<std::uint8_t> pcm16_stereo_fixture() {
    std::vector<std::uint8_t> v;
    push_tag(v, "RIFF");
    push_u32(v, 4 + 24 + 8 + 12);
    push_tag(v, "WAVE");
    push_tag(v, "fmt ");
    push_u32(v, 16);
    push_u16(v, 0x0001); // PCM
    push_u16(v, 2);
    push_u32(v, 44100);
    push_u32(v, 44100 * 4);
    push_u16(v, 4);
    push_u16(v, 16);
    push_tag(v, "data");
    push_u32(v, 12);
    push_u16(v, 0x8000); // L0 = -32768
    push_u16(v, 0x7FFF); // R0 = 32767
    push_u16(v, 0x0000); // L1 = 0
    push_u16(v, 0x4000); // R1 = 16384
    push_u16(v, 0xC000); // L2 = -16384
    push_u16(v, 0x0000); // R2 = 0
    return v;
}

// Extensible 16-bit PCM, six channels, one frame of zeros.
std::vector<std::uint8_t> extensible_fixture(std::uint32_t mask,
                                             std::uint16_t subformat_tag = 0x0001,
                                             std::uint16_t valid_bits = 16) {
    std::vector<std::uint8_t> v;
    push_tag(v, "RIFF");
    push_u32(v, 4 + (8 + 40) + (8 + 12));
    push_tag(v, "WAVE");
    push_tag(v, "fmt ");
    push_u32(v, 40);
    push_u16(v, 0xFFFE);
    push_u16(v, 6);
    push_u32(v, 48000);
    push_u32(v, 48000 * 12);
    push_u16(v, 12);
    push_u16(v, 16);
    push_u16(v, 22); // cbSize
    push_u16(v, valid_bits);
    push_u32(v, mask);
    push_u32(v, subformat_tag); // GUID Data1
    const std::uint8_t suffix[12] = {0x00, 0x00, 0x10, 0x00, 0x80, 0x00,
                                     0x00, 0xAA, 0x00, 0x38, 0x9B, 0x71};
    v.insert(v.end(), suffix, suffix + 12);
    push_tag(v, "data");
    push_u32(v, 12);
    for (int i = 0; i < 12; ++i) {
        v.push_back(0);
    }
    return v;
}

Errc read_error_code(const std::vector<std::uint8_t>& raw) {
    try {
        read_wav(bytes_of(raw));
    } catch (const Error& e) {
        return e.code();
    }
    throw std::logic_error("expected read_wav to fail");
}

} // namespace

TEST_CASE("16-bit PCM fixture decodes to the expected normalized samples") {
    WavFile wav = read_wav(bytes_of(pcm16_stereo_fixture()));
    CHECK(wav.format == SampleFormat::pcm16);
    CHECK(wav.clip.layout() == ChannelLayout::stereo20());
    CHECK(wav.clip.sample_rate() == 44100);
    REQUIRE(wav.clip.frame_count() == 3);
    CHECK(wav.clip.channel(Channel::L)[0] == -1.0); // -2^15 / 2^15
    CHECK(wav.clip.channel(Channel::R)[0] == 32767.0 / 32768.0);
    CHECK(wav.clip.channel(Channel::L)[1] == 0.0);
    CHECK(wav.clip.channel(Channel::R)[1] == 0.5);
    CHECK(wav.clip.channel(Channel::L)[2] == -0.5);
    CHECK(!wav.channel_mask.has_value());
    CHECK(wav.warnings.empty());
}

TEST_CASE("unknown chunks are skipped, including odd-sized ones with pad bytes") {
    auto fixture = pcm16_stereo_fixture();
    // Splice a 3-byte junk chunk (plus pad) between WAVE and fmt.
    std::vector<std::uint8_t> junk;
    push_tag(junk, "JUNK");
    push_u32(junk, 3);
    junk.insert(junk.end(), {0xDE, 0xAD, 0xBE, 0x00});
    fixture.insert(fixture.begin() + 12, junk.begin(), junk.end());
    WavFile wav = read_wav(bytes_of(fixture));
    CHECK(wav.clip.frame_count() == 3);
    CHECK(wav.clip.channel(Channel::L)[0] == -1.0);
}

TEST_CASE("6-channel 24-bit file reads back as 5.1 at 48 kHz") {
    std::mt19937_64 rng(7);
    AudioClip clip = testutil::random_clip(rng, ChannelLayout::surround51(), 64, 48000, 0.9);
    WavFile wav = read_wav(write_wav(clip, SampleFormat::pcm24));
    CHECK(wav.clip.layout() == ChannelLayout::surround51());
    CHECK(wav.clip.sample_rate() == 48000);
    CHECK(wav.format == SampleFormat::pcm24);
    CHECK(wav.clip.frame_count() == 64);
}

TEST_CASE("float full scale clamps to int16 max") {
    AudioClip clip(ChannelLayout::stereo20(), 48000, 1);
    clip.channel(0)[0] = 1.0;
    clip.channel(1)[0] = -1.0;
    WavFile wav = read_wav(write_wav(clip, SampleFormat::pcm16));
    CHECK(wav.clip.channel(0)[0] == 32767.0 / 32768.0);
    CHECK(wav.clip.channel(1)[0] == -1.0);
}

TEST_CASE("silence writes an all-zero float32 data chunk") {
    AudioClip clip(ChannelLayout::stereo20(), 48000, 16);
    auto bytes = write_wav(clip, SampleFormat::float32);
    // data payload is the trailing 16 frames * 2 ch * 4 bytes
    std::size_t payload = 16 * 2 * 4;
    REQUIRE(bytes.size() > payload);
    for (std::size_t i = bytes.size() - payload; i < bytes.size(); ++i) {
        CHECK(bytes[i] == std::byte{0});
    }
    WavFile wav = read_wav(bytes);
    CHECK(wav.format == SampleFormat::float32);
    for (std::size_t c = 0; c < 2; ++c) {
        for (double x : wav.clip.channel(c)) {
            CHECK(x == 0.0);
        }
    }
}

TEST_CASE("997 Hz sine at -6 dBFS survives 24-bit PCM within one quantization step") {
    const double amplitude = std::pow(10.0, -6.0 / 20.0);
    AudioClip clip(ChannelLayout::stereo20(), 48000, 4800);
    for (std::size_t t = 0; t < clip.frame_count(); ++t) {
        double x = amplitude * std::sin(2.0 * M_PI * 997.0 * static_cast<double>(t) / 48000.0);
        clip.channel(0)[t] = x;
        clip.channel(1)[t] = -x;
    }
    WavFile wav = read_wav(write_wav(clip, SampleFormat::pcm24));
    const double bound = std::ldexp(1.0, -23); // 2^(1-24)
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t t = 0; t < clip.frame_count(); ++t) {
            double original = clip.channel(c)[t];
            double restored = wav.clip.channel(c)[t];
            CHECK(std::abs(restored - original) <= bound);
            // Independent quantizer: round-half-away-from-zero at 2^23.
            double expected = std::round(original * 8388608.0) / 8388608.0;
            CHECK(restored == expected);
        }
    }
}

TEST_CASE("round-trip property: float formats are exact, integer formats within 1 LSB") {
    std::mt19937_64 rng(2026);
    const std::array<ChannelLayout, 4> layouts = {
        ChannelLayout::stereo20(), ChannelLayout::surround30(), ChannelLayout::surround51(),
        ChannelLayout::surround51plus2()};
    for (int iteration = 0; iteration < 200; ++iteration) {
        ChannelLayout layout = layouts[rng() % layouts.size()];
        std::size_t frames = rng() % 100;
        AudioClip clip = testutil::random_clip(rng, layout, frames);

        // float64 carries doubles bit-exactly
        CHECK(read_wav(write_wav(clip, SampleFormat::float64)).clip == clip);

        // float32: exact for float32-representable data
        AudioClip f32clip = clip;
        for (std::size_t c = 0; c < f32clip.channel_count(); ++c) {
            for (double& x : f32clip.channel(c)) {
                x = static_cast<double>(static_cast<float>(x));
            }
        }
        CHECK(read_wav(write_wav(f32clip, SampleFormat::float32)).clip == f32clip);

        for (auto format : {SampleFormat::pcm16, SampleFormat::pcm24, SampleFormat::pcm32}) {
            WavFile wav = read_wav(write_wav(clip, format));
            const double lsb = std::ldexp(1.0, 1 - static_cast<int>(bits_per_sample(format)));
            for (std::size_t c = 0; c < clip.channel_count(); ++c) {
                for (std::size_t t = 0; t < frames; ++t) {
                    CHECK(std::abs(wav.clip.channel(c)[t] - clip.channel(c)[t]) <= lsb);
                }
            }
        }
    }
}

TEST_CASE("integer targets reject samples beyond full scale") {
    AudioClip clip(ChannelLayout::surround30(), 48000, 4);
    clip.channel(Channel::C)[2] = 1.25;
    CHECK_THROWS_AS(write_wav(clip, SampleFormat::pcm24), Error);
    try {
        write_wav(clip, SampleFormat::pcm16);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::out_of_range);
    }
    // float formats accept hot intermediates
    CHECK_NOTHROW(write_wav(clip, SampleFormat::float64));
}

TEST_CASE("empty clips round-trip") {
    AudioClip clip(ChannelLayout::surround51(), 44100, 0);
    WavFile wav = read_wav(write_wav(clip, SampleFormat::pcm16));
    CHECK(wav.clip.frame_count() == 0);
    CHECK(wav.clip.layout() == ChannelLayout::surround51());
}

TEST_CASE("extensible header: mask recorded, count decides the layout") {
    WavFile wav = read_wav(bytes_of(extensible_fixture(0x3F)));
    CHECK(wav.format == SampleFormat::pcm16);
    CHECK(wav.clip.layout() == ChannelLayout::surround51());
    REQUIRE(wav.channel_mask.has_value());
    CHECK(*wav.channel_mask == 0x3F);
    CHECK(wav.warnings.empty());

    // Mask that names two speakers for a six-channel stream: warn, count wins.
    WavFile odd = read_wav(bytes_of(extensible_fixture(0x03)));
    CHECK(odd.clip.layout() == ChannelLayout::surround51());
    REQUIRE(odd.warnings.size() == 1);
    CHECK(odd.warnings[0].find("channel mask") != std::string::npos);
}

TEST_CASE("extensible float subformat resolves like the plain tag") {
    auto fixture = extensible_fixture(0x3F, 0x0003, 32);
    // patch container bits from 16 to 32 and the frame to 6*4 bytes
    fixture[34] = 32;                 // wBitsPerSample
    fixture[32] = 24;                 // nBlockAlign = 6 * 4
    WavFile wav = [&] {
        // rebuild data chunk: 6 channels * 1 frame * 4 bytes
        std::vector<std::uint8_t> v(fixture.begin(), fixture.begin() + 60); // up to data header
        push_tag(v, "data");
        push_u32(v, 24);
        for (int i = 0; i < 24; ++i) {
            v.push_back(0);
        }
        return read_wav(bytes_of(v));
    }();
    CHECK(wav.format == SampleFormat::float32);
}

TEST_CASE("malformed and unsupported streams fail with the right category") {
    CHECK(read_error_code({}) == Errc::malformed_riff);
    CHECK(read_error_code({'R', 'I', 'F', 'F'}) == Errc::malformed_riff);

    auto not_wave = pcm16_stereo_fixture();
    not_wave[8] = 'A';
    CHECK(read_error_code(not_wave) == Errc::malformed_riff);

    auto adpcm = pcm16_stereo_fixture();
    adpcm[20] = 0x11; // fmt tag 0x0011
    CHECK(read_error_code(adpcm) == Errc::unsupported_format);

    auto eight_bit = pcm16_stereo_fixture();
    eight_bit[34] = 8;
    CHECK(read_error_code(eight_bit) == Errc::unsupported_bit_depth);

    auto zero_channels = pcm16_stereo_fixture();
    zero_channels[22] = 0;
    CHECK(read_error_code(zero_channels) == Errc::malformed_riff);

    auto truncated = pcm16_stereo_fixture();
    truncated.resize(truncated.size() - 5);
    CHECK(read_error_code(truncated) == Errc::truncated_data);

    auto mid_frame = pcm16_stereo_fixture();
    mid_frame[40] = 10; // data size 10 bytes: not a whole number of 4-byte frames
    mid_frame.resize(44 + 10);
    CHECK(read_error_code(mid_frame) == Errc::truncated_data);

    auto five_channels = pcm16_stereo_fixture();
    five_channels[22] = 5;
    CHECK(read_error_code(five_channels) == Errc::unsupported_layout);

    auto bad_guid = extensible_fixture(0x3F, 0x0001);
    bad_guid[48] = 0x55; // corrupt the subformat GUID suffix
    CHECK(read_error_code(bad_guid) == Errc::unsupported_format);

    auto narrow_valid_bits = extensible_fixture(0x3F, 0x0001, 12);
    CHECK(read_error_code(narrow_valid_bits) == Errc::unsupported_bit_depth);
}

TEST_CASE("data chunk before fmt chunk is malformed") {
    std::vector<std::uint8_t> v;
    push_tag(v, "RIFF");
    push_u32(v, 4 + 8 + 4);
    push_tag(v, "WAVE");
    push_tag(v, "data");
    push_u32(v, 4);
    push_u32(v, 0);
    CHECK(read_error_code(v) == Errc::malformed_riff);
}

TEST_CASE("layout override is honored and validated on read") {
    auto fixture = pcm16_stereo_fixture();
    WavFile wav = read_wav(bytes_of(fixture), ChannelLayout::stereo20());
    CHECK(wav.clip.layout() == ChannelLayout::stereo20());
    CHECK_THROWS_AS(read_wav(bytes_of(fixture), ChannelLayout::surround51()), Error);
}

// Parser totality: arbitrary and corrupted inputs either decode or throw a
// structured Error. Nothing else may escape and nothing may crash.
TEST_CASE("reader is total over random and mutated byte streams") {
    std::mt19937_64 rng(0xC0FFEE);
    auto survives = [](const std::vector<std::uint8_t>& raw) {
        try {
            read_wav(bytes_of(raw));
        } catch (const Error&) {
            // structured failure is fine
        }
        return true;
    };

    // pure noise
    for (int i = 0; i < 3000; ++i) {
        std::vector<std::uint8_t> raw(rng() % 200);
        for (auto& b : raw) {
            b = static_cast<std::uint8_t>(rng());
        }
        CHECK(survives(raw));
    }

    // noise behind a valid RIFF/WAVE preamble
    for (int i = 0; i < 2000; ++i) {
        std::vector<std::uint8_t> raw;
        push_tag(raw, "RIFF");
        push_u32(raw, static_cast<std::uint32_t>(rng()));
        push_tag(raw, "WAVE");
        std::size_t extra = rng() % 120;
        for (std::size_t k = 0; k < extra; ++k) {
            raw.push_back(static_cast<std::uint8_t>(rng()));
        }
        CHECK(survives(raw));
    }

    // point mutations and truncations of valid files
    std::mt19937_64 clip_rng(99);
    AudioClip clip = testutil::random_clip(clip_rng, ChannelLayout::surround51(), 20);
    for (auto format : {SampleFormat::pcm16, SampleFormat::pcm24, SampleFormat::float32}) {
        auto valid = write_wav(clip, format);
        std::vector<std::uint8_t> base(valid.size());
        std::memcpy(base.data(), valid.data(), valid.size());
        for (int i = 0; i < 1500; ++i) {
            auto mutated = base;
            for (int hits = 0; hits < 4; ++hits) {
                mutated[rng() % mutated.size()] = static_cast<std::uint8_t>(rng());
            }
            if (rng() % 3 == 0) {
                mutated.resize(rng() % mutated.size());
            }
            CHECK(survives(mutated));
        }
    }
}
