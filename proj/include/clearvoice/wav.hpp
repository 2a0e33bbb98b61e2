#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clearvoice/audio_clip.hpp"
#include "clearvoice/sample_format.hpp"

namespace clearvoice {

// Result of parsing one RIFF/WAVE stream. The layout is decided by channel
// count; a channel mask found in an extensible header is recorded verbatim
// and a mismatch against the count only produces a warning.
struct WavFile {
    AudioClip clip;
    SampleFormat format;
    std::optional<std::uint32_t> channel_mask;
    std::vector<std::string> warnings;
};

// Parses a RIFF/WAVE byte stream (fmt tags 0x0001 PCM, 0x0003 IEEE float,
// 0xFFFE extensible wrapping either). Integer samples of width b map to
// x / 2^(b-1). Throws Error on anything malformed or unsupported; never
// reads out of bounds on arbitrary input.
WavFile read_wav(std::span<const std::byte> data,
                 std::optional<ChannelLayout> layout_override = std::nullopt);

WavFile read_wav_file(const std::filesystem::path& path,
                      std::optional<ChannelLayout> layout_override = std::nullopt);

// Emits a canonical little-endian RIFF/WAVE stream with interleaved frames
// in layout order. Integer targets use round-half-away-from-zero followed by
// a clamp to the integer range; samples beyond +/-1.0 are an error for
// integer targets (they signal a missed normalization step).
std::vector<std::byte> write_wav(const AudioClip& clip, SampleFormat format);

void write_wav_file(const std::filesystem::path& path, const AudioClip& clip,
                    SampleFormat format);

} // namespace clearvoice
