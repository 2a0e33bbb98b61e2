#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace clearvoice {

// The five encodings the WAV layer reads and writes. Everything else is
// rejected at parse time.
enum class SampleFormat {
    pcm16,
    pcm24,
    pcm32,
    float32,
    float64,
};

constexpr bool is_float(SampleFormat f) {
    return f == SampleFormat::float32 || f == SampleFormat::float64;
}

constexpr unsigned bits_per_sample(SampleFormat f) {
    switch (f) {
    case SampleFormat::pcm16: return 16;
    case SampleFormat::pcm24: return 24;
    case SampleFormat::pcm32: return 32;
    case SampleFormat::float32: return 32;
    case SampleFormat::float64: return 64;
    }
    return 0;
}

constexpr unsigned bytes_per_sample(SampleFormat f) {
    return bits_per_sample(f) / 8;
}

std::string_view format_name(SampleFormat f);        // "pcm24", "float32", ...
std::string_view format_description(SampleFormat f); // "24-bit integer PCM", ...
std::optional<SampleFormat> format_from_name(std::string_view name);

} // namespace clearvoice
