#include "clearvoice/sample_format.hpp"

namespace clearvoice {

std::string_view format_name(SampleFormat f) {
    switch (f) {
    case SampleFormat::pcm16: return "pcm16";
    case SampleFormat::pcm24: return "pcm24";
    case SampleFormat::pcm32: return "pcm32";
    case SampleFormat::float32: return "float32";
    case SampleFormat::float64: return "float64";
    }
    return "?";
}

std::string_view format_description(SampleFormat f) {
    switch (f) {
    case SampleFormat::pcm16: return "16-bit integer PCM";
    case SampleFormat::pcm24: return "24-bit integer PCM";
    case SampleFormat::pcm32: return "32-bit integer PCM";
    case SampleFormat::float32: return "32-bit IEEE float";
    case SampleFormat::float64: return "64-bit IEEE float";
    }
    return "?";
}

std::optional<SampleFormat> format_from_name(std::string_view name) {
    if (name == "pcm16") return SampleFormat::pcm16;
    if (name == "pcm24") return SampleFormat::pcm24;
    if (name == "pcm32") return SampleFormat::pcm32;
    if (name == "float32") return SampleFormat::float32;
    if (name == "float64") return SampleFormat::float64;
    return std::nullopt;
}

} // namespace clearvoice
