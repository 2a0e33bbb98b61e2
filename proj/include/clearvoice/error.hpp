#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clearvoice {

// Every failure the library reports carries one of these categories, so
// callers can branch on the kind of failure instead of parsing messages.
enum class Errc {
    malformed_riff,       // byte stream is not a well-formed RIFF/WAVE container
    unsupported_format,   // fmt tag we do not decode (compressed codecs etc.)
    unsupported_bit_depth,
    truncated_data,       // data chunk shorter than declared, or partial frame
    unsupported_layout,   // channel count with no canonical layout
    layout_mismatch,      // clip layout differs from what the operation expects
    unsupported_input,    // mono/stereo input offered to the enhancement pipeline
    out_of_range,         // samples exceed full scale where that is not allowed
    empty_clip,
    bad_config,           // malformed manifest / matrix / signal-spec document
    invalid_argument,
    io_failure,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace clearvoice
