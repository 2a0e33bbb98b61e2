#include "clearvoice/error.hpp"

namespace clearvoice {

std::string_view errc_name(Errc code) {
    switch (code) {
    case Errc::malformed_riff: return "malformed-riff";
    case Errc::unsupported_format: return "unsupported-format";
    case Errc::unsupported_bit_depth: return "unsupported-bit-depth";
    case Errc::truncated_data: return "truncated-data";
    case Errc::unsupported_layout: return "unsupported-layout";
    case Errc::layout_mismatch: return "layout-mismatch";
    case Errc::unsupported_input: return "unsupported-input";
    case Errc::out_of_range: return "out-of-range";
    case Errc::empty_clip: return "empty-clip";
    case Errc::bad_config: return "bad-config";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::io_failure: return "io-failure";
    }
    return "unknown";
}

} // namespace clearvoice
