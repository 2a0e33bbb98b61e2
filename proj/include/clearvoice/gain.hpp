#pragma once

#include <cmath>
#include <limits>

#include "clearvoice/error.hpp"

namespace clearvoice {

// Gains are handled as linear multiples everywhere in the mixer; dB only
// appears at the edges (CLI flags, prototype attenuation levels).
using Gain = double;

inline Gain db_to_gain(double db) {
    return std::pow(10.0, db / 20.0);
}

// gain_to_db(0) yields -infinity, the documented sentinel for silence.
inline double gain_to_db(Gain gain) {
    if (gain < 0.0) {
        throw Error(Errc::invalid_argument, "gain_to_db: gain must be >= 0");
    }
    if (gain == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    return 20.0 * std::log10(gain);
}

} // namespace clearvoice
