#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clearvoice/channel_layout.hpp"
#include "clearvoice/gain.hpp"

namespace clearvoice {

// Output-channel x input-channel grid of linear gains. Absent couplings are
// simply 0; all coefficients are >= 0.
class DownmixMatrix {
public:
    DownmixMatrix(ChannelLayout input_layout, ChannelLayout output_layout,
                  std::string id = "custom");

    ChannelLayout input_layout() const { return input_; }
    ChannelLayout output_layout() const { return output_; }
    const std::string& id() const { return id_; }

    Gain at(std::size_t out_index, std::size_t in_index) const;
    Gain at(Channel out, Channel in) const; // 0 when either channel is absent

    void set(std::size_t out_index, std::size_t in_index, Gain gain);
    void set(Channel out, Channel in, Gain gain); // channels must exist

    friend bool operator==(const DownmixMatrix& a, const DownmixMatrix& b);
    friend bool operator!=(const DownmixMatrix& a, const DownmixMatrix& b) { return !(a == b); }

private:
    ChannelLayout input_;
    ChannelLayout output_;
    std::string id_;
    std::vector<Gain> coeff_; // row-major, [out][in]
};

enum class Preset {
    es_stereo,  // dialogue-enhanced stereo: 0.25*L + 1.5*C + 0.25*Ls per side
    ebu_stereo, // regular stereo downmix:   1*L + 0.707*C + 0.707*Ls per side
    es_51,      // dialogue-enhanced 5.1: diagonal 0.4/0.4/1.5/0.25/0.25/0.25
};

std::string_view preset_name(Preset p);
std::optional<Preset> preset_from_name(std::string_view name);

// Builds one of the fixed production matrices for the given input layout.
// Stereo presets accept 3.0/5.1/5.1+2 input; es-51 needs 5.1 or 5.1+2.
// Channels the input lacks contribute nothing; the embedded stereo pair of
// an eight-channel master gets coefficient 0 in every preset.
DownmixMatrix preset_matrix(Preset preset, ChannelLayout input_layout);

// Generalized builder for the prototype attenuation levels: starts from the
// base matrix for the output shape (regular stereo coefficients for 2.0,
// identity for 5.1), scales every non-center input by db_to_gain(background_db)
// and pins the center coefficient(s) to center_gain. With 0 dB and 0.707 the
// stereo variant reproduces the regular downmix exactly.
DownmixMatrix attenuation_matrix(ChannelLayout input_layout, ChannelLayout output_layout,
                                 double background_db, Gain center_gain);

// Parses the custom-matrix JSON document:
//   {"input_layout": "5.1", "output_layout": "2.0",
//    "coefficients": {"L": {"L": 0.25, "C": 1.5, "Ls": 0.25}, ...}}
// Absent entries are 0. Errors name the offending channel key.
DownmixMatrix matrix_from_json(std::string_view json_text);

std::string matrix_to_json(const DownmixMatrix& m);

} // namespace clearvoice
