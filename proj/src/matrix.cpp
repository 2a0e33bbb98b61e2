#include "clearvoice/matrix.hpp"

#include <cmath>

#include "json.hpp"

#include "clearvoice/error.hpp"

namespace clearvoice {

DownmixMatrix::DownmixMatrix(ChannelLayout input_layout, ChannelLayout output_layout,
                             std::string id)
    : input_(input_layout), output_(output_layout), id_(std::move(id)),
      coeff_(input_layout.channel_count() * output_layout.channel_count(), 0.0) {}

Gain DownmixMatrix::at(std::size_t out_index, std::size_t in_index) const {
    return coeff_.at(out_index * input_.channel_count() + in_index);
}

Gain DownmixMatrix::at(Channel out, Channel in) const {
    auto o = output_.index_of(out);
    auto i = input_.index_of(in);
    if (!o || !i) {
        return 0.0;
    }
    return at(*o, *i);
}

void DownmixMatrix::set(std::size_t out_index, std::size_t in_index, Gain gain) {
    if (!(gain >= 0.0) || !std::isfinite(gain)) {
        throw Error(Errc::invalid_argument, "matrix coefficients must be finite and >= 0");
    }
    coeff_.at(out_index * input_.channel_count() + in_index) = gain;
}

void DownmixMatrix::set(Channel out, Channel in, Gain gain) {
    auto o = output_.index_of(out);
    auto i = input_.index_of(in);
    if (!o) {
        throw Error(Errc::layout_mismatch, "output layout " + std::string(output_.name()) +
                                               " has no " + std::string(channel_name(out)) +
                                               " channel");
    }
    if (!i) {
        throw Error(Errc::layout_mismatch, "input layout " + std::string(input_.name()) +
                                               " has no " + std::string(channel_name(in)) +
                                               " channel");
    }
    set(*o, *i, gain);
}

bool operator==(const DownmixMatrix& a, const DownmixMatrix& b) {
    return a.input_ == b.input_ && a.output_ == b.output_ && a.coeff_ == b.coeff_;
}

std::string_view preset_name(Preset p) {
    switch (p) {
    case Preset::es_stereo: return "es-stereo";
    case Preset::ebu_stereo: return "ebu-stereo";
    case Preset::es_51: return "es-51";
    }
    return "?";
}

std::optional<Preset> preset_from_name(std::string_view name) {
    if (name == "es-stereo") return Preset::es_stereo;
    if (name == "ebu-stereo") return Preset::ebu_stereo;
    if (name == "es-51") return Preset::es_51;
    return std::nullopt;
}

namespace {

bool is_surround_input(ChannelLayout layout) {
    return layout == ChannelLayout::surround30() || layout == ChannelLayout::surround51() ||
           layout == ChannelLayout::surround51plus2();
}

// Sets the L/R rows of a stereo downmix from the (front, center, surround)
// gain triple. Channels the input lacks are left at 0; LFE and the embedded
// stereo pair never contribute.
void fill_stereo_rows(DownmixMatrix& m, Gain front, Gain center, Gain surround) {
    m.set(Channel::L, Channel::L, front);
    m.set(Channel::R, Channel::R, front);
    m.set(Channel::L, Channel::C, center);
    m.set(Channel::R, Channel::C, center);
    if (m.input_layout().has(Channel::Ls)) {
        m.set(Channel::L, Channel::Ls, surround);
        m.set(Channel::R, Channel::Rs, surround);
    }
}

} // namespace

DownmixMatrix preset_matrix(Preset preset, ChannelLayout input_layout) {
    if (!is_surround_input(input_layout)) {
        throw Error(Errc::unsupported_layout,
                    std::string(preset_name(preset)) + " requires a multichannel input layout, got " +
                        std::string(input_layout.name()));
    }
    switch (preset) {
    case Preset::es_stereo: {
        DownmixMatrix m(input_layout, ChannelLayout::stereo20(), "es-stereo");
        fill_stereo_rows(m, 0.25, 1.5, 0.25);
        return m;
    }
    case Preset::ebu_stereo: {
        DownmixMatrix m(input_layout, ChannelLayout::stereo20(), "ebu-stereo");
        fill_stereo_rows(m, 1.0, 0.707, 0.707);
        return m;
    }
    case Preset::es_51: {
        if (input_layout == ChannelLayout::surround30()) {
            throw Error(Errc::unsupported_layout, "es-51 requires 5.1 or 5.1+2 input, got 3.0");
        }
        DownmixMatrix m(input_layout, ChannelLayout::surround51(), "es-51");
        m.set(Channel::L, Channel::L, 0.4);
        m.set(Channel::R, Channel::R, 0.4);
        m.set(Channel::C, Channel::C, 1.5);
        m.set(Channel::LFE, Channel::LFE, 0.25);
        m.set(Channel::Ls, Channel::Ls, 0.25);
        m.set(Channel::Rs, Channel::Rs, 0.25);
        return m;
    }
    }
    throw Error(Errc::invalid_argument, "unknown preset");
}

DownmixMatrix attenuation_matrix(ChannelLayout input_layout, ChannelLayout output_layout,
                                 double background_db, Gain center_gain) {
    if (background_db > 0.0) {
        throw Error(Errc::invalid_argument, "background attenuation must be <= 0 dB");
    }
    if (!(center_gain >= 0.0) || !std::isfinite(center_gain)) {
        throw Error(Errc::invalid_argument, "center gain must be finite and >= 0");
    }
    if (!is_surround_input(input_layout) || !input_layout.has(Channel::C)) {
        throw Error(Errc::unsupported_layout,
                    "attenuation matrix needs a multichannel input with a center channel, got " +
                        std::string(input_layout.name()));
    }

    const Gain bg = db_to_gain(background_db);

    if (output_layout == ChannelLayout::stereo20()) {
        DownmixMatrix m(input_layout, output_layout, "custom");
        fill_stereo_rows(m, 1.0 * bg, center_gain, 0.707 * bg);
        return m;
    }
    if (output_layout == ChannelLayout::surround51()) {
        DownmixMatrix m(input_layout, output_layout, "custom");
        for (Channel c : output_layout.channels()) {
            if (!input_layout.has(c)) {
                continue;
            }
            m.set(c, c, c == Channel::C ? center_gain : bg);
        }
        return m;
    }
    throw Error(Errc::unsupported_layout, "attenuation output layout must be 2.0 or 5.1, got " +
                                              std::string(output_layout.name()));
}

namespace {

using json = nlohmann::json;

ChannelLayout layout_from_json(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_string()) {
        throw Error(Errc::bad_config, std::string("matrix config: missing string field \"") + key +
                                          "\"");
    }
    auto name = doc[key].get<std::string>();
    auto layout = ChannelLayout::from_name(name);
    if (!layout) {
        throw Error(Errc::bad_config, std::string("matrix config: unknown layout \"") + name +
                                          "\" for \"" + key + "\" (use 2.0, 3.0, 5.1 or 5.1+2)");
    }
    return *layout;
}

} // namespace

DownmixMatrix matrix_from_json(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(Errc::bad_config, std::string("matrix config: ") + e.what());
    }
    if (!doc.is_object()) {
        throw Error(Errc::bad_config, "matrix config: document must be a JSON object");
    }

    ChannelLayout input = layout_from_json(doc, "input_layout");
    ChannelLayout output = layout_from_json(doc, "output_layout");
    DownmixMatrix m(input, output, "custom");

    if (!doc.contains("coefficients") || !doc["coefficients"].is_object()) {
        throw Error(Errc::bad_config, "matrix config: missing object field \"coefficients\"");
    }
    for (const auto& [out_name, row] : doc["coefficients"].items()) {
        auto out_channel = channel_from_name(out_name);
        if (!out_channel || !output.has(*out_channel)) {
            throw Error(Errc::bad_config, "matrix config: \"" + out_name +
                                              "\" is not an output channel of layout " +
                                              std::string(output.name()));
        }
        if (!row.is_object()) {
            throw Error(Errc::bad_config,
                        "matrix config: coefficients for \"" + out_name + "\" must be an object");
        }
        for (const auto& [in_name, value] : row.items()) {
            auto in_channel = channel_from_name(in_name);
            if (!in_channel || !input.has(*in_channel)) {
                throw Error(Errc::bad_config, "matrix config: \"" + in_name +
                                                  "\" is not an input channel of layout " +
                                                  std::string(input.name()));
            }
            if (!value.is_number()) {
                throw Error(Errc::bad_config, "matrix config: coefficient [\"" + out_name +
                                                  "\"][\"" + in_name + "\"] must be a number");
            }
            double gain = value.get<double>();
            if (!(gain >= 0.0) || !std::isfinite(gain)) {
                throw Error(Errc::bad_config, "matrix config: coefficient [\"" + out_name +
                                                  "\"][\"" + in_name +
                                                  "\"] must be finite and >= 0");
            }
            m.set(*out_channel, *in_channel, gain);
        }
    }
    return m;
}

std::string matrix_to_json(const DownmixMatrix& m) {
    nlohmann::ordered_json doc;
    doc["input_layout"] = std::string(m.input_layout().name());
    doc["output_layout"] = std::string(m.output_layout().name());
    nlohmann::ordered_json coeff = nlohmann::ordered_json::object();
    auto outs = m.output_layout().channels();
    auto ins = m.input_layout().channels();
    for (std::size_t o = 0; o < outs.size(); ++o) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < ins.size(); ++i) {
            if (m.at(o, i) != 0.0) {
                row[std::string(channel_name(ins[i]))] = m.at(o, i);
            }
        }
        if (!row.empty()) {
            coeff[std::string(channel_name(outs[o]))] = std::move(row);
        }
    }
    doc["coefficients"] = std::move(coeff);
    return doc.dump(2) + "\n";
}

} // namespace clearvoice
