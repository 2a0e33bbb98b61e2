// RIFF/WAVE reader and writer. The reader walks the chunk list with every
// access bounds-checked so arbitrary byte streams either decode or throw a
// structured Error; it never reads past the buffer.

#include "clearvoice/wav.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

#include "clearvoice/error.hpp"

namespace clearvoice {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatIeeeFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

// KSDATAFORMAT_SUBTYPE_PCM / _IEEE_FLOAT: Data1 is the format tag, the
// remaining 12 bytes are the fixed media-subtype suffix.
constexpr std::array<std::uint8_t, 12> kSubtypeSuffix = {0x00, 0x00, 0x10, 0x00, 0x80, 0x00,
                                                         0x00, 0xAA, 0x00, 0x38, 0x9B, 0x71};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::byte> data) : data_(data) {}

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }

    void require(std::size_t n, const char* what) const {
        if (remaining() < n) {
            throw Error(Errc::malformed_riff, std::string("unexpected end of stream in ") + what);
        }
    }

    std::uint16_t u16() {
        require(2, "field");
        std::uint16_t v = std::uint16_t(byte(0)) | std::uint16_t(byte(1)) << 8;
        pos_ += 2;
        return v;
    }

    std::uint32_t u32() {
        require(4, "field");
        std::uint32_t v = std::uint32_t(byte(0)) | std::uint32_t(byte(1)) << 8 |
                          std::uint32_t(byte(2)) << 16 | std::uint32_t(byte(3)) << 24;
        pos_ += 4;
        return v;
    }

    std::array<char, 4> fourcc() {
        require(4, "chunk id");
        std::array<char, 4> id;
        std::memcpy(id.data(), data_.data() + pos_, 4);
        pos_ += 4;
        return id;
    }

    std::span<const std::byte> bytes(std::size_t n, const char* what) {
        require(n, what);
        auto view = data_.subspan(pos_, n);
        pos_ += n;
        return view;
    }

    void skip(std::size_t n, const char* what) {
        require(n, what);
        pos_ += n;
    }

private:
    std::uint8_t byte(std::size_t offset) const {
        return std::to_integer<std::uint8_t>(data_[pos_ + offset]);
    }

    std::span<const std::byte> data_;
    std::size_t pos_ = 0;
};

struct FmtInfo {
    SampleFormat format;
    std::uint16_t channels;
    std::uint32_t sample_rate;
    std::optional<std::uint32_t> channel_mask;
};

SampleFormat resolve_format(std::uint16_t tag, std::uint16_t bits) {
    if (tag == kFormatPcm) {
        switch (bits) {
        case 16: return SampleFormat::pcm16;
        case 24: return SampleFormat::pcm24;
        case 32: return SampleFormat::pcm32;
        default:
            throw Error(Errc::unsupported_bit_depth,
                        "unsupported PCM bit depth " + std::to_string(bits) +
                            " (supported: 16, 24, 32)");
        }
    }
    if (tag == kFormatIeeeFloat) {
        switch (bits) {
        case 32: return SampleFormat::float32;
        case 64: return SampleFormat::float64;
        default:
            throw Error(Errc::unsupported_bit_depth,
                        "unsupported float bit depth " + std::to_string(bits) +
                            " (supported: 32, 64)");
        }
    }
    char tag_hex[8];
    std::snprintf(tag_hex, sizeof tag_hex, "%04X", tag);
    throw Error(Errc::unsupported_format, "unsupported fmt tag 0x" + std::string(tag_hex));
}

FmtInfo parse_fmt(std::span<const std::byte> payload, std::vector<std::string>& warnings) {
    ByteReader r(payload);
    if (payload.size() < 16) {
        throw Error(Errc::malformed_riff, "fmt chunk too small");
    }
    std::uint16_t tag = r.u16();
    std::uint16_t channels = r.u16();
    std::uint32_t sample_rate = r.u32();
    r.u32(); // byte rate, redundant
    r.u16(); // block align, redundant
    std::uint16_t bits = r.u16();

    if (channels == 0) {
        throw Error(Errc::malformed_riff, "fmt chunk declares zero channels");
    }
    if (sample_rate == 0) {
        throw Error(Errc::malformed_riff, "fmt chunk declares zero sample rate");
    }

    std::optional<std::uint32_t> mask;
    if (tag == kFormatExtensible) {
        if (payload.size() < 40) {
            throw Error(Errc::malformed_riff, "extensible fmt chunk too small");
        }
        std::uint16_t cb_size = r.u16();
        if (cb_size < 22) {
            throw Error(Errc::malformed_riff, "extensible fmt extension too small");
        }
        std::uint16_t valid_bits = r.u16();
        mask = r.u32();
        auto guid = r.bytes(16, "subformat guid");
        std::uint32_t data1 = std::uint32_t(std::to_integer<std::uint8_t>(guid[0])) |
                              std::uint32_t(std::to_integer<std::uint8_t>(guid[1])) << 8 |
                              std::uint32_t(std::to_integer<std::uint8_t>(guid[2])) << 16 |
                              std::uint32_t(std::to_integer<std::uint8_t>(guid[3])) << 24;
        for (std::size_t i = 0; i < kSubtypeSuffix.size(); ++i) {
            if (std::to_integer<std::uint8_t>(guid[4 + i]) != kSubtypeSuffix[i]) {
                throw Error(Errc::unsupported_format, "unknown extensible subformat GUID");
            }
        }
        if (data1 > 0xFFFF) {
            throw Error(Errc::unsupported_format, "unknown extensible subformat GUID");
        }
        tag = static_cast<std::uint16_t>(data1);
        if (valid_bits != 0 && valid_bits != bits) {
            throw Error(Errc::unsupported_bit_depth,
                        "container has " + std::to_string(bits) + " bits but only " +
                            std::to_string(valid_bits) + " valid bits per sample");
        }
        if (mask && *mask != 0 &&
            static_cast<unsigned>(std::popcount(*mask)) != channels) {
            warnings.push_back("channel mask names " + std::to_string(std::popcount(*mask)) +
                               " speakers but the stream has " + std::to_string(channels) +
                               " channels; layout is decided by channel count");
        }
    }

    return FmtInfo{resolve_format(tag, bits), channels, sample_rate, mask};
}

double decode_sample(std::span<const std::byte> raw, SampleFormat format) {
    auto u8 = [&raw](std::size_t i) { return std::to_integer<std::uint8_t>(raw[i]); };
    switch (format) {
    case SampleFormat::pcm16: {
        auto v = static_cast<std::int16_t>(std::uint16_t(u8(0)) | std::uint16_t(u8(1)) << 8);
        return static_cast<double>(v) / 32768.0;
    }
    case SampleFormat::pcm24: {
        std::int32_t v = std::int32_t(u8(0)) | std::int32_t(u8(1)) << 8 | std::int32_t(u8(2)) << 16;
        if (v & 0x800000) {
            v |= ~0xFFFFFF;
        }
        return static_cast<double>(v) / 8388608.0;
    }
    case SampleFormat::pcm32: {
        auto v = static_cast<std::int32_t>(std::uint32_t(u8(0)) | std::uint32_t(u8(1)) << 8 |
                                           std::uint32_t(u8(2)) << 16 | std::uint32_t(u8(3)) << 24);
        return static_cast<double>(v) / 2147483648.0;
    }
    case SampleFormat::float32: {
        std::uint32_t bits = std::uint32_t(u8(0)) | std::uint32_t(u8(1)) << 8 |
                             std::uint32_t(u8(2)) << 16 | std::uint32_t(u8(3)) << 24;
        return static_cast<double>(std::bit_cast<float>(bits));
    }
    case SampleFormat::float64: {
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < 8; ++i) {
            bits |= std::uint64_t(u8(i)) << (8 * i);
        }
        return std::bit_cast<double>(bits);
    }
    }
    return 0.0;
}

class ByteWriter {
public:
    void fourcc(const char* id) {
        for (std::size_t i = 0; i < 4; ++i) {
            out_.push_back(std::byte(id[i]));
        }
    }

    void u16(std::uint16_t v) {
        out_.push_back(std::byte(v & 0xFF));
        out_.push_back(std::byte(v >> 8 & 0xFF));
    }

    void u32(std::uint32_t v) {
        for (int shift = 0; shift < 32; shift += 8) {
            out_.push_back(std::byte(v >> shift & 0xFF));
        }
    }

    void u64(std::uint64_t v) {
        for (int shift = 0; shift < 64; shift += 8) {
            out_.push_back(std::byte(v >> shift & 0xFF));
        }
    }

    void byte(std::uint8_t v) { out_.push_back(std::byte(v)); }

    std::vector<std::byte> take() { return std::move(out_); }

private:
    std::vector<std::byte> out_;
};

std::int64_t quantize(double x, int bits) {
    const double scale = std::ldexp(1.0, bits - 1); // 2^(b-1)
    const std::int64_t max = static_cast<std::int64_t>(scale) - 1;
    const std::int64_t min = -static_cast<std::int64_t>(scale);
    double r = std::round(x * scale); // half away from zero
    if (r >= static_cast<double>(max)) {
        return max;
    }
    if (r <= static_cast<double>(min)) {
        return min;
    }
    return static_cast<std::int64_t>(r);
}

void encode_sample(ByteWriter& w, double x, SampleFormat format) {
    switch (format) {
    case SampleFormat::pcm16: {
        auto v = static_cast<std::uint16_t>(static_cast<std::int16_t>(quantize(x, 16)));
        w.u16(v);
        return;
    }
    case SampleFormat::pcm24: {
        auto v = static_cast<std::uint32_t>(quantize(x, 24)) & 0xFFFFFF;
        w.byte(v & 0xFF);
        w.byte(v >> 8 & 0xFF);
        w.byte(v >> 16 & 0xFF);
        return;
    }
    case SampleFormat::pcm32: {
        auto v = static_cast<std::uint32_t>(static_cast<std::int32_t>(quantize(x, 32)));
        w.u32(v);
        return;
    }
    case SampleFormat::float32:
        w.u32(std::bit_cast<std::uint32_t>(static_cast<float>(x)));
        return;
    case SampleFormat::float64:
        w.u64(std::bit_cast<std::uint64_t>(x));
        return;
    }
}

} // namespace

WavFile read_wav(std::span<const std::byte> data, std::optional<ChannelLayout> layout_override) {
    ByteReader r(data);

    auto riff = r.fourcc();
    if (std::memcmp(riff.data(), "RIFF", 4) != 0) {
        throw Error(Errc::malformed_riff, "missing RIFF magic");
    }
    r.u32(); // declared RIFF size; the actual buffer length is authoritative
    auto wave = r.fourcc();
    if (std::memcmp(wave.data(), "WAVE", 4) != 0) {
        throw Error(Errc::malformed_riff, "missing WAVE form type");
    }

    std::vector<std::string> warnings;
    std::optional<FmtInfo> fmt;
    std::optional<std::span<const std::byte>> data_chunk;

    while (r.remaining() > 0 && !data_chunk) {
        if (r.remaining() < 8) {
            throw Error(Errc::malformed_riff, "trailing bytes do not form a chunk header");
        }
        auto id = r.fourcc();
        std::uint32_t size = r.u32();

        if (std::memcmp(id.data(), "fmt ", 4) == 0) {
            if (fmt) {
                throw Error(Errc::malformed_riff, "duplicate fmt chunk");
            }
            fmt = parse_fmt(r.bytes(size, "fmt chunk"), warnings);
        } else if (std::memcmp(id.data(), "data", 4) == 0) {
            if (!fmt) {
                throw Error(Errc::malformed_riff, "data chunk before fmt chunk");
            }
            if (r.remaining() < size) {
                throw Error(Errc::truncated_data,
                            "data chunk declares " + std::to_string(size) + " bytes but only " +
                                std::to_string(r.remaining()) + " remain");
            }
            data_chunk = r.bytes(size, "data chunk");
        } else {
            r.skip(size, "chunk payload"); // unknown chunks are skipped, not preserved
        }
        if (size % 2 == 1 && r.remaining() > 0) {
            r.skip(1, "chunk pad byte");
        }
    }

    if (!fmt) {
        throw Error(Errc::malformed_riff, "no fmt chunk");
    }
    if (!data_chunk) {
        throw Error(Errc::malformed_riff, "no data chunk");
    }

    ChannelLayout layout = infer_layout(fmt->channels, layout_override);

    const std::size_t sample_bytes = bytes_per_sample(fmt->format);
    const std::size_t frame_bytes = sample_bytes * fmt->channels;
    if (data_chunk->size() % frame_bytes != 0) {
        throw Error(Errc::truncated_data, "data chunk ends mid-frame");
    }
    const std::size_t frames = data_chunk->size() / frame_bytes;

    std::vector<std::vector<double>> channels(fmt->channels, std::vector<double>(frames));
    for (std::size_t t = 0; t < frames; ++t) {
        for (std::size_t c = 0; c < fmt->channels; ++c) {
            auto raw = data_chunk->subspan((t * fmt->channels + c) * sample_bytes, sample_bytes);
            channels[c][t] = decode_sample(raw, fmt->format);
        }
    }

    return WavFile{AudioClip(layout, fmt->sample_rate, std::move(channels)), fmt->format,
                   fmt->channel_mask, std::move(warnings)};
}

WavFile read_wav_file(const std::filesystem::path& path,
                      std::optional<ChannelLayout> layout_override) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io_failure, "cannot open " + path.string());
    }
    std::vector<std::byte> data;
    in.seekg(0, std::ios::end);
    auto size = in.tellg();
    if (size < 0) {
        throw Error(Errc::io_failure, "cannot read " + path.string());
    }
    data.resize(static_cast<std::size_t>(size));
    in.seekg(0, std::ios::beg);
    in.read(reinterpret_cast<char*>(data.data()), size);
    if (!in && size != 0) {
        throw Error(Errc::io_failure, "cannot read " + path.string());
    }
    return read_wav(data, layout_override);
}

std::vector<std::byte> write_wav(const AudioClip& clip, SampleFormat format) {
    if (clip.channel_count() == 0) {
        throw Error(Errc::invalid_argument, "clip has no channels");
    }
    if (!is_float(format)) {
        for (std::size_t c = 0; c < clip.channel_count(); ++c) {
            for (double x : clip.channel(c)) {
                if (std::abs(x) > 1.0) {
                    throw Error(Errc::out_of_range,
                                "sample " + std::to_string(x) + " on channel " +
                                    std::string(channel_name(clip.layout().channels()[c])) +
                                    " exceeds full scale; normalize before writing " +
                                    std::string(format_name(format)));
                }
            }
        }
    }

    const std::uint16_t channels = static_cast<std::uint16_t>(clip.channel_count());
    const std::uint16_t sample_bytes = static_cast<std::uint16_t>(bytes_per_sample(format));
    const std::uint16_t block_align = static_cast<std::uint16_t>(channels * sample_bytes);
    const std::uint64_t data_size = std::uint64_t(clip.frame_count()) * block_align;
    if (data_size > std::numeric_limits<std::uint32_t>::max() - 1024) {
        throw Error(Errc::out_of_range, "clip too long for a RIFF container");
    }

    const bool pcm = !is_float(format);
    // PCM gets the classic 16-byte fmt chunk; float formats get the 18-byte
    // fmt (cbSize = 0) plus a fact chunk, as non-PCM WAVE requires.
    const std::uint32_t fmt_size = pcm ? 16 : 18;
    const std::uint32_t fact_size = pcm ? 0 : 8 + 4;
    const std::uint32_t pad = data_size % 2;
    const std::uint32_t riff_size =
        4 + (8 + fmt_size) + fact_size + 8 + static_cast<std::uint32_t>(data_size) + pad;

    ByteWriter w;
    w.fourcc("RIFF");
    w.u32(riff_size);
    w.fourcc("WAVE");

    w.fourcc("fmt ");
    w.u32(fmt_size);
    w.u16(pcm ? kFormatPcm : kFormatIeeeFloat);
    w.u16(channels);
    w.u32(clip.sample_rate());
    w.u32(clip.sample_rate() * block_align);
    w.u16(block_align);
    w.u16(static_cast<std::uint16_t>(bits_per_sample(format)));
    if (!pcm) {
        w.u16(0); // cbSize
        w.fourcc("fact");
        w.u32(4);
        w.u32(static_cast<std::uint32_t>(clip.frame_count()));
    }

    w.fourcc("data");
    w.u32(static_cast<std::uint32_t>(data_size));
    for (std::size_t t = 0; t < clip.frame_count(); ++t) {
        for (std::size_t c = 0; c < channels; ++c) {
            encode_sample(w, clip.channel(c)[t], format);
        }
    }
    if (pad) {
        w.byte(0);
    }
    return w.take();
}

void write_wav_file(const std::filesystem::path& path, const AudioClip& clip,
                    SampleFormat format) {
    auto bytes = write_wav(clip, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(Errc::io_failure, "cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error(Errc::io_failure, "write failed for " + path.string());
    }
}

} // namespace clearvoice
