#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "clearvoice/audio_clip.hpp"
#include "clearvoice/cli/commands.hpp"
#include "clearvoice/error.hpp"

namespace testutil {

// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        auto base = std::filesystem::temp_directory_path();
        path_ = base / ("clearvoice_test_" + std::to_string(counter.fetch_add(1)) + "_" +
                        std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

inline bool bytes_equal(const std::filesystem::path& a, const std::filesystem::path& b) {
    return slurp(a) == slurp(b);
}

// [0, 1) from the generator's top 53 bits; pinned by the mt19937_64 spec.
inline double rand_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double rand_range(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * rand_unit(rng);
}

inline clearvoice::AudioClip random_clip(std::mt19937_64& rng, clearvoice::ChannelLayout layout,
                                         std::size_t frames, std::uint32_t rate = 48000,
                                         double amplitude = 1.0) {
    clearvoice::AudioClip clip(layout, rate, frames);
    for (std::size_t c = 0; c < clip.channel_count(); ++c) {
        for (double& x : clip.channel(c)) {
            x = rand_range(rng, -amplitude, amplitude);
        }
    }
    return clip;
}

inline clearvoice::AudioClip
constant_clip(clearvoice::ChannelLayout layout, std::size_t frames,
              const std::map<clearvoice::Channel, double>& values, std::uint32_t rate = 48000) {
    clearvoice::AudioClip clip(layout, rate, frames);
    for (const auto& [channel, value] : values) {
        for (double& x : clip.channel(channel)) {
            x = value;
        }
    }
    return clip;
}

inline bool within_ulps(double expected, double actual, int ulps) {
    if (expected == actual) {
        return true;
    }
    if (!std::isfinite(expected) || !std::isfinite(actual)) {
        return false;
    }
    double lo = expected;
    double hi = expected;
    for (int i = 0; i < ulps; ++i) {
        lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
        hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
    }
    return actual >= lo && actual <= hi;
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = clearvoice::cli::run(args, out, err);
    return CliResult{code, out.str(), err.str()};
}

} // namespace testutil
