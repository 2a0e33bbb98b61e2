// libFuzzer harness for the RIFF/WAVE reader. Build with
// -DCLEARVOICE_BUILD_FUZZER=ON and a clang toolchain:
//   CXX=clang++ cmake -B build-fuzz -DCLEARVOICE_BUILD_FUZZER=ON
//   cmake --build build-fuzz --target fuzz_read_wav
//   build-fuzz/fuzz_read_wav
// The deterministic totality test in tests/test_wav.cpp covers the same
// contract in the regular suite.

#include <cstddef>
#include <cstdint>
#include <span>

#include "clearvoice/error.hpp"
#include "clearvoice/wav.hpp"

extern "C" int LLVMFuzzerTestOneInput(const std::uint8_t* data, std::size_t size) {
    try {
        auto bytes = std::span(reinterpret_cast<const std::byte*>(data), size);
        clearvoice::read_wav(bytes);
    } catch (const clearvoice::Error&) {
        // structured rejection is the expected outcome for junk input
    }
    return 0;
}
