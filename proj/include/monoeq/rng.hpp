#pragma once

#include <cstdint>
#include <random>

namespace monoeq {

// Seedable generator with transforms pinned in this file so that streams are
// bit-identical across compilers and standard libraries (the std::
// distributions are implementation-defined; mt19937_64 itself is not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    static constexpr const char* kName = "mt19937_64+box-muller";

    std::uint64_t next_u64() { return eng_(); }

    // [0, 1), 53-bit resolution
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // N(0,1) via Box-Muller; generates pairs, returns them alternately
    double normal();

    // uniform over {lo, ..., hi} inclusive, rejection sampled (no modulo bias)
    int uniform_int(int lo, int hi);

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace monoeq
