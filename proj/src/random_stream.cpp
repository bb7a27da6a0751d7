#include "fundrisk/random_stream.hpp"

#include <cmath>
#include <numbers>

namespace fundrisk {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t path_index) {
    // Fixed stream tag keeps these sequences distinct from any other use of
    // the same seed words.
    constexpr std::uint32_t stream_tag = 0x66726b31u;
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed & 0xffffffffu),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(path_index & 0xffffffffu),
        static_cast<std::uint32_t>(path_index >> 32),
        stream_tag,
    };
    return std::mt19937_64(seq);
}

constexpr double two_pow_minus_53 = 1.0 / 9007199254740992.0;

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t path_index)
    : engine_(make_engine(seed, path_index)) {}

double RandomStream::uniform() {
    return static_cast<double>(engine_() >> 11) * two_pow_minus_53;
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] so the logarithm stays finite.
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * two_pow_minus_53;
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

} // namespace fundrisk
