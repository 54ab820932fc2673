#include "adlab/random.hpp"

#include <cmath>

namespace adlab {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer (Stafford mix13 constants).
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    base_ = mix64(mix64(seed + kGolden) ^ mix64(stream_id + 0xD1B54A32D192ED03ull));
}

RandomStream RandomStream::substream(std::uint64_t child) const {
    return RandomStream(seed_, mix64(stream_id_ * kGolden + child + 1));
}

std::uint64_t RandomStream::next_u64() {
    ++counter_;
    return mix64(base_ + counter_ * kGolden);
}

double RandomStream::next_uniform() {
    // 53 mantissa bits, offset by half an ulp so the result is never 0 or 1.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * next_uniform() - 1.0;
        v = 2.0 * next_uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

std::vector<double> sample_std_normal(RandomStream stream, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = stream.next_normal();
    }
    return out;
}

} // namespace adlab
