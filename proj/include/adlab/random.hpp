#pragma once

#include <cstdint>
#include <vector>

namespace adlab {

/// Counter-based random stream in the SplittableRandom family.
///
/// A stream is fully determined by (seed, stream_id): the same pair always
/// produces the same sequence, regardless of thread count or call site.
/// Distinct stream_ids give statistically independent sequences, so parallel
/// work partitions by substream, never by thread.
///
/// The object is a cheap value type; copying it forks the position. Nothing
/// is shared, so concurrent use of distinct copies is safe.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Independent stream derived from this one. substream(i) != substream(j)
    /// for i != j, and neither overlaps the parent.
    RandomStream substream(std::uint64_t child) const;

    /// Next 64 uniform random bits; advances the stream position.
    std::uint64_t next_u64();

    /// Uniform double in the open interval (0, 1).
    double next_uniform();

    /// Standard normal draw (Marsaglia polar method, exact distribution).
    double next_normal();

private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
    std::uint64_t base_ = 0;     // mixed from (seed, stream_id)
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;         // second output of the polar method
    bool has_spare_ = false;
};

/// n i.i.d. standard normal draws from a fresh copy of `stream`.
/// Pure in its inputs: identical (seed, stream_id, n) yields identical bits.
std::vector<double> sample_std_normal(RandomStream stream, std::size_t n);

} // namespace adlab
