#pragma once

#include <cstdint>

namespace bops::workloads {

/// SplitMix64 (Steele, Lea, Flood; the java.util.SplittableRandom finalizer).
/// Chosen because per-thread streams split deterministically from one seed,
/// so generated data is bit-identical on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Independent stream for a worker: the stream index is mixed into the
    /// seed through one extra scramble round.
    static SplitMix64 stream(uint64_t seed, uint64_t stream_index) {
        SplitMix64 mixer(seed ^ (0xA0761D6478BD642Full * (stream_index + 1)));
        return SplitMix64(mixer.next());
    }

private:
    uint64_t state_;
};

}  // namespace bops::workloads
