#pragma once

#include <cstdint>

namespace bitension {

// Counter-based generator: value i under seed s is splitmix64(s + i * golden),
// so streams are reproducible across platforms and independent of call order
// history.  This is the only source of randomness in the project.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ULL * ++counter_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Symmetric around zero, fine for test directions (not a true Gaussian).
    double symmetric() { return uniform(-1.0, 1.0); }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace bitension
