#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ptzinspect {

/// Portable seeded generator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distributions are implemented here instead of using
/// <random>'s, whose algorithms differ between standard libraries, so a seed
/// reproduces the same draws everywhere:
///   uniform01  = (engine() >> 11) * 2^-53            in [0, 1)
///   uniform    = lo + (hi - lo) * uniform01
///   normal     = Box-Muller on two uniform01 draws (cosine branch only)
class Rng {
public:
    static constexpr std::string_view kGeneratorName = "mt19937_64";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() noexcept;
    double uniform(double lo, double hi) noexcept;
    double normal(double mean, double sigma) noexcept;

private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer; derives independent per-draw seeds from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

}  // namespace ptzinspect
