#pragma once

#include <cstdint>

namespace latfox {

// Per-thread operation counters. The bench and the acceptance suite reset
// them around an update and read them back afterwards.
struct Counters {
    std::uint64_t full_enumerations = 0;
    std::uint64_t subset_tests = 0;
    std::uint64_t derivations = 0;
};

Counters& counters() noexcept;

inline void reset_counters() noexcept { counters() = Counters{}; }

} // namespace latfox
