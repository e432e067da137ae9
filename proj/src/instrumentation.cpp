#include "latfox/instrumentation.hpp"

namespace latfox {

Counters& counters() noexcept {
    thread_local Counters local;
    return local;
}

} // namespace latfox
