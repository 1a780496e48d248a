#include "frobsplit/config.hpp"

#include <cstdlib>

namespace frobsplit::limits {

std::uint64_t term_budget() {
    static const std::uint64_t value = [] {
        if (const char* env = std::getenv("FROBSPLIT_TERM_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return kDefaultTermBudget;
    }();
    return value;
}

} // namespace frobsplit::limits
