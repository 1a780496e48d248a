#pragma once

#include <cstdint>

namespace frobsplit {

/// Resource ceilings.  All limits fail loudly (ResourceLimitError), never
/// by silent truncation.
namespace limits {

/// Largest admissible value of p^e anywhere in the library (exponent
/// arithmetic stays inside unsigned 64-bit with this ceiling).
inline constexpr std::uint64_t kPowCeiling = (std::uint64_t{1} << 63) - 1;

/// Largest p^e for which the P^1 splitting test expands the product of
/// linear forms.
inline constexpr std::uint64_t kMaxSplitLevel = 1u << 15;

/// Coefficient-operation budget for one splitting test.
inline constexpr std::uint64_t kSplitWorkBudget = 1'000'000'000;

/// Largest field size searched exhaustively for roots.
inline constexpr std::uint64_t kRootSearchBound = 1'000'000;

/// Largest field size over which hypersurface smoothness is brute-forced;
/// beyond it the check degrades to a citation.
inline constexpr std::uint64_t kSmoothSearchBound = 10'000;

/// Default sparse-polynomial term budget; FROBSPLIT_TERM_BUDGET overrides.
inline constexpr std::uint64_t kDefaultTermBudget = 50'000'000;

/// Term budget currently in effect (reads the environment once).
std::uint64_t term_budget();

} // namespace limits

} // namespace frobsplit
