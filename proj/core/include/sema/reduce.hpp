#pragma once

#include <optional>

#include "sema/errors.hpp"
#include "sema/term.hpp"

namespace sema::kernel {

/// Contracts the leftmost-outermost beta or type-beta redex.
/// Returns nothing when the term is already in normal form.
/// The input is assumed well typed; types are never re-checked here.
std::optional<Term> reduce_step(const Term& term);

struct NormalizeResult {
  Term term;
  long steps;
};

inline constexpr long kDefaultFuel = 100000;

/// Iterates reduce_step to the (unique) normal form.
/// Throws FuelExhaustedError when `fuel` steps are not enough.
NormalizeResult normalize(const Term& term, long fuel = kDefaultFuel);

}  // namespace sema::kernel
