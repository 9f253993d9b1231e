#pragma once

#include <map>
#include <string>

#include "sema/term.hpp"
#include "sema/typecheck.hpp"

namespace sema::builtin {

// Logical vocabulary shared by every lexicon.
inline constexpr const char* kForall = "forall";      // (pi X (-> (-> X t) t))
inline constexpr const char* kExists = "exists";      // (pi X (-> (-> X t) t))
inline constexpr const char* kSpecimen = "specimen";  // (pi X X)
inline constexpr const char* kSpecimenOf = "specimen_of";  // (pi X (-> (-> X t) X))
inline constexpr const char* kIota = "iota";          // (pi X (-> (-> X t) X))
inline constexpr const char* kAnd = "and";            // (-> t t t)
inline constexpr const char* kOr = "or";              // (-> t t t)
inline constexpr const char* kImpl = "impl";          // (-> t t t)
inline constexpr const char* kNot = "not";            // (-> t t)
inline constexpr const char* kLt = "lt";              // (-> float float t)
inline constexpr const char* kLeq = "leq";            // (-> float float t)
inline constexpr const char* kHeight = "height";      // (pi a (-> a float t))
inline constexpr const char* kPolyAnd = "AND";        // definition, not a constant
inline constexpr const char* kFloat = "float";

/// Signature with the float sort and the constants above declared.
kernel::Signature signature();

/// The predicate-conjunction combinator: specialised to the sorts of two
/// predicates and of their shared argument, it conjoins the predicates over
/// the two transfer images of that argument.
///
///   /\A. /\M. \i:A->t. \h:M->t. /\B. \b:B. \a:B->A. \m:B->M.
///     and (h (m b)) (i (a b))
kernel::Term poly_and();

/// Named definitions spliced by the reader (only AND for now).
const std::map<std::string, kernel::Term>& definitions();

}  // namespace sema::builtin
