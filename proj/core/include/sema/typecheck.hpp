#pragma once

#include <map>
#include <set>
#include <string>

#include "sema/errors.hpp"
#include "sema/term.hpp"
#include "sema/type.hpp"

namespace sema::kernel {

/// Constant declarations over a closed registry of base sorts.
/// The proposition sort t is always registered.
class Signature {
 public:
  Signature();

  void declare_sort(const std::string& name);
  /// Validates that every base sort in `type` is registered, that the type
  /// is closed, and that the name is not taken.
  void declare_const(const std::string& name, Type type);

  bool has_sort(const std::string& name) const;
  bool has_const(const std::string& name) const;
  const Type& const_type(const std::string& name) const;  // throws UnknownConstant

  const std::set<std::string>& sorts() const { return sorts_; }
  const std::map<std::string, Type>& constants() const { return consts_; }

 private:
  std::set<std::string> sorts_;
  std::map<std::string, Type> consts_;
};

using TypeEnv = std::map<std::string, Type>;

/// Type of a term under a signature and an environment for free variables.
/// Rejects type generalisation over a variable that occurs in the type of a
/// free variable of the body.
Type type_of(const Term& term, const Signature& sig, const TypeEnv& env = {});

/// Annotation-driven variant: trusts carried types, skipping signature and
/// environment validation. Still rejects structural errors.
Type infer_type(const Term& term);

}  // namespace sema::kernel
