#pragma once

#include <memory>
#include <set>
#include <string>

namespace sema::kernel {

/// Types of the second-order calculus: base sorts, type variables (free by
/// name, bound by de Bruijn index), arrows, and universal quantification.
/// Values are immutable and cheap to copy. Binders are nameless; the hint is
/// only used for printing, so structural equality is alpha-equivalence.
class Type {
 public:
  enum class Kind { Sort, FreeVar, BoundVar, Arrow, Forall };

  static Type sort(std::string name);
  static Type free_var(std::string name);
  static Type bound_var(int index);
  static Type arrow(Type domain, Type codomain);
  /// Body is already in nameless form (index 0 refers to this binder).
  static Type forall(std::string hint, Type body);
  /// Binds every free occurrence of `name` in `body`.
  static Type forall_over(const std::string& name, Type body);

  /// The proposition sort t.
  static const Type& prop();

  Kind kind() const;
  bool is_sort() const { return kind() == Kind::Sort; }
  bool is_free_var() const { return kind() == Kind::FreeVar; }
  bool is_bound_var() const { return kind() == Kind::BoundVar; }
  bool is_arrow() const { return kind() == Kind::Arrow; }
  bool is_forall() const { return kind() == Kind::Forall; }
  bool is_prop() const;

  const std::string& name() const;  // Sort, FreeVar
  int index() const;                // BoundVar
  const Type& domain() const;       // Arrow
  const Type& codomain() const;     // Arrow
  const std::string& binder_hint() const;  // Forall
  const Type& body() const;                // Forall

  std::set<std::string> free_vars() const;
  bool mentions_free(const std::string& name) const;
  /// True when every bound index resolves within the type.
  bool closed() const;

  /// S-expression rendering: t, Name, (-> A B), (pi X T).
  std::string str() const;

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend int compare(const Type& a, const Type& b);
};

int compare(const Type& a, const Type& b);
inline bool operator==(const Type& a, const Type& b) { return compare(a, b) == 0; }
inline bool operator!=(const Type& a, const Type& b) { return compare(a, b) != 0; }
inline bool operator<(const Type& a, const Type& b) { return compare(a, b) < 0; }

/// Alpha-equivalence (binder hints are ignored by comparison already).
inline bool alpha_eq(const Type& a, const Type& b) { return a == b; }

/// Capture-avoiding substitution of a free type variable.
Type subst_type(const Type& target, const std::string& tyvar, const Type& replacement);

/// Shift dangling bound indices >= cutoff by delta.
Type shift_type(const Type& type, int delta, int cutoff);

/// Instantiate the body of an eliminated Forall binder with `arg`.
/// `depth` is the number of type binders already crossed (0 at the binder).
Type open_type(const Type& body, const Type& arg, int depth = 0);

/// Inverse of open: turn free occurrences of `name` into a bound index.
Type close_type(const Type& type, const std::string& name, int depth = 0);

}  // namespace sema::kernel
