#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sema/errors.hpp"
#include "sema/type.hpp"

namespace sema::kernel {

/// Terms of the calculus. Like types, binders are nameless (de Bruijn
/// indices) and carry only a printing hint, so comparison is
/// alpha-equivalence over both term and type binders. Free variables and
/// constants carry their types.
class Term {
 public:
  enum class Kind { FreeVar, BoundVar, Const, App, Abs, TyApp, TyAbs };

  static Term var(std::string name, Type type);
  static Term bound(int index);
  static Term constant(std::string name, Type type);
  static Term app(Term fun, Term arg);
  /// Raw abstraction: body already uses index 0 for this binder.
  static Term abs(std::string hint, Type binder_type, Term body);
  /// Binds free occurrences of `name` in `body`.
  static Term lam(const std::string& name, Type binder_type, Term body);
  static Term tyapp(Term fun, Type arg);
  /// Raw type abstraction: body's types already use index 0 for this binder.
  static Term tyabs(std::string hint, Term body);
  /// Binds free occurrences of the type variable `name` in `body`.
  static Term tlam(const std::string& name, Term body);

  Kind kind() const;
  bool is_free_var() const { return kind() == Kind::FreeVar; }
  bool is_bound_var() const { return kind() == Kind::BoundVar; }
  bool is_const() const { return kind() == Kind::Const; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_abs() const { return kind() == Kind::Abs; }
  bool is_tyapp() const { return kind() == Kind::TyApp; }
  bool is_tyabs() const { return kind() == Kind::TyAbs; }

  const std::string& name() const;  // FreeVar, Const
  const Type& type() const;         // FreeVar, Const
  int index() const;                // BoundVar
  const Term& fun() const;          // App
  const Term& arg() const;          // App
  const std::string& binder_hint() const;  // Abs, TyAbs
  const Type& binder_type() const;         // Abs
  const Term& body() const;                // Abs, TyAbs
  const Term& tyfun() const;               // TyApp
  const Type& tyarg() const;               // TyApp

  /// Free term variables with their carried types.
  std::map<std::string, Type> free_vars() const;
  /// Free type variables occurring in any contained type.
  std::set<std::string> free_tyvars() const;
  /// True when every bound index (term and type) resolves within the term.
  bool closed() const;
  /// No beta redex and no type-beta redex anywhere.
  bool is_normal() const;

  /// S-expression rendering with flattened application spines.
  std::string str() const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend int compare(const Term& a, const Term& b);
};

int compare(const Term& a, const Term& b);
inline bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
inline bool operator!=(const Term& a, const Term& b) { return compare(a, b) != 0; }
inline bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

inline bool alpha_eq(const Term& a, const Term& b) { return a == b; }

/// Capture-avoiding substitution of the free variable `var`.
/// The replacement must have the type carried by the substituted occurrences.
Term subst_term(const Term& body, const std::string& var, const Term& replacement);

/// Capture-avoiding substitution of a free type variable in every contained type.
Term subst_type_in_term(const Term& target, const std::string& tyvar,
                        const Type& replacement);

/// Beta: instantiate the body of an eliminated Abs with `arg`.
Term open_term(const Term& body, const Term& arg);

/// Type beta: instantiate the body of an eliminated TyAbs with `arg`.
Term open_term_type(const Term& body, const Type& arg);

/// One element of an application spine: either a term or a type argument.
using SpineItem = std::variant<Term, Type>;

/// Unwinds nested App/TyApp into head and argument list.
std::pair<Term, std::vector<SpineItem>> spine(const Term& t);

}  // namespace sema::kernel
