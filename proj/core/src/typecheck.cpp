#include "sema/typecheck.hpp"

#include <vector>

namespace sema::kernel {

Signature::Signature() { sorts_.insert("t"); }

void Signature::declare_sort(const std::string& name) {
  if (name.empty())
    throw TypeError(TypeErrorKind::IllFormed, "empty sort name");
  if (!sorts_.insert(name).second)
    throw TypeError(TypeErrorKind::IllFormed, "duplicate sort " + name);
}

namespace {
void check_sorts_registered(const Type& t, const std::set<std::string>& sorts) {
  switch (t.kind()) {
    case Type::Kind::Sort:
      if (!sorts.count(t.name()))
        throw TypeError(TypeErrorKind::UnknownSort, t.name());
      return;
    case Type::Kind::Arrow:
      check_sorts_registered(t.domain(), sorts);
      check_sorts_registered(t.codomain(), sorts);
      return;
    case Type::Kind::Forall:
      check_sorts_registered(t.body(), sorts);
      return;
    default:
      return;
  }
}
}  // namespace

void Signature::declare_const(const std::string& name, Type type) {
  if (name.empty())
    throw TypeError(TypeErrorKind::IllFormed, "empty constant name");
  if (consts_.count(name))
    throw TypeError(TypeErrorKind::IllFormed, "duplicate constant " + name);
  if (!type.closed() || !type.free_vars().empty())
    throw TypeError(TypeErrorKind::IllFormed,
                    "constant " + name + " must have a closed type");
  check_sorts_registered(type, sorts_);
  consts_.emplace(name, std::move(type));
}

bool Signature::has_sort(const std::string& name) const {
  return sorts_.count(name) != 0;
}
bool Signature::has_const(const std::string& name) const {
  return consts_.count(name) != 0;
}
const Type& Signature::const_type(const std::string& name) const {
  auto it = consts_.find(name);
  if (it == consts_.end())
    throw TypeError(TypeErrorKind::UnknownConstant, name);
  return it->second;
}

namespace {

// True when `ty`, occurring under `foralls` type binders of its own, mentions
// the bound type index `target` counted from outside those binders.
bool mentions_bound(const Type& ty, int target, int foralls = 0) {
  switch (ty.kind()) {
    case Type::Kind::BoundVar: return ty.index() == target + foralls;
    case Type::Kind::Arrow:
      return mentions_bound(ty.domain(), target, foralls) ||
             mentions_bound(ty.codomain(), target, foralls);
    case Type::Kind::Forall:
      return mentions_bound(ty.body(), target, foralls + 1);
    default: return false;
  }
}

// The generalisation side condition: the binder being introduced must not
// occur in the type of any free variable of the body. Bound variables whose
// binder lies outside the new type binder cannot mention it, so only named
// free variables need scanning.
void scan_generalisation(const Term& body, const std::string& binder_hint) {
  struct Scan {
    const std::string& hint;
    void go(const Term& t, int rel) {
      switch (t.kind()) {
        case Term::Kind::FreeVar:
          if (mentions_bound(t.type(), rel))
            throw TypeError(TypeErrorKind::GeneralisationViolation,
                            "cannot generalise " +
                                (hint.empty() ? std::string("type variable")
                                              : hint) +
                                ": it occurs in the type of free variable " +
                                t.name());
          return;
        case Term::Kind::Const:
        case Term::Kind::BoundVar:
          return;
        case Term::Kind::App:
          go(t.fun(), rel);
          go(t.arg(), rel);
          return;
        case Term::Kind::Abs:
          go(t.body(), rel);
          return;
        case Term::Kind::TyApp:
          go(t.tyfun(), rel);
          return;
        case Term::Kind::TyAbs:
          go(t.body(), rel + 1);
          return;
      }
    }
  } s{binder_hint};
  s.go(body, 0);
}

struct Checker {
  const Signature* sig;   // null: trust carried annotations
  const TypeEnv* env;     // null: trust carried annotations
  // Stack of binder annotations with the type-binder depth they were
  // recorded at; lookups shift dangling indices by the depth difference.
  std::vector<std::pair<Type, int>> bound;
  int tydepth = 0;

  void validate(const Type& t) const {
    if (sig) check_sorts_registered(t, sig->sorts());
  }

  Type go(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::FreeVar: {
        validate(t.type());
        if (env) {
          auto it = env->find(t.name());
          if (it == env->end())
            throw TypeError(TypeErrorKind::UnboundVariable, t.name());
          if (it->second != t.type())
            throw TypeError(TypeErrorKind::EnvMismatch,
                            t.name() + " carries " + t.type().str() +
                                " but the environment declares " +
                                it->second.str());
        }
        return t.type();
      }
      case Term::Kind::Const: {
        validate(t.type());
        if (sig) {
          if (!sig->has_const(t.name()))
            throw TypeError(TypeErrorKind::UnknownConstant, t.name());
          if (sig->const_type(t.name()) != t.type())
            throw TypeError(TypeErrorKind::ConstantMismatch,
                            t.name() + " carries " + t.type().str() +
                                " but is declared at " +
                                sig->const_type(t.name()).str());
        }
        return t.type();
      }
      case Term::Kind::BoundVar: {
        int i = t.index();
        if (i < 0 || i >= static_cast<int>(bound.size()))
          throw TypeError(TypeErrorKind::UnboundVariable,
                          "dangling bound index " + std::to_string(i));
        const auto& [ty, at] = bound[bound.size() - 1 - i];
        return shift_type(ty, tydepth - at, 0);
      }
      case Term::Kind::App: {
        Type f = go(t.fun());
        Type a = go(t.arg());
        if (!f.is_arrow())
          throw TypeError(TypeErrorKind::ApplicationMismatch,
                          "functor of type " + f.str() + " is not a function");
        if (f.domain() != a)
          throw TypeError(TypeErrorKind::ApplicationMismatch,
                          "expected " + f.domain().str() + ", found " + a.str());
        return f.codomain();
      }
      case Term::Kind::Abs: {
        validate(t.binder_type());
        bound.emplace_back(t.binder_type(), tydepth);
        Type b = go(t.body());
        bound.pop_back();
        return Type::arrow(t.binder_type(), b);
      }
      case Term::Kind::TyApp: {
        Type f = go(t.tyfun());
        if (!f.is_forall())
          throw TypeError(TypeErrorKind::SpecialisationOfNonPi,
                          "term of type " + f.str() +
                              " cannot be specialised");
        validate(t.tyarg());
        return open_type(f.body(), t.tyarg(), 0);
      }
      case Term::Kind::TyAbs: {
        scan_generalisation(t.body(), t.binder_hint());
        ++tydepth;
        Type b = go(t.body());
        --tydepth;
        return Type::forall(t.binder_hint(), b);
      }
    }
    throw TypeError(TypeErrorKind::IllFormed, "unreachable term kind");
  }
};

}  // namespace

Type type_of(const Term& term, const Signature& sig, const TypeEnv& env) {
  Checker c{&sig, &env, {}, 0};
  return c.go(term);
}

Type infer_type(const Term& term) {
  Checker c{nullptr, nullptr, {}, 0};
  return c.go(term);
}

}  // namespace sema::kernel
