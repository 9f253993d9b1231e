#include "sema/term.hpp"

#include <variant>

namespace sema::kernel {

namespace {
struct FreeV {
  std::string name;
  Type type;
};
struct BoundV {
  int index;
};
struct ConstV {
  std::string name;
  Type type;
};
struct AppV {
  Term fun;
  Term arg;
};
struct AbsV {
  std::string hint;
  Type binder_type;
  Term body;
};
struct TyAppV {
  Term fun;
  Type arg;
};
struct TyAbsV {
  std::string hint;
  Term body;
};
}  // namespace

struct Term::Node {
  std::variant<FreeV, BoundV, ConstV, AppV, AbsV, TyAppV, TyAbsV> v;
};

Term Term::var(std::string name, Type type) {
  return Term(std::make_shared<const Node>(
      Node{FreeV{std::move(name), std::move(type)}}));
}
Term Term::bound(int index) {
  return Term(std::make_shared<const Node>(Node{BoundV{index}}));
}
Term Term::constant(std::string name, Type type) {
  return Term(std::make_shared<const Node>(
      Node{ConstV{std::move(name), std::move(type)}}));
}
Term Term::app(Term fun, Term arg) {
  return Term(std::make_shared<const Node>(
      Node{AppV{std::move(fun), std::move(arg)}}));
}
Term Term::abs(std::string hint, Type binder_type, Term body) {
  return Term(std::make_shared<const Node>(
      Node{AbsV{std::move(hint), std::move(binder_type), std::move(body)}}));
}
Term Term::tyapp(Term fun, Type arg) {
  return Term(std::make_shared<const Node>(
      Node{TyAppV{std::move(fun), std::move(arg)}}));
}
Term Term::tyabs(std::string hint, Term body) {
  return Term(std::make_shared<const Node>(
      Node{TyAbsV{std::move(hint), std::move(body)}}));
}

Term::Kind Term::kind() const { return static_cast<Kind>(node_->v.index()); }

const std::string& Term::name() const {
  if (auto* f = std::get_if<FreeV>(&node_->v)) return f->name;
  return std::get<ConstV>(node_->v).name;
}
const Type& Term::type() const {
  if (auto* f = std::get_if<FreeV>(&node_->v)) return f->type;
  return std::get<ConstV>(node_->v).type;
}
int Term::index() const { return std::get<BoundV>(node_->v).index; }
const Term& Term::fun() const { return std::get<AppV>(node_->v).fun; }
const Term& Term::arg() const { return std::get<AppV>(node_->v).arg; }
const std::string& Term::binder_hint() const {
  if (auto* a = std::get_if<AbsV>(&node_->v)) return a->hint;
  return std::get<TyAbsV>(node_->v).hint;
}
const Type& Term::binder_type() const { return std::get<AbsV>(node_->v).binder_type; }
const Term& Term::body() const {
  if (auto* a = std::get_if<AbsV>(&node_->v)) return a->body;
  return std::get<TyAbsV>(node_->v).body;
}
const Term& Term::tyfun() const { return std::get<TyAppV>(node_->v).fun; }
const Type& Term::tyarg() const { return std::get<TyAppV>(node_->v).arg; }

int compare(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return 0;
  auto ka = static_cast<int>(a.kind());
  auto kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case Term::Kind::FreeVar:
    case Term::Kind::Const: {
      int c = a.name().compare(b.name());
      return c != 0 ? c : compare(a.type(), b.type());
    }
    case Term::Kind::BoundVar:
      return a.index() == b.index() ? 0 : (a.index() < b.index() ? -1 : 1);
    case Term::Kind::App: {
      int c = compare(a.fun(), b.fun());
      return c != 0 ? c : compare(a.arg(), b.arg());
    }
    case Term::Kind::Abs: {
      int c = compare(a.binder_type(), b.binder_type());
      return c != 0 ? c : compare(a.body(), b.body());
    }
    case Term::Kind::TyApp: {
      int c = compare(a.tyfun(), b.tyfun());
      return c != 0 ? c : compare(a.tyarg(), b.tyarg());
    }
    case Term::Kind::TyAbs:
      return compare(a.body(), b.body());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Index plumbing.

namespace {

// Shift dangling term indices >= cutoff by delta.
Term shift_term(const Term& t, int delta, int cutoff) {
  if (delta == 0) return t;
  switch (t.kind()) {
    case Term::Kind::FreeVar:
    case Term::Kind::Const:
      return t;
    case Term::Kind::BoundVar:
      return t.index() >= cutoff ? Term::bound(t.index() + delta) : t;
    case Term::Kind::App:
      return Term::app(shift_term(t.fun(), delta, cutoff),
                       shift_term(t.arg(), delta, cutoff));
    case Term::Kind::Abs:
      return Term::abs(t.binder_hint(), t.binder_type(),
                       shift_term(t.body(), delta, cutoff + 1));
    case Term::Kind::TyApp:
      return Term::tyapp(shift_term(t.tyfun(), delta, cutoff), t.tyarg());
    case Term::Kind::TyAbs:
      return Term::tyabs(t.binder_hint(), shift_term(t.body(), delta, cutoff));
  }
  return t;
}

// Shift dangling type indices (in every contained type) >= cutoff by delta.
Term shift_types_in_term(const Term& t, int delta, int cutoff) {
  if (delta == 0) return t;
  switch (t.kind()) {
    case Term::Kind::FreeVar:
      return Term::var(t.name(), shift_type(t.type(), delta, cutoff));
    case Term::Kind::Const:
      return Term::constant(t.name(), shift_type(t.type(), delta, cutoff));
    case Term::Kind::BoundVar:
      return t;
    case Term::Kind::App:
      return Term::app(shift_types_in_term(t.fun(), delta, cutoff),
                       shift_types_in_term(t.arg(), delta, cutoff));
    case Term::Kind::Abs:
      return Term::abs(t.binder_hint(), shift_type(t.binder_type(), delta, cutoff),
                       shift_types_in_term(t.body(), delta, cutoff));
    case Term::Kind::TyApp:
      return Term::tyapp(shift_types_in_term(t.tyfun(), delta, cutoff),
                         shift_type(t.tyarg(), delta, cutoff));
    case Term::Kind::TyAbs:
      return Term::tyabs(t.binder_hint(),
                         shift_types_in_term(t.body(), delta, cutoff + 1));
  }
  return t;
}

Term open_term_go(const Term& t, const Term& arg, int dterm, int dty) {
  switch (t.kind()) {
    case Term::Kind::FreeVar:
    case Term::Kind::Const:
      return t;
    case Term::Kind::BoundVar: {
      int i = t.index();
      if (i == dterm)
        return shift_types_in_term(shift_term(arg, dterm, 0), dty, 0);
      if (i > dterm) return Term::bound(i - 1);
      return t;
    }
    case Term::Kind::App:
      return Term::app(open_term_go(t.fun(), arg, dterm, dty),
                       open_term_go(t.arg(), arg, dterm, dty));
    case Term::Kind::Abs:
      return Term::abs(t.binder_hint(), t.binder_type(),
                       open_term_go(t.body(), arg, dterm + 1, dty));
    case Term::Kind::TyApp:
      return Term::tyapp(open_term_go(t.tyfun(), arg, dterm, dty), t.tyarg());
    case Term::Kind::TyAbs:
      return Term::tyabs(t.binder_hint(),
                         open_term_go(t.body(), arg, dterm, dty + 1));
  }
  return t;
}

Term open_term_type_go(const Term& t, const Type& arg, int dty) {
  switch (t.kind()) {
    case Term::Kind::FreeVar:
      return Term::var(t.name(), open_type(t.type(), arg, dty));
    case Term::Kind::Const:
      return Term::constant(t.name(), open_type(t.type(), arg, dty));
    case Term::Kind::BoundVar:
      return t;
    case Term::Kind::App:
      return Term::app(open_term_type_go(t.fun(), arg, dty),
                       open_term_type_go(t.arg(), arg, dty));
    case Term::Kind::Abs:
      return Term::abs(t.binder_hint(), open_type(t.binder_type(), arg, dty),
                       open_term_type_go(t.body(), arg, dty));
    case Term::Kind::TyApp:
      return Term::tyapp(open_term_type_go(t.tyfun(), arg, dty),
                         open_type(t.tyarg(), arg, dty));
    case Term::Kind::TyAbs:
      return Term::tyabs(t.binder_hint(),
                         open_term_type_go(t.body(), arg, dty + 1));
  }
  return t;
}

Term close_var_go(const Term& t, const std::string& name, int depth) {
  switch (t.kind()) {
    case Term::Kind::FreeVar:
      return t.name() == name ? Term::bound(depth) : t;
    case Term::Kind::Const:
    case Term::Kind::BoundVar:
      return t;
    case Term::Kind::App:
      return Term::app(close_var_go(t.fun(), name, depth),
                       close_var_go(t.arg(), name, depth));
    case Term::Kind::Abs:
      return Term::abs(t.binder_hint(), t.binder_type(),
                       close_var_go(t.body(), name, depth + 1));
    case Term::Kind::TyApp:
      return Term::tyapp(close_var_go(t.tyfun(), name, depth), t.tyarg());
    case Term::Kind::TyAbs:
      return Term::tyabs(t.binder_hint(), close_var_go(t.body(), name, depth));
  }
  return t;
}

// Constants keep their signature-given types: only variable annotations and
// type arguments can refer to an enclosing type binder.
Term close_tyvar_go(const Term& t, const std::string& name, int depth) {
  switch (t.kind()) {
    case Term::Kind::FreeVar:
      return Term::var(t.name(), close_type(t.type(), name, depth));
    case Term::Kind::Const:
    case Term::Kind::BoundVar:
      return t;
    case Term::Kind::App:
      return Term::app(close_tyvar_go(t.fun(), name, depth),
                       close_tyvar_go(t.arg(), name, depth));
    case Term::Kind::Abs:
      return Term::abs(t.binder_hint(), close_type(t.binder_type(), name, depth),
                       close_tyvar_go(t.body(), name, depth));
    case Term::Kind::TyApp:
      return Term::tyapp(close_tyvar_go(t.tyfun(), name, depth),
                         close_type(t.tyarg(), name, depth));
    case Term::Kind::TyAbs:
      return Term::tyabs(t.binder_hint(),
                         close_tyvar_go(t.body(), name, depth + 1));
  }
  return t;
}

}  // namespace

Term Term::lam(const std::string& name, Type binder_type, Term body) {
  return abs(name, std::move(binder_type), close_var_go(body, name, 0));
}

Term Term::tlam(const std::string& name, Term body) {
  return tyabs(name, close_tyvar_go(body, name, 0));
}

Term open_term(const Term& body, const Term& arg) {
  return open_term_go(body, arg, 0, 0);
}

Term open_term_type(const Term& body, const Type& arg) {
  return open_term_type_go(body, arg, 0);
}

Term subst_type_in_term(const Term& target, const std::string& tyvar,
                        const Type& replacement) {
  switch (target.kind()) {
    case Term::Kind::FreeVar:
      return Term::var(target.name(),
                       subst_type(target.type(), tyvar, replacement));
    case Term::Kind::Const:
    case Term::Kind::BoundVar:
      return target;
    case Term::Kind::App:
      return Term::app(subst_type_in_term(target.fun(), tyvar, replacement),
                       subst_type_in_term(target.arg(), tyvar, replacement));
    case Term::Kind::Abs:
      return Term::abs(target.binder_hint(),
                       subst_type(target.binder_type(), tyvar, replacement),
                       subst_type_in_term(target.body(), tyvar, replacement));
    case Term::Kind::TyApp:
      return Term::tyapp(subst_type_in_term(target.tyfun(), tyvar, replacement),
                         subst_type(target.tyarg(), tyvar, replacement));
    case Term::Kind::TyAbs:
      return Term::tyabs(target.binder_hint(),
                         subst_type_in_term(target.body(), tyvar, replacement));
  }
  return target;
}

// ---------------------------------------------------------------------------
// Queries.

std::map<std::string, Type> Term::free_vars() const {
  std::map<std::string, Type> out;
  struct Walk {
    std::map<std::string, Type>& out;
    void go(const Term& t) {
      switch (t.kind()) {
        case Kind::FreeVar: out.emplace(t.name(), t.type()); break;
        case Kind::App: go(t.fun()); go(t.arg()); break;
        case Kind::Abs: go(t.body()); break;
        case Kind::TyApp: go(t.tyfun()); break;
        case Kind::TyAbs: go(t.body()); break;
        default: break;
      }
    }
  } w{out};
  w.go(*this);
  return out;
}

std::set<std::string> Term::free_tyvars() const {
  std::set<std::string> out;
  struct Walk {
    std::set<std::string>& out;
    void add(const Type& ty) {
      auto fv = ty.free_vars();
      out.insert(fv.begin(), fv.end());
    }
    void go(const Term& t) {
      switch (t.kind()) {
        case Kind::FreeVar:
        case Kind::Const: add(t.type()); break;
        case Kind::App: go(t.fun()); go(t.arg()); break;
        case Kind::Abs: add(t.binder_type()); go(t.body()); break;
        case Kind::TyApp: go(t.tyfun()); add(t.tyarg()); break;
        case Kind::TyAbs: go(t.body()); break;
        default: break;
      }
    }
  } w{out};
  w.go(*this);
  return out;
}

namespace {
bool type_closed_at(const Type& ty, int dty) {
  // A type occurring under dty type binders may refer to them.
  struct Walk {
    bool at(const Type& t, int depth) {
      switch (t.kind()) {
        case Type::Kind::BoundVar: return t.index() < depth;
        case Type::Kind::Arrow:
          return at(t.domain(), depth) && at(t.codomain(), depth);
        case Type::Kind::Forall: return at(t.body(), depth + 1);
        default: return true;
      }
    }
  } w;
  return w.at(ty, dty);
}

bool term_closed_at(const Term& t, int dterm, int dty) {
  switch (t.kind()) {
    case Term::Kind::FreeVar:
      return type_closed_at(t.type(), dty);
    case Term::Kind::Const:
      return type_closed_at(t.type(), dty);
    case Term::Kind::BoundVar:
      return t.index() < dterm;
    case Term::Kind::App:
      return term_closed_at(t.fun(), dterm, dty) &&
             term_closed_at(t.arg(), dterm, dty);
    case Term::Kind::Abs:
      return type_closed_at(t.binder_type(), dty) &&
             term_closed_at(t.body(), dterm + 1, dty);
    case Term::Kind::TyApp:
      return term_closed_at(t.tyfun(), dterm, dty) &&
             type_closed_at(t.tyarg(), dty);
    case Term::Kind::TyAbs:
      return term_closed_at(t.body(), dterm, dty + 1);
  }
  return true;
}
}  // namespace

bool Term::closed() const { return term_closed_at(*this, 0, 0); }

bool Term::is_normal() const {
  switch (kind()) {
    case Kind::FreeVar:
    case Kind::BoundVar:
    case Kind::Const:
      return true;
    case Kind::App:
      return !fun().is_abs() && fun().is_normal() && arg().is_normal();
    case Kind::Abs:
      return body().is_normal();
    case Kind::TyApp:
      return !tyfun().is_tyabs() && tyfun().is_normal();
    case Kind::TyAbs:
      return body().is_normal();
  }
  return true;
}

std::pair<Term, std::vector<SpineItem>> spine(const Term& t) {
  std::vector<SpineItem> items;
  Term head = t;
  while (true) {
    if (head.is_app()) {
      items.push_back(SpineItem{head.arg()});
      head = head.fun();
    } else if (head.is_tyapp()) {
      items.push_back(SpineItem{head.tyarg()});
      head = head.tyfun();
    } else {
      break;
    }
  }
  std::reverse(items.begin(), items.end());
  return {head, std::move(items)};
}

// ---------------------------------------------------------------------------
// Printing.

namespace {

void collect_taken(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::FreeVar:
    case Term::Kind::Const:
      out.insert(t.name());
      return;
    case Term::Kind::BoundVar:
      return;
    case Term::Kind::App:
      collect_taken(t.fun(), out);
      collect_taken(t.arg(), out);
      return;
    case Term::Kind::Abs:
    case Term::Kind::TyAbs:
      collect_taken(t.body(), out);
      return;
    case Term::Kind::TyApp:
      collect_taken(t.tyfun(), out);
      return;
  }
}

std::string pick(const std::string& hint, const std::set<std::string>& taken,
                 const char* fallback) {
  std::string base = hint.empty() ? fallback : hint;
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

struct Printer {
  std::vector<std::string> term_scope;
  std::vector<std::string> ty_scope;
  std::set<std::string> taken;

  std::string ty(const Type& t) {
    // Reuse the Type renderer but resolve indices bound by enclosing TyAbs.
    switch (t.kind()) {
      case Type::Kind::Sort:
      case Type::Kind::FreeVar:
        return t.name();
      case Type::Kind::BoundVar: {
        int i = t.index();
        if (i >= 0 && i < static_cast<int>(ty_scope.size()))
          return ty_scope[ty_scope.size() - 1 - i];
        return "#" + std::to_string(i);
      }
      case Type::Kind::Arrow:
        return "(-> " + ty(t.domain()) + ' ' + ty(t.codomain()) + ')';
      case Type::Kind::Forall: {
        std::string x = pick(t.binder_hint(), taken, "X");
        taken.insert(x);
        ty_scope.push_back(x);
        std::string body = ty(t.body());
        ty_scope.pop_back();
        taken.erase(x);
        return "(pi " + x + ' ' + body + ')';
      }
    }
    return "?";
  }

  std::string go(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::FreeVar:
      case Term::Kind::Const:
        return t.name();
      case Term::Kind::BoundVar: {
        int i = t.index();
        if (i >= 0 && i < static_cast<int>(term_scope.size()))
          return term_scope[term_scope.size() - 1 - i];
        return "#" + std::to_string(i);
      }
      case Term::Kind::App:
      case Term::Kind::TyApp: {
        auto [head, items] = spine(t);
        std::string out = "(" + go(head);
        for (const auto& it : items) {
          if (std::holds_alternative<Type>(it))
            out += " {" + ty(std::get<Type>(it)) + '}';
          else
            out += ' ' + go(std::get<Term>(it));
        }
        return out + ')';
      }
      case Term::Kind::Abs: {
        std::string x = pick(t.binder_hint(), taken, "x");
        std::string annot = ty(t.binder_type());
        taken.insert(x);
        term_scope.push_back(x);
        std::string body = go(t.body());
        term_scope.pop_back();
        taken.erase(x);
        return "(lam " + x + ' ' + annot + ' ' + body + ')';
      }
      case Term::Kind::TyAbs: {
        std::string x = pick(t.binder_hint(), taken, "X");
        taken.insert(x);
        ty_scope.push_back(x);
        std::string body = go(t.body());
        ty_scope.pop_back();
        taken.erase(x);
        return "(tlam " + x + ' ' + body + ')';
      }
    }
    return "?";
  }
};

}  // namespace

std::string Term::str() const {
  Printer p;
  collect_taken(*this, p.taken);
  for (const auto& tv : free_tyvars()) p.taken.insert(tv);
  p.taken.insert("t");
  return p.go(*this);
}

// subst_term lives here; the type of the replacement is re-derived by the
// annotation checker in typecheck.cpp.
Type infer_type(const Term& term);

Term subst_term(const Term& body, const std::string& var, const Term& replacement) {
  // Find the type the occurrences carry, if any.
  const auto fv = body.free_vars();
  auto it = fv.find(var);
  if (it != fv.end()) {
    Type rep_ty = infer_type(replacement);
    if (rep_ty != it->second) {
      throw TypeError(TypeErrorKind::TypeMismatch,
                      "cannot substitute " + var + " : " + it->second.str() +
                          " by a term of type " + rep_ty.str());
    }
  }
  struct Subst {
    const std::string& var;
    const Term& rep;
    Term go(const Term& t) {
      switch (t.kind()) {
        case Term::Kind::FreeVar:
          return t.name() == var ? rep : t;
        case Term::Kind::Const:
        case Term::Kind::BoundVar:
          return t;
        case Term::Kind::App:
          return Term::app(go(t.fun()), go(t.arg()));
        case Term::Kind::Abs:
          return Term::abs(t.binder_hint(), t.binder_type(), go(t.body()));
        case Term::Kind::TyApp:
          return Term::tyapp(go(t.tyfun()), t.tyarg());
        case Term::Kind::TyAbs:
          return Term::tyabs(t.binder_hint(), go(t.body()));
      }
      return t;
    }
  } s{var, replacement};
  return s.go(body);
}

}  // namespace sema::kernel
