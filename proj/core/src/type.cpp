#include "sema/type.hpp"

#include <variant>
#include <vector>

#include "sema/errors.hpp"

namespace sema::kernel {

namespace {
struct SortV {
  std::string name;
};
struct FreeV {
  std::string name;
};
struct BoundV {
  int index;
};
struct ArrowV {
  Type dom;
  Type cod;
};
struct ForallV {
  std::string hint;
  Type body;
};
}  // namespace

struct Type::Node {
  std::variant<SortV, FreeV, BoundV, ArrowV, ForallV> v;
};

Type Type::sort(std::string name) {
  return Type(std::make_shared<const Node>(Node{SortV{std::move(name)}}));
}
Type Type::free_var(std::string name) {
  return Type(std::make_shared<const Node>(Node{FreeV{std::move(name)}}));
}
Type Type::bound_var(int index) {
  return Type(std::make_shared<const Node>(Node{BoundV{index}}));
}
Type Type::arrow(Type domain, Type codomain) {
  return Type(std::make_shared<const Node>(
      Node{ArrowV{std::move(domain), std::move(codomain)}}));
}
Type Type::forall(std::string hint, Type body) {
  return Type(std::make_shared<const Node>(
      Node{ForallV{std::move(hint), std::move(body)}}));
}
Type Type::forall_over(const std::string& name, Type body) {
  return forall(name, close_type(body, name, 0));
}

const Type& Type::prop() {
  static const Type t = Type::sort("t");
  return t;
}

Type::Kind Type::kind() const {
  return static_cast<Kind>(node_->v.index());
}

bool Type::is_prop() const { return is_sort() && name() == "t"; }

const std::string& Type::name() const {
  if (auto* s = std::get_if<SortV>(&node_->v)) return s->name;
  return std::get<FreeV>(node_->v).name;
}
int Type::index() const { return std::get<BoundV>(node_->v).index; }
const Type& Type::domain() const { return std::get<ArrowV>(node_->v).dom; }
const Type& Type::codomain() const { return std::get<ArrowV>(node_->v).cod; }
const std::string& Type::binder_hint() const {
  return std::get<ForallV>(node_->v).hint;
}
const Type& Type::body() const { return std::get<ForallV>(node_->v).body; }

int compare(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return 0;
  auto ka = static_cast<int>(a.kind());
  auto kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case Type::Kind::Sort:
    case Type::Kind::FreeVar:
      return a.name().compare(b.name());
    case Type::Kind::BoundVar:
      return a.index() == b.index() ? 0 : (a.index() < b.index() ? -1 : 1);
    case Type::Kind::Arrow: {
      int c = compare(a.domain(), b.domain());
      return c != 0 ? c : compare(a.codomain(), b.codomain());
    }
    case Type::Kind::Forall:
      return compare(a.body(), b.body());  // hints do not matter
  }
  return 0;
}

std::set<std::string> Type::free_vars() const {
  std::set<std::string> out;
  struct Walk {
    std::set<std::string>& out;
    void go(const Type& t) {
      switch (t.kind()) {
        case Kind::FreeVar: out.insert(t.name()); break;
        case Kind::Arrow: go(t.domain()); go(t.codomain()); break;
        case Kind::Forall: go(t.body()); break;
        default: break;
      }
    }
  } w{out};
  w.go(*this);
  return out;
}

bool Type::mentions_free(const std::string& n) const {
  switch (kind()) {
    case Kind::FreeVar: return name() == n;
    case Kind::Arrow: return domain().mentions_free(n) || codomain().mentions_free(n);
    case Kind::Forall: return body().mentions_free(n);
    default: return false;
  }
}

namespace {
bool closed_at(const Type& t, int depth) {
  switch (t.kind()) {
    case Type::Kind::BoundVar: return t.index() < depth;
    case Type::Kind::Arrow:
      return closed_at(t.domain(), depth) && closed_at(t.codomain(), depth);
    case Type::Kind::Forall: return closed_at(t.body(), depth + 1);
    default: return true;
  }
}
}  // namespace

bool Type::closed() const { return closed_at(*this, 0); }

Type shift_type(const Type& type, int delta, int cutoff) {
  if (delta == 0) return type;
  switch (type.kind()) {
    case Type::Kind::Sort:
    case Type::Kind::FreeVar:
      return type;
    case Type::Kind::BoundVar:
      return type.index() >= cutoff ? Type::bound_var(type.index() + delta) : type;
    case Type::Kind::Arrow:
      return Type::arrow(shift_type(type.domain(), delta, cutoff),
                         shift_type(type.codomain(), delta, cutoff));
    case Type::Kind::Forall:
      return Type::forall(type.binder_hint(),
                          shift_type(type.body(), delta, cutoff + 1));
  }
  return type;
}

Type open_type(const Type& body, const Type& arg, int depth) {
  switch (body.kind()) {
    case Type::Kind::Sort:
    case Type::Kind::FreeVar:
      return body;
    case Type::Kind::BoundVar: {
      int i = body.index();
      if (i == depth) return shift_type(arg, depth, 0);
      if (i > depth) return Type::bound_var(i - 1);
      return body;
    }
    case Type::Kind::Arrow:
      return Type::arrow(open_type(body.domain(), arg, depth),
                         open_type(body.codomain(), arg, depth));
    case Type::Kind::Forall:
      return Type::forall(body.binder_hint(),
                          open_type(body.body(), arg, depth + 1));
  }
  return body;
}

Type close_type(const Type& type, const std::string& name, int depth) {
  switch (type.kind()) {
    case Type::Kind::Sort:
    case Type::Kind::BoundVar:
      return type;
    case Type::Kind::FreeVar:
      return type.name() == name ? Type::bound_var(depth) : type;
    case Type::Kind::Arrow:
      return Type::arrow(close_type(type.domain(), name, depth),
                         close_type(type.codomain(), name, depth));
    case Type::Kind::Forall:
      return Type::forall(type.binder_hint(),
                          close_type(type.body(), name, depth + 1));
  }
  return type;
}

Type subst_type(const Type& target, const std::string& tyvar, const Type& replacement) {
  switch (target.kind()) {
    case Type::Kind::Sort:
    case Type::Kind::BoundVar:
      return target;
    case Type::Kind::FreeVar:
      return target.name() == tyvar ? replacement : target;
    case Type::Kind::Arrow:
      return Type::arrow(subst_type(target.domain(), tyvar, replacement),
                         subst_type(target.codomain(), tyvar, replacement));
    case Type::Kind::Forall:
      // Bound binders are nameless, so no capture is possible.
      return Type::forall(target.binder_hint(),
                          subst_type(target.body(), tyvar, replacement));
  }
  return target;
}

namespace {
std::string fresh_hint(const std::string& hint, const std::set<std::string>& taken) {
  std::string base = hint.empty() ? "X" : hint;
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

void render(const Type& t, std::vector<std::string>& scope,
            std::set<std::string>& taken, std::string& out) {
  switch (t.kind()) {
    case Type::Kind::Sort:
    case Type::Kind::FreeVar:
      out += t.name();
      return;
    case Type::Kind::BoundVar: {
      int i = t.index();
      if (i >= 0 && i < static_cast<int>(scope.size()))
        out += scope[scope.size() - 1 - i];
      else
        out += "#" + std::to_string(i);
      return;
    }
    case Type::Kind::Arrow:
      out += "(-> ";
      render(t.domain(), scope, taken, out);
      out += ' ';
      render(t.codomain(), scope, taken, out);
      out += ')';
      return;
    case Type::Kind::Forall: {
      std::string x = fresh_hint(t.binder_hint(), taken);
      out += "(pi " + x + ' ';
      scope.push_back(x);
      taken.insert(x);
      render(t.body(), scope, taken, out);
      scope.pop_back();
      taken.erase(x);
      out += ')';
      return;
    }
  }
}
}  // namespace

std::string Type::str() const {
  std::vector<std::string> scope;
  std::set<std::string> taken = free_vars();
  taken.insert("t");
  std::string out;
  render(*this, scope, taken, out);
  return out;
}

const char* to_string(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVariable: return "unbound variable";
    case TypeErrorKind::UnknownConstant: return "unknown constant";
    case TypeErrorKind::ConstantMismatch: return "constant type mismatch";
    case TypeErrorKind::EnvMismatch: return "environment type mismatch";
    case TypeErrorKind::ApplicationMismatch: return "application mismatch";
    case TypeErrorKind::SpecialisationOfNonPi: return "specialisation of non-pi type";
    case TypeErrorKind::GeneralisationViolation: return "generalisation violation";
    case TypeErrorKind::UnknownSort: return "unknown sort";
    case TypeErrorKind::TypeMismatch: return "type mismatch";
    case TypeErrorKind::IllFormed: return "ill-formed term";
  }
  return "type error";
}

}  // namespace sema::kernel
