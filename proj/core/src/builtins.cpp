#include "sema/builtins.hpp"

namespace sema::builtin {

using kernel::Term;
using kernel::Type;

namespace {

Type tv(const char* n) { return Type::free_var(n); }

Type quantifier_type() {
  // (pi X (-> (-> X t) t))
  return Type::forall_over(
      "X", Type::arrow(Type::arrow(tv("X"), Type::prop()), Type::prop()));
}

Type chooser_type() {
  // (pi X (-> (-> X t) X))
  return Type::forall_over("X",
                           Type::arrow(Type::arrow(tv("X"), Type::prop()), tv("X")));
}

Type binary_prop() {
  return Type::arrow(Type::prop(), Type::arrow(Type::prop(), Type::prop()));
}

}  // namespace

kernel::Signature signature() {
  kernel::Signature sig;
  sig.declare_sort(kFloat);
  Type fl = Type::sort(kFloat);
  sig.declare_const(kForall, quantifier_type());
  sig.declare_const(kExists, quantifier_type());
  sig.declare_const(kSpecimen, Type::forall_over("X", tv("X")));
  sig.declare_const(kSpecimenOf, chooser_type());
  sig.declare_const(kIota, chooser_type());
  sig.declare_const(kAnd, binary_prop());
  sig.declare_const(kOr, binary_prop());
  sig.declare_const(kImpl, binary_prop());
  sig.declare_const(kNot, Type::arrow(Type::prop(), Type::prop()));
  sig.declare_const(kLt, Type::arrow(fl, Type::arrow(fl, Type::prop())));
  sig.declare_const(kLeq, Type::arrow(fl, Type::arrow(fl, Type::prop())));
  sig.declare_const(kHeight,
                    Type::forall_over("a", Type::arrow(tv("a"),
                                                       Type::arrow(fl, Type::prop()))));
  return sig;
}

kernel::Term poly_and() {
  Type t = Type::prop();
  Type A = tv("A"), M = tv("M"), B = tv("B");
  Term i = Term::var("i", Type::arrow(A, t));
  Term h = Term::var("h", Type::arrow(M, t));
  Term b = Term::var("b", B);
  Term a = Term::var("a", Type::arrow(B, A));
  Term m = Term::var("m", Type::arrow(B, M));
  Term conj = Term::constant(kAnd, binary_prop());

  Term body = Term::app(Term::app(conj, Term::app(h, Term::app(m, b))),
                        Term::app(i, Term::app(a, b)));
  Term inner = Term::lam(
      "b", B,
      Term::lam("a", Type::arrow(B, A),
                Term::lam("m", Type::arrow(B, M), body)));
  // The binders whose types mention a type variable close before the
  // variable itself is generalised.
  Term wrapped = Term::lam(
      "i", Type::arrow(A, t),
      Term::lam("h", Type::arrow(M, t), Term::tlam("B", inner)));
  return Term::tlam("A", Term::tlam("M", wrapped));
}

const std::map<std::string, kernel::Term>& definitions() {
  static const std::map<std::string, kernel::Term> defs = {{kPolyAnd, poly_and()}};
  return defs;
}

}  // namespace sema::builtin
