#include "sema/reduce.hpp"

namespace sema::kernel {

std::optional<Term> reduce_step(const Term& term) {
  switch (term.kind()) {
    case Term::Kind::FreeVar:
    case Term::Kind::BoundVar:
    case Term::Kind::Const:
      return std::nullopt;
    case Term::Kind::App: {
      if (term.fun().is_abs())
        return open_term(term.fun().body(), term.arg());
      if (auto s = reduce_step(term.fun()))
        return Term::app(*std::move(s), term.arg());
      if (auto s = reduce_step(term.arg()))
        return Term::app(term.fun(), *std::move(s));
      return std::nullopt;
    }
    case Term::Kind::Abs: {
      if (auto s = reduce_step(term.body()))
        return Term::abs(term.binder_hint(), term.binder_type(), *std::move(s));
      return std::nullopt;
    }
    case Term::Kind::TyApp: {
      if (term.tyfun().is_tyabs())
        return open_term_type(term.tyfun().body(), term.tyarg());
      if (auto s = reduce_step(term.tyfun()))
        return Term::tyapp(*std::move(s), term.tyarg());
      return std::nullopt;
    }
    case Term::Kind::TyAbs: {
      if (auto s = reduce_step(term.body()))
        return Term::tyabs(term.binder_hint(), *std::move(s));
      return std::nullopt;
    }
  }
  return std::nullopt;
}

NormalizeResult normalize(const Term& term, long fuel) {
  Term current = term;
  long steps = 0;
  while (auto next = reduce_step(current)) {
    current = *std::move(next);
    if (++steps > fuel) throw FuelExhaustedError(steps);
  }
  return {current, steps};
}

}  // namespace sema::kernel
