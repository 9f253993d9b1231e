// Acceptance suite: one pass/fail line per criterion.
// Exercises the library directly and the CLI binary.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "sema/builtins.hpp"
#include "sema/compose.hpp"
#include "sema/hol.hpp"
#include "sema/lexicon.hpp"
#include "sema/reduce.hpp"
#include "sema/typecheck.hpp"
#include "support/and_oracle.hpp"
#include "support/term_gen.hpp"

using namespace sema;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Demo {
  lexicon::LoadResult ctx;
  Demo()
      : ctx(lexicon::load_sources(
            {slurp(std::string(SEMA_DATA_DIR) + "/demo-ontology.sexp"),
             slurp(std::string(SEMA_DATA_DIR) + "/demo-lexicon.sexp")})) {}

  compose::SyntaxTree tree(const std::string& name) const {
    return compose::parse_tree(
        slurp(std::string(SEMA_DATA_DIR) + "/trees/" + name + ".tree"));
  }

  std::vector<compose::Reading> readings(const std::string& name) const {
    return compose::readings(tree(name), ctx.lexicon, ctx.ontology,
                             ctx.signature);
  }
};

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(SEMA_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

using Verdict = std::optional<std::string>;  // failure detail, empty = pass

#define EXPECT(cond, detail)                            \
  do {                                                  \
    if (!(cond)) return std::string("expected ") + #cond + "; " + (detail); \
  } while (0)

// 1. The bare-"most" subject reading, with and without inclusion elision.
Verdict criterion1(const Demo& demo) {
  auto start = Clock::now();
  auto rs = demo.readings("brits");
  EXPECT(rs.size() == 1, "got " + std::to_string(rs.size()) + " readings");

  hol::ReadingFormula rf = hol::to_formula(rs[0], demo.ctx.signature);
  hol::PrettyOptions elide{true, demo.ctx.ontology.inclusion_morphisms()};
  hol::PrettyOptions plain{false, demo.ctx.ontology.inclusion_morphisms()};
  std::string elided = hol::pretty(rf.formula, elide);
  std::string explicit_form = hol::pretty(rf.formula, plain);
  EXPECT(elided == "loves(⪍_Brits, France)", "got " + elided);
  EXPECT(explicit_form == "loves(a(h(⪍_Brits)), France)", "got " + explicit_form);
  EXPECT(rs[0].trace.size() == 2, "trace size");
  EXPECT(rs[0].trace[0].name == "h" && rs[0].trace[1].name == "a",
         "morphism order");
  double t = seconds_since(start);
  EXPECT(t < 1.0, "took " + std::to_string(t) + "s");
  return std::nullopt;
}

// 2. The fully applied conjunction combinator against the manual reduction.
Verdict criterion2() {
  testsupport::AndOracle oracle;
  kernel::Signature sig = oracle.signature();
  kernel::Term current = oracle.stage0();
  kernel::Type ty = kernel::type_of(current, sig);
  EXPECT(ty == kernel::Type::prop(), "applied combinator is a proposition");

  auto stages = oracle.stages();
  for (std::size_t i = 0; i < stages.size(); ++i) {
    auto next = kernel::reduce_step(current);
    EXPECT(next.has_value(), "stuck before stage " + std::to_string(i + 1));
    current = *next;
    EXPECT(alpha_eq(current, stages[i]),
           "stage " + std::to_string(i + 1) + " diverged: " + current.str());
  }
  EXPECT(!kernel::reduce_step(current).has_value(), "normal form reached");

  auto nf = kernel::normalize(oracle.stage0());
  EXPECT(nf.steps == 8, "step count " + std::to_string(nf.steps));
  EXPECT(alpha_eq(nf.term, stages.back()), "normal form shape");
  EXPECT(nf.term.str() ==
             "(and (heavy (to_material this_book)) "
             "(interesting (to_contents this_book)))",
         "printed " + nf.term.str());
  return std::nullopt;
}

// 3. Both degree readings, with the un-transferred formula pinned.
Verdict criterion3(const Demo& demo) {
  auto rs = demo.readings("carlotta");
  EXPECT(rs.size() == 2, "got " + std::to_string(rs.size()) + " readings");
  EXPECT(rs[0].instantiations.size() == 1 &&
             rs[0].instantiations[0].second == kernel::Type::sort("2yoGirl"),
         "first reading instantiates at 2yoGirl");
  EXPECT(rs[1].instantiations.size() == 1 &&
             rs[1].instantiations[0].second == kernel::Type::sort("human"),
         "second reading instantiates at human");

  using hol::Formula;
  using hol::HolTerm;
  kernel::Type girl = kernel::Type::sort("2yoGirl");
  kernel::Type fl = kernel::Type::sort("float");
  HolTerm vh = HolTerm::individual("h", fl);
  HolTerm vhs = HolTerm::individual("hs", fl);
  Formula expected = Formula::quant(
      Formula::QuantKind::Forall, "h", fl,
      Formula::quant(
          Formula::QuantKind::Forall, "hs", fl,
          Formula::conn(
              Formula::ConnKind::Implies,
              {Formula::conn(
                   Formula::ConnKind::And,
                   {Formula::pred(
                        "height", {girl, fl},
                        {HolTerm::generic("s", girl, HolTerm::Origin::Bare), vhs}),
                    Formula::pred("height", {girl, fl},
                                  {HolTerm::individual("Carlotta", girl), vh})}),
               Formula::cmp(Formula::CmpKind::Leq, vhs, vh)})));
  hol::ReadingFormula rf = hol::to_formula(rs[0], demo.ctx.signature);
  EXPECT(rf.formula == expected, "structural formula mismatch");
  std::string p = hol::pretty(rf.formula);
  EXPECT(p ==
             "∀h:float. ∀hs:float. (height(⪍_2yoGirl, hs) ∧ "
             "height(Carlotta, h)) ⇒ (hs ≤ h)",
         "printed " + p);
  return std::nullopt;
}

// 4. The restricted generic and its conjoined restrictor fact.
Verdict criterion4(const Demo& demo) {
  auto rs = demo.readings("most_students");
  EXPECT(rs.size() == 1, "got " + std::to_string(rs.size()) + " readings");
  hol::ReadingFormula rf = hol::to_formula(rs[0], demo.ctx.signature);

  using hol::Formula;
  using hol::HolTerm;
  kernel::Type student = kernel::Type::sort("student");
  kernel::Type topic = kernel::Type::sort("Topic");
  HolTerm s = HolTerm::generic("s", student, HolTerm::Origin::Restricted);
  Formula fact = Formula::pred("passed", {student, topic},
                               {s, HolTerm::individual("logic", topic)});
  Formula matrix = Formula::pred("passed", {student, topic},
                                 {s, HolTerm::individual("topology", topic)});
  EXPECT(rf.formula == Formula::conn(Formula::ConnKind::And, {fact, matrix}),
         "got " + hol::pretty(rf.formula));
  EXPECT(rf.generics.size() == 1, "one generic");
  EXPECT(rf.generics[0].origin == HolTerm::Origin::Restricted,
         "generic is restricted");
  EXPECT(rf.generics[0].sort == student, "generic sort");
  EXPECT(rf.generics[0].restrictor.has_value() &&
             *rf.generics[0].restrictor == fact,
         "restrictor recorded");
  return std::nullopt;
}

// 5. The felicity filter: one acceptable and two blocked compositions.
Verdict criterion5(const Demo& demo) {
  auto ok = demo.readings("liverpool_town_harbour");
  EXPECT(ok.size() >= 1, "compatible transfers should compose");

  bool blocked = false;
  std::string msg;
  try {
    demo.readings("liverpool_defeated");
  } catch (const compose::NoReadingError& e) {
    blocked = true;
    msg = e.what();
  }
  EXPECT(blocked, "exclusive transfer must block");
  EXPECT(msg.find("Liverpool") != std::string::npos, "diagnostic names the word");

  blocked = false;
  try {
    demo.readings("table_barks");
  } catch (const compose::NoReadingError& e) {
    blocked = true;
    msg = e.what();
  }
  EXPECT(blocked, "sortal mismatch must block");
  EXPECT(msg.find("barks") != std::string::npos &&
             msg.find("table") != std::string::npos,
         "diagnostic names the application: " + msg);
  return std::nullopt;
}

// 6. Randomized reduction properties at scale.
Verdict criterion6() {
  auto start = Clock::now();
  kernel::Signature sig = testsupport::make_test_signature();
  testsupport::TermGen gen(sig, 0xACCE97, 8);

  const int kTerms = 10000;
  for (int i = 0; i < kTerms; ++i) {
    kernel::Term t = gen.next();
    kernel::Type ty = kernel::type_of(t, sig);

    kernel::Term current = t;
    long steps = 0;
    while (auto next = kernel::reduce_step(current)) {
      current = *next;
      if (kernel::type_of(current, sig) != ty)
        return "subject reduction failed on " + t.str();
      if (++steps > kernel::kDefaultFuel)
        return "fuel exhausted on " + t.str();
    }
    auto ri = testsupport::normalize_ri(t, kernel::kDefaultFuel);
    if (!alpha_eq(current, ri.term))
      return "strategies disagree on " + t.str();
  }

  testsupport::TermGen vgen(sig, 0xBAD, 5);
  for (int i = 0; i < kTerms; ++i) {
    kernel::Term bad = vgen.next_violation();
    bool rejected = false;
    try {
      kernel::type_of(bad, sig,
                      {{"y", kernel::Type::free_var("whatever")}});
    } catch (const kernel::TypeError& e) {
      rejected = e.kind() == kernel::TypeErrorKind::GeneralisationViolation;
    }
    if (!rejected) return "violation accepted: " + bad.str();
  }

  double t = seconds_since(start);
  EXPECT(t < 60.0, "took " + std::to_string(t) + "s");
  std::cout << "  (criterion 6: " << kTerms << " terms in " << t << "s)\n";
  return std::nullopt;
}

// 7. Byte-identical CLI output across two full corpus runs.
Verdict criterion7() {
  std::string data = SEMA_DATA_DIR;
  std::string lex = " --lexicon " + data + "/demo-lexicon.sexp --ontology " +
                    data + "/demo-ontology.sexp";
  std::vector<std::string> invocations;
  for (const char* tree :
       {"brits", "carlotta", "book_and", "liverpool_town_harbour",
        "liverpool_defeated", "table_barks", "dog_barks", "most_students"}) {
    for (const char* fmt : {"pretty", "sexpr"}) {
      invocations.push_back("--format " + std::string(fmt) + lex +
                            " readings " + data + "/trees/" + tree + ".tree");
      invocations.push_back("--format " + std::string(fmt) +
                            " --elide-inclusions" + lex + " readings " + data +
                            "/trees/" + tree + ".tree");
    }
  }
  for (const char* term :
       {"poly_id", "specimen_brits", "and_book", "brits_preredex"}) {
    invocations.push_back(lex + " check " + data + "/terms/" + term + ".term");
    invocations.push_back(lex + " normalize " + data + "/terms/" + term +
                          ".term");
  }

  auto transcript = [&]() {
    std::string all;
    for (const auto& inv : invocations) {
      CliResult r = run_cli(inv);
      all += "$ " + inv + "\n" + r.output +
             "exit " + std::to_string(r.exit_code) + "\n";
    }
    return all;
  };
  std::string first = transcript();
  std::string second = transcript();
  EXPECT(!first.empty(), "corpus produced output");
  EXPECT(first == second, "outputs differ between runs");
  return std::nullopt;
}

}  // namespace

int main() {
  int failures = 0;
  Demo demo;

  struct Entry {
    const char* label;
    std::function<Verdict()> run;
  };
  std::vector<Entry> criteria = {
      {"criterion 1: single subject reading with inclusion morphisms",
       [&] { return criterion1(demo); }},
      {"criterion 2: conjunction combinator reduction oracle",
       [] { return criterion2(); }},
      {"criterion 3: two degree readings with the pinned formula",
       [&] { return criterion3(demo); }},
      {"criterion 4: restricted generic with conjoined restrictor",
       [&] { return criterion4(demo); }},
      {"criterion 5: felicity filter accepts and blocks compositions",
       [&] { return criterion5(demo); }},
      {"criterion 6: reduction properties on 10^4 random terms",
       [] { return criterion6(); }},
      {"criterion 7: byte-identical CLI output across runs",
       [] { return criterion7(); }},
  };

  for (const auto& c : criteria) {
    Verdict verdict;
    try {
      verdict = c.run();
    } catch (const std::exception& e) {
      verdict = std::string("exception: ") + e.what();
    }
    if (verdict) {
      std::cout << "FAIL " << c.label << ": " << *verdict << "\n";
      ++failures;
    } else {
      std::cout << "PASS " << c.label << "\n";
    }
  }

  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
