#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <fstream>
#include <sstream>
#include <thread>

#include "sema/builtins.hpp"
#include "sema/compose.hpp"
#include "sema/lexicon.hpp"
#include "support/and_oracle.hpp"

using namespace sema;
using compose::Config;
using compose::NoReadingError;
using compose::Reading;
using compose::SyntaxTree;
using kernel::Term;
using kernel::Type;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
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

  SyntaxTree tree(const std::string& name) const {
    return compose::parse_tree(
        slurp(std::string(SEMA_DATA_DIR) + "/trees/" + name + ".tree"));
  }

  std::vector<Reading> readings(const std::string& name,
                                const Config& config = {}) const {
    return compose::readings(tree(name), ctx.lexicon, ctx.ontology,
                             ctx.signature, config);
  }
};

Term specimen_at(const Demo& demo, const char* sort) {
  return Term::tyapp(
      Term::constant("specimen", demo.ctx.signature.const_type("specimen")),
      Type::sort(sort));
}

}  // namespace

TEST_SUITE("builtin constants") {
  TEST_CASE("declared types") {
    kernel::Signature sig = builtin::signature();
    Type t = Type::prop();
    auto X = Type::free_var("X");
    Type quant = Type::forall_over("X", Type::arrow(Type::arrow(X, t), t));
    Type chooser = Type::forall_over("X", Type::arrow(Type::arrow(X, t), X));
    CHECK(sig.const_type("forall") == quant);
    CHECK(sig.const_type("exists") == quant);
    CHECK(sig.const_type("specimen") == Type::forall_over("X", X));
    CHECK(sig.const_type("specimen_of") == chooser);
    CHECK(sig.const_type("iota") == chooser);
    CHECK(sig.const_type("and") == Type::arrow(t, Type::arrow(t, t)));

    Type A = Type::free_var("A"), M = Type::free_var("M"), B = Type::free_var("B");
    Type inner = Type::arrow(
        B, Type::arrow(Type::arrow(B, A), Type::arrow(Type::arrow(B, M), t)));
    Type poly_and_ty = Type::forall_over(
        "A", Type::forall_over(
                 "M", Type::arrow(Type::arrow(A, t),
                                  Type::arrow(Type::arrow(M, t),
                                              Type::forall_over("B", inner)))));
    CHECK(kernel::type_of(builtin::poly_and(), sig) == poly_and_ty);
  }
}

TEST_SUITE("trees") {
  TEST_CASE("parsing") {
    SyntaxTree t = compose::parse_tree("(node (node loves France) the_Brits)");
    CHECK_FALSE(t.is_leaf());
    CHECK(t.argument().word() == "the_Brits");
    CHECK(t.functor().functor().word() == "loves");
    CHECK(t.str() == "(node (node loves France) the_Brits)");
    CHECK_THROWS_AS(compose::parse_tree("()"), sexpr::ParseError);
    CHECK_THROWS_AS(compose::parse_tree("(node onlyone)"), sexpr::ParseError);
    CHECK_THROWS_AS(compose::parse_tree(""), sexpr::ParseError);
  }
}

TEST_SUITE("instantiate") {
  TEST_CASE("splices main terms over the tree shape") {
    Demo demo;
    auto raw = compose::instantiate(demo.tree("brits"), demo.ctx.lexicon);
    Term loves = demo.ctx.lexicon.lookup("loves").main;
    Term france = demo.ctx.lexicon.lookup("France").main;
    Term expected = Term::app(Term::app(loves, france), specimen_at(demo, "Brits"));
    CHECK(raw.raw_term() == expected);
    CHECK(raw.anchor_word() == "loves");
    CHECK(raw.argument().anchor_word() == "the_Brits");
  }

  TEST_CASE("leaves carry entries and unknown words fail") {
    Demo demo;
    auto raw = compose::instantiate(SyntaxTree::leaf("Carlotta"), demo.ctx.lexicon);
    CHECK(raw.raw_term() == Term::constant("Carlotta", Type::sort("2yoGirl")));
    CHECK_THROWS_AS(
        compose::instantiate(SyntaxTree::leaf("zzz"), demo.ctx.lexicon),
        lexicon::UnknownWordError);
  }
}

TEST_SUITE("readings") {
  TEST_CASE("subject inclusion chain") {
    Demo demo;
    auto rs = demo.readings("brits");
    REQUIRE(rs.size() == 1);
    const Reading& r = rs[0];

    Term loves = Term::constant("loves", demo.ctx.signature.const_type("loves"));
    Term subject = Term::app(
        Term::constant("a", demo.ctx.signature.const_type("a")),
        Term::app(Term::constant("h", demo.ctx.signature.const_type("h")),
                  specimen_at(demo, "Brits")));
    Term expected = Term::app(
        Term::app(loves, subject),
        Term::constant("France", demo.ctx.signature.const_type("France")));
    CHECK(alpha_eq(r.term, expected));

    REQUIRE(r.trace.size() == 2);
    CHECK(r.trace[0].name == "h");
    CHECK(r.trace[1].name == "a");
    CHECK(r.trace[0].anchor == "the_Brits");
    CHECK(r.trace[0].at == compose::TreePath{1});
    CHECK(r.instantiations.empty());

    // The subject slot is filled by an entity-sorted term, not a raised one.
    CHECK(kernel::type_of(subject, demo.ctx.signature) == Type::sort("Animals"));
  }

  TEST_CASE("ambiguity between natural and transferred sorts") {
    Demo demo;
    auto rs = demo.readings("carlotta");
    REQUIRE(rs.size() == 2);
    REQUIRE(rs[0].instantiations.size() == 1);
    REQUIRE(rs[1].instantiations.size() == 1);
    CHECK(rs[0].instantiations[0].second == Type::sort("2yoGirl"));
    CHECK(rs[1].instantiations[0].second == Type::sort("human"));
    CHECK(rs[0].trace.empty());
    REQUIRE(rs[1].trace.size() == 1);
    CHECK(rs[1].trace[0].name == "h");
    CHECK(rs[1].trace[0].anchor == "Carlotta");
  }

  TEST_CASE("conjunction of predicates over one occurrence") {
    Demo demo;
    auto rs = demo.readings("book_and");
    REQUIRE(rs.size() == 1);
    testsupport::AndOracle oracle;
    CHECK(alpha_eq(rs[0].term, oracle.stages().back()));
    REQUIRE(rs[0].trace.size() == 2);
    CHECK(rs[0].trace[0].name == "to_contents");
    CHECK(rs[0].trace[1].name == "to_material");
    // The combinator is specialised three times, in application order.
    REQUIRE(rs[0].instantiations.size() == 3);
    CHECK(rs[0].instantiations[0].second == Type::sort("Abstract"));
    CHECK(rs[0].instantiations[1].second == Type::sort("Material"));
    CHECK(rs[0].instantiations[2].second == Type::sort("Book"));
  }

  TEST_CASE("compatible transfers go through") {
    Demo demo;
    auto rs = demo.readings("liverpool_town_harbour");
    REQUIRE(rs.size() >= 1);
    bool harbour = false;
    for (const auto& use : rs[0].trace)
      if (use.name == "as_harbour") harbour = true;
    CHECK(harbour);
  }

  TEST_CASE("exclusive transfer blocks the composition") {
    Demo demo;
    CHECK_THROWS_AS(demo.readings("liverpool_defeated"), NoReadingError);
    try {
      demo.readings("liverpool_defeated");
    } catch (const NoReadingError& e) {
      CHECK(std::string(e.what()).find("Liverpool") != std::string::npos);
      CHECK(e.at() == compose::TreePath{1});
    }
  }

  TEST_CASE("unrepairable applications are infelicitous") {
    Demo demo;
    try {
      demo.readings("table_barks");
      FAIL("expected NoReadingError");
    } catch (const NoReadingError& e) {
      std::string msg = e.what();
      CHECK(msg.find("barks") != std::string::npos);
      CHECK(msg.find("table") != std::string::npos);
    }
    CHECK(demo.readings("dog_barks").size() == 1);
  }

  TEST_CASE("restricted generics instantiate from the restrictor") {
    Demo demo;
    auto rs = demo.readings("most_students");
    REQUIRE(rs.size() == 1);
    REQUIRE(rs[0].instantiations.size() == 1);
    CHECK(rs[0].instantiations[0].first == "most_of_the");
    CHECK(rs[0].instantiations[0].second == Type::sort("student"));

    Term passed =
        Term::constant("passed", demo.ctx.signature.const_type("passed"));
    Term restrictor = Term::lam(
        "x", Type::sort("student"),
        Term::app(Term::app(passed, Term::var("x", Type::sort("student"))),
                  Term::constant("logic", demo.ctx.signature.const_type("logic"))));
    Term np = Term::app(
        Term::tyapp(Term::constant("specimen_of",
                                   demo.ctx.signature.const_type("specimen_of")),
                    Type::sort("student")),
        restrictor);
    Term expected = Term::app(
        Term::app(passed, np),
        Term::constant("topology", demo.ctx.signature.const_type("topology")));
    CHECK(alpha_eq(rs[0].term, expected));
  }

  TEST_CASE("every reading is a closed normal proposition") {
    Demo demo;
    for (const char* name : {"brits", "carlotta", "book_and",
                             "liverpool_town_harbour", "dog_barks",
                             "most_students"}) {
      for (const auto& r : demo.readings(name)) {
        CHECK(r.term.closed());
        CHECK(r.term.free_vars().empty());
        CHECK(r.term.is_normal());
        CHECK(kernel::type_of(r.term, demo.ctx.signature) == Type::prop());
        CHECK(compose::trace_respects_exclusivity(r.trace));
      }
    }
  }

  TEST_CASE("determinism") {
    Demo demo;
    for (const char* name :
         {"brits", "carlotta", "book_and", "most_students"}) {
      auto a = demo.readings(name);
      auto b = demo.readings(name);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].term == b[i].term);
        CHECK(compose::compare_trace(a[i].trace, b[i].trace) == 0);
        CHECK(a[i].instantiations == b[i].instantiations);
      }
    }
  }

  TEST_CASE("independent calls may run concurrently") {
    Demo demo;
    auto reference = demo.readings("carlotta");
    std::vector<std::thread> workers;
    std::array<std::vector<Reading>, 4> results;
    for (std::size_t i = 0; i < results.size(); ++i)
      workers.emplace_back([&, i] {
        results[i] = demo.readings(i % 2 ? "carlotta" : "book_and");
      });
    for (auto& w : workers) w.join();
    REQUIRE(results[1].size() == reference.size());
    for (std::size_t i = 0; i < reference.size(); ++i)
      CHECK(results[1][i].term == reference[i].term);
    CHECK(results[3].size() == reference.size());
    CHECK(results[0].size() == 1);
    CHECK(results[2].size() == 1);
  }

  TEST_CASE("deeper coercion search only adds readings") {
    Demo demo;
    // The Brits chain has length 2, so depth 1 blocks it.
    Config shallow{1, kernel::kDefaultFuel};
    CHECK_THROWS_AS(demo.readings("brits", shallow), NoReadingError);

    for (int depth = 2; depth <= 4; ++depth) {
      Config lo{depth, kernel::kDefaultFuel};
      Config hi{depth + 1, kernel::kDefaultFuel};
      auto small = demo.readings("brits", lo);
      auto large = demo.readings("brits", hi);
      // Every shallow reading survives, in order, at the deeper bound.
      std::size_t j = 0;
      for (const auto& r : small) {
        while (j < large.size() &&
               !(large[j].term == r.term &&
                 compose::compare_trace(large[j].trace, r.trace) == 0))
          ++j;
        REQUIRE_MESSAGE(j < large.size(), "reading lost at depth " << depth + 1);
        ++j;
      }
    }
  }

  TEST_CASE("unflagging exclusivity only adds readings") {
    Demo demo;
    lexicon::Lexicon relaxed;
    for (const auto& [word, entry] : demo.ctx.lexicon.entries()) {
      lexicon::LexEntry copy = entry;
      for (auto& c : copy.coercions) c.exclusive = false;
      relaxed.add(std::move(copy));
    }

    // The blocked sentence becomes readable once exclusivity is lifted.
    auto unblocked =
        compose::readings(demo.tree("liverpool_defeated"), relaxed,
                          demo.ctx.ontology, demo.ctx.signature, Config{});
    CHECK(unblocked.size() >= 1);

    // Sentences felicitous before keep their readings, in order.
    for (const char* name :
         {"brits", "carlotta", "book_and", "liverpool_town_harbour"}) {
      auto before = demo.readings(name);
      auto after = compose::readings(demo.tree(name), relaxed, demo.ctx.ontology,
                                     demo.ctx.signature, Config{});
      std::size_t j = 0;
      for (const auto& r : before) {
        while (j < after.size() && !(after[j].term == r.term))
          ++j;
        REQUIRE_MESSAGE(j < after.size(), name << ": reading lost");
        ++j;
      }
    }

    // Type mismatches are not rescued by unflagging.
    CHECK_THROWS_AS(
        compose::readings(demo.tree("table_barks"), relaxed, demo.ctx.ontology,
                          demo.ctx.signature, Config{}),
        NoReadingError);
  }
}

TEST_SUITE("repair") {
  TEST_CASE("returns unreduced terms with traces") {
    Demo demo;
    auto raw = compose::instantiate(demo.tree("brits"), demo.ctx.lexicon);
    auto repairs = compose::repair(raw, demo.ctx.lexicon, demo.ctx.ontology,
                                   demo.ctx.signature);
    REQUIRE(repairs.size() == 1);
    // Still a redex: the verb lambda has not been reduced yet.
    CHECK_FALSE(repairs[0].term.is_normal());
    CHECK(kernel::type_of(repairs[0].term, demo.ctx.signature) == Type::prop());
    REQUIRE(repairs[0].trace.size() == 2);
    CHECK(repairs[0].trace[0].name == "h");
  }
}

TEST_SUITE("specimen_read") {
  TEST_CASE("builds the restricted generic") {
    Demo demo;
    Term passed =
        Term::constant("passed", demo.ctx.signature.const_type("passed"));
    Term restrictor = Term::lam(
        "x", Type::sort("student"),
        Term::app(Term::app(passed, Term::var("x", Type::sort("student"))),
                  Term::constant("logic", demo.ctx.signature.const_type("logic"))));
    Term s = compose::specimen_read(restrictor, Type::sort("student"),
                                    demo.ctx.signature);
    CHECK(kernel::type_of(s, demo.ctx.signature) == Type::sort("student"));
    auto [head, items] = kernel::spine(s);
    CHECK(head == Term::constant("specimen_of",
                                 demo.ctx.signature.const_type("specimen_of")));
    REQUIRE(items.size() == 2);
  }

  TEST_CASE("vacuous restrictors still build a distinct term") {
    Demo demo;
    Term trivial = Term::lam("x", Type::sort("student"),
                             Term::app(Term::constant(
                                           "poor_town",
                                           demo.ctx.signature.const_type("poor_town")),
                                       Term::constant("Liverpool",
                                                      demo.ctx.signature.const_type(
                                                          "Liverpool"))));
    Term s = compose::specimen_read(trivial, Type::sort("student"),
                                    demo.ctx.signature);
    CHECK(kernel::type_of(s, demo.ctx.signature) == Type::sort("student"));
    CHECK_FALSE(alpha_eq(s, specimen_at(demo, "student")));
  }

  TEST_CASE("sort mismatches are rejected") {
    Demo demo;
    Term restrictor =
        Term::lam("x", Type::sort("Topic"),
                  Term::app(Term::constant("barks",
                                           demo.ctx.signature.const_type("barks")),
                            Term::constant("dog",
                                           demo.ctx.signature.const_type("dog"))));
    CHECK_THROWS_AS(compose::specimen_read(restrictor, Type::sort("student"),
                                           demo.ctx.signature),
                    kernel::TypeError);
  }
}
