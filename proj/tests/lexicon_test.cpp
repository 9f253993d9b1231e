#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "sema/lexicon.hpp"
#include "sema/ontology.hpp"
#include "sema/sexpr.hpp"
#include "sema/typecheck.hpp"

using namespace sema;
using kernel::Term;
using kernel::Type;
using lexicon::Lexicon;
using lexicon::LoadResult;
using lexicon::Ontology;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadResult load_demo() {
  return lexicon::load_sources(
      {slurp(std::string(SEMA_DATA_DIR) + "/demo-ontology.sexp"),
       slurp(std::string(SEMA_DATA_DIR) + "/demo-lexicon.sexp")});
}

}  // namespace

TEST_SUITE("ontology") {
  TEST_CASE("inclusion chains") {
    Ontology onto;
    for (const char* s : {"Brits", "Humans", "Animals"}) onto.add_sort(s);
    onto.add_inclusion("Brits", "Humans", "h");
    onto.add_inclusion("Humans", "Animals", "a");

    auto chain = onto.inclusion_chain("Brits", "Animals");
    REQUIRE(chain.has_value());
    CHECK(*chain == std::vector<std::string>{"h", "a"});
    CHECK(onto.inclusion_chain("Brits", "Brits") == std::vector<std::string>{});
    CHECK_FALSE(onto.inclusion_chain("Animals", "Brits").has_value());
    CHECK_THROWS_AS(onto.inclusion_chain("Brits", "zzz"), lexicon::OntologyError);
  }

  TEST_CASE("depth bound") {
    Ontology onto;
    for (const char* s : {"s0", "s1", "s2", "s3", "s4"}) onto.add_sort(s);
    onto.add_inclusion("s0", "s1", "m01");
    onto.add_inclusion("s1", "s2", "m12");
    onto.add_inclusion("s2", "s3", "m23");
    onto.add_inclusion("s3", "s4", "m34");
    CHECK_FALSE(onto.inclusion_chain("s0", "s4", 3).has_value());
    CHECK(onto.inclusion_chain("s0", "s4", 4).has_value());
    CHECK(onto.inclusion_chain("s0", "s3", 3).has_value());
  }

  TEST_CASE("cycles are rejected") {
    Ontology onto;
    for (const char* s : {"a", "b", "c"}) onto.add_sort(s);
    onto.add_inclusion("a", "b", "f");
    onto.add_inclusion("b", "c", "g");
    CHECK_THROWS_AS(onto.add_inclusion("c", "a", "back"), lexicon::OntologyError);
    CHECK_THROWS_AS(onto.add_inclusion("a", "a", "self"), lexicon::OntologyError);
  }

  TEST_CASE("chains compose within the bound") {
    Ontology onto;
    for (const char* s : {"a", "b", "c", "d"}) onto.add_sort(s);
    onto.add_inclusion("a", "b", "f");
    onto.add_inclusion("b", "c", "g");
    onto.add_inclusion("c", "d", "k");
    auto ab = onto.inclusion_chain("a", "b", 4);
    auto bd = onto.inclusion_chain("b", "d", 4);
    auto ad = onto.inclusion_chain("a", "d", 4);
    REQUIRE(ab.has_value());
    REQUIRE(bd.has_value());
    REQUIRE(ad.has_value());
    CHECK(ad->size() <= ab->size() + bd->size());
  }
}

TEST_SUITE("lexicon") {
  TEST_CASE("lookup of the shipped entries") {
    LoadResult demo = load_demo();
    const auto& carlotta = demo.lexicon.lookup("Carlotta");
    CHECK(carlotta.main ==
          Term::constant("Carlotta", Type::sort("2yoGirl")));
    REQUIRE(carlotta.coercions.size() == 1);
    CHECK(carlotta.coercions[0].name == "h");
    CHECK(kernel::infer_type(carlotta.coercions[0].term) ==
          Type::arrow(Type::sort("2yoGirl"), Type::sort("human")));
    CHECK_FALSE(carlotta.coercions[0].exclusive);

    const auto& book = demo.lexicon.lookup("book");
    REQUIRE(book.coercions.size() == 2);
    CHECK(book.coercions[0].name == "to_contents");
    CHECK(kernel::infer_type(book.coercions[0].term) ==
          Type::arrow(Type::sort("Book"), Type::sort("Abstract")));
    CHECK(book.coercions[1].name == "to_material");

    CHECK_THROWS_AS(demo.lexicon.lookup("zzz"), lexicon::UnknownWordError);
  }

  TEST_CASE("exclusivity flags come from the directives") {
    LoadResult demo = load_demo();
    const auto& liverpool = demo.lexicon.lookup("Liverpool");
    int exclusive = 0;
    for (const auto& c : liverpool.coercions)
      if (c.exclusive) {
        ++exclusive;
        CHECK(c.name == "as_team");
      }
    CHECK(exclusive == 1);
  }

  TEST_CASE("coercion candidates") {
    LoadResult demo = load_demo();
    const auto& book = demo.lexicon.lookup("book");

    auto to_material =
        lexicon::coercion_candidates(book, demo.ontology, "Book", "Material");
    REQUIRE(to_material.size() == 1);
    CHECK(to_material[0].names == std::vector<std::string>{"to_material"});
    CHECK(kernel::infer_type(to_material[0].term) ==
          Type::arrow(Type::sort("Book"), Type::sort("Material")));

    auto identity =
        lexicon::coercion_candidates(book, demo.ontology, "Book", "Book");
    REQUIRE(identity.size() == 1);
    CHECK(identity[0].identity);
    CHECK(identity[0].names.empty());
    CHECK(kernel::infer_type(identity[0].term) ==
          Type::arrow(Type::sort("Book"), Type::sort("Book")));

    const auto& table = demo.lexicon.lookup("table");
    CHECK(lexicon::coercion_candidates(table, demo.ontology, "Table", "Dogs")
              .empty());

    // Inclusion chains are materialized and well typed.
    const auto& brits = demo.lexicon.lookup("the_Brits");
    auto chain =
        lexicon::coercion_candidates(brits, demo.ontology, "Brits", "Animals");
    REQUIRE(chain.size() == 1);
    CHECK(chain[0].names == std::vector<std::string>{"h", "a"});
    CHECK(kernel::type_of(chain[0].term, demo.signature) ==
          Type::arrow(Type::sort("Brits"), Type::sort("Animals")));
  }

  TEST_CASE("candidates always check at the requested arrow type") {
    LoadResult demo = load_demo();
    for (const auto& [word, entry] : demo.lexicon.entries()) {
      for (const auto& from : demo.ontology.sorts()) {
        for (const auto& to : demo.ontology.sorts()) {
          auto cands =
              lexicon::coercion_candidates(entry, demo.ontology, from, to);
          Type wanted = Type::arrow(Type::sort(from), Type::sort(to));
          for (const auto& c : cands) {
            CHECK(kernel::type_of(c.term, demo.signature) == wanted);
            CHECK(c.identity == c.names.empty());
          }
        }
      }
    }
  }

  TEST_CASE("loader rejects malformed directives") {
    CHECK_THROWS_AS(lexicon::load_sources({"(word w)"}), lexicon::LexiconError);
    CHECK_THROWS_AS(lexicon::load_sources({"(sort S) (sort S)"}),
                    kernel::TypeError);  // duplicate sort
    CHECK_THROWS_AS(lexicon::load_sources({"(const c Missing)"}),
                    sema::sexpr::ParseError);
    CHECK_THROWS_AS(lexicon::load_sources({"(bogus 1 2)"}),
                    lexicon::LexiconError);
  }

  TEST_CASE("loader validates entry terms") {
    // A main term with a free variable is rejected.
    CHECK_THROWS(lexicon::load_sources({"(sort S) (word w :main zzz)"}));
    // Order of directives between files does not matter.
    LoadResult split = lexicon::load_sources(
        {"(word w :main c)", "(const c S)", "(sort S)"});
    CHECK(split.lexicon.has("w"));
  }
}
