#include <catch2/catch_amalgamated.hpp>

#include "entex/output.hpp"

using namespace entex;

namespace {

const Taxonomy& tax() {
  static Taxonomy t = load_taxonomy(
      "class Person\n"
      "  attr first_name: string\n"
      "  attr last_name: string\n"
      "class Organization\n"
      "class Location\n"
      "  Microtoponyme\n");
  return t;
}

Annotation ann(std::size_t start, std::size_t end, std::string surface, NEType type,
               Evidence ev = Evidence::Internal, int pass = 1) {
  Annotation a;
  a.start = start;
  a.end = end;
  a.surface = std::move(surface);
  a.ne_type = std::move(type);
  a.evidence = ev;
  a.pass = pass;
  return a;
}

}  // namespace

TEST_CASE("inline delimiters around annotations") {
  std::string text = "Le groupe Vivendi prend le contrôle";
  std::vector<Annotation> anns = {ann(10, 17, "Vivendi", {"Organization", {}},
                                      Evidence::External)};
  std::string out = emit_inline(text, anns);
  CHECK(out == "Le groupe {type=Organization}Vivendi{/} prend le contrôle");
  CHECK(strip_inline(out) == text);
}

TEST_CASE("no annotations: output equals input") {
  std::string text = "rien à signaler";
  CHECK(emit_inline(text, {}) == text);
}

TEST_CASE("adjacent annotations abut cleanly and never nest") {
  std::string text = "AaBb";
  std::vector<Annotation> anns = {ann(0, 2, "Aa", {"Person", {}}),
                                  ann(2, 4, "Bb", {"Organization", {}})};
  std::string out = emit_inline(text, anns);
  CHECK(out == "{type=Person}Aa{/}{type=Organization}Bb{/}");
  CHECK(strip_inline(out) == text);
}

TEST_CASE("braces in the source text survive the strip") {
  std::string text = "avant {x} après";
  std::vector<Annotation> anns = {ann(9, 10, "x", {"Person", {}})};
  std::string out = emit_inline(text, anns);
  CHECK(strip_inline(out) == text);
  CHECK(out.find("{{") != std::string::npos);
}

TEST_CASE("multibyte offsets in inline output") {
  std::string text = "Éternel Gbagbo !";
  std::vector<Annotation> anns = {ann(0, 14, "Éternel Gbagbo", {"Person", {}})};
  std::string out = emit_inline(text, anns);
  CHECK(out == "{type=Person}Éternel Gbagbo{/} !");
}

TEST_CASE("fiche records carry attributes in schema order") {
  Annotation a = ann(0, 15, "Caroline Dupont", {"Person", {}});
  a.attributes = {{"first_name", "Caroline"}, {"last_name", "Dupont"}};
  std::string out = emit_fiches({a}, tax());
  CHECK(out ==
        "fiche\n"
        "  surface: Caroline Dupont\n"
        "  start: 0\n"
        "  end: 15\n"
        "  class: Person\n"
        "  type:\n"
        "  attr first_name: Caroline\n"
        "  attr last_name: Dupont\n"
        "  evidence: Internal\n"
        "  pass: 1\n");
}

TEST_CASE("empty annotation list, empty output") {
  CHECK(emit_fiches({}, tax()).empty());
}

TEST_CASE("context-reclassified fiche") {
  Annotation a = ann(3, 15, "Quai d'Orsay", {"Organization", {}},
                     Evidence::ContextReclassified);
  std::string out = emit_fiches({a}, tax());
  CHECK(out.find("  evidence: ContextReclassified\n") != std::string::npos);
}

TEST_CASE("typed path and unrecognized records") {
  Annotation micro = ann(0, 4, "Quai", {"Location", {"Microtoponyme"}});
  Annotation unk = ann(5, 11, "Gbagbo", {"Person", {}});
  unk.ne_type = std::nullopt;
  std::string with = emit_fiches({micro, unk}, tax(), true);
  CHECK(with.find("  type: Microtoponyme\n") != std::string::npos);
  CHECK(with.find("  class: NonReconnu\n") != std::string::npos);
  std::string without = emit_fiches({micro, unk}, tax(), false);
  CHECK(without.find("NonReconnu") == std::string::npos);
}

TEST_CASE("out-of-schema attributes are a loud error") {
  Annotation a = ann(0, 2, "Xx", {"Organization", {}});
  a.attributes = {{"bogus", "v"}};
  CHECK_THROWS_MATCHES(emit_fiches({a}, tax()), EngineError,
                       Catch::Matchers::Predicate<EngineError>([](const EngineError& e) {
                         return e.kind() == Err::SchemaViolation;
                       }));
}

TEST_CASE("stats lines per class plus totals") {
  ExtractionResult r;
  r.stats = {{"Person", {1, 1}}, {"Organization", {2, 0}}, {"Location", {0, 0}}};
  CHECK(emit_stats(r) ==
        "Person 1 1 2\n"
        "Organization 2 0 2\n"
        "Location 0 0 0\n"
        "TOTAL 3 1 4\n");
  ExtractionResult empty;
  empty.stats = {{"Person", {0, 0}}};
  CHECK(emit_stats(empty) == "Person 0 0 0\nTOTAL 0 0 0\n");
}
