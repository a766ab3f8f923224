#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <sstream>

#include "entex/pipeline.hpp"

using namespace entex;

namespace {

struct Setup {
  Taxonomy taxonomy;
  Lexicon lexicon;
  GrammarSet grammars;

  EngineConfig cfg() const {
    return {&taxonomy, &lexicon, &grammars.grammar, &grammars.context_rules, "Person"};
  }
};

Setup make_setup() {
  Setup s;
  s.taxonomy = load_taxonomy(
      "class Person\n"
      "  attr first_name: string\n"
      "  attr last_name: string\n"
      "class Organization\n"
      "  attr expansion: string\n"
      "class Location\n"
      "  Ville\n");
  std::istringstream dict(
      "Laurent,.N+PR+Hum+Prénom:ms\n"
      "Caroline,.N+PR+Hum+Prénom:fs\n"
      "le,.DET:ms\n"
      "la,.DET:fs\n"
      "selon,.PREP\n"
      "ville,.N:fs\n"
      "de,.PREP\n"
      "éternel,.A:ms\n"
      "Solensi,Solidarité Enfants Sida.N+Sigle:fs\n");
  Diagnostics diags;
  compile_lexicon(s.lexicon, dict, "test.dic", diags);
  REQUIRE(diags.empty());
  s.grammars = parse_grammar(
      "@main Person Org Ville\n"
      "@graph Person\n"
      "$ne($first(<N+PR+Prénom>) $last(<PRE>)) -> Person {first_name=first, last_name=last} evidence=internal\n"
      "@graph Org\n"
      "\"société\" $ne(<PRE>+) -> Organization {} evidence=external\n"
      "$ne(<N+Sigle>) -> Organization {} evidence=internal\n"
      "@graph Ville\n"
      "'ville' 'de' $ne(<PRE>) -> Location.Ville {} evidence=external\n",
      s.taxonomy);
  return s;
}

std::size_t count_class(const std::vector<Annotation>& anns, const std::string& cls,
                        int pass = 0) {
  std::size_t n = 0;
  for (const auto& a : anns)
    if (a.recognized() && a.ne_type->class_name == cls && (pass == 0 || a.pass == pass)) ++n;
  return n;
}

}  // namespace

TEST_CASE("pass one memorizes entities and marks unknown capitals") {
  Setup s = make_setup();
  std::string text = "Laurent Gbagbo signe la paix. Plus tard, Gbagbo parle.";
  PassOneResult p1 = pass_one(text, s.grammars.grammar, s.grammars.context_rules, s.lexicon,
                              s.taxonomy);
  REQUIRE(p1.annotations.size() == 3);  // Person + NonReconnu(Plus) + NonReconnu(Gbagbo)

  const Annotation& person = p1.annotations[0];
  CHECK(person.recognized());
  CHECK(person.ne_type->class_name == "Person");
  CHECK(person.surface == "Laurent Gbagbo");
  CHECK(person.pass == 1);
  CHECK(person.attributes ==
        std::vector<std::pair<std::string, std::string>>{{"first_name", "Laurent"},
                                                         {"last_name", "Gbagbo"}});

  DynamicLexicon::Key key{"Laurent", "Gbagbo"};
  const auto* entries = p1.dynamic_lexicon.find(key);
  REQUIRE(entries);
  REQUIRE(entries->size() == 1);
  CHECK((*entries)[0].count == 1);
  CHECK((*entries)[0].type.class_name == "Person");

  CHECK_FALSE(p1.annotations[1].recognized());
  CHECK(p1.annotations[1].surface == "Plus");  // "Plus" is not in the lexicon
  CHECK_FALSE(p1.annotations[2].recognized());
  CHECK(p1.annotations[2].surface == "Gbagbo");
}

TEST_CASE("isolated capitalized exclamations stay unrecognized") {
  Setup s = make_setup();
  PassOneResult p1 = pass_one("Éternel Gbagbo !", s.grammars.grammar,
                              s.grammars.context_rules, s.lexicon, s.taxonomy);
  REQUIRE(p1.annotations.size() == 1);
  CHECK_FALSE(p1.annotations[0].recognized());
  CHECK(p1.annotations[0].surface == "Éternel Gbagbo");  // two-word run: no exemption
  CHECK(p1.dynamic_lexicon.empty());
}

TEST_CASE("sentence-initial common words are exempt from NON RECONNU") {
  Setup s = make_setup();
  PassOneResult p1 =
      pass_one("Le chat dort. Selon lui, tout va. Gbagbo reste.", s.grammars.grammar,
               s.grammars.context_rules, s.lexicon, s.taxonomy);
  REQUIRE(p1.annotations.size() == 1);  // Le and Selon exempt, Gbagbo kept
  CHECK(p1.annotations[0].surface == "Gbagbo");
}

TEST_CASE("empty text") {
  Setup s = make_setup();
  PassOneResult p1 = pass_one("", s.grammars.grammar, s.grammars.context_rules, s.lexicon,
                              s.taxonomy);
  CHECK(p1.annotations.empty());
  CHECK(p1.dynamic_lexicon.empty());
}

TEST_CASE("apostrophe words join unrecognized runs") {
  Setup s = make_setup();
  PassOneResult p1 = pass_one("On cite N'Djamena demain.", s.grammars.grammar,
                              s.grammars.context_rules, s.lexicon, s.taxonomy);
  REQUIRE(p1.annotations.size() == 2);  // On + N'Djamena
  CHECK(p1.annotations[1].surface == "N'Djamena");
}

TEST_CASE("pass two propagates the bare surname") {
  Setup s = make_setup();
  std::string text = "Laurent Gbagbo signe la paix. Plus tard, Gbagbo parle.";
  ExtractionResult r = extract(text, s.cfg());
  REQUIRE(count_class(r.annotations, "Person") == 2);
  CHECK(count_class(r.annotations, "Person", 1) == 1);
  CHECK(count_class(r.annotations, "Person", 2) == 1);
  const Annotation* propagated = nullptr;
  for (const auto& a : r.annotations)
    if (a.pass == 2) propagated = &a;
  REQUIRE(propagated);
  CHECK(propagated->surface == "Gbagbo");
  CHECK(propagated->evidence == Evidence::Propagated);
  CHECK(propagated->attributes ==
        std::vector<std::pair<std::string, std::string>>{{"first_name", "Laurent"},
                                                         {"last_name", "Gbagbo"}});
  for (const auto& [name, st] : r.stats) {
    if (name == "Person") {
      CHECK(st.pass1 == 1);
      CHECK(st.pass2 == 1);
      CHECK(st.total() == 2);
    }
  }
}

TEST_CASE("unmatched sequences survive pass two") {
  Setup s = make_setup();
  ExtractionResult r = extract("Banny attend.", s.cfg());
  REQUIRE(r.annotations.size() == 1);
  CHECK_FALSE(r.annotations[0].recognized());
  CHECK(r.annotations[0].pass == 1);
  CHECK(r.unrecognized == 1);
}

TEST_CASE("exact key propagation works across classes") {
  Setup s = make_setup();
  // Same surface recognized as Organization three times and Location once:
  // the Organization reading (higher count) wins for the bare occurrence.
  std::string text =
      "la société Abuja gagne. la société Abuja perd. la société Abuja signe. "
      "la ville de Abuja attire. Hier, Abuja décide.";
  ExtractionResult r = extract(text, s.cfg());
  const Annotation* bare = nullptr;
  for (const auto& a : r.annotations)
    if (a.pass == 2) bare = &a;
  REQUIRE(bare);
  CHECK(bare->surface == "Abuja");
  CHECK(bare->ne_type->class_name == "Organization");
  CHECK(bare->evidence == Evidence::Propagated);
}

TEST_CASE("count ties break on the earliest first offset") {
  Setup s = make_setup();
  std::string text = "la ville de Abuja attire. la société Abuja gagne. Hier, Abuja décide.";
  ExtractionResult r = extract(text, s.cfg());
  const Annotation* bare = nullptr;
  for (const auto& a : r.annotations)
    if (a.pass == 2) bare = &a;
  REQUIRE(bare);
  CHECK(bare->ne_type->class_name == "Location");  // 1-1 tie, Location came first
}

TEST_CASE("all-caps headline links to its body-text mention") {
  Setup s = make_setup();
  std::string text = "GBAGBO REVIENT\n\nLaurent Gbagbo signe la paix.";
  ExtractionResult r = extract(text, s.cfg());
  // the two-word headline run matches no memorized key
  CHECK(count_class(r.annotations, "Person") == 1);
  CHECK(r.unrecognized == 1);

  std::string text2 = "GBAGBO\n\nLaurent Gbagbo signe la paix.";
  ExtractionResult r2 = extract(text2, s.cfg());
  REQUIRE(count_class(r2.annotations, "Person") == 2);
  CHECK(r2.annotations[0].pass == 2);  // the headline itself got the label
  CHECK(r2.annotations[0].surface == "GBAGBO");
}

TEST_CASE("acronym expansion lands in the fiche attributes") {
  Setup s = make_setup();
  ExtractionResult r = extract("la Solensi aide.", s.cfg());
  REQUIRE(count_class(r.annotations, "Organization") == 1);
  const Annotation& a = r.annotations[0];
  CHECK(a.attributes ==
        std::vector<std::pair<std::string, std::string>>{
            {"expansion", "Solidarité Enfants Sida"}});
}

TEST_CASE("extract is deterministic") {
  Setup s = make_setup();
  std::string text =
      "Caroline Dupont rencontre Laurent Gbagbo. Dupont signe. Gbagbo parle. ÉTERNEL GBAGBO !";
  ExtractionResult a = extract(text, s.cfg());
  ExtractionResult b = extract(text, s.cfg());
  REQUIRE(a.annotations.size() == b.annotations.size());
  for (std::size_t i = 0; i < a.annotations.size(); ++i) {
    CHECK(a.annotations[i].surface == b.annotations[i].surface);
    CHECK(a.annotations[i].pass == b.annotations[i].pass);
    CHECK(a.annotations[i].ne_type == b.annotations[i].ne_type);
  }
}

TEST_CASE("two-pass invariants on random documents") {
  Setup s = make_setup();
  std::mt19937 rng(2026);
  const std::vector<std::string> surnames = {"Gbagbo", "Banny", "Soro", "Konan", "Kouassi"};
  const std::vector<std::string> fillers = {"la paix avance", "le vote approche",
                                            "la ville dort", "tout va bien"};
  std::uniform_int_distribution<std::size_t> sn(0, surnames.size() - 1);
  std::uniform_int_distribution<std::size_t> fl(0, fillers.size() - 1);
  std::uniform_int_distribution<int> reps(1, 5);

  for (int iter = 0; iter < 40; ++iter) {
    std::string surname = surnames[sn(rng)];
    std::string text = "Laurent " + surname + " signe la paix. ";
    int k = reps(rng);
    for (int j = 0; j < k; ++j)
      text += fillers[fl(rng)] + " selon " + surname + ". ";

    PassOneResult p1 = pass_one(text, s.grammars.grammar, s.grammars.context_rules,
                                s.lexicon, s.taxonomy);
    ExtractionResult r = extract(text, s.cfg());

    // monotone recall: every recognized pass-1 span is still recognized
    std::set<std::pair<std::size_t, std::size_t>> before, after;
    for (const auto& a : p1.annotations)
      if (a.recognized()) before.insert({a.start, a.end});
    for (const auto& a : r.annotations)
      if (a.recognized()) after.insert({a.start, a.end});
    for (const auto& span : before) CHECK(after.count(span) == 1);

    // propagation soundness: pass-2 types come from memorized pass-1 keys
    for (const auto& a : r.annotations) {
      if (a.pass != 2) continue;
      CHECK(a.evidence == Evidence::Propagated);
      CHECK(a.ne_type->class_name == "Person");
    }

    // conservation: stats match the annotation list
    std::size_t typed = 0;
    for (const auto& a : r.annotations)
      if (a.recognized()) ++typed;
    std::size_t sum = 0;
    for (const auto& [name, st] : r.stats) sum += st.total();
    CHECK(sum == typed);

    // non-overlap, sorted
    for (std::size_t i = 1; i < r.annotations.size(); ++i)
      CHECK(r.annotations[i - 1].end <= r.annotations[i].start);

    // all k repeats propagate
    CHECK(count_class(r.annotations, "Person", 2) == static_cast<std::size_t>(k));
    CHECK(r.unrecognized == 0);
  }
}
