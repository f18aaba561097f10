/*
Copyright 2026 The tripled Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <gtest/gtest.h>

#include <string>

#include "support/sample_graph.hpp"
#include "support/oracle.hpp"
#include "support/random_cases.hpp"
#include "tripled/parse.hpp"
#include "tripled/pattern.hpp"
#include "tripled/term.hpp"

namespace tripled {
namespace {

using testing::iri;
using testing::lit;

TEST(SerializeTerm, IriInAngleBrackets) { EXPECT_EQ(serializeTerm(iri("C")), "<C>"); }

TEST(SerializeTerm, PlainLiteralQuoted) { EXPECT_EQ(serializeTerm(lit("Craig")), "\"Craig\""); }

TEST(SerializeTerm, EscapesQuotesAndBackslashes) {
  EXPECT_EQ(serializeTerm(lit("say \"hi\"")), R"("say \"hi\"")");
  EXPECT_EQ(serializeTerm(lit("a\\b")), R"("a\\b")");
}

TEST(SerializeTerm, TypedLiteral) {
  EXPECT_EQ(serializeTerm(Term::literal("42", "http://www.w3.org/2001/XMLSchema#integer")),
            "\"42\"^^<http://www.w3.org/2001/XMLSchema#integer>");
}

TEST(SerializeTerm, ControlCharactersStayOnOneLine) {
  EXPECT_EQ(serializeTerm(lit("a\tb\nc\rd")), R"("a\tb\nc\rd")");
}

TEST(Term, LiteralEqualityIncludesDatatype) {
  EXPECT_NE(lit("42"), Term::literal("42", "xsd:int"));
  EXPECT_EQ(Term::literal("42", "xsd:int"), Term::literal("42", "xsd:int"));
  EXPECT_NE(iri("x"), lit("x"));
}

TEST(Term, RejectsInvalidIris) {
  EXPECT_THROW(Term::iri(""), ParseError);
  EXPECT_THROW(Term::iri("a b"), ParseError);
  EXPECT_THROW(Term::iri("a<b"), ParseError);
  EXPECT_THROW(Term::literal("x", "bad dt"), ParseError);
}

TEST(ParseTerm, RejectsBlankNodesAndLanguageTags) {
  EXPECT_THROW(parseTerm("_:b0"), ParseError);
  EXPECT_THROW(parseTerm("\"chat\"@fr"), ParseError);
  EXPECT_THROW(parseTerm("\"unterminated"), ParseError);
  EXPECT_THROW(parseTerm("<a> trailing"), ParseError);
  EXPECT_THROW(parseTerm(R"("bad \q escape")"), ParseError);
}

// Round trip and injectivity over random strings heavy in quote, backslash
// and control characters.
TEST(SerializeTerm, RoundTripProperty) {
  testing::Rng rng(7);
  const std::string alphabet = "ab\"\\\t\n\r ^<>@_:'x";
  std::vector<Term> seen;
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const std::size_t len = rng.below(12);
    for (std::size_t k = 0; k < len; ++k) s += alphabet[rng.below(alphabet.size())];
    Term t = Term::literal(s);
    if (rng.chance(0.3)) t = Term::literal(s, "dt" + std::to_string(rng.below(3)));
    if (rng.chance(0.3) && Term::isValidIri(s)) t = Term::iri(s);
    const std::string text = serializeTerm(t);
    ASSERT_EQ(parseTerm(text), t) << text;
    for (const auto& other : seen) ASSERT_EQ(other == t, serializeTerm(other) == text);
    if (seen.size() < 200) seen.push_back(t);
  }
}

TEST(ParseTriples, FirstLineOfSample) {
  const auto ts = parseTriples("<C> <type> <Student> .");
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0], (Triple{iri("C"), iri("type"), iri("Student")}));
}

TEST(ParseTriples, CommentsAndBlankLinesIgnored) {
  EXPECT_TRUE(parseTriples("# comment\n\n   \n").empty());
}

TEST(ParseTriples, KeepsOrderAndDuplicates) {
  const auto ts = parseTriples("<a> <p> \"1\" .\n<a> <p> \"1\" .\r\n<b> <p> <c>.  # trailing\n");
  ASSERT_EQ(ts.size(), 3u);
  EXPECT_EQ(ts[0], ts[1]);
  EXPECT_EQ(ts[2].s, iri("b"));
}

TEST(ParseTriples, SampleGraphHasTenTriples) { EXPECT_EQ(testing::sampleGraph().size(), 10u); }

TEST(ParseTriples, LiteralSubjectRejected) {
  try {
    parseTriples("\"x\" <p> <o> .");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("subject must be IRI"), std::string::npos);
  }
}

TEST(ParseTriples, ErrorsCarryLineNumbers) {
  const char* text = "<a> <p> <o> .\n# ok\n<a> <p> .\n";
  try {
    parseTriples(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parseTriples("<a> \"p\" <o> ."), ParseError);
  EXPECT_THROW(parseTriples("<a> <p> <o>"), ParseError);
  EXPECT_THROW(parseTriples("<a> <p> _:b ."), ParseError);
  EXPECT_THROW(parseTriples("<a><p><o> ."), ParseError);
  EXPECT_THROW(parseTriples("<a> <p> <o> . <x>"), ParseError);
}

TEST(ParseBgpQuery, SinglePattern) {
  const Bgp bgp = parseBgpQuery("?X <type> <Student> .");
  ASSERT_EQ(bgp.size(), 1u);
  EXPECT_TRUE(bgp[0].s.isVariable());
  EXPECT_EQ(bgp[0].s.varName(), "X");
  EXPECT_EQ(bgp[0].o.term(), iri("Student"));
}

TEST(ParseBgpQuery, Q7ListingKeepsOrder) {
  const Bgp bgp = parseBgpQuery(testing::kQ7Text);
  ASSERT_EQ(bgp.size(), 4u);
  EXPECT_EQ(bgp[0].o.term(), iri("Student"));
  EXPECT_EQ(bgp[1].o.term(), iri("Course"));
  EXPECT_EQ(bgp[2].s.term(), iri("http://...Professor0"));
  EXPECT_EQ(bgp[3].p.term(), iri("takesCourse"));
  EXPECT_EQ(bgp.variables(), (std::vector<std::string>{"X", "Y"}));
}

TEST(ParseBgpQuery, SelectWrapperIgnored) {
  const Bgp wrapped = parseBgpQuery("select * where {\n ?x <memberOf> ?g .\n ?x <name> \"Sam\" }");
  const Bgp bare = parseBgpQuery("?x <memberOf> ?g . ?x <name> \"Sam\" .");
  EXPECT_EQ(wrapped, bare);
  EXPECT_EQ(parseBgpQuery("{ ?s ?p ?o }").size(), 1u);
}

TEST(ParseBgpQuery, CommentsAllowed) {
  const Bgp bgp = parseBgpQuery("//original query\n# another\n?s <p> \"a # not a comment\" .\n");
  EXPECT_EQ(bgp[0].o.term(), lit("a # not a comment"));
}

TEST(ParseBgpQuery, EmptyBodyRejected) {
  EXPECT_THROW(parseBgpQuery(""), ParseError);
  EXPECT_THROW(parseBgpQuery("# only a comment\n"), ParseError);
  EXPECT_THROW(parseBgpQuery("SELECT * WHERE { }"), ParseError);
}

TEST(ParseBgpQuery, MalformedPatternsRejected) {
  EXPECT_THROW(parseBgpQuery("?x <p> ?y"), ParseError);            // missing '.'
  EXPECT_THROW(parseBgpQuery("\"lit\" <p> ?y ."), ParseError);      // literal subject
  EXPECT_THROW(parseBgpQuery("?x \"p\" ?y ."), ParseError);         // literal predicate
  EXPECT_THROW(parseBgpQuery("?1x <p> ?y ."), ParseError);          // bad variable name
  EXPECT_THROW(parseBgpQuery("?x <p> ."), ParseError);              // too few positions
  EXPECT_THROW(parseBgpQuery("SELECT ?x WHERE { ?x <p> ?y . }"), ParseError);
  EXPECT_THROW(parseBgpQuery("SELECT * WHERE { ?x <p> ?y ."), ParseError);
  try {
    parseBgpQuery("?x <p> ?y .\n?x <q> _:b .\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(MatchTPT, ConstantsAndVariables) {
  const TriplePattern tp{PatternPos::var("x"), iri("type"), iri("Student")};
  EXPECT_TRUE(matchTPT(tp, Triple{iri("C"), iri("type"), iri("Student")}));
  EXPECT_FALSE(matchTPT(tp, Triple{iri("A"), iri("type"), iri("Faculty")}));
}

TEST(MatchTPT, RepeatedVariableMustAgree) {
  const TriplePattern tp{PatternPos::var("x"), iri("name"), PatternPos::var("x")};
  EXPECT_FALSE(matchTPT(tp, Triple{iri("C"), iri("name"), lit("Craig")}));
  EXPECT_TRUE(matchTPT(tp, Triple{iri("C"), iri("name"), iri("C")}));
}

TEST(MatchTPT, ConstantSubjectMismatch) {
  const TriplePattern tp{iri("C"), PatternPos::var("p"), PatternPos::var("o")};
  EXPECT_FALSE(matchTPT(tp, Triple{iri("S"), iri("name"), lit("Sam")}));
}

TEST(MatchTPT, AllDistinctVariablesMatchEverything) {
  const TriplePattern tp{PatternPos::var("a"), PatternPos::var("b"), PatternPos::var("c")};
  testing::Rng rng(11);
  for (const auto& t : testing::randomDataset(rng, 300)) EXPECT_TRUE(matchTPT(tp, t));
}

TEST(MatchTPT, AgreesWithBruteForceUnifier) {
  testing::Rng rng(12345);
  std::size_t positives = 0;
  for (int i = 0; i < 20000; ++i) {
    auto data = testing::randomDataset(rng, 20);
    const Bgp bgp = testing::randomBgp(rng, data, 1, 1);
    const Triple& t = data[rng.below(data.size())];
    const bool expected = testing::oracleMatchTriple(bgp[0], t);
    ASSERT_EQ(matchTPT(bgp[0], t), expected) << bgp[0] << " vs " << t;
    positives += expected;
  }
  EXPECT_GT(positives, 1000u);
}

}  // namespace
}  // namespace tripled
