#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "pentagon/document.hpp"
#include "pentagon/examples.hpp"

using namespace pentagon;
using testutil::Q;

namespace {

std::string doc_text(const char* entries) {
    std::string t = R"({
  "field": {"kind": "rational"},
  "spaces": {"M": 2},
  "maps": {"a": {"domain": ["M"], "codomain": ["M"], "matrix": ENTRIES}}
})";
    return t.replace(t.find("ENTRIES"), 7, entries);
}

}  // namespace

TEST_CASE("entries normalize to lowest terms with the sign on the numerator") {
    auto any = parse_document(doc_text(R"([["3/6", "0"], ["-4/2", "1"]])"));
    auto& doc = std::get<Document<Rational>>(any);
    const auto& a = doc.need("a");
    CHECK(a.at(0, 0) == Rational(1, 2));
    CHECK(a.at(1, 0) == Rational(-2));
    auto text = emit_document(doc);
    CHECK(text.find("\"1/2\"") != std::string::npos);
    CHECK(text.find("\"-2\"") != std::string::npos);
    CHECK(text.find("3/6") == std::string::npos);
}

TEST_CASE("entry grammar rejections") {
    CHECK_THROWS_AS(parse_document(doc_text(R"([["-2/-4", "0"], ["0", "0"]])")), UsageError);
    CHECK_THROWS_AS(parse_document(doc_text(R"([["1/0", "0"], ["0", "0"]])")), UsageError);
    CHECK_THROWS_AS(parse_document(doc_text(R"([["1.5", "0"], ["0", "0"]])")), UsageError);
    CHECK_THROWS_AS(parse_document(doc_text(R"([[1, "0"], ["0", "0"]])")), UsageError);
}

TEST_CASE("prime-field documents take least nonnegative residues only") {
    std::string t = R"({
  "field": {"kind": "prime", "p": 5},
  "spaces": {"M": 1},
  "maps": {"a": {"domain": ["M"], "codomain": ["M"], "matrix": [["4"]]}}
})";
    auto any = parse_document(t);
    auto& doc = std::get<Document<Fp>>(any);
    CHECK(doc.need("a").at(0, 0).value() == 4);

    std::string bad = t;
    bad.replace(bad.find("\"4\""), 3, "\"7\"");
    CHECK_THROWS_AS(parse_document(bad), UsageError);

    std::string nonprime = t;
    nonprime.replace(nonprime.find(": 5"), 3, ": 6");
    CHECK_THROWS_AS(parse_document(nonprime), UsageError);
}

TEST_CASE("shape and reference validation") {
    CHECK_THROWS_AS(parse_document(doc_text(R"([["1", "0"]])")), UsageError);            // row count
    CHECK_THROWS_AS(parse_document(doc_text(R"([["1"], ["0"]])")), UsageError);          // row length
    CHECK_THROWS_AS(parse_document(R"({"field": {"kind": "rational"}, "spaces": {"M": 2},
        "maps": {"a": {"domain": ["X"], "codomain": ["M"], "matrix": [["0","0"],["0","0"]]}}})"),
                    UsageError);                                                          // undeclared space
    CHECK_THROWS_AS(parse_document(R"({"field": {"kind": "rational"}, "spaces": {"M": 0}, "maps": {}})"),
                    UsageError);                                                          // dim 0
    CHECK_THROWS_AS(parse_document("{"), UsageError);                                     // syntax
    CHECK_THROWS_AS(parse_document(R"({"spaces": {}, "maps": {}})"), UsageError);         // no field
}

TEST_CASE("emit then parse is the identity on values; emit is stable on canonical text") {
    for (const std::string name : {"c2", "c3", "sweedler", "torsor-c3", "nongalois-2pt"}) {
        auto doc = example_document<Rational>(name, 1, Q);
        auto text = emit_document(doc);
        auto any = parse_document(text);
        auto& doc2 = std::get<Document<Rational>>(any);
        CHECK(doc2.spaces == doc.spaces);
        for (const auto& [mname, m] : doc.maps) CHECK(doc2.need(mname) == m);
        CHECK(emit_document(doc2) == text);  // bit-exact on canonical documents
    }
    auto fdoc = example_document<Fp>("c4", 2, FieldSpec::primefield(5));
    auto text = emit_document(fdoc);
    auto any = parse_document(text);
    CHECK(emit_document(std::get<Document<Fp>>(any)) == text);
}

TEST_CASE("meta round-trips and absent meta stays absent") {
    auto doc = example_document<Rational>("c2", 2, Q);
    CHECK(!doc.meta.empty());
    auto text = emit_document(doc);
    CHECK(text.find("\"meta\"") != std::string::npos);
    auto any = parse_document(text);
    CHECK(std::get<Document<Rational>>(any).meta == doc.meta);

    Document<Rational> bare;
    bare.field = Q;
    bare.add("a", LegMap<Rational>::identity(Q, {Space("M", 2)}));
    auto bare_text = emit_document(bare);
    CHECK(bare_text.find("meta") == std::string::npos);
    CHECK(emit_document(std::get<Document<Rational>>(parse_document(bare_text))) == bare_text);
}
