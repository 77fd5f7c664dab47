#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <variant>

#include "pentagon/field.hpp"
#include "pentagon/legmap.hpp"

namespace pentagon {

using Json = nlohmann::ordered_json;

/// Structure-tensor interchange document: one field, named spaces, named
/// maps whose legs reference the spaces. Canonical form sorts names and
/// writes entries in lowest terms (sign on the numerator) or as least
/// nonnegative residues.
template <class K>
struct Document {
    FieldSpec field;
    std::map<std::string, Index> spaces;
    std::map<std::string, LegMap<K>> maps;
    Json meta = Json::object();

    const LegMap<K>& need(const std::string& name) const {
        auto it = maps.find(name);
        if (it == maps.end()) throw UsageError("document has no map named '" + name + "'");
        return it->second;
    }
    bool has(const std::string& name) const { return maps.count(name) != 0; }

    /// Register a map, declaring its leg spaces. Conflicting dims for one
    /// label are an error.
    void add(const std::string& name, const LegMap<K>& m) {
        for (const Legs* legs : {&m.domain(), &m.codomain()})
            for (const Space& s : *legs) {
                auto [it, inserted] = spaces.emplace(s.label, s.dim);
                if (!inserted && it->second != s.dim)
                    throw UsageError("space '" + s.label + "' declared with two dimensions");
            }
        maps.insert_or_assign(name, m);
    }
};

using AnyDocument = std::variant<Document<Rational>, Document<Fp>>;

namespace detail {

template <class K>
Document<K> parse_typed(const Json& j, FieldSpec field) {
    Document<K> doc;
    doc.field = field;
    if (!j.contains("spaces") || !j.at("spaces").is_object())
        throw UsageError("document needs a 'spaces' object");
    for (const auto& [label, dim] : j.at("spaces").items()) {
        if (!dim.is_number_integer() || dim.template get<Index>() < 1)
            throw UsageError("space '" + label + "' must have a positive integer dimension");
        doc.spaces[label] = dim.template get<Index>();
    }
    if (!j.contains("maps") || !j.at("maps").is_object())
        throw UsageError("document needs a 'maps' object");
    for (const auto& [name, mj] : j.at("maps").items()) {
        auto read_legs = [&](const char* key) {
            if (!mj.contains(key) || !mj.at(key).is_array())
                throw UsageError("map '" + name + "' needs a '" + key + "' array");
            Legs legs;
            for (const auto& l : mj.at(key)) {
                if (!l.is_string()) throw UsageError("leg labels must be strings");
                const std::string label = l.template get<std::string>();
                auto it = doc.spaces.find(label);
                if (it == doc.spaces.end())
                    throw UsageError("map '" + name + "' references undeclared space '" + label + "'");
                legs.emplace_back(label, it->second);
            }
            return legs;
        };
        Legs cod = read_legs("codomain"), dom = read_legs("domain");
        LegMap<K> m(field, cod, dom);
        if (!mj.contains("matrix") || !mj.at("matrix").is_array() ||
            static_cast<Index>(mj.at("matrix").size()) != m.rows())
            throw UsageError("map '" + name + "' matrix must have " + std::to_string(m.rows()) +
                             " rows");
        for (Index r = 0; r < m.rows(); ++r) {
            const auto& row = mj.at("matrix").at(static_cast<std::size_t>(r));
            if (!row.is_array() || static_cast<Index>(row.size()) != m.cols())
                throw UsageError("map '" + name + "' row " + std::to_string(r) + " must have " +
                                 std::to_string(m.cols()) + " entries");
            for (Index c = 0; c < m.cols(); ++c) {
                const auto& e = row.at(static_cast<std::size_t>(c));
                if (!e.is_string())
                    throw UsageError("matrix entries must be strings");
                m.at(r, c) = field_ops<K>::parse(e.template get<std::string>(), field);
            }
        }
        doc.maps.emplace(name, std::move(m));
    }
    if (j.contains("meta")) {
        if (!j.at("meta").is_object()) throw UsageError("'meta' must be an object");
        doc.meta = j.at("meta");
    }
    return doc;
}

}  // namespace detail

inline AnyDocument parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw UsageError(std::string("JSON syntax error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("field") || !j.at("field").is_object())
        throw UsageError("document needs a 'field' object");
    const auto& fj = j.at("field");
    if (!fj.contains("kind") || !fj.at("kind").is_string())
        throw UsageError("field needs a 'kind' string");
    const std::string kind = fj.at("kind").template get<std::string>();
    if (kind == "rational") {
        return detail::parse_typed<Rational>(j, FieldSpec::rationals());
    } else if (kind == "prime") {
        if (!fj.contains("p") || !fj.at("p").is_number_integer())
            throw UsageError("prime field needs an integer modulus 'p'");
        return detail::parse_typed<Fp>(j, FieldSpec::primefield(fj.at("p").template get<std::uint64_t>()));
    }
    throw UsageError("unknown field kind '" + kind + "'");
}

template <class K>
Json document_json(const Document<K>& doc) {
    Json j;
    Json fj;
    fj["kind"] = doc.field.kind == FieldSpec::Kind::rational ? "rational" : "prime";
    if (doc.field.kind == FieldSpec::Kind::prime) fj["p"] = doc.field.p;
    j["field"] = fj;
    Json sj = Json::object();
    for (const auto& [label, dim] : doc.spaces) sj[label] = dim;
    j["spaces"] = sj;
    Json mj = Json::object();
    for (const auto& [name, m] : doc.maps) {
        Json one;
        Json dom = Json::array(), cod = Json::array();
        for (const Space& s : m.domain()) {
            if (!doc.spaces.count(s.label) || doc.spaces.at(s.label) != s.dim)
                throw UsageError("map '" + name + "' uses undeclared space '" + s.label + "'");
            dom.push_back(s.label);
        }
        for (const Space& s : m.codomain()) {
            if (!doc.spaces.count(s.label) || doc.spaces.at(s.label) != s.dim)
                throw UsageError("map '" + name + "' uses undeclared space '" + s.label + "'");
            cod.push_back(s.label);
        }
        one["domain"] = dom;
        one["codomain"] = cod;
        Json rows = Json::array();
        for (Index r = 0; r < m.rows(); ++r) {
            Json row = Json::array();
            for (Index c = 0; c < m.cols(); ++c) row.push_back(field_ops<K>::format(m.at(r, c)));
            rows.push_back(row);
        }
        one["matrix"] = rows;
        mj[name] = one;
    }
    j["maps"] = mj;
    if (!doc.meta.empty()) j["meta"] = doc.meta;
    return j;
}

template <class K>
std::string emit_document(const Document<K>& doc) {
    return document_json(doc).dump(2) + "\n";
}

}  // namespace pentagon
