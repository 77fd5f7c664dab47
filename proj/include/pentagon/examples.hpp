#pragma once

#include <string>

#include "pentagon/document.hpp"
#include "pentagon/galois.hpp"
#include "pentagon/hopf.hpp"

namespace pentagon {

// --- document <-> structure conversions -------------------------------------------

template <class K>
void add_hopf(Document<K>& doc, const HopfAlgebra<K>& h) {
    doc.add("mu", h.mu);
    doc.add("unit", h.unit);
    doc.add("delta", h.delta);
    doc.add("counit", h.counit);
    doc.add("antipode", h.antipode);
}

template <class K>
HopfAlgebra<K> hopf_from_document(const Document<K>& doc) {
    const auto& mu = doc.need("mu");
    if (mu.codomain().size() != 1) throw UsageError("'mu' must have a single codomain leg");
    return {mu.codomain()[0], mu, doc.need("unit"), doc.need("delta"), doc.need("counit"),
            doc.need("antipode")};
}

template <class K>
HopfModule<K> hopf_module_from_document(const Document<K>& doc) {
    const auto& action = doc.need("action");
    if (action.codomain().size() != 1) throw UsageError("'action' must have a single codomain leg");
    return {hopf_from_document(doc), action.codomain()[0], action, doc.need("coaction")};
}

template <class K>
ModuleCoalgebra<K> module_coalgebra_from_document(const Document<K>& doc) {
    const auto& dl = doc.need("delta_L");
    if (dl.domain().size() != 1) throw UsageError("'delta_L' must have a single domain leg");
    return {hopf_from_document(doc), dl.domain()[0], dl, doc.need("counit_L"), doc.need("mu_L")};
}

template <class K>
PairedComoduleData<K> paired_data_from_document(const Document<K>& doc) {
    const auto& dv = doc.need("delta_V");
    if (dv.domain().size() != 1) throw UsageError("'delta_V' must have a single domain leg");
    PairedComoduleData<K> pd{module_coalgebra_from_document(doc), hopf_module_from_document(doc),
                             dv.domain()[0], dv, doc.need("pi"), std::nullopt};
    if (doc.has("nu")) pd.nu = doc.need("nu");
    return pd;
}

// --- the named example corpus ------------------------------------------------------

/// Builds the document for one named example. Group-algebra names accept a
/// multiplicity; the section-4 examples do not.
template <class K>
Document<K> example_document(const std::string& name, Index mult, FieldSpec field) {
    if (mult < 1) throw UsageError("multiplicity must be >= 1");
    Document<K> doc;
    doc.field = field;
    doc.meta["name"] = name;
    doc.meta["mult"] = mult;
    doc.meta["field"] = field.str();

    auto add_module_doc = [&](const HopfAlgebra<K>& h) {
        HopfModule<K> hm = mult == 1 ? trivial_module(h) : multiplicity_module(h, mult);
        add_hopf(doc, h);
        doc.add("action", hm.action);
        doc.add("coaction", hm.coaction);
        doc.add("phi", phi_from_hopf_module(hm).phi);
    };

    if (name.size() == 2 && name[0] == 'c' && name[1] >= '1' && name[1] <= '9') {
        add_module_doc(group_algebra<K>(field, cyclic_table(name[1] - '0')));
    } else if (name == "s3") {
        add_module_doc(group_algebra<K>(field, s3_table()));
    } else if (name == "dual-c2") {
        add_module_doc(dual_group_algebra<K>(field, cyclic_table(2)));
    } else if (name == "dual-c4") {
        add_module_doc(dual_group_algebra<K>(field, cyclic_table(4)));
    } else if (name == "sweedler") {
        add_module_doc(sweedler4<K>(field));
    } else if (name == "torsor-c3") {
        if (mult != 1) throw UsageError("'" + name + "' does not take a multiplicity");
        auto mc = torsor_coalgebra<K>(field, cyclic_table(3));
        add_hopf(doc, mc.hopf);
        doc.add("delta_L", mc.delta_L);
        doc.add("counit_L", mc.counit_L);
        doc.add("mu_L", mc.mu_L);
        auto s = galois_mpe(mc);
        doc.add("F", s.F);
        doc.add("phi", s.phi);
    } else if (name == "nongalois-2pt") {
        if (mult != 1) throw UsageError("'" + name + "' does not take a multiplicity");
        ActionTable fixed_points{{0, 0}, {1, 1}};
        auto mc = group_set_coalgebra<K>(field, cyclic_table(2), fixed_points);
        add_hopf(doc, mc.hopf);
        doc.add("delta_L", mc.delta_L);
        doc.add("counit_L", mc.counit_L);
        doc.add("mu_L", mc.mu_L);
    } else {
        throw UsageError("unknown example '" + name + "'");
    }
    return doc;
}

}  // namespace pentagon
