// Batch front end over the structure-tensor interchange format.
// Exit codes: 0 all checks pass, 1 a mathematical check failed,
// 2 input or usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "pentagon/acceptance.hpp"
#include "pentagon/document.hpp"
#include "pentagon/examples.hpp"
#include "pentagon/galois.hpp"
#include "pentagon/hopf.hpp"
#include "pentagon/pentagon.hpp"
#include "pentagon/phimod.hpp"
#include "pentagon/reconstruct.hpp"

namespace {

using namespace pentagon;

struct Options {
    std::string in, in2, out;
    std::string map = "phi";
    std::string op;
    Index mult_dim = 1;
    std::string name;
    Index mult = 1;
    std::string field = "Q";
    std::uint64_t p = 0;
};

struct Report {
    Json j;
    bool pass = true;

    explicit Report(const std::string& command) { j["command"] = command; }

    void add_cert(const CheckReport& c) {
        Json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        Json v = Json::array();
        for (const auto& viol : c.violations)
            v.push_back(Json{{"axiom", viol.axiom}, {"nonzero_entries", viol.nonzero_entries}});
        cj["violations"] = v;
        certs.push_back(cj);
        pass = pass && c.pass;
    }

    template <class K>
    void set_outputs(const Document<K>& doc, const std::string& out_path) {
        outputs = document_json(doc);
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) throw UsageError("cannot write '" + out_path + "'");
            f << emit_document(doc);
        }
    }

    int finish() {
        j["pass"] = pass;
        j["certificates"] = certs;
        for (auto& [k, v] : extras.items()) j[k] = v;
        if (outputs) j["outputs"] = *outputs;
        std::cout << j.dump(2) << "\n";
        return pass ? 0 : 1;
    }

    Json certs = Json::array();
    Json extras = Json::object();
    std::optional<Json> outputs;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

AnyDocument load(const std::string& path) {
    if (path.empty()) throw UsageError("this command needs --in");
    return parse_document(read_file(path));
}

template <class K>
Document<K> solution_document(const FieldSpec& field, const MPESolution<K>& s) {
    Document<K> doc;
    doc.field = field;
    doc.add("F", s.F);
    doc.add("phi", s.phi);
    return doc;
}

// --- command handlers ---------------------------------------------------------------

template <class K>
int cmd_check_pe(const Document<K>& doc, const Options& o) {
    Report rep("check-pe");
    rep.add_cert(check_pentagon(doc.need(o.map)));
    return rep.finish();
}

template <class K>
int cmd_check_mpe(const Document<K>& doc, const Options&) {
    Report rep("check-mpe");
    rep.add_cert(check_mpe(doc.need("F"), doc.need("phi")));
    return rep.finish();
}

template <class K>
int cmd_extract_phi(const Document<K>& doc, const Options& o) {
    Report rep("extract-phi");
    auto phi = extract_phi(doc.need("F"));
    rep.add_cert(check_mpe(doc.need("F"), phi));
    rep.add_cert(check_pentagon(phi));
    Document<K> out;
    out.field = doc.field;
    out.add("phi", phi);
    rep.set_outputs(out, o.out);
    return rep.finish();
}

template <class K>
int cmd_coproduct(const Document<K>& doc, const Options& o) {
    Report rep("coproduct");
    auto cm = coproduct_from_solution(doc.need("F"));
    rep.add_cert(check_coproduct(cm));
    rep.extras["dim_V"] = cm.V.dim;
    Document<K> out;
    out.field = doc.field;
    out.add("delta", cm.delta);
    rep.set_outputs(out, o.out);
    return rep.finish();
}

template <class K>
int cmd_classify_coproduct(const Document<K>& doc, const Options& o) {
    Report rep("classify-coproduct");
    const auto& delta = doc.need("delta");
    if (delta.domain().size() != 1) throw UsageError("'delta' must have a single domain leg");
    Index n = 1;
    while (n * n < delta.domain()[0].dim) ++n;
    if (n * n != delta.domain()[0].dim)
        throw UsageError("'delta' must live on End(V), a perfect-square dimension");
    CoproductMap<K> cm{Space("V", n), delta};
    auto s = solution_from_coproduct(cm);
    rep.add_cert(check_mpe(s.F, s.phi));
    rep.extras["dim_V"] = n;
    rep.extras["dim_M"] = s.M.dim;
    rep.set_outputs(solution_document(doc.field, s), o.out);
    return rep.finish();
}

template <class K>
int cmd_combine(const Document<K>& doc, const std::optional<Document<K>>& doc2, const Options& o) {
    Report rep("combine");
    rep.extras["op"] = o.op;
    if (o.op == "flip" || o.op == "tensor") {
        auto s = verify_mpe(doc.need("F"), doc.need("phi"));
        rep.add_cert(check_mpe(s.F, s.phi));
        if (!s.verified) return rep.finish();
        if (o.op == "flip") {
            auto r = flip_solution(s);
            rep.add_cert(check_mpe(r.F, r.phi));
            rep.set_outputs(solution_document(doc.field, r), o.out);
        } else {
            if (!doc2) throw UsageError("combine --op tensor needs --in2");
            auto s2 = verify_mpe(doc2->need("F"), doc2->need("phi"));
            rep.add_cert(check_mpe(s2.F, s2.phi));
            if (!s2.verified) return rep.finish();
            auto r = tensor_solutions(s, s2);
            rep.add_cert(check_mpe(r.F, r.phi));
            rep.set_outputs(solution_document(doc.field, r), o.out);
        }
    } else if (o.op == "op" || o.op == "mult") {
        auto p = verify_pentagon(doc.need("phi"));
        rep.add_cert(check_pentagon(p.phi));
        if (!p.verified) return rep.finish();
        if (o.op == "op") {
            auto r = op_solution(p);
            rep.add_cert(check_mpe(r.F, r.phi));
            rep.set_outputs(solution_document(doc.field, r), o.out);
        } else {
            auto r = multiplicity(p, o.mult_dim);
            rep.add_cert(check_pentagon(r.phi));
            Document<K> out;
            out.field = doc.field;
            out.add("phi", r.phi);
            rep.set_outputs(out, o.out);
        }
    } else {
        throw UsageError("--op must be one of flip|op|tensor|mult");
    }
    return rep.finish();
}

template <class K>
int cmd_equiv(const Document<K>& doc, const Options&) {
    Report rep("equiv");
    auto s = verify_mpe(doc.need("F"), doc.need("phi"));
    auto s2 = verify_mpe(doc.need("F2"), doc.need("phi2"));
    rep.add_cert(check_mpe(s.F, s.phi));
    rep.add_cert(check_mpe(s2.F, s2.phi));
    rep.add_cert(check_equivalence(s, s2, doc.need("f"), doc.need("g")));
    return rep.finish();
}

template <class K>
int cmd_hopf_axioms(const Document<K>& doc, const Options&) {
    Report rep("hopf-axioms");
    rep.add_cert(check_hopf_axioms(hopf_from_document(doc)));
    return rep.finish();
}

template <class K>
int cmd_hopf_module(const Document<K>& doc, const Options&) {
    Report rep("hopf-module");
    auto hm = hopf_module_from_document(doc);
    rep.add_cert(check_hopf_axioms(hm.hopf));
    rep.add_cert(check_hopf_module(hm));
    return rep.finish();
}

template <class K>
int cmd_hopf_phi(const Document<K>& doc, const Options& o) {
    Report rep("hopf-phi");
    auto hm = hopf_module_from_document(doc);
    auto sol = phi_from_hopf_module(hm);
    rep.add_cert(check_pentagon(sol.phi));
    auto psi = phi_inverse_via_antipode(hm);
    Document<K> out;
    out.field = doc.field;
    out.add("phi", sol.phi);
    out.add("phi_inv", psi);
    rep.set_outputs(out, o.out);
    return rep.finish();
}

template <class K>
int cmd_galois(const Document<K>& doc, const Options& o) {
    Report rep("galois");
    auto mc = module_coalgebra_from_document(doc);
    rep.add_cert(check_module_coalgebra(mc));
    auto gc = galois_check(mc);
    rep.add_cert(gc);
    if (gc.pass) {
        auto s = galois_mpe(mc);
        rep.add_cert(check_mpe(s.F, s.phi));
        rep.set_outputs(solution_document(doc.field, s), o.out);
    }
    return rep.finish();
}

template <class K>
int cmd_build_fv(const Document<K>& doc, const Options& o) {
    Report rep("build-fv");
    auto pd = paired_data_from_document(doc);
    rep.add_cert(check_module_coalgebra(pd.mc));
    rep.add_cert(check_paired_data(pd));
    auto s = build_FV(pd);
    rep.add_cert(check_mpe(s.F, s.phi));
    rep.set_outputs(solution_document(doc.field, s), o.out);
    return rep.finish();
}

template <class K>
int cmd_reconstruct(const Document<K>& doc, const Options& o) {
    Report rep("reconstruct");
    auto p = verify_pentagon(doc.need(o.map));
    rep.add_cert(check_pentagon(p.phi));
    if (!p.verified) return rep.finish();
    auto r = reconstruct_hopf(p);
    for (const auto& c : r.certificates) rep.add_cert(c);
    rep.add_cert(roundtrip(r));
    rep.extras["dim_H"] = r.dim_H();
    rep.extras["dim_coinv"] = r.dim_coinv();
    Document<K> out;
    out.field = doc.field;
    add_hopf(out, r.hopf);
    out.add("coaction", r.coaction);
    out.add("theta", r.theta);
    rep.set_outputs(out, o.out);
    return rep.finish();
}

template <class K>
int cmd_mpe_reconstruct(const Document<K>& doc, const Options&) {
    Report rep("mpe-reconstruct");
    auto s = verify_mpe(doc.need("F"), doc.need("phi"));
    rep.add_cert(check_mpe(s.F, s.phi));
    if (!s.verified) return rep.finish();
    auto r = mpe_reconstruct(s);
    for (const auto& c : r.certificates) rep.add_cert(c);
    rep.extras["dim_lambda_F"] = r.lf_basis.dim();
    rep.extras["dim_rho_F"] = r.rf_basis.dim();
    return rep.finish();
}

template <class K>
int cmd_phimod_check(const Document<K>& doc, const Options&) {
    Report rep("phimod-check");
    auto p = verify_pentagon(doc.need("phi"));
    rep.add_cert(check_pentagon(p.phi));
    if (!p.verified) return rep.finish();
    rep.add_cert(check_phi_module(p, doc.need("psi")));
    return rep.finish();
}

template <class K>
int cmd_phimod_tensor(const Document<K>& doc, const Options& o) {
    Report rep("phimod-tensor");
    auto p = verify_pentagon(doc.need("phi"));
    rep.add_cert(check_pentagon(p.phi));
    if (!p.verified) return rep.finish();
    auto a = make_phi_module(p, doc.need("psi"));
    auto b = make_phi_module(p, doc.need("psi2"));
    rep.add_cert(check_phi_module(p, a.psi));
    rep.add_cert(check_phi_module(p, b.psi));
    if (!a.verified || !b.verified) return rep.finish();
    auto t = tensor_phi_modules(a, b);
    rep.add_cert(check_phi_module(p, t.psi));
    Document<K> out;
    out.field = doc.field;
    out.add("psi", t.psi);
    rep.set_outputs(out, o.out);
    return rep.finish();
}

int cmd_example(const Options& o) {
    static const std::vector<std::string> names{"c1", "c2", "c3", "c4", "c6",
                                                "s3", "dual-c2", "dual-c4", "sweedler",
                                                "torsor-c3", "nongalois-2pt"};
    if (std::find(names.begin(), names.end(), o.name) == names.end())
        throw UsageError("unknown example '" + o.name + "'");
    Report rep("example");
    rep.extras["name"] = o.name;
    if (o.field == "Q") {
        auto doc = example_document<Rational>(o.name, o.mult, FieldSpec::rationals());
        rep.set_outputs(doc, o.out);
    } else if (o.field == "Fp") {
        if (o.p == 0) throw UsageError("--field Fp needs --p <prime>");
        auto doc = example_document<Fp>(o.name, o.mult, FieldSpec::primefield(o.p));
        rep.set_outputs(doc, o.out);
    } else {
        throw UsageError("--field must be Q or Fp");
    }
    return rep.finish();
}

int cmd_selftest() {
    Report rep("selftest");
    for (const auto& r : run_acceptance()) {
        Json cj;
        cj["name"] = "criterion-" + std::to_string(r.number) + ": " + r.name;
        cj["pass"] = r.pass;
        cj["detail"] = r.detail;
        rep.certs.push_back(cj);
        rep.pass = rep.pass && r.pass;
    }
    return rep.finish();
}

template <class Fn>
int with_document(const Options& o, Fn&& fn) {
    auto any = load(o.in);
    return std::visit([&](const auto& doc) { return fn(doc); }, any);
}

int dispatch(const std::string& cmd, const Options& o) {
    if (cmd == "example") return cmd_example(o);
    if (cmd == "selftest") return cmd_selftest();
    if (cmd == "combine") {
        auto any = load(o.in);
        return std::visit(
            [&](const auto& doc) {
                using DocT = std::decay_t<decltype(doc)>;
                std::optional<DocT> second;
                if (!o.in2.empty()) {
                    auto any2 = load(o.in2);
                    auto* p2 = std::get_if<DocT>(&any2);
                    if (!p2) throw UsageError("--in and --in2 use different fields");
                    second = *p2;
                }
                return cmd_combine(doc, second, o);
            },
            any);
    }
    return with_document(o, [&](const auto& doc) {
        if (cmd == "check-pe") return cmd_check_pe(doc, o);
        if (cmd == "check-mpe") return cmd_check_mpe(doc, o);
        if (cmd == "extract-phi") return cmd_extract_phi(doc, o);
        if (cmd == "coproduct") return cmd_coproduct(doc, o);
        if (cmd == "classify-coproduct") return cmd_classify_coproduct(doc, o);
        if (cmd == "equiv") return cmd_equiv(doc, o);
        if (cmd == "hopf-axioms") return cmd_hopf_axioms(doc, o);
        if (cmd == "hopf-module") return cmd_hopf_module(doc, o);
        if (cmd == "hopf-phi") return cmd_hopf_phi(doc, o);
        if (cmd == "galois") return cmd_galois(doc, o);
        if (cmd == "build-fv") return cmd_build_fv(doc, o);
        if (cmd == "reconstruct") return cmd_reconstruct(doc, o);
        if (cmd == "mpe-reconstruct") return cmd_mpe_reconstruct(doc, o);
        if (cmd == "phimod-check") return cmd_phimod_check(doc, o);
        if (cmd == "phimod-tensor") return cmd_phimod_tensor(doc, o);
        throw UsageError("unknown command '" + cmd + "'");
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solutions of the pentagon and modified pentagon equations"};
    app.require_subcommand(1);
    Options o;

    auto add_in = [&](CLI::App* c) { c->add_option("--in", o.in, "input document"); };
    auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "write produced document here"); };

    auto* check_pe = app.add_subcommand("check-pe", "verify the pentagon equation");
    add_in(check_pe);
    check_pe->add_option("--map", o.map, "map name (default phi)");
    add_in(app.add_subcommand("check-mpe", "verify the modified pentagon equation for (F, phi)"));
    auto* extract = app.add_subcommand("extract-phi", "recover phi from a congruence solution F");
    add_in(extract);
    add_out(extract);
    auto* coproduct = app.add_subcommand("coproduct", "coproduct on End(V) defined by F");
    add_in(coproduct);
    add_out(coproduct);
    auto* classify = app.add_subcommand("classify-coproduct",
                                        "rebuild (F, phi) from a coproduct on End(V)");
    add_in(classify);
    add_out(classify);
    auto* combine = app.add_subcommand("combine", "flip/op/tensor/multiplicity constructions");
    add_in(combine);
    add_out(combine);
    combine->add_option("--op", o.op, "flip|op|tensor|mult")->required();
    combine->add_option("--in2", o.in2, "second input document (tensor)");
    combine->add_option("--mult-dim", o.mult_dim, "multiplicity dimension (mult)");
    add_in(app.add_subcommand("equiv", "verify an equivalence (f, g) between solutions"));
    add_in(app.add_subcommand("hopf-axioms", "verify all Hopf algebra axioms"));
    add_in(app.add_subcommand("hopf-module", "verify Hopf module axioms"));
    auto* hopf_phi = app.add_subcommand("hopf-phi", "pentagon solution of a Hopf module");
    add_in(hopf_phi);
    add_out(hopf_phi);
    auto* galois = app.add_subcommand("galois", "Galois condition and the Galois MPE solution");
    add_in(galois);
    add_out(galois);
    auto* build_fv = app.add_subcommand("build-fv", "F_V from paired comodule data");
    add_in(build_fv);
    add_out(build_fv);
    auto* reconstruct = app.add_subcommand("reconstruct", "Hopf algebra reconstruction from phi");
    add_in(reconstruct);
    add_out(reconstruct);
    reconstruct->add_option("--map", o.map, "map name (default phi)");
    add_in(app.add_subcommand("mpe-reconstruct", "section-6 certificates for (F, phi)"));
    add_in(app.add_subcommand("phimod-check", "verify a module over a pentagon solution"));
    auto* phimod_tensor = app.add_subcommand("phimod-tensor", "tensor two phi-modules");
    add_in(phimod_tensor);
    add_out(phimod_tensor);
    auto* example = app.add_subcommand("example", "emit a builtin example document");
    example->add_option("--name", o.name, "example name")->required();
    example->add_option("--mult", o.mult, "multiplicity (default 1)");
    example->add_option("--field", o.field, "Q or Fp (default Q)");
    example->add_option("--p", o.p, "prime modulus for Fp");
    add_out(example);
    app.add_subcommand("selftest", "run the full acceptance corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return dispatch(cmd, o);
    } catch (const MathError& e) {
        Json j;
        j["command"] = cmd;
        j["pass"] = false;
        j["error"] = Json{{"code", e.code}, {"message", e.what()}};
        std::cout << j.dump(2) << "\n";
        return 1;
    } catch (const UsageError& e) {
        Json j;
        j["command"] = cmd;
        j["pass"] = false;
        j["error"] = Json{{"code", "usage"}, {"message", e.what()}};
        std::cout << j.dump(2) << "\n";
        return 2;
    }
}
