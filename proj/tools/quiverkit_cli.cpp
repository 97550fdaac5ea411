// quiverkit command-line front end: presets, functor construction and
// application, Hom/Ext computations, decomposition, submodule lattices, and
// the property-verification harness. JSON goes to stdout, human summaries to
// stderr. Exit codes: 0 success / verification pass, 1 verification failure,
// 2 usage or input errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "quiverkit/verify.hpp"

using namespace qk;

namespace {

FieldSpec parse_field(const std::string& text) {
    if (text == "rationals") return FieldSpec::rationals();
    if (text.size() > 1 && text[0] == 'q') return FieldSpec::prime(std::stoul(text.substr(1)));
    throw functor_error("field must be 'rationals' or q<p> with p prime, got '" + text + "'");
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    Json j;
    in >> j;
    return j;
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw io_error("cannot write '" + out_path + "'");
    out << j.dump(2) << "\n";
}

AlgebraPtr preset_algebra(const std::string& name, const FieldSpec& f) {
    if (name == "k") return make_ground_field(f);
    if (name.rfind("kk", 0) == 0) return make_kronecker_algebra(f, std::stoul(name.substr(2)));
    if (name.rfind("trunc", 0) == 0) return make_truncated_poly(f, std::stoul(name.substr(5)));
    if (name.rfind("polyq", 0) == 0) return make_poly_quotient(f, std::stoul(name.substr(5)));
    throw functor_error("unknown algebra preset '" + name + "'");
}

// named functors for the verify subcommands
FunctorHandle named_functor(const std::string& name, size_t n, const FieldSpec& f) {
    if (name == "gp") return gp_embed(f, n);
    if (name == "fn") return fn_kron(f, n);
    if (name == "brenner") return brenner_functor(f, n);
    if (name == "split") return split_functor(Quiver::loop(n), f);
    if (name == "kt") return kt_functor(f);
    if (name == "gdict") return g_dictionary_functor(f);
    if (name == "hdict") return h_dictionary_functor(f);
    if (name == "ext3") {
        // extension embedding rep K_3 -> mod kK_3 from the two simples and
        // the three arrow derivations
        AlgebraPtr a = make_kronecker_algebra(f, 3);
        AModule u = simple_module(a, 0), v = simple_module(a, 1);
        std::vector<std::vector<Matrix>> z;
        for (size_t i = 0; i < 3; ++i) {
            std::vector<Matrix> zi(a->dim(), Matrix::zero(f, 1, 1));
            zi[2 + i] = Matrix::identity(f, 1);
            z.push_back(std::move(zi));
        }
        return ext_embed_build(u, v, z);
    }
    throw functor_error("unknown functor '" + name +
                        "' (expected gp|fn|brenner|split|kt|gdict|hdict|ext3)");
}

int report_exit(const VerificationReport& r) {
    emit(r.to_json(), "");
    std::cerr << (r.pass() ? "verdict: pass" : "verdict: FAIL") << " (" << r.checks.size()
              << " checks)\n";
    for (const auto& c : r.checks)
        std::cerr << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  [" << c.sample
                  << "]\n";
    return r.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "quiverkit - exact computations with quiver representations, modules over\n"
        "finite-dimensional algebras, and the classical representation embeddings\n"
        "(Jans, Gelfand-Ponomarev, Brenner, extension embeddings, the Kronecker\n"
        "self-embeddings F_n, and the mod k[X,Y]/(X,Y)^2 dictionary)."};
    app.require_subcommand(1);

    std::string field_text = "rationals", out_path, obj_a, obj_b, functor_name, preset_name;
    std::string presets_csv = "k,polyq2";
    size_t n = 2, samples = 10, dims = 3, budget = 0;
    uint64_t seed = 1;

    // preset
    auto* preset = app.add_subcommand("preset", "List or emit the shipped algebra/quiver presets.");
    auto* plist = preset->add_subcommand("list", "Names of the shipped presets.");
    auto* pshow = preset->add_subcommand("show", "Emit one preset as JSON.");
    pshow->add_option("name", preset_name, "quiver:k<n>, quiver:l<n>, algebra:k, algebra:kk<n>, "
                                           "algebra:trunc<n>, algebra:polyq<n>")->required();
    pshow->add_option("--field", field_text, "rationals or q<p>");
    pshow->add_option("-o,--output", out_path, "output file (default stdout)");

    // functor
    auto* functor = app.add_subcommand(
        "functor", "Build, apply, and compose the representation-embedding functors.");
    auto* fbuild = functor->add_subcommand(
        "build",
        "Construct a functor handle: gp (Gelfand-Ponomarev embedding into mod\n"
        "k[X,Y]/(X,Y)^(n+1) via the Jans construction), fn (Kronecker self-embedding\n"
        "F_n), brenner (Brenner's strict embedding into mod k<X,Y>), split (vertex\n"
        "splitting rep L_n -> rep K_(n+1)), kt ((V,T) -> (V,V;T,id)), gdict/hdict (the\n"
        "dictionary between mod k[X,Y]/(X,Y)^2 and rep K_2).");
    fbuild->add_option("kind", functor_name, "gp|fn|brenner|split|kt|gdict|hdict|ext3")->required();
    fbuild->add_option("--n", n, "construction parameter");
    fbuild->add_option("--field", field_text, "rationals or q<p>");
    fbuild->add_option("-o,--output", out_path, "output file (default stdout)");
    auto* fapply = functor->add_subcommand("apply", "Apply a functor handle to an object.");
    fapply->add_option("handle", obj_a, "functor handle JSON file")->required();
    fapply->add_option("object", obj_b, "object JSON file")->required();
    fapply->add_option("-o,--output", out_path, "output file (default stdout)");
    auto* fcompose = functor->add_subcommand("compose", "Compose two functor handles (outer inner).");
    fcompose->add_option("outer", obj_a, "outer handle JSON file")->required();
    fcompose->add_option("inner", obj_b, "inner handle JSON file")->required();
    fcompose->add_option("-o,--output", out_path, "output file (default stdout)");

    // hom / ext / decompose / lattice
    auto* hom = app.add_subcommand(
        "hom", "Basis of the homomorphism space between two objects (intertwiner solve).");
    hom->add_option("a", obj_a, "source JSON file")->required();
    hom->add_option("b", obj_b, "target JSON file")->required();
    hom->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* ext = app.add_subcommand(
        "ext", "dim Ext^1 between two objects: the standard arrow obstruction map for quiver\n"
               "representations, derivations modulo inner ones for algebra modules.");
    ext->add_option("a", obj_a, "source JSON file")->required();
    ext->add_option("b", obj_b, "target JSON file")->required();

    auto* dec = app.add_subcommand(
        "decompose", "Krull-Schmidt factors with indecomposability certificates.");
    dec->add_option("object", obj_a, "object JSON file")->required();
    dec->add_option("--seed", seed, "seed for the randomized phases");

    auto* lat = app.add_subcommand(
        "lattice", "Complete submodule lattice over a finite field (Brenner's embedding\n"
                   "preserves these lattices). Budget: q^dim <= QUIVERKIT_BUDGET (default 4096).");
    lat->add_option("object", obj_a, "object JSON file")->required();
    lat->add_option("--budget", budget, "enumeration budget override");

    // verify
    auto* verify = app.add_subcommand("verify", "Property-verification harness.");
    auto* vemb = verify->add_subcommand(
        "embedding",
        "Certifies representation-embedding behaviour at sample scale: exactness on\n"
        "random short exact sequences, indecomposables map to indecomposables,\n"
        "isomorphism classes are reflected. Exercises the named construction, e.g.\n"
        "the Gelfand-Ponomarev wildness embedding or the F_n self-embeddings with\n"
        "their characteristic-dependent behaviour.");
    vemb->add_option("--functor", functor_name, "gp|fn|brenner|split|kt|gdict|hdict|ext3")->required();
    vemb->add_option("--n", n, "construction parameter");
    vemb->add_option("--field", field_text, "rationals or q<p>")->required();
    vemb->add_option("--samples", samples, "sample count");
    vemb->add_option("--dims", dims, "dimension bound");
    vemb->add_option("--seed", seed, "seed");
    auto* vfull = verify->add_subcommand(
        "fullness", "Compares Hom dimensions before and after a functor: faithfulness\n"
                    "inequality plus exact fullness (Brenner's embedding and the extension\n"
                    "embedding on orthogonal bricks are full; gp is faithful only).");
    vfull->add_option("--functor", functor_name, "gp|fn|brenner|split|kt|gdict|hdict|ext3")->required();
    vfull->add_option("--n", n, "construction parameter");
    vfull->add_option("--field", field_text, "rationals or q<p>")->required();
    vfull->add_option("--samples", samples, "sample count");
    vfull->add_option("--dims", dims, "dimension bound");
    vfull->add_option("--seed", seed, "seed");
    auto* veuler = verify->add_subcommand(
        "euler", "dim Hom - dim Ext = Euler form on random Kronecker representations.");
    veuler->add_option("--field", field_text, "rationals or q<p>")->required();
    veuler->add_option("--samples", samples, "pairs per quiver");
    veuler->add_option("--dims", dims, "dimension bound");
    veuler->add_option("--seed", seed, "seed");
    auto* vorth = verify->add_subcommand(
        "orthogonal",
        "Desk-scale simultaneous-embedding recipe: Klein simples -> dimension-(2,2)\n"
        "bricks in rep K_3 -> pairwise Hom-orthogonal embedded module categories.");
    vorth->add_option("--presets", presets_csv, "comma-separated algebra presets (e.g. k,polyq2)");
    vorth->add_option("--field", field_text, "rationals or q<p>")->required();
    vorth->add_option("--samples", samples, "samples per algebra");
    vorth->add_option("--dims", dims, "dimension bound");
    vorth->add_option("--seed", seed, "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        FieldSpec f = parse_field(field_text);

        if (plist->parsed()) {
            Json names{{"quivers", {"quiver:k<n>", "quiver:l<n>"}},
                       {"algebras", {"algebra:k", "algebra:kk<n>", "algebra:trunc<n> "
                                     "(k[X,Y]/(X,Y)^(n+1))", "algebra:polyq<n> (k[X]/(X^n))"}}};
            emit(names, "");
            return 0;
        }
        if (pshow->parsed()) {
            auto colon = preset_name.find(':');
            if (colon == std::string::npos) throw functor_error("preset name needs a kind prefix");
            std::string kind = preset_name.substr(0, colon), rest = preset_name.substr(colon + 1);
            if (kind == "quiver") {
                if (rest.rfind("k", 0) == 0)
                    emit(quiver_to_json(Quiver::kronecker(std::stoul(rest.substr(1)))), out_path);
                else if (rest.rfind("l", 0) == 0)
                    emit(quiver_to_json(Quiver::loop(std::stoul(rest.substr(1)))), out_path);
                else
                    throw functor_error("unknown quiver preset '" + rest + "'");
            } else if (kind == "algebra") {
                emit(algebra_to_json(*preset_algebra(rest, f)), out_path);
            } else {
                throw functor_error("unknown preset kind '" + kind + "'");
            }
            return 0;
        }
        if (fbuild->parsed()) {
            emit(functor_to_json(named_functor(functor_name, n, f)), out_path);
            return 0;
        }
        if (fapply->parsed()) {
            FunctorHandle h = functor_from_json(load_json(obj_a));
            Object x = object_from_json(load_json(obj_b));
            emit(object_to_json(h.apply(x)), out_path);
            return 0;
        }
        if (fcompose->parsed()) {
            FunctorHandle outer = functor_from_json(load_json(obj_a));
            FunctorHandle inner = functor_from_json(load_json(obj_b));
            emit(functor_to_json(compose(outer, inner)), out_path);
            return 0;
        }
        if (hom->parsed()) {
            Object a = object_from_json(load_json(obj_a));
            Object b = object_from_json(load_json(obj_b));
            Json basis = Json::array();
            size_t dim = std::visit(
                [&](const auto& x, const auto& y) -> size_t {
                    using A = std::decay_t<decltype(x)>;
                    using B = std::decay_t<decltype(y)>;
                    if constexpr (std::is_same_v<A, B>) {
                        auto hb = hom_basis(x, y);
                        for (const auto& g : hb) basis.push_back(morphism_to_json(Morphism(g)));
                        return hb.size();
                    } else {
                        throw functor_error("hom needs objects of the same flavour");
                    }
                },
                a, b);
            emit(Json{{"dim", dim}, {"basis", basis}}, out_path);
            std::cerr << "dim Hom = " << dim << "\n";
            return 0;
        }
        if (ext->parsed()) {
            Object a = object_from_json(load_json(obj_a));
            Object b = object_from_json(load_json(obj_b));
            size_t dim = 0;
            if (std::holds_alternative<QuiverRep>(a) && std::holds_alternative<QuiverRep>(b))
                dim = ext_quiver(std::get<QuiverRep>(a), std::get<QuiverRep>(b)).dim;
            else
                dim = ext_derivations(to_amodule(a), to_amodule(b)).dim;
            emit(Json{{"dim", dim}}, "");
            std::cerr << "dim Ext = " << dim << "\n";
            return 0;
        }
        if (dec->parsed()) {
            Object x = object_from_json(load_json(obj_a));
            Rng rng(seed);
            Json factors = Json::array();
            std::visit(
                [&](const auto& m) {
                    for (const auto& piece : decompose(m, rng)) factors.push_back(object_to_json(piece));
                },
                x);
            emit(Json{{"factors", factors}, {"seed", seed}}, "");
            std::cerr << factors.size() << " indecomposable factors\n";
            return 0;
        }
        if (lat->parsed()) {
            Object x = object_from_json(load_json(obj_a));
            size_t b = budget ? budget : lattice_budget_from_env();
            SubmoduleLattice l = std::holds_alternative<FreeAlgModule>(x)
                                     ? submodule_lattice(std::get<FreeAlgModule>(x), b)
                                     : submodule_lattice(to_amodule(x), b);
            Json members = Json::array();
            for (const auto& m : l.members) members.push_back(matrix_to_json(m));
            emit(Json{{"count", l.size()}, {"members", members}}, "");
            std::cerr << l.size() << " submodules\n";
            return 0;
        }
        if (vemb->parsed())
            return report_exit(check_embedding(named_functor(functor_name, n, f),
                                               SampleSpec{seed, samples, dims, f}));
        if (vfull->parsed())
            return report_exit(check_fullness(named_functor(functor_name, n, f),
                                              SampleSpec{seed, samples, dims, f}));
        if (veuler->parsed())
            return report_exit(euler_consistency(SampleSpec{seed, samples, dims, f}));
        if (vorth->parsed()) {
            std::vector<AlgebraPtr> presets;
            std::stringstream ss(presets_csv);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) presets.push_back(preset_algebra(item, f));
            return report_exit(orthogonal_family(presets, SampleSpec{seed, samples, dims, f}));
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
