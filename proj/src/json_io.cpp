#include "quiverkit/json_io.hpp"

namespace qk {

Json field_to_json(const FieldSpec& f) {
    if (f.kind() == FieldKind::rationals) return Json{{"kind", "rationals"}};
    return Json{{"kind", "prime_field"}, {"p", f.modulus()}};
}

FieldSpec field_from_json(const Json& j) {
    std::string kind = j.at("kind");
    if (kind == "rationals") return FieldSpec::rationals();
    if (kind == "prime_field") return FieldSpec::prime(j.at("p").get<unsigned long>());
    throw io_error("unknown field kind '" + kind + "'");
}

Json matrix_to_json(const Matrix& m) {
    const FieldSpec& f = m.field();
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(f.to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"field", field_to_json(f)}, {"rows", m.rows()}, {"cols", m.cols()},
                {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const Json& j) {
    FieldSpec f = field_from_json(j.at("field"));
    size_t rows = j.at("rows"), cols = j.at("cols");
    Matrix m(f, rows, cols);
    const Json& e = j.at("entries");
    if (e.size() != rows) throw io_error("matrix row count mismatch");
    for (size_t i = 0; i < rows; ++i) {
        if (e[i].size() != cols) throw io_error("matrix column count mismatch");
        for (size_t c = 0; c < cols; ++c) m.at(i, c) = f.parse(e[i][c].get<std::string>());
    }
    return m;
}

Json quiver_to_json(const Quiver& q) {
    Json arrows = Json::array();
    for (const auto& a : q.arrows) arrows.push_back(Json::array({a.source, a.target}));
    return Json{{"vertices", q.vertex_count}, {"arrows", std::move(arrows)}};
}

Quiver quiver_from_json(const Json& j) {
    Quiver q;
    q.vertex_count = j.at("vertices");
    for (const auto& a : j.at("arrows")) q.arrows.push_back(Arrow{a.at(0), a.at(1)});
    q.validate();
    return q;
}

Json rep_to_json(const QuiverRep& m) {
    Json mats = Json::array();
    for (const auto& a : m.arrow_matrices) mats.push_back(matrix_to_json(a));
    return Json{{"type", "quiver_rep"},
                {"field", field_to_json(m.field)},
                {"quiver", quiver_to_json(m.quiver)},
                {"dims", m.dims},
                {"matrices", std::move(mats)}};
}

QuiverRep rep_from_json(const Json& j) {
    QuiverRep m{quiver_from_json(j.at("quiver")), field_from_json(j.at("field")),
                j.at("dims").get<DimVector>(), {}};
    for (const auto& a : j.at("matrices")) m.arrow_matrices.push_back(matrix_from_json(a));
    m.validate();
    return m;
}

Json algebra_to_json(const FDAlgebra& a) {
    const FieldSpec& f = a.field();
    Json table = Json::array();
    for (size_t i = 0; i < a.dim(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < a.dim(); ++j) {
            Json cell = Json::array();
            for (size_t k = 0; k < a.dim(); ++k)
                if (!f.is_zero(a.table()[i][j][k]))
                    cell.push_back(Json::array({k, f.to_string(a.table()[i][j][k])}));
            row.push_back(std::move(cell));
        }
        table.push_back(std::move(row));
    }
    Json unit = Json::array();
    for (const auto& c : a.unit()) unit.push_back(f.to_string(c));
    return Json{{"field", field_to_json(f)},      {"basis", a.labels()},
                {"table", std::move(table)},      {"unit", std::move(unit)},
                {"idempotents", a.idempotents()}, {"generators", a.generators()}};
}

AlgebraPtr algebra_from_json(const Json& j) {
    FieldSpec f = field_from_json(j.at("field"));
    std::vector<std::string> labels = j.at("basis");
    size_t d = labels.size();
    std::vector<std::vector<std::vector<Scalar>>> table(
        d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, f.zero())));
    const Json& tj = j.at("table");
    for (size_t i = 0; i < d; ++i)
        for (size_t c = 0; c < d; ++c)
            for (const auto& kc : tj.at(i).at(c))
                table[i][c][kc.at(0).get<size_t>()] = f.parse(kc.at(1).get<std::string>());
    std::vector<Scalar> unit;
    for (const auto& u : j.at("unit")) unit.push_back(f.parse(u.get<std::string>()));
    auto a = std::make_shared<FDAlgebra>(f, std::move(labels), std::move(table), std::move(unit),
                                         j.at("idempotents").get<std::vector<size_t>>(),
                                         j.value("generators", std::vector<size_t>{}));
    a->validate();
    return a;
}

Json amodule_to_json(const AModule& m) {
    Json acts = Json::array();
    for (const auto& a : m.action) acts.push_back(matrix_to_json(a));
    return Json{{"type", "amodule"},
                {"field", field_to_json(m.field())},
                {"algebra", algebra_to_json(*m.algebra)},
                {"dim", m.dim},
                {"action", std::move(acts)}};
}

AModule amodule_from_json(const Json& j) {
    AModule m{algebra_from_json(j.at("algebra")), j.at("dim"), {}};
    for (const auto& a : j.at("action")) m.action.push_back(matrix_from_json(a));
    m.validate();
    return m;
}

Json free_module_to_json(const FreeAlgModule& m) {
    Json acts = Json::array();
    for (const auto& a : m.action) acts.push_back(matrix_to_json(a));
    return Json{{"type", "free_module"},
                {"field", field_to_json(m.field)},
                {"generators", m.n_generators},
                {"dim", m.dim},
                {"action", std::move(acts)}};
}

FreeAlgModule free_module_from_json(const Json& j) {
    FreeAlgModule m{field_from_json(j.at("field")), j.at("generators"), j.at("dim"), {}};
    for (const auto& a : j.at("action")) m.action.push_back(matrix_from_json(a));
    m.validate();
    return m;
}

Json object_to_json(const Object& x) {
    if (auto* r = std::get_if<QuiverRep>(&x)) return rep_to_json(*r);
    if (auto* m = std::get_if<AModule>(&x)) return amodule_to_json(*m);
    return free_module_to_json(std::get<FreeAlgModule>(x));
}

Object object_from_json(const Json& j) {
    std::string type = j.at("type");
    if (type == "quiver_rep") return rep_from_json(j);
    if (type == "amodule") return amodule_from_json(j);
    if (type == "free_module") return free_module_from_json(j);
    throw io_error("unknown object type '" + type + "'");
}

Json morphism_to_json(const Morphism& f) {
    if (auto* g = std::get_if<RepMorphism>(&f)) {
        Json maps = Json::array();
        for (const auto& m : g->vertex_maps) maps.push_back(matrix_to_json(m));
        return Json{{"type", "rep_morphism"},
                    {"source", rep_to_json(g->source)},
                    {"target", rep_to_json(g->target)},
                    {"vertex_maps", std::move(maps)}};
    }
    if (auto* g = std::get_if<ModMorphism>(&f))
        return Json{{"type", "mod_morphism"},
                    {"source", amodule_to_json(g->source)},
                    {"target", amodule_to_json(g->target)},
                    {"map", matrix_to_json(g->map)}};
    const auto& g = std::get<FreeModMorphism>(f);
    return Json{{"type", "free_morphism"},
                {"source", free_module_to_json(g.source)},
                {"target", free_module_to_json(g.target)},
                {"map", matrix_to_json(g.map)}};
}

Morphism morphism_from_json(const Json& j) {
    std::string type = j.at("type");
    if (type == "rep_morphism") {
        RepMorphism g{rep_from_json(j.at("source")), rep_from_json(j.at("target")), {}};
        for (const auto& m : j.at("vertex_maps")) g.vertex_maps.push_back(matrix_from_json(m));
        g.require_valid("morphism_from_json");
        return g;
    }
    if (type == "mod_morphism") {
        ModMorphism g{amodule_from_json(j.at("source")), amodule_from_json(j.at("target")),
                      matrix_from_json(j.at("map"))};
        g.require_valid("morphism_from_json");
        return g;
    }
    if (type == "free_morphism") {
        FreeModMorphism g{free_module_from_json(j.at("source")),
                          free_module_from_json(j.at("target")), matrix_from_json(j.at("map"))};
        g.require_valid("morphism_from_json");
        return g;
    }
    throw io_error("unknown morphism type '" + type + "'");
}

Json category_to_json(const CategoryDesc& c) {
    switch (c.kind) {
        case CategoryDesc::Kind::quiver_rep:
            return Json{{"kind", "quiver_rep"},
                        {"field", field_to_json(c.field)},
                        {"quiver", quiver_to_json(c.quiver)}};
        case CategoryDesc::Kind::amodule:
            return Json{{"kind", "amodule"}, {"algebra", algebra_to_json(*c.algebra)}};
        case CategoryDesc::Kind::free_module:
            return Json{{"kind", "free_module"},
                        {"field", field_to_json(c.field)},
                        {"generators", c.generators}};
    }
    throw io_error("unknown category kind");
}

CategoryDesc category_from_json(const Json& j) {
    std::string kind = j.at("kind");
    if (kind == "quiver_rep")
        return CategoryDesc::reps(quiver_from_json(j.at("quiver")), field_from_json(j.at("field")));
    if (kind == "amodule") return CategoryDesc::modules(algebra_from_json(j.at("algebra")));
    if (kind == "free_module")
        return CategoryDesc::free_modules(j.at("generators"), field_from_json(j.at("field")));
    throw io_error("unknown category kind '" + kind + "'");
}

Json functor_to_json(const FunctorHandle& h) {
    Json j{{"kind", functor_kind_name(h.kind)}, {"field", field_to_json(h.field)}};
    switch (h.kind) {
        case FunctorKind::identity:
            j["category"] = category_to_json(h.source);
            break;
        case FunctorKind::split:
            j["quiver"] = quiver_to_json(h.split_source);
            break;
        case FunctorKind::jans:
            j["algebra"] = algebra_to_json(*h.jans->algebra);
            j["ideal_basis"] = matrix_to_json(h.jans->ideal.basis);
            break;
        case FunctorKind::gp:
        case FunctorKind::brenner:
        case FunctorKind::fn_kron:
            j["n"] = h.n;
            break;
        case FunctorKind::ext_embed: {
            j["algebra"] = algebra_to_json(*h.algebra);
            j["u"] = amodule_to_json(*h.ext_u);
            j["v"] = amodule_to_json(*h.ext_v);
            Json zs = Json::array();
            for (const auto& z : h.ext_z) {
                Json zi = Json::array();
                for (const auto& m : z) zi.push_back(matrix_to_json(m));
                zs.push_back(std::move(zi));
            }
            j["z"] = std::move(zs);
            break;
        }
        case FunctorKind::dict_g:
        case FunctorKind::dict_h:
        case FunctorKind::kt:
            break;
        case FunctorKind::compose:
            j["outer"] = functor_to_json(*h.outer);
            j["inner"] = functor_to_json(*h.inner);
            break;
        case FunctorKind::restrict_generators:
            j["algebra"] = algebra_to_json(*h.algebra);
            break;
    }
    return j;
}

FunctorHandle functor_from_json(const Json& j) {
    std::string kind = j.at("kind");
    FieldSpec f = field_from_json(j.at("field"));
    if (kind == "identity") return identity_functor(category_from_json(j.at("category")));
    if (kind == "split") return split_functor(quiver_from_json(j.at("quiver")), f);
    if (kind == "jans") {
        AlgebraPtr a = algebra_from_json(j.at("algebra"));
        return jans_functor(a, Ideal{a, matrix_from_json(j.at("ideal_basis"))});
    }
    if (kind == "gp") return gp_embed(f, j.at("n"));
    if (kind == "brenner") return brenner_functor(f, j.at("n"));
    if (kind == "fn") return fn_kron(f, j.at("n"));
    if (kind == "ext_embed") {
        AModule u = amodule_from_json(j.at("u"));
        AModule v = amodule_from_json(j.at("v"));
        std::vector<std::vector<Matrix>> z;
        for (const auto& zi : j.at("z")) {
            std::vector<Matrix> zz;
            for (const auto& m : zi) zz.push_back(matrix_from_json(m));
            z.push_back(std::move(zz));
        }
        return ext_embed_build(u, v, z);
    }
    if (kind == "gdict") return g_dictionary_functor(f);
    if (kind == "hdict") return h_dictionary_functor(f);
    if (kind == "kt") return kt_functor(f);
    if (kind == "compose")
        return compose(functor_from_json(j.at("outer")), functor_from_json(j.at("inner")));
    if (kind == "restrict") return restrict_functor(algebra_from_json(j.at("algebra")));
    throw io_error("unknown functor kind '" + kind + "'");
}

}  // namespace qk
