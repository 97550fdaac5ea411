#include "quiverkit/functors.hpp"

#include <algorithm>

namespace qk {

size_t object_dim(const Object& x) {
    return std::visit([](const auto& m) -> size_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, QuiverRep>)
            return m.total_dim();
        else
            return m.dim;
    }, x);
}

FieldSpec object_field(const Object& x) {
    return std::visit([](const auto& m) -> FieldSpec {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AModule>)
            return m.field();
        else
            return m.field;
    }, x);
}

Object morphism_source(const Morphism& f) {
    return std::visit([](const auto& g) -> Object { return Object(g.source); }, f);
}
Object morphism_target(const Morphism& f) {
    return std::visit([](const auto& g) -> Object { return Object(g.target); }, f);
}

CategoryDesc CategoryDesc::reps(const Quiver& q, const FieldSpec& f) {
    CategoryDesc c;
    c.kind = Kind::quiver_rep;
    c.quiver = q;
    c.field = f;
    return c;
}
CategoryDesc CategoryDesc::modules(const AlgebraPtr& a) {
    CategoryDesc c;
    c.kind = Kind::amodule;
    c.algebra = a;
    c.field = a->field();
    return c;
}
CategoryDesc CategoryDesc::free_modules(size_t gens, const FieldSpec& f) {
    CategoryDesc c;
    c.kind = Kind::free_module;
    c.generators = gens;
    c.field = f;
    return c;
}

bool CategoryDesc::accepts(const Object& x) const {
    if (object_field(x) != field) return false;
    switch (kind) {
        case Kind::quiver_rep: {
            auto* r = std::get_if<QuiverRep>(&x);
            if (r) return r->quiver == quiver;
            // mod k<X_1..X_p> is identified with rep L_p
            if (auto* fm = std::get_if<FreeAlgModule>(&x))
                return quiver == Quiver::loop(fm->n_generators);
            if (auto* am = std::get_if<AModule>(&x))
                return quiver == Quiver::kronecker(am->algebra->dim() - 2) &&
                       *am->algebra == *make_kronecker_algebra(field, quiver.arrows.size());
            return false;
        }
        case Kind::amodule: {
            if (auto* am = std::get_if<AModule>(&x)) return *am->algebra == *algebra;
            if (auto* r = std::get_if<QuiverRep>(&x))
                return r->quiver == Quiver::kronecker(r->quiver.arrows.size()) &&
                       *algebra == *make_kronecker_algebra(field, r->quiver.arrows.size());
            return false;
        }
        case Kind::free_module: {
            if (auto* fm = std::get_if<FreeAlgModule>(&x)) return fm->n_generators == generators;
            if (auto* r = std::get_if<QuiverRep>(&x)) return r->quiver == Quiver::loop(generators);
            return false;
        }
    }
    return false;
}

std::string CategoryDesc::describe() const {
    switch (kind) {
        case Kind::quiver_rep:
            return "rep(quiver with " + std::to_string(quiver.vertex_count) + " vertices, " +
                   std::to_string(quiver.arrows.size()) + " arrows)";
        case Kind::amodule:
            return "mod(algebra of dimension " + std::to_string(algebra->dim()) + ")";
        case Kind::free_module:
            return "mod k<" + std::to_string(generators) + " generators>";
    }
    return "?";
}

bool CategoryDesc::operator==(const CategoryDesc& o) const {
    if (field != o.field) return false;
    auto loop_of = [](const CategoryDesc& c) -> std::optional<size_t> {
        if (c.kind == Kind::free_module) return c.generators;
        if (c.kind == Kind::quiver_rep && c.quiver == Quiver::loop(c.quiver.arrows.size()))
            return c.quiver.arrows.size();
        return std::nullopt;
    };
    auto kron_of = [](const CategoryDesc& c) -> std::optional<size_t> {
        if (c.kind == Kind::quiver_rep && c.quiver == Quiver::kronecker(c.quiver.arrows.size()))
            return c.quiver.arrows.size();
        if (c.kind == Kind::amodule && c.algebra->dim() >= 3 &&
            *c.algebra == *make_kronecker_algebra(c.field, c.algebra->dim() - 2))
            return c.algebra->dim() - 2;
        return std::nullopt;
    };
    auto lo = loop_of(*this), lo2 = loop_of(o);
    if (lo && lo2) return *lo == *lo2;
    auto ko = kron_of(*this), ko2 = kron_of(o);
    if (ko && ko2) return *ko == *ko2;
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::quiver_rep:
            return quiver == o.quiver;
        case Kind::amodule:
            return *algebra == *o.algebra;
        case Kind::free_module:
            return generators == o.generators;
    }
    return false;
}

QuiverRep to_quiver_rep(const Object& x) {
    if (auto* r = std::get_if<QuiverRep>(&x)) return *r;
    if (auto* fm = std::get_if<FreeAlgModule>(&x)) return loop_rep_from_free_module(*fm);
    return quiver_rep_from_amodule(std::get<AModule>(x));
}

AModule to_amodule(const Object& x) {
    if (auto* m = std::get_if<AModule>(&x)) return *m;
    if (auto* r = std::get_if<QuiverRep>(&x)) return amodule_from_quiver_rep(*r);
    throw functor_error("free-algebra module has no finite-dimensional algebra form");
}

FreeAlgModule to_free_module(const Object& x) {
    if (auto* fm = std::get_if<FreeAlgModule>(&x)) return *fm;
    if (auto* r = std::get_if<QuiverRep>(&x)) return free_module_from_loop_rep(*r);
    throw functor_error("cannot view a bound module as a free-algebra module");
}

namespace {

RepMorphism to_rep_morphism(const Morphism& f) {
    if (auto* g = std::get_if<RepMorphism>(&f)) return *g;
    if (auto* g = std::get_if<FreeModMorphism>(&f))
        return RepMorphism{loop_rep_from_free_module(g->source), loop_rep_from_free_module(g->target),
                           {g->map}};
    const auto& g = std::get<ModMorphism>(f);
    Matrix bs, bt;
    QuiverRep rs = quiver_rep_from_amodule(g.source, &bs);
    QuiverRep rt = quiver_rep_from_amodule(g.target, &bt);
    Matrix conj = inverse(bt).value().mul(g.map).mul(bs);
    const FieldSpec& fld = g.source.field();
    Matrix m0(fld, rt.dims[0], rs.dims[0]), m1(fld, rt.dims[1], rs.dims[1]);
    for (size_t i = 0; i < rt.dims[0]; ++i)
        for (size_t j = 0; j < rs.dims[0]; ++j) m0.at(i, j) = conj.at(i, j);
    for (size_t i = 0; i < rt.dims[1]; ++i)
        for (size_t j = 0; j < rs.dims[1]; ++j)
            m1.at(i, j) = conj.at(rt.dims[0] + i, rs.dims[0] + j);
    RepMorphism out{std::move(rs), std::move(rt), {std::move(m0), std::move(m1)}};
    out.require_valid("to_rep_morphism");
    return out;
}

ModMorphism to_mod_morphism(const Morphism& f) {
    if (auto* g = std::get_if<ModMorphism>(&f)) return *g;
    const auto& g = std::get<RepMorphism>(f);
    AModule s = amodule_from_quiver_rep(g.source), t = amodule_from_quiver_rep(g.target);
    ModMorphism out{std::move(s), std::move(t), block_diagonal({g.vertex_maps[0], g.vertex_maps[1]})};
    out.require_valid("to_mod_morphism");
    return out;
}

FreeModMorphism to_free_morphism(const Morphism& f) {
    if (auto* g = std::get_if<FreeModMorphism>(&f)) return *g;
    const auto& g = std::get<RepMorphism>(f);
    return FreeModMorphism{free_module_from_loop_rep(g.source), free_module_from_loop_rep(g.target),
                           g.vertex_maps[0]};
}

}  // namespace

Quiver split_quiver(const Quiver& q) {
    Quiver out;
    out.vertex_count = 2 * q.vertex_count;
    for (size_t p = 0; p < q.vertex_count; ++p) out.arrows.push_back(Arrow{2 * p + 1, 2 * p});
    for (const auto& ar : q.arrows) out.arrows.push_back(Arrow{2 * ar.source + 1, 2 * ar.target});
    return out;
}

const char* functor_kind_name(FunctorKind k) {
    switch (k) {
        case FunctorKind::identity: return "identity";
        case FunctorKind::split: return "split";
        case FunctorKind::jans: return "jans";
        case FunctorKind::gp: return "gp";
        case FunctorKind::brenner: return "brenner";
        case FunctorKind::ext_embed: return "ext_embed";
        case FunctorKind::fn_kron: return "fn";
        case FunctorKind::dict_g: return "gdict";
        case FunctorKind::dict_h: return "hdict";
        case FunctorKind::kt: return "kt";
        case FunctorKind::compose: return "compose";
        case FunctorKind::restrict_generators: return "restrict";
    }
    return "?";
}

// ---- Jans construction ----

JansData jans_build(const AlgebraPtr& a, const Ideal& t) {
    if (!(*t.algebra == *a)) throw functor_error("jans_build: ideal over a different algebra");
    t.validate();
    const FieldSpec& f = a->field();
    Ideal rad = radical_any(a);
    Subspace rad_span = subspace_from_columns(rad.basis);
    if (t.dim() > 0 && !subspace_contains(rad_span, t.basis))
        throw functor_error("jans_build: ideal is not contained in the radical");
    for (size_t i = 0; i < rad.dim(); ++i)
        for (size_t j = 0; j < t.dim(); ++j) {
            if (!a->multiply(rad.basis.column(i), t.basis.column(j)).is_zero() ||
                !a->multiply(t.basis.column(j), rad.basis.column(i)).is_zero())
                throw functor_error("jans_build: ideal is not annihilated by the radical");
        }

    JansData jd{a, t, Quiver{}, {}, {}, {}, {}};
    size_t m = a->idempotents().size();
    jd.k.vertex_count = 2 * m;
    for (size_t x = 0; x < m; ++x)
        for (size_t y = 0; y < m; ++y) {
            size_t ex = a->idempotents()[x], ey = a->idempotents()[y];
            Matrix corner = a->left_mult(ex).mul(a->right_mult(ey)).mul(t.basis);
            Matrix basis = column_space_basis(corner);
            for (size_t j = 0; j < basis.cols(); ++j) {
                jd.k.arrows.push_back(Arrow{2 * x + 1, 2 * y});
                jd.arrow_x.push_back(x);
                jd.arrow_y.push_back(y);
                jd.arrow_s.push_back(basis.column(j));
            }
        }
    for (size_t y = 0; y < m; ++y) {
        jd.projectives.push_back(projective_module(a, y));
        jd.simples.push_back(simple_module(a, y));
    }
    return jd;
}

namespace {

struct JansParts {
    AModule s_part;   // (+)_x S_x tensor M(x+)
    AModule p_part;   // (+)_y A e_y tensor M(y-)
    Matrix f_m;       // the A-linear map S_M -> P_M
    QuotientModule coker;
    std::vector<size_t> p_offsets;  // block offset per idempotent in P_M
};

JansParts jans_parts(const JansData& jd, const QuiverRep& m) {
    const AlgebraPtr& a = jd.algebra;
    const FieldSpec& f = a->field();
    if (m.quiver != jd.k) throw functor_error("jans_apply: representation is over the wrong quiver");
    m.validate();
    auto [stripped, mult] = strip_injective_simples(m);
    for (size_t v = 0; v < mult.size(); ++v)
        if (mult[v] != 0)
            throw functor_error(
                "jans_apply: representation has a simple injective direct summand at emitter " +
                std::to_string(v / 2) + " (not in rep'K)");

    size_t nidem = a->idempotents().size();
    size_t sdim = 0, pdim = 0;
    std::vector<size_t> s_off(nidem + 1, 0), p_off(nidem + 1, 0);
    for (size_t x = 0; x < nidem; ++x) {
        s_off[x + 1] = s_off[x] + m.dims[2 * x + 1];
        p_off[x + 1] = p_off[x] + jd.projectives[x].module.dim * m.dims[2 * x];
    }
    sdim = s_off[nidem];
    pdim = p_off[nidem];

    AModule s_part{a, sdim, {}}, p_part{a, pdim, {}};
    for (size_t b = 0; b < a->dim(); ++b) {
        Matrix sb(f, sdim, sdim), pb(f, pdim, pdim);
        for (size_t x = 0; x < nidem; ++x) {
            const Scalar& scal = jd.simples[x].action[b].rows() ? jd.simples[x].action[b].at(0, 0)
                                                                : f.zero();
            for (size_t i = 0; i < m.dims[2 * x + 1]; ++i) sb.at(s_off[x] + i, s_off[x] + i) = scal;
            const Matrix& act = jd.projectives[x].module.action[b];
            size_t dy = jd.projectives[x].module.dim, my = m.dims[2 * x];
            for (size_t r = 0; r < dy; ++r)
                for (size_t c = 0; c < dy; ++c) {
                    if (f.is_zero(act.at(r, c))) continue;
                    for (size_t i = 0; i < my; ++i)
                        pb.at(p_off[x] + r * my + i, p_off[x] + c * my + i) = act.at(r, c);
                }
        }
        s_part.action.push_back(std::move(sb));
        p_part.action.push_back(std::move(pb));
    }

    Matrix fm(f, pdim, sdim);
    for (size_t ar = 0; ar < jd.k.arrows.size(); ++ar) {
        size_t x = jd.arrow_x[ar], y = jd.arrow_y[ar];
        // s(x,y,j) in the coordinates of A e_y
        auto s_in_p = solve(jd.projectives[y].inclusion, jd.arrow_s[ar]);
        if (!s_in_p) throw functor_error("jans_apply: basis element outside its projective");
        const Matrix& alpha = m.arrow_matrices[ar];  // M(y-) x M(x+)
        size_t dy = jd.projectives[y].module.dim, my = m.dims[2 * y];
        Matrix block = tensor_product(*s_in_p, alpha);  // (dy*my) x m(x+)
        for (size_t r = 0; r < dy * my; ++r)
            for (size_t c = 0; c < m.dims[2 * x + 1]; ++c)
                fm.at(p_off[y] + r, s_off[x] + c) = f.add(fm.at(p_off[y] + r, s_off[x] + c),
                                                          block.at(r, c));
    }
    // f_M must be A-linear and injective
    for (size_t b = 0; b < a->dim(); ++b)
        if (fm.mul(s_part.action[b]) != p_part.action[b].mul(fm))
            throw functor_error("jans_apply: f_M is not A-linear");
    if (rank(fm) != sdim) throw functor_error("jans_apply: f_M is not injective");

    QuotientModule coker = quotient_by_subspace(p_part, subspace_from_columns(fm));
    return JansParts{std::move(s_part), std::move(p_part), std::move(fm), std::move(coker),
                     std::move(p_off)};
}

}  // namespace

AModule jans_apply(const JansData& jd, const QuiverRep& m) { return jans_parts(jd, m).coker.module; }

ModMorphism jans_apply(const JansData& jd, const RepMorphism& g) {
    g.require_valid("jans_apply");
    JansParts src = jans_parts(jd, g.source);
    JansParts tgt = jans_parts(jd, g.target);
    const FieldSpec& f = jd.algebra->field();
    size_t nidem = jd.algebra->idempotents().size();
    // g_2 = (+)_y id_{Ae_y} tensor g(y-)
    Matrix g2(f, tgt.coker.projection.cols(), src.coker.projection.cols());
    for (size_t y = 0; y < nidem; ++y) {
        size_t dy = jd.projectives[y].module.dim;
        Matrix blk = tensor_product(Matrix::identity(f, dy), g.vertex_maps[2 * y]);
        for (size_t r = 0; r < blk.rows(); ++r)
            for (size_t c = 0; c < blk.cols(); ++c)
                g2.at(tgt.p_offsets[y] + r, src.p_offsets[y] + c) = blk.at(r, c);
    }
    Matrix map = tgt.coker.projection.mul(g2).mul(src.coker.section);
    ModMorphism out{src.coker.module, tgt.coker.module, std::move(map)};
    out.require_valid("jans_apply morphism");
    return out;
}

// ---- handles ----

FunctorHandle identity_functor(const CategoryDesc& c) {
    FunctorHandle h;
    h.kind = FunctorKind::identity;
    h.field = c.field;
    h.source = c;
    h.target = c;
    if (c.kind == CategoryDesc::Kind::amodule) h.algebra = c.algebra;
    return h;
}

FunctorHandle split_functor(const Quiver& q, const FieldSpec& f) {
    q.validate();
    FunctorHandle h;
    h.kind = FunctorKind::split;
    h.field = f;
    h.split_source = q;
    h.source = CategoryDesc::reps(q, f);
    h.target = CategoryDesc::reps(split_quiver(q), f);
    if (q == Quiver::loop(q.arrows.size())) {
        // the affine rank-2 bimodule over (kK_(n+1), k<X_1..X_n>)
        size_t n = q.arrows.size();
        AlgebraPtr b = make_kronecker_algebra(f, n + 1);
        auto bm = std::make_shared<Bimodule>();
        bm->kind = Bimodule::Kind::free_right;
        bm->left_algebra = b;
        bm->right_generators = n;
        bm->right_rank = 2;
        for (size_t i = 0; i < b->dim(); ++i) {
            PolyMat pm{2, 2, std::vector<FreePoly>(4, FreePoly::zero())};
            if (i == 0) pm.at(0, 0) = FreePoly::constant(f, f.one());       // e1: receiver copy
            if (i == 1) pm.at(1, 1) = FreePoly::constant(f, f.one());       // e2: emitter copy
            if (i == 2) pm.at(0, 1) = FreePoly::constant(f, f.one());       // extra arrow: identity
            if (i >= 3) pm.at(0, 1) = FreePoly::generator(f, uint32_t(i - 3));
            bm->left_action_poly.push_back(std::move(pm));
        }
        bm->certificate = BasisCertificate{BasisCertKind::affine, 2};
        bm->validate();
        h.bimod = std::move(bm);
    }
    return h;
}

namespace {

QuiverRep split_apply(const Quiver& q, const QuiverRep& m) {
    QuiverRep out{split_quiver(q), m.field, {}, {}};
    out.dims.resize(2 * q.vertex_count);
    for (size_t p = 0; p < q.vertex_count; ++p) out.dims[2 * p] = out.dims[2 * p + 1] = m.dims[p];
    for (size_t p = 0; p < q.vertex_count; ++p)
        out.arrow_matrices.push_back(Matrix::identity(m.field, m.dims[p]));
    for (size_t a = 0; a < q.arrows.size(); ++a) out.arrow_matrices.push_back(m.arrow_matrices[a]);
    return out;
}

RepMorphism split_apply(const Quiver& q, const RepMorphism& g) {
    std::vector<Matrix> maps(2 * q.vertex_count, Matrix());
    for (size_t p = 0; p < q.vertex_count; ++p)
        maps[2 * p] = maps[2 * p + 1] = g.vertex_maps[p];
    return RepMorphism{split_apply(q, g.source), split_apply(q, g.target), std::move(maps)};
}

}  // namespace

FunctorHandle jans_functor(const AlgebraPtr& a, const Ideal& t) {
    FunctorHandle h;
    h.kind = FunctorKind::jans;
    h.field = a->field();
    h.jans = std::make_shared<JansData>(jans_build(a, t));
    h.algebra = a;
    h.source = CategoryDesc::reps(h.jans->k, h.field);
    h.target = CategoryDesc::modules(a);
    return h;
}

FunctorHandle gp_embed(const FieldSpec& f, size_t n) {
    if (n < 1) throw functor_error("gp_embed needs n >= 1");
    AlgebraPtr a = make_truncated_poly(f, n);
    // T = (X,Y)^n: the degree-n monomials
    std::vector<Matrix> cols;
    size_t first_top = a->dim() - (n + 1);
    for (size_t i = first_top; i < a->dim(); ++i) cols.push_back(a->basis_vector(i));
    Ideal t{a, column_space_basis(Matrix::hstack(cols))};

    FunctorHandle h;
    h.kind = FunctorKind::gp;
    h.field = f;
    h.n = n;
    h.algebra = a;
    h.jans = std::make_shared<JansData>(jans_build(a, t));
    h.source = CategoryDesc::free_modules(n, f);
    h.target = CategoryDesc::modules(a);
    if (h.jans->k.arrows.size() != n + 1)
        throw functor_error("gp_embed: unexpected arrow count in the Jans quiver");

    // affine bimodule of rank dim A - 1: the cokernel of
    // v (x) 1 -> s_1 (x) 1 + sum_l s_(l+1) (x) X_l over the A-basis p_i
    size_t da = a->dim();
    size_t pivot = first_top;  // s_1 = X^n is the first degree-n monomial
    std::vector<size_t> kept;  // A-basis indices retained in the cokernel
    for (size_t i = 0; i < da; ++i)
        if (i != pivot) kept.push_back(i);
    auto pos_of = [&](size_t idx) {
        for (size_t j = 0; j < kept.size(); ++j)
            if (kept[j] == idx) return j;
        throw functor_error("gp_embed: basis bookkeeping failed");
    };
    auto bm = std::make_shared<Bimodule>();
    bm->kind = Bimodule::Kind::free_right;
    bm->left_algebra = a;
    bm->right_generators = n;
    bm->right_rank = da - 1;
    for (size_t b = 0; b < da; ++b) {
        PolyMat pm{da - 1, da - 1, std::vector<FreePoly>((da - 1) * (da - 1), FreePoly::zero())};
        const Matrix& lb = a->left_mult(b);
        for (size_t ic = 0; ic < kept.size(); ++ic) {
            size_t i = kept[ic];
            for (size_t j = 0; j < da; ++j) {
                const Scalar& c = lb.at(j, i);
                if (f.is_zero(c)) continue;
                if (j != pivot) {
                    pm.at(pos_of(j), ic) = pm.at(pos_of(j), ic).add(f, FreePoly::constant(f, c));
                } else {
                    // p_pivot (x) 1 = - sum_l s_(l+1) (x) X_l in the cokernel
                    for (size_t l = 1; l <= n; ++l) {
                        FreePoly gen = FreePoly::generator(f, uint32_t(l - 1)).scale(f, f.neg(c));
                        size_t row = pos_of(first_top + l);
                        pm.at(row, ic) = pm.at(row, ic).add(f, gen);
                    }
                }
            }
        }
        bm->left_action_poly.push_back(std::move(pm));
    }
    bm->certificate = BasisCertificate{BasisCertKind::affine, da - 1};
    bm->validate();
    if (!bm->certificate_valid()) throw functor_error("gp_embed: affine certificate failed");
    h.bimod = std::move(bm);
    return h;
}

FunctorHandle brenner_functor(const FieldSpec& f, size_t n) {
    if (n < 2) throw functor_error("brenner needs n >= 2");
    FunctorHandle h;
    h.kind = FunctorKind::brenner;
    h.field = f;
    h.n = n;
    h.source = CategoryDesc::free_modules(n * (n + 1), f);
    h.target = CategoryDesc::free_modules(2, f);
    return h;
}

namespace {

// generator layout of the Brenner construction: X_(ij) for i = 3..n+2,
// j = 1..i-2 in row-major order, then Y_(ji) with transposed indices
size_t brenner_x_index(size_t n, size_t i, size_t j) {
    size_t idx = 0;
    for (size_t ii = 3; ii <= n + 2; ++ii)
        for (size_t jj = 1; jj + 2 <= ii; ++jj) {
            if (ii == i && jj == j) return idx;
            ++idx;
        }
    throw functor_error("brenner: bad X index");
}

size_t brenner_y_index(size_t n, size_t j, size_t i) {
    size_t idx = n * (n + 1) / 2;
    for (size_t jj = 1; jj <= n; ++jj)
        for (size_t ii = jj + 2; ii <= n + 2; ++ii) {
            if (jj == j && ii == i) return idx;
            ++idx;
        }
    throw functor_error("brenner: bad Y index");
}

}  // namespace

FreeAlgModule brenner_apply(size_t n, const FreeAlgModule& m) {
    if (m.n_generators != n * (n + 1))
        throw functor_error("brenner_apply: expected " + std::to_string(n * (n + 1)) +
                            " generators, got " + std::to_string(m.n_generators));
    const FieldSpec& f = m.field;
    size_t d = m.dim, blocks = n + 2;
    auto zero = Matrix::zero(f, d, d);
    std::vector<std::vector<Matrix>> gx(blocks, std::vector<Matrix>(blocks, zero));
    std::vector<std::vector<Matrix>> gy(blocks, std::vector<Matrix>(blocks, zero));
    for (size_t t = 0; t + 1 < blocks; ++t) {
        gx[t + 1][t] = Matrix::identity(f, d);
        gy[t][t + 1] = Matrix::identity(f, d);
    }
    for (size_t i = 3; i <= n + 2; ++i)
        for (size_t j = 1; j + 2 <= i; ++j) {
            gx[i - 1][j - 1] = m.action[brenner_x_index(n, i, j)];
            gy[j - 1][i - 1] = m.action[brenner_y_index(n, j, i)];
        }
    return FreeAlgModule{f, 2, blocks * d, {block_matrix(gx), block_matrix(gy)}};
}

FreeModMorphism brenner_apply(size_t n, const FreeModMorphism& g) {
    g.require_valid("brenner_apply");
    std::vector<Matrix> diag(n + 2, g.map);
    FreeModMorphism out{brenner_apply(n, g.source), brenner_apply(n, g.target),
                        block_diagonal(diag)};
    out.require_valid("brenner_apply morphism");
    return out;
}

FunctorHandle ext_embed_build(const AModule& u, const AModule& v,
                              const std::vector<std::vector<Matrix>>& z) {
    require_same_algebra(u.algebra, v.algebra, "ext_embed_build");
    u.validate();
    v.validate();
    if (z.empty()) throw functor_error("ext_embed_build: needs at least one derivation");
    if (hom_dim(u, v) != 0) throw functor_error("ext_embed_build: Hom(U, V) != 0");
    for (const auto& zi : z)
        if (!is_derivation(v, u, zi)) throw functor_error("ext_embed_build: not a derivation");
    bool independent;
    try {
        ExtRadical er = ext_bimodule_radical(v, u);
        independent = er.independent_mod_j(z);
    } catch (const algebra_error&) {
        if (!is_brick(u) || !is_brick(v)) throw;
        ExtSpace ext = ext_derivations(v, u);  // bricks: J = 0, plain independence
        std::vector<Matrix> cols;
        for (const auto& zi : z) {
            auto c = ext.ext_coordinates(zi);
            if (!c) throw functor_error("ext_embed_build: derivation outside Ext");
            cols.push_back(*c);
        }
        independent = rank(Matrix::hstack(cols)) == z.size();
    }
    if (!independent)
        throw functor_error(
            "ext_embed_build: residue classes are not independent in Ext(V,U)/J");

    FunctorHandle h;
    h.kind = FunctorKind::ext_embed;
    h.field = u.field();
    h.algebra = u.algebra;
    h.ext_u = std::make_shared<AModule>(u);
    h.ext_v = std::make_shared<AModule>(v);
    h.ext_z = z;
    h.source = CategoryDesc::reps(Quiver::kronecker(z.size()), h.field);
    h.target = CategoryDesc::modules(u.algebra);
    return h;
}

namespace {

AModule ext_embed_apply(const FunctorHandle& h, const QuiverRep& w) {
    const FieldSpec& f = h.field;
    const AModule& u = *h.ext_u;
    const AModule& v = *h.ext_v;
    size_t w0 = w.dims[0], w1 = w.dims[1];
    AModule out{u.algebra, u.dim * w0 + v.dim * w1, {}};
    for (size_t b = 0; b < u.algebra->dim(); ++b) {
        Matrix off = Matrix::zero(f, u.dim * w0, v.dim * w1);
        for (size_t i = 0; i < h.ext_z.size(); ++i)
            off = off.add(tensor_product(h.ext_z[i][b], w.arrow_matrices[i]));
        std::vector<std::vector<Matrix>> grid{
            {tensor_product(u.action[b], Matrix::identity(f, w0)), off},
            {Matrix::zero(f, v.dim * w1, u.dim * w0),
             tensor_product(v.action[b], Matrix::identity(f, w1))}};
        out.action.push_back(block_matrix(grid));
    }
    out.validate();  // the block action must be an algebra homomorphism
    return out;
}

ModMorphism ext_embed_apply(const FunctorHandle& h, const RepMorphism& g) {
    g.require_valid("ext_embed_apply");
    const FieldSpec& f = h.field;
    Matrix map = block_diagonal(
        {tensor_product(Matrix::identity(f, h.ext_u->dim), g.vertex_maps[0]),
         tensor_product(Matrix::identity(f, h.ext_v->dim), g.vertex_maps[1])});
    ModMorphism out{ext_embed_apply(h, g.source), ext_embed_apply(h, g.target), std::move(map)};
    out.require_valid("ext_embed_apply morphism");
    return out;
}

}  // namespace

FunctorHandle fn_kron(const FieldSpec& f, size_t n) {
    if (n < 1) throw functor_error("fn_kron needs n >= 1");
    AlgebraPtr a = make_kronecker_algebra(f, 2);
    auto bm = std::make_shared<Bimodule>();
    bm->kind = Bimodule::Kind::finite;
    bm->left_algebra = a;
    bm->right_algebra = a;
    size_t d = 2 * n + 2;  // basis e1, la, rho, e2(1..2n-1)
    bm->dim = d;
    const size_t E1 = 0, LA = 1, RHO = 2;
    auto e2 = [&](size_t j) { return 2 + j; };  // e2(j), 1 <= j <= 2n-1
    // right action: right multiplication on e_1 A (+) (e_2 A)^(2n-1)
    {
        Matrix re1(f, d, d), re2(f, d, d), rla(f, d, d), rrho(f, d, d);
        re1.at(E1, E1) = f.one();
        re2.at(LA, LA) = f.one();
        re2.at(RHO, RHO) = f.one();
        for (size_t j = 1; j <= 2 * n - 1; ++j) re2.at(e2(j), e2(j)) = f.one();
        rla.at(LA, E1) = f.one();
        rrho.at(RHO, E1) = f.one();
        bm->right_action = {std::move(re1), std::move(re2), std::move(rla), std::move(rrho)};
    }
    // left action by E_1, E_2, S, R
    {
        Matrix le2(f, d, d);
        for (size_t j = 1; j <= n; ++j) le2.at(e2(2 * j - 1), e2(2 * j - 1)) = f.one();
        Matrix le1 = Matrix::identity(f, d).sub(le2);
        Matrix ls(f, d, d);
        ls.at(LA, e2(1)) = f.one();
        for (size_t j = 2; j <= n; ++j) ls.at(e2(2 * j - 2), e2(2 * j - 1)) = f.one();
        Matrix lr(f, d, d);
        for (size_t j = 1; j + 1 <= n; ++j) lr.at(e2(2 * j), e2(2 * j - 1)) = f.one();
        lr.at(RHO, e2(2 * n - 1)) = f.one();
        bm->left_action = {std::move(le1), std::move(le2), std::move(ls), std::move(lr)};
    }
    bm->validate();

    FunctorHandle h;
    h.kind = FunctorKind::fn_kron;
    h.field = f;
    h.n = n;
    h.algebra = a;
    h.bimod = std::move(bm);
    h.source = CategoryDesc::reps(Quiver::kronecker(2), f);
    h.target = CategoryDesc::reps(Quiver::kronecker(2), f);
    return h;
}

FunctorHandle g_dictionary_functor(const FieldSpec& f) {
    FunctorHandle h;
    h.kind = FunctorKind::dict_g;
    h.field = f;
    h.algebra = make_truncated_poly(f, 1);
    h.source = CategoryDesc::modules(h.algebra);
    h.target = CategoryDesc::reps(Quiver::kronecker(2), f);
    return h;
}

FunctorHandle h_dictionary_functor(const FieldSpec& f) {
    FunctorHandle h;
    h.kind = FunctorKind::dict_h;
    h.field = f;
    h.algebra = make_truncated_poly(f, 1);
    h.source = CategoryDesc::reps(Quiver::kronecker(2), f);
    h.target = CategoryDesc::modules(h.algebra);
    return h;
}

AModule h_dictionary_apply(const AlgebraPtr& a2, const QuiverRep& w) {
    w.validate();
    const FieldSpec& f = w.field;
    size_t v0 = w.dims[0], v1 = w.dims[1];
    AModule out{a2, v0 + v1, {}};
    Matrix x(f, v0 + v1, v0 + v1), y(f, v0 + v1, v0 + v1);
    for (size_t r = 0; r < v0; ++r)
        for (size_t c = 0; c < v1; ++c) {
            x.at(r, v0 + c) = w.arrow_matrices[0].at(r, c);
            y.at(r, v0 + c) = w.arrow_matrices[1].at(r, c);
        }
    out.action = {Matrix::identity(f, v0 + v1), std::move(x), std::move(y)};
    return out;
}

namespace {

struct GParts {
    QuiverRep rep;
    Submodule rad;
    QuotientModule top_q;
};

GParts g_apply_parts(const AModule& m) {
    m.validate();
    const FieldSpec& f = m.field();
    const Matrix& x = m.action[1];
    const Matrix& y = m.action[2];
    Subspace rad_space = subspace_from_columns(Matrix::hstack({x, y}));
    Submodule rad = submodule_from_subspace(m, rad_space);
    QuotientModule top_q = quotient_by_subspace(m, rad_space);
    size_t dr = rad.module.dim, dt = top_q.module.dim;
    // induced maps top -> rad from the X and Y multiplications
    Matrix xbar(f, dr, dt), ybar(f, dr, dt);
    if (dr > 0) {
        auto solve_into = [&](const Matrix& act) {
            auto s = solve(rad.inclusion, act.mul(top_q.section));
            if (!s) throw functor_error("dictionary functor G: multiplication does not land in the radical");
            return *s;
        };
        xbar = solve_into(x);
        ybar = solve_into(y);
    }
    QuiverRep rep{Quiver::kronecker(2), f, {dr, dt}, {std::move(xbar), std::move(ybar)}};
    return GParts{std::move(rep), std::move(rad), std::move(top_q)};
}

RepMorphism g_apply_morphism(const ModMorphism& g) {
    g.require_valid("dictionary functor G");
    GParts s = g_apply_parts(g.source), t = g_apply_parts(g.target);
    Matrix top_map = t.top_q.projection.mul(g.map).mul(s.top_q.section);
    Matrix rad_map(g.source.field(), t.rad.module.dim, s.rad.module.dim);
    if (t.rad.module.dim > 0 && s.rad.module.dim > 0) {
        auto sol = solve(t.rad.inclusion, g.map.mul(s.rad.inclusion));
        if (!sol) throw functor_error("dictionary functor G: morphism does not preserve the radical");
        rad_map = *sol;
    }
    RepMorphism out{s.rep, t.rep, {std::move(rad_map), std::move(top_map)}};
    out.require_valid("dictionary functor G morphism");
    return out;
}

}  // namespace

FunctorHandle kt_functor(const FieldSpec& f) {
    FunctorHandle h;
    h.kind = FunctorKind::kt;
    h.field = f;
    h.source = CategoryDesc::free_modules(1, f);
    h.target = CategoryDesc::reps(Quiver::kronecker(2), f);
    return h;
}

FunctorHandle restrict_functor(const AlgebraPtr& a) {
    FunctorHandle h;
    h.kind = FunctorKind::restrict_generators;
    h.field = a->field();
    h.algebra = a;
    h.source = CategoryDesc::modules(a);
    h.target = CategoryDesc::free_modules(a->generators().size(), h.field);
    return h;
}

FunctorHandle compose(const FunctorHandle& outer, const FunctorHandle& inner) {
    if (!(outer.source == inner.target))
        throw functor_error("compose: categories do not match (" + inner.target.describe() +
                            " vs " + outer.source.describe() + ")");
    FunctorHandle h;
    h.kind = FunctorKind::compose;
    h.field = inner.field;
    h.outer = std::make_shared<FunctorHandle>(outer);
    h.inner = std::make_shared<FunctorHandle>(inner);
    h.source = inner.source;
    h.target = outer.target;
    return h;
}

Object FunctorHandle::apply(const Object& x) const {
    if (!source.accepts(x)) throw functor_error("object not in the source category");
    switch (kind) {
        case FunctorKind::identity:
            return x;
        case FunctorKind::split:
            return split_apply(split_source, to_quiver_rep(x));
        case FunctorKind::jans:
            return jans_apply(*jans, to_quiver_rep(x));
        case FunctorKind::gp: {
            FreeAlgModule w = to_free_module(x);
            QuiverRep loop_rep = loop_rep_from_free_module(w);
            return jans_apply(*jans, split_apply(Quiver::loop(n), loop_rep));
        }
        case FunctorKind::brenner:
            return brenner_apply(n, to_free_module(x));
        case FunctorKind::ext_embed:
            return ext_embed_apply(*this, to_quiver_rep(x));
        case FunctorKind::fn_kron:
            return quiver_rep_from_amodule(tensor_module(*bimod, to_amodule(x)));
        case FunctorKind::dict_g:
            return g_apply_parts(to_amodule(x)).rep;
        case FunctorKind::dict_h:
            return h_dictionary_apply(algebra, to_quiver_rep(x));
        case FunctorKind::kt: {
            FreeAlgModule w = to_free_module(x);
            return kt_embed(w.action.empty() ? Matrix::zero(field, w.dim, w.dim) : w.action[0]);
        }
        case FunctorKind::compose:
            return outer->apply(inner->apply(x));
        case FunctorKind::restrict_generators: {
            AModule m = to_amodule(x);
            FreeAlgModule out{field, algebra->generators().size(), m.dim, {}};
            for (size_t g : algebra->generators()) out.action.push_back(m.action[g]);
            return out;
        }
    }
    throw functor_error("unhandled functor kind");
}

Morphism FunctorHandle::apply(const Morphism& fm) const {
    if (!source.accepts(morphism_source(fm)) || !source.accepts(morphism_target(fm)))
        throw functor_error("morphism not in the source category");
    switch (kind) {
        case FunctorKind::identity:
            return fm;
        case FunctorKind::split:
            return split_apply(split_source, to_rep_morphism(fm));
        case FunctorKind::jans:
            return jans_apply(*jans, to_rep_morphism(fm));
        case FunctorKind::gp: {
            FreeModMorphism g = to_free_morphism(fm);
            RepMorphism loop{loop_rep_from_free_module(g.source), loop_rep_from_free_module(g.target),
                             {g.map}};
            return jans_apply(*jans, split_apply(Quiver::loop(n), loop));
        }
        case FunctorKind::brenner:
            return brenner_apply(n, to_free_morphism(fm));
        case FunctorKind::ext_embed:
            return ext_embed_apply(*this, to_rep_morphism(fm));
        case FunctorKind::fn_kron: {
            ModMorphism g = to_mod_morphism(fm);
            ModMorphism t = tensor_morphism(*bimod, g);
            return to_rep_morphism(Morphism(t));
        }
        case FunctorKind::dict_g:
            return g_apply_morphism(to_mod_morphism(fm));
        case FunctorKind::dict_h: {
            RepMorphism g = to_rep_morphism(fm);
            ModMorphism out{h_dictionary_apply(algebra, g.source), h_dictionary_apply(algebra, g.target),
                            block_diagonal({g.vertex_maps[0], g.vertex_maps[1]})};
            out.require_valid("dictionary functor H morphism");
            return out;
        }
        case FunctorKind::kt: {
            FreeModMorphism g = to_free_morphism(fm);
            FreeAlgModule sw = g.source, tw = g.target;
            RepMorphism out{kt_embed(sw.action.empty() ? Matrix::zero(field, sw.dim, sw.dim)
                                                       : sw.action[0]),
                            kt_embed(tw.action.empty() ? Matrix::zero(field, tw.dim, tw.dim)
                                                       : tw.action[0]),
                            {g.map, g.map}};
            out.require_valid("kt morphism");
            return out;
        }
        case FunctorKind::compose:
            return outer->apply(inner->apply(fm));
        case FunctorKind::restrict_generators: {
            ModMorphism g = to_mod_morphism(fm);
            FreeAlgModule s = std::get<FreeAlgModule>(apply(Object(g.source)));
            FreeAlgModule t = std::get<FreeAlgModule>(apply(Object(g.target)));
            return FreeModMorphism{std::move(s), std::move(t), g.map};
        }
    }
    throw functor_error("unhandled functor kind");
}

std::optional<Bimodule> FunctorHandle::bimodule_certificate() const {
    if (bimod) return *bimod;
    if (kind == FunctorKind::compose) {
        auto bo = outer->bimodule_certificate();
        auto bi = inner->bimodule_certificate();
        if (bo && bi) return tensor_bimodules(*bo, *bi);
        return std::nullopt;
    }
    if (kind == FunctorKind::identity && algebra) return regular_bimodule(algebra);
    return std::nullopt;
}

Bimodule eilenberg_watts(const FunctorHandle& h, const AlgebraPtr& a) {
    // finite-dimensional sources: compute F(A) with right multiplications
    bool finite_source = h.source.kind == CategoryDesc::Kind::amodule ||
                         (h.source.kind == CategoryDesc::Kind::quiver_rep &&
                          h.source.quiver == Quiver::kronecker(h.source.quiver.arrows.size()));
    if (!finite_source) {
        auto bm = h.bimodule_certificate();
        if (!bm) throw functor_error("eilenberg_watts: functor is not defined on mod A");
        return *bm;
    }
    if (!(h.source == CategoryDesc::modules(a)))
        throw functor_error("eilenberg_watts: functor is not defined on mod A");
    AModule reg = AModule::regular(a);
    Object fa = h.apply(Object(reg));
    AModule m = to_amodule(fa);
    Bimodule out;
    out.kind = Bimodule::Kind::finite;
    out.left_algebra = m.algebra;
    out.right_algebra = a;
    out.dim = m.dim;
    out.left_action = m.action;
    // conversion bookkeeping: recover F applied to each right multiplication
    for (size_t t = 0; t < a->dim(); ++t) {
        ModMorphism rt{reg, reg, a->right_mult(t)};
        rt.require_valid("eilenberg_watts right multiplication");
        Morphism img = h.apply(Morphism(rt));
        ModMorphism conv = to_mod_morphism(img);
        // re-express over the basis used for F(A) above
        out.right_action.push_back(conv.map);
    }
    out.validate();
    return out;
}

FreeAlgModule klein_simple(const FieldSpec& f, size_t n, const Scalar& lambda,
                           const std::vector<Scalar>& m_set) {
    if (m_set.size() + 1 != n) throw functor_error("klein_simple: m_set must have n-1 members");
    for (size_t i = 0; i < m_set.size(); ++i) {
        if (m_set[i] == lambda) throw functor_error("klein_simple: lambda lies in m_set");
        for (size_t j = i + 1; j < m_set.size(); ++j)
            if (m_set[i] == m_set[j]) throw functor_error("klein_simple: m_set members not distinct");
    }
    Matrix x(f, n, n), y(f, n, n);
    x.at(0, 0) = lambda;
    for (size_t i = 1; i < n; ++i) x.at(i, i) = m_set[i - 1];
    for (size_t i = 0; i < n; ++i) y.at((i + 1) % n, i) = f.one();
    return FreeAlgModule{f, 2, n, {std::move(x), std::move(y)}};
}

namespace {

// minimal cycle in the underlying multigraph: loops, then parallel pairs,
// then BFS girth
struct CycleData {
    std::vector<size_t> arrows;   // arrow indices along the cycle
    std::vector<size_t> vertices; // the cycle's vertex set
};

std::optional<CycleData> find_cycle(const Quiver& q) {
    for (size_t i = 0; i < q.arrows.size(); ++i)
        if (q.arrows[i].source == q.arrows[i].target)
            return CycleData{{i}, {q.arrows[i].source}};
    for (size_t i = 0; i < q.arrows.size(); ++i)
        for (size_t j = i + 1; j < q.arrows.size(); ++j) {
            auto &a = q.arrows[i], &b = q.arrows[j];
            bool parallel = (a.source == b.source && a.target == b.target) ||
                            (a.source == b.target && a.target == b.source);
            if (parallel) return CycleData{{i, j}, {a.source, a.target}};
        }
    // BFS per arrow: shortest undirected path between its endpoints avoiding it
    std::optional<CycleData> best;
    for (size_t e = 0; e < q.arrows.size(); ++e) {
        size_t from = q.arrows[e].source, to = q.arrows[e].target;
        std::vector<long> prev_vertex(q.vertex_count, -1), prev_arrow(q.vertex_count, -1);
        std::vector<bool> seen(q.vertex_count, false);
        std::vector<size_t> queue{from};
        seen[from] = true;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            size_t v = queue[qi];
            for (size_t i = 0; i < q.arrows.size(); ++i) {
                if (i == e) continue;
                const auto& ar = q.arrows[i];
                size_t w = SIZE_MAX;
                if (ar.source == v) w = ar.target;
                else if (ar.target == v) w = ar.source;
                if (w == SIZE_MAX || seen[w]) continue;
                seen[w] = true;
                prev_vertex[w] = static_cast<long>(v);
                prev_arrow[w] = static_cast<long>(i);
                queue.push_back(w);
            }
        }
        if (!seen[to]) continue;
        CycleData c;
        c.arrows.push_back(e);
        c.vertices.push_back(from);
        size_t v = to;
        while (v != from) {
            c.vertices.push_back(v);
            c.arrows.push_back(static_cast<size_t>(prev_arrow[v]));
            v = static_cast<size_t>(prev_vertex[v]);
        }
        if (!best || c.arrows.size() < best->arrows.size()) best = c;
    }
    return best;
}

}  // namespace

std::vector<QuiverRep> wild_bricks(const Quiver& q, const FieldSpec& f, size_t count) {
    q.validate();
    auto cycle = find_cycle(q);
    if (!cycle) throw functor_error("wild_bricks: tree case not implemented");
    std::vector<bool> on_cycle_vertex(q.vertex_count, false);
    for (size_t v : cycle->vertices) on_cycle_vertex[v] = true;
    std::vector<bool> is_cycle_arrow(q.arrows.size(), false);
    for (size_t a : cycle->arrows) is_cycle_arrow[a] = true;
    // one more arrow touching the cycle (wildness)
    size_t beta = SIZE_MAX;
    for (size_t i = 0; i < q.arrows.size() && beta == SIZE_MAX; ++i)
        if (!is_cycle_arrow[i] &&
            (on_cycle_vertex[q.arrows[i].source] || on_cycle_vertex[q.arrows[i].target]))
            beta = i;
    if (beta == SIZE_MAX)
        throw functor_error("wild_bricks: no extra arrow at the cycle (quiver not wild enough)");
    bool beta_src_on = on_cycle_vertex[q.arrows[beta].source];
    bool beta_tgt_on = on_cycle_vertex[q.arrows[beta].target];

    if (f.kind() == FieldKind::prime_field && f.modulus() < 4 * count)
        throw functor_error("wild_bricks: field too small to pick disjoint 4-element scalar sets");

    std::vector<QuiverRep> out;
    for (size_t b = 0; b < count; ++b) {
        QuiverRep rep{q, f, DimVector(q.vertex_count, 0), {}};
        for (size_t v : cycle->vertices) rep.dims[v] = 4;
        if (beta_src_on != beta_tgt_on) {
            size_t off = beta_src_on ? q.arrows[beta].target : q.arrows[beta].source;
            rep.dims[off] = 1;
        }
        for (size_t i = 0; i < q.arrows.size(); ++i) {
            const auto& ar = q.arrows[i];
            size_t rows = rep.dims[ar.target], cols = rep.dims[ar.source];
            Matrix mat(f, rows, cols);
            if (is_cycle_arrow[i]) {
                if (i == cycle->arrows[0]) {
                    for (size_t k = 0; k < 4; ++k) mat.at(k, k) = f.from_int(long(4 * b + k));
                } else {
                    mat = Matrix::identity(f, 4);
                }
            } else if (i == beta) {
                if (beta_src_on && beta_tgt_on) {
                    for (size_t k = 0; k < 4; ++k) mat.at((k + 1) % 4, k) = f.one();
                } else {
                    for (size_t r = 0; r < rows; ++r)
                        for (size_t c = 0; c < cols; ++c) mat.at(r, c) = f.one();
                }
            }
            rep.arrow_matrices.push_back(std::move(mat));
        }
        rep.validate();
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace qk
