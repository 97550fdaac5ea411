#include "quiverkit/verify.hpp"

#include "quiverkit/poly.hpp"

#include <algorithm>
#include <cstdlib>

namespace qk {

bool VerificationReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

Json VerificationReport::to_json() const {
    Json cs = Json::array();
    for (const auto& c : checks)
        cs.push_back(Json{{"name", c.name},
                          {"sample", c.sample},
                          {"seed", c.seed},
                          {"pass", c.pass},
                          {"witnesses", c.witnesses}});
    return Json{{"quiverkit", "0.1.0"},
                {"functor", functor},
                {"checks", std::move(cs)},
                {"verdict", pass() ? "pass" : "fail"}};
}

namespace {

QuiverRep random_rep(Rng& rng, const Quiver& q, const FieldSpec& f, size_t dmax) {
    QuiverRep m{q, f, {}, {}};
    for (size_t v = 0; v < q.vertex_count; ++v) m.dims.push_back(rng.below(dmax + 1));
    bool all_zero = true;
    for (size_t d : m.dims) all_zero = all_zero && d == 0;
    if (all_zero) m.dims[rng.below(q.vertex_count)] = 1 + rng.below(dmax);
    for (const auto& ar : q.arrows)
        m.arrow_matrices.push_back(rng.matrix(f, m.dims[ar.target], m.dims[ar.source]));
    return m;
}

bool is_preset(const FDAlgebra& a, const AlgebraPtr& preset) { return a == *preset; }

// nilpotent of order <= m: random block pattern conjugated by a random basis
Matrix random_nilpotent(Rng& rng, const FieldSpec& f, size_t dim, size_t order) {
    Matrix n(f, dim, dim);
    size_t pos = 0;
    while (pos < dim) {
        size_t block = 1 + rng.below(std::min(order, dim - pos));
        for (size_t i = 0; i + 1 < block; ++i) n.at(pos + i + 1, pos + i) = f.one();
        pos += block;
    }
    Matrix g = rng.invertible_matrix(f, dim);
    return inverse(g).value().mul(n).mul(g);
}

}  // namespace

Object sample_object(const CategoryDesc& c, Rng& rng, size_t dim_bound) {
    const FieldSpec& f = c.field;
    switch (c.kind) {
        case CategoryDesc::Kind::quiver_rep:
            return random_rep(rng, c.quiver, f, dim_bound);
        case CategoryDesc::Kind::free_module: {
            FreeAlgModule m{f, c.generators, 1 + rng.below(dim_bound), {}};
            for (size_t i = 0; i < c.generators; ++i)
                m.action.push_back(rng.matrix(f, m.dim, m.dim));
            return m;
        }
        case CategoryDesc::Kind::amodule: {
            const AlgebraPtr& a = c.algebra;
            size_t n_arrows = a->dim() >= 3 ? a->dim() - 2 : 0;
            if (n_arrows >= 1 && is_preset(*a, make_kronecker_algebra(f, n_arrows)))
                return amodule_from_quiver_rep(
                    random_rep(rng, Quiver::kronecker(n_arrows), f, dim_bound));
            if (is_preset(*a, make_truncated_poly(f, 1))) {
                // every module over k[X,Y]/(X,Y)^2 arises from a Kronecker rep
                QuiverRep w = random_rep(rng, Quiver::kronecker(2), f, dim_bound);
                return h_dictionary_apply(a, w);
            }
            if (is_preset(*a, make_ground_field(f))) {
                AModule m{a, 1 + rng.below(dim_bound), {}};
                m.action.push_back(Matrix::identity(f, m.dim));
                return m;
            }
            for (size_t ord = 1; ord <= 8; ++ord)
                if (is_preset(*a, make_poly_quotient(f, ord))) {
                    size_t dim = 1 + rng.below(dim_bound);
                    Matrix t = random_nilpotent(rng, f, dim, ord);
                    AModule m{a, dim, {}};
                    Matrix power = Matrix::identity(f, dim);
                    for (size_t i = 0; i < ord; ++i) {
                        m.action.push_back(power);
                        power = power.mul(t);
                    }
                    return m;
                }
            throw functor_error("sampling impossible under constraints: unsupported algebra");
        }
    }
    throw functor_error("sampling impossible under constraints");
}

std::vector<Object> sample_indecomposables(const CategoryDesc& c, Rng& rng, size_t dim_bound,
                                           size_t count) {
    const FieldSpec& f = c.field;
    HomologyConfig cfg;
    std::vector<Object> out;
    auto certainly_fresh = [&](const Object& cand) {
        for (const auto& seen : out) {
            bool comparable =
                std::visit([&](const auto& a, const auto& b) -> bool {
                    using A = std::decay_t<decltype(a)>;
                    using B = std::decay_t<decltype(b)>;
                    if constexpr (!std::is_same_v<A, B>) return false;
                    else {
                        Rng r(7);
                        auto iso = is_isomorphic(a, b, r, cfg);
                        return iso.isomorphic || !iso.certain;
                    }
                }, cand, seen);
            if (comparable) return false;
        }
        return true;
    };
    auto push_if_indec = [&](const Object& cand) {
        if (out.size() >= count || object_dim(cand) == 0) return;
        bool ok = std::visit([&](const auto& m) {
            Rng r = rng.split(out.size() + 31);
            return is_indecomposable(m, r, cfg).verdict == Verdict::yes;
        }, cand);
        if (ok && certainly_fresh(cand)) out.push_back(cand);
    };

    // canonical small indecomposables first
    if (c.kind == CategoryDesc::Kind::quiver_rep &&
        c.quiver == Quiver::kronecker(c.quiver.arrows.size())) {
        size_t n = c.quiver.arrows.size();
        if (n == 2) {
            // preprojectives, preinjectives, and regulars interleaved so that
            // small samples still cover all three families
            auto x_minus_one_power = [&](size_t k) {
                Poly q{f.neg(f.one()), f.one()};
                Poly acc{f.one()};
                for (size_t i = 0; i < k; ++i) acc = poly_mul(f, acc, q);
                return acc;
            };
            auto x_power = [&](size_t k) {
                Poly xk(k + 1, f.zero());
                xk[k] = f.one();
                return xk;
            };
            push_if_indec(kron_P(f, 0));
            push_if_indec(kron_I(f, 0));
            push_if_indec(kron_L(f, x_minus_one_power(1)));
            push_if_indec(kron_L(f, x_power(1)));
            push_if_indec(kron_P(f, 1));
            push_if_indec(kron_I(f, 1));
            push_if_indec(kron_L(f, x_minus_one_power(2)));
            push_if_indec(kron_L(f, x_power(2)));
            push_if_indec(kron_P(f, 2));
            push_if_indec(kron_I(f, 2));
            push_if_indec(kron_L(f, x_minus_one_power(3)));
            push_if_indec(kron_L(f, x_power(3)));
            push_if_indec(kron_P(f, 3));
        } else {
            QuiverRep s0{c.quiver, f, {1, 0}, {}}, s1{c.quiver, f, {0, 1}, {}};
            for (size_t i = 0; i < n; ++i) {
                s0.arrow_matrices.push_back(Matrix::zero(f, 1, 0));
                s1.arrow_matrices.push_back(Matrix::zero(f, 0, 1));
            }
            push_if_indec(s0);
            push_if_indec(s1);
        }
    }
    if (c.kind == CategoryDesc::Kind::free_module) {
        for (long v = 0; out.size() < count && v < 6; ++v) {
            FreeAlgModule m{f, c.generators, 1, {}};
            for (size_t i = 0; i < c.generators; ++i)
                m.action.push_back(Matrix::from_int(f, {{v + long(i)}}));
            push_if_indec(m);
        }
    }

    // fill from Krull-Schmidt factors of random objects
    for (size_t attempt = 0; out.size() < count && attempt < 40 * count; ++attempt) {
        Rng r = rng.split(1000 + attempt);
        Object x = sample_object(c, r, dim_bound);
        try {
            std::visit([&](const auto& m) {
                Rng r2 = r.split(5);
                for (const auto& factor : decompose(m, r2, cfg)) push_if_indec(Object(factor));
            }, x);
        } catch (const algebra_error&) {
            continue;  // undecidable sample; skip it
        }
    }
    return out;
}

namespace {

struct SpunSub {
    Object sub;
    Morphism incl;
};

SpunSub spin_random_sub(const Object& mid, Rng& rng) {
    if (auto* rep = std::get_if<QuiverRep>(&mid)) {
        std::vector<Matrix> seeds;
        for (size_t v = 0; v < rep->quiver.vertex_count; ++v) {
            size_t k = rng.below(2);
            seeds.push_back(rng.matrix(rep->field, rep->dims[v], k));
        }
        auto s = spin_subrep(*rep, seeds);
        return SpunSub{s.rep, s.map};
    }
    if (auto* m = std::get_if<AModule>(&mid)) {
        Matrix seed = rng.matrix(m->field(), m->dim, m->dim ? 1 : 0);
        Subspace space = subspace_from_columns(seed);
        for (bool grew = true; grew;) {
            grew = false;
            for (const auto& act : m->action) {
                if (space.dim() == 0) break;
                Matrix img = act.mul(space.basis);
                if (subspace_contains(space, img)) continue;
                space = subspace_from_columns(Matrix::hstack({space.basis, img}));
                grew = true;
            }
        }
        Submodule sub = submodule_from_subspace(*m, space);
        return SpunSub{sub.module, ModMorphism{sub.module, *m, sub.inclusion}};
    }
    const auto& m = std::get<FreeAlgModule>(mid);
    Matrix seed = rng.matrix(m.field, m.dim, m.dim ? 1 : 0);
    Subspace space = subspace_from_columns(seed);
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto& act : m.action) {
            if (space.dim() == 0) break;
            Matrix img = act.mul(space.basis);
            if (subspace_contains(space, img)) continue;
            space = subspace_from_columns(Matrix::hstack({space.basis, img}));
            grew = true;
        }
    }
    FreeAlgModule sub{m.field, m.n_generators, space.dim(), {}};
    for (const auto& act : m.action) {
        if (space.dim() == 0) {
            sub.action.push_back(Matrix::zero(m.field, 0, 0));
            continue;
        }
        sub.action.push_back(solve(space.basis, act.mul(space.basis)).value());
    }
    return SpunSub{sub, FreeModMorphism{sub, m, space.basis}};
}

Morphism cokernel_of(const Morphism& incl, Object& quot_out) {
    if (auto* g = std::get_if<RepMorphism>(&incl)) {
        auto c = cokernel_rep(*g);
        quot_out = c.rep;
        return c.map;
    }
    if (auto* g = std::get_if<ModMorphism>(&incl)) {
        QuotientModule q = quotient_by_subspace(g->target, subspace_from_columns(g->map));
        quot_out = q.module;
        return ModMorphism{g->target, q.module, q.projection};
    }
    const auto& g = std::get<FreeModMorphism>(incl);
    QuotientMap qm = quotient_map(subspace_from_columns(g.map));
    FreeAlgModule quot{g.target.field, g.target.n_generators, qm.projection.rows(), {}};
    for (const auto& act : g.target.action)
        quot.action.push_back(qm.projection.mul(act).mul(qm.section));
    quot_out = quot;
    return FreeModMorphism{g.target, quot, qm.projection};
}

Matrix morphism_total(const Morphism& f) {
    if (auto* g = std::get_if<RepMorphism>(&f)) {
        if (g->vertex_maps.empty()) return Matrix(g->source.field, 0, 0);
        return block_diagonal(g->vertex_maps);
    }
    if (auto* g = std::get_if<ModMorphism>(&f)) return g->map;
    return std::get<FreeModMorphism>(f).map;
}

size_t object_hom_dim(const Object& a, const Object& b) {
    return std::visit([&](const auto& x, const auto& y) -> size_t {
        using A = std::decay_t<decltype(x)>;
        using B = std::decay_t<decltype(y)>;
        if constexpr (std::is_same_v<A, B>)
            return hom_dim(x, y);
        else
            throw functor_error("hom between different module flavours");
    }, a, b);
}

bool object_isomorphic(const Object& a, const Object& b, Rng& rng, bool* certain = nullptr) {
    return std::visit([&](const auto& x, const auto& y) -> bool {
        using A = std::decay_t<decltype(x)>;
        using B = std::decay_t<decltype(y)>;
        if constexpr (std::is_same_v<A, B>) {
            auto iso = is_isomorphic(x, y, rng);
            if (certain) *certain = iso.certain;
            return iso.isomorphic;
        } else {
            throw functor_error("iso between different module flavours");
        }
    }, a, b);
}

}  // namespace

SES random_ses(const Object& mid, Rng& rng) {
    SpunSub s = spin_random_sub(mid, rng);
    Object quot;
    Morphism proj = cokernel_of(s.incl, quot);
    return SES{s.sub, mid, quot, s.incl, proj};
}

VerificationReport check_embedding(const FunctorHandle& f, const SampleSpec& s) {
    VerificationReport report;
    report.functor = functor_kind_name(f.kind);
    Rng rng(s.seed);

    // exactness on random short exact sequences
    {
        CheckResult res{"exactness_on_random_ses", std::to_string(s.count) + " spun sequences, dims <= " +
                            std::to_string(s.dim_bound),
                        s.seed, true, {}};
        for (size_t t = 0; t < s.count; ++t) {
            Rng r = rng.split(t);
            Object mid = sample_object(f.source, r, s.dim_bound);
            SES ses = random_ses(mid, r);
            Object fs = f.apply(ses.sub), fm = f.apply(ses.mid), fq = f.apply(ses.quot);
            Morphism fi = f.apply(ses.incl), fp = f.apply(ses.proj);
            Matrix mi = morphism_total(fi), mp = morphism_total(fp);
            bool ok = object_dim(fs) + object_dim(fq) == object_dim(fm) &&
                      rank(mi) == object_dim(fs) && rank(mp) == object_dim(fq) &&
                      (mi.cols() == 0 || mp.mul(mi).is_zero());
            if (!ok) {
                res.pass = false;
                res.witnesses.push_back(Json{{"sequence_middle", object_to_json(ses.mid)},
                                             {"sub", object_to_json(ses.sub)}});
            }
        }
        report.checks.push_back(std::move(res));
    }

    // indecomposables map to indecomposables
    std::vector<Object> sample;
    {
        Rng r = rng.split(777);
        sample = sample_indecomposables(f.source, r, s.dim_bound, s.count);
        CheckResult res{"indecomposability_preservation",
                        std::to_string(sample.size()) + " certified indecomposables", s.seed, true, {}};
        for (size_t i = 0; i < sample.size(); ++i) {
            Object img = f.apply(sample[i]);
            Verdict v = std::visit([&](const auto& m) {
                Rng r2 = rng.split(4000 + i);
                return is_indecomposable(m, r2).verdict;
            }, img);
            if (v != Verdict::yes) {
                res.pass = false;
                res.witnesses.push_back(Json{
                    {"input", object_to_json(sample[i])},
                    {"image", object_to_json(img)},
                    {"note", v == Verdict::no ? "image decomposes" : "image indecomposability undetermined"}});
            }
        }
        report.checks.push_back(std::move(res));
    }

    // pairwise non-isomorphic inputs keep non-isomorphic images
    {
        CheckResult res{"isomorphism_reflection",
                        "pairwise distinct inputs among " + std::to_string(sample.size()), s.seed,
                        true, {}};
        for (size_t i = 0; i < sample.size(); ++i)
            for (size_t j = i + 1; j < sample.size(); ++j) {
                Rng r = rng.split(9000 + i * 97 + j);
                Object fi = f.apply(sample[i]), fj = f.apply(sample[j]);
                if (object_isomorphic(fi, fj, r)) {
                    res.pass = false;
                    res.witnesses.push_back(Json{{"input_a", object_to_json(sample[i])},
                                                 {"input_b", object_to_json(sample[j])},
                                                 {"image_a", object_to_json(fi)},
                                                 {"image_b", object_to_json(fj)}});
                }
            }
        report.checks.push_back(std::move(res));
    }
    return report;
}

VerificationReport check_fullness(const FunctorHandle& f, const SampleSpec& s) {
    VerificationReport report;
    report.functor = functor_kind_name(f.kind);
    Rng rng(s.seed);
    CheckResult faithful{"faithfulness_inequality",
                         std::to_string(s.count) + " sampled pairs", s.seed, true, {}};
    CheckResult full{"fullness_hom_dimensions", std::to_string(s.count) + " sampled pairs", s.seed,
                     true, {}};
    for (size_t t = 0; t < s.count; ++t) {
        Rng r = rng.split(t);
        Object x = sample_object(f.source, r, s.dim_bound);
        Object y = t % 3 == 0 ? x : sample_object(f.source, r, s.dim_bound);
        size_t before = object_hom_dim(x, y);
        size_t after = object_hom_dim(f.apply(x), f.apply(y));
        Json pair{{"x", object_to_json(x)}, {"y", object_to_json(y)},
                  {"hom_before", before},  {"hom_after", after}};
        if (before > after) {
            faithful.pass = false;
            faithful.witnesses.push_back(pair);
        }
        if (before != after) {
            full.pass = false;
            full.witnesses.push_back(pair);
        }
    }
    report.checks.push_back(std::move(faithful));
    report.checks.push_back(std::move(full));
    return report;
}

VerificationReport euler_consistency(const SampleSpec& s) {
    VerificationReport report;
    report.functor = "euler_consistency";
    Rng rng(s.seed);
    for (size_t n : {2, 3}) {
        Quiver q = Quiver::kronecker(n);
        CheckResult res{"hom_minus_ext_equals_euler_K" + std::to_string(n),
                        std::to_string(s.count) + " random pairs, dims <= " +
                            std::to_string(s.dim_bound),
                        s.seed, true, {}};
        for (size_t t = 0; t < s.count; ++t) {
            Rng r = rng.split(n * 1000 + t);
            QuiverRep m = random_rep(r, q, s.field, s.dim_bound);
            QuiverRep x = random_rep(r, q, s.field, s.dim_bound);
            long lhs = static_cast<long>(hom_dim(m, x)) - static_cast<long>(ext_quiver(m, x).dim);
            if (lhs != euler_form(q, m.dims, x.dims)) {
                res.pass = false;
                res.witnesses.push_back(
                    Json{{"m", rep_to_json(m)}, {"n", rep_to_json(x)}, {"hom_minus_ext", lhs}});
            }
        }
        report.checks.push_back(std::move(res));
    }
    return report;
}

VerificationReport orthogonal_family(const std::vector<AlgebraPtr>& presets, const SampleSpec& s) {
    VerificationReport report;
    report.functor = "orthogonal_family";
    const FieldSpec& f = s.field;
    if (presets.empty() || presets.size() > 3)
        throw functor_error("orthogonal_family: between 1 and 3 presets");
    for (const auto& a : presets)
        if (a->generators().size() > 1)
            throw functor_error("orthogonal_family: presets must have at most one generator");
    if (f.kind() == FieldKind::prime_field && f.modulus() <= 2 * presets.size())
        throw functor_error("orthogonal_family: field too small to pick disjoint brick index sets");

    // the Z(2) family: Klein simples of dimension 2 through the splitting functor
    FunctorHandle split2 = split_functor(Quiver::loop(2), f);
    std::vector<FunctorHandle> embeddings;
    CheckResult brick_check{"bricks_pairwise_orthogonal",
                            std::to_string(2 * presets.size()) + " bricks of dimension vector (2,2)",
                            s.seed, true, {}};
    std::vector<QuiverRep> bricks;
    for (size_t i = 0; i < presets.size(); ++i)
        for (size_t t = 0; t < 2; ++t) {
            Scalar lam = f.from_int(static_cast<long>(1 + 2 * i + t));
            FreeAlgModule sl = klein_simple(f, 2, lam, {f.zero()});
            bricks.push_back(to_quiver_rep(split2.apply(loop_rep_from_free_module(sl))));
        }
    for (size_t i = 0; i < bricks.size(); ++i) {
        if (!is_brick(bricks[i])) brick_check.pass = false;
        for (size_t j = 0; j < bricks.size(); ++j)
            if (i != j && hom_dim(bricks[i], bricks[j]) != 0) brick_check.pass = false;
    }
    report.checks.push_back(brick_check);

    for (size_t i = 0; i < presets.size(); ++i) {
        AModule u = amodule_from_quiver_rep(bricks[2 * i]);
        AModule v = amodule_from_quiver_rep(bricks[2 * i + 1]);
        size_t n = presets[i]->generators().size() + 1;
        ExtSpace ext = ext_derivations(v, u);
        if (ext.dim < n)
            throw functor_error("orthogonal_family: not enough extensions for the embedding");
        std::vector<std::vector<Matrix>> z(ext.representatives.begin(),
                                           ext.representatives.begin() + n);
        FunctorHandle h = ext_embed_build(u, v, z);
        FunctorHandle g =
            compose(split_functor(Quiver::loop(n - 1), f), restrict_functor(presets[i]));
        embeddings.push_back(compose(h, g));
    }

    // sampled images: dimension vectors are multiples of (2,2)
    Rng rng(s.seed);
    std::vector<std::vector<AModule>> images(presets.size());
    CheckResult dim_check{"image_dimension_vectors_multiples_of_alpha",
                          std::to_string(s.count) + " samples per algebra", s.seed, true, {}};
    for (size_t i = 0; i < presets.size(); ++i) {
        for (size_t t = 0; t < s.count; ++t) {
            Rng r = rng.split(i * 100 + t);
            Object x = sample_object(CategoryDesc::modules(presets[i]), r, s.dim_bound);
            AModule img = to_amodule(embeddings[i].apply(x));
            images[i].push_back(img);
            QuiverRep as_rep = quiver_rep_from_amodule(img);
            if (as_rep.dims[0] != as_rep.dims[1] || as_rep.dims[0] % 2 != 0) {
                dim_check.pass = false;
                dim_check.witnesses.push_back(Json{{"input", object_to_json(x)},
                                                   {"image_dims", as_rep.dims}});
            }
        }
    }
    report.checks.push_back(dim_check);

    // Hom-theoretic proxy for the closed-subvariety statement: every image
    // admits a nonzero map to its brick pair
    CheckResult proxy{"hom_to_own_bricks_nonzero",
                      std::to_string(s.count) + " samples per algebra", s.seed, true, {}};
    for (size_t i = 0; i < presets.size(); ++i) {
        AModule uv = direct_sum(amodule_from_quiver_rep(bricks[2 * i]),
                                amodule_from_quiver_rep(bricks[2 * i + 1]));
        for (const auto& x : images[i])
            if (hom_dim(x, uv) == 0) {
                proxy.pass = false;
                proxy.witnesses.push_back(amodule_to_json(x));
            }
    }
    report.checks.push_back(proxy);

    CheckResult cross{"cross_hom_vanishing",
                      "all pairs across " + std::to_string(presets.size()) + " algebras, both directions",
                      s.seed, true, {}};
    for (size_t i = 0; i < presets.size(); ++i)
        for (size_t j = 0; j < presets.size(); ++j) {
            if (i == j) continue;
            for (const auto& x : images[i])
                for (const auto& y : images[j])
                    if (hom_dim(x, y) != 0) {
                        cross.pass = false;
                        cross.witnesses.push_back(Json{{"from", amodule_to_json(x)},
                                                       {"to", amodule_to_json(y)}});
                    }
        }
    report.checks.push_back(cross);
    return report;
}

namespace {

SubmoduleLattice lattice_from_actions(const FieldSpec& f, const std::vector<Matrix>& acts,
                                      size_t dim, size_t budget) {
    if (f.kind() != FieldKind::prime_field)
        throw functor_error("submodule_lattice: enumeration needs a finite field");
    double size = 1;
    for (size_t i = 0; i < dim; ++i) {
        size *= static_cast<double>(f.modulus());
        if (size > static_cast<double>(budget))
            throw functor_error("submodule_lattice: enumeration budget exceeded");
    }
    auto spin = [&](Subspace s) {
        for (bool grew = true; grew;) {
            grew = false;
            for (const auto& a : acts) {
                if (s.dim() == 0) break;
                Matrix img = a.mul(s.basis);
                if (subspace_contains(s, img)) continue;
                s = subspace_from_columns(Matrix::hstack({s.basis, img}));
                grew = true;
            }
        }
        return s;
    };
    std::vector<Matrix> members{Matrix::zero(f, dim, 0)};
    auto add_member = [&](const Subspace& s) {
        for (const auto& m : members)
            if (m == s.basis) return false;
        members.push_back(s.basis);
        return true;
    };
    unsigned long p = f.modulus();
    std::vector<unsigned long> digits(dim, 0);
    for (;;) {
        size_t i = 0;
        while (i < dim && digits[i] + 1 == p) digits[i++] = 0;
        if (i == dim) break;
        ++digits[i];
        Matrix v(f, dim, 1);
        for (size_t k = 0; k < dim; ++k) v.at(k, 0) = f.from_int(static_cast<long>(digits[k]));
        add_member(spin(subspace_from_columns(v)));
    }
    // close under sums
    for (bool grew = true; grew;) {
        grew = false;
        size_t cur = members.size();
        for (size_t i = 1; i < cur && !grew; ++i)
            for (size_t j = i + 1; j < cur && !grew; ++j) {
                Subspace sum = subspace_from_columns(Matrix::hstack({members[i], members[j]}));
                if (add_member(sum)) grew = true;
            }
    }
    SubmoduleLattice lattice;
    lattice.members = std::move(members);
    lattice.leq.assign(lattice.members.size(),
                       std::vector<bool>(lattice.members.size(), false));
    for (size_t i = 0; i < lattice.members.size(); ++i)
        for (size_t j = 0; j < lattice.members.size(); ++j) {
            Subspace sj = subspace_from_columns(lattice.members[j]);
            lattice.leq[i][j] = lattice.members[i].cols() == 0 ||
                                subspace_contains(sj, lattice.members[i]);
        }
    return lattice;
}

}  // namespace

SubmoduleLattice submodule_lattice(const AModule& m, size_t budget) {
    return lattice_from_actions(m.field(), m.action, m.dim, budget);
}

SubmoduleLattice submodule_lattice(const FreeAlgModule& m, size_t budget) {
    return lattice_from_actions(m.field, m.action, m.dim, budget);
}

size_t lattice_budget_from_env(size_t fallback) {
    const char* env = std::getenv("QUIVERKIT_BUDGET");
    if (!env) return fallback;
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || v == 0) return fallback;
    return static_cast<size_t>(v);
}

}  // namespace qk
