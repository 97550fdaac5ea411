#include "quiverkit/quiver.hpp"

#include <algorithm>

namespace qk {

Quiver Quiver::kronecker(size_t n) {
    Quiver q;
    q.vertex_count = 2;
    q.arrows.assign(n, Arrow{1, 0});
    return q;
}

Quiver Quiver::loop(size_t n) {
    Quiver q;
    q.vertex_count = 1;
    q.arrows.assign(n, Arrow{0, 0});
    return q;
}

void Quiver::validate() const {
    for (const auto& a : arrows)
        if (a.source >= vertex_count || a.target >= vertex_count)
            throw dim_error("arrow endpoint out of range");
}

std::vector<size_t> Quiver::arrows_out(size_t v) const {
    std::vector<size_t> r;
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].source == v) r.push_back(i);
    return r;
}

std::vector<size_t> Quiver::arrows_in(size_t v) const {
    std::vector<size_t> r;
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].target == v) r.push_back(i);
    return r;
}

long euler_form(const Quiver& q, const DimVector& a, const DimVector& b) {
    if (a.size() != q.vertex_count || b.size() != q.vertex_count)
        throw dim_error("dimension vector length mismatch");
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += static_cast<long>(a[i]) * static_cast<long>(b[i]);
    for (const auto& ar : q.arrows)
        s -= static_cast<long>(a[ar.source]) * static_cast<long>(b[ar.target]);
    return s;
}

long tits_form(const Quiver& q, const DimVector& a) { return euler_form(q, a, a); }

size_t QuiverRep::total_dim() const {
    size_t t = 0;
    for (size_t d : dims) t += d;
    return t;
}

void QuiverRep::validate() const {
    quiver.validate();
    if (dims.size() != quiver.vertex_count) throw dim_error("dims length mismatch");
    if (arrow_matrices.size() != quiver.arrows.size()) throw dim_error("arrow matrix count mismatch");
    for (size_t i = 0; i < arrow_matrices.size(); ++i) {
        const auto& ar = quiver.arrows[i];
        const auto& m = arrow_matrices[i];
        require_same_field(m.field(), field, "QuiverRep");
        if (m.rows() != dims[ar.target] || m.cols() != dims[ar.source])
            throw dim_error("arrow matrix shape mismatch");
    }
}

QuiverRep QuiverRep::zero(const Quiver& q, const FieldSpec& f) {
    QuiverRep m{q, f, DimVector(q.vertex_count, 0), {}};
    for (const auto& ar : q.arrows) {
        (void)ar;
        m.arrow_matrices.push_back(Matrix::zero(f, 0, 0));
    }
    return m;
}

bool RepMorphism::is_valid() const {
    if (source.quiver != target.quiver) return false;
    if (vertex_maps.size() != source.quiver.vertex_count) return false;
    for (size_t v = 0; v < vertex_maps.size(); ++v)
        if (vertex_maps[v].rows() != target.dims[v] || vertex_maps[v].cols() != source.dims[v])
            return false;
    for (size_t i = 0; i < source.quiver.arrows.size(); ++i) {
        const auto& ar = source.quiver.arrows[i];
        Matrix lhs = vertex_maps[ar.target].mul(source.arrow_matrices[i]);
        Matrix rhs = target.arrow_matrices[i].mul(vertex_maps[ar.source]);
        if (lhs != rhs) return false;
    }
    return true;
}

void RepMorphism::require_valid(const char* where) const {
    if (!is_valid()) throw dim_error(std::string("invalid morphism in ") + where);
}

RepMorphism RepMorphism::compose_after(const RepMorphism& inner) const {
    std::vector<Matrix> maps;
    for (size_t v = 0; v < vertex_maps.size(); ++v)
        maps.push_back(vertex_maps[v].mul(inner.vertex_maps[v]));
    return RepMorphism{inner.source, target, std::move(maps)};
}

bool RepMorphism::is_zero() const {
    for (const auto& m : vertex_maps)
        if (!m.is_zero()) return false;
    return true;
}

RepMorphism RepMorphism::identity(const QuiverRep& m) {
    std::vector<Matrix> maps;
    for (size_t d : m.dims) maps.push_back(Matrix::identity(m.field, d));
    return RepMorphism{m, m, std::move(maps)};
}

RepMorphism RepMorphism::zero(const QuiverRep& source, const QuiverRep& target) {
    std::vector<Matrix> maps;
    for (size_t v = 0; v < source.quiver.vertex_count; ++v)
        maps.push_back(Matrix::zero(source.field, target.dims[v], source.dims[v]));
    return RepMorphism{source, target, std::move(maps)};
}

QuiverRep direct_sum(const QuiverRep& a, const QuiverRep& b) {
    if (a.quiver != b.quiver) throw dim_error("direct_sum: quiver mismatch");
    require_same_field(a.field, b.field, "direct_sum");
    QuiverRep r{a.quiver, a.field, {}, {}};
    for (size_t v = 0; v < a.dims.size(); ++v) r.dims.push_back(a.dims[v] + b.dims[v]);
    for (size_t i = 0; i < a.arrow_matrices.size(); ++i)
        r.arrow_matrices.push_back(block_diagonal({a.arrow_matrices[i], b.arrow_matrices[i]}));
    return r;
}

RepMorphism direct_sum(const RepMorphism& f, const RepMorphism& g) {
    std::vector<Matrix> maps;
    for (size_t v = 0; v < f.vertex_maps.size(); ++v) {
        const FieldSpec& fd = f.source.field;
        std::vector<std::vector<Matrix>> grid{
            {f.vertex_maps[v], Matrix::zero(fd, f.target.dims[v], g.source.dims[v])},
            {Matrix::zero(fd, g.target.dims[v], f.source.dims[v]), g.vertex_maps[v]}};
        maps.push_back(block_matrix(grid));
    }
    return RepMorphism{direct_sum(f.source, g.source), direct_sum(f.target, g.target), std::move(maps)};
}

namespace {

// induced arrow maps for a vertexwise subspace closed under the action:
// solve incl_t * X = M(alpha) * incl_s (unique since incl is injective)
QuiverRep induced_on_subspaces(const QuiverRep& m, const std::vector<Subspace>& subs,
                               std::vector<Matrix>& inclusions) {
    QuiverRep r{m.quiver, m.field, {}, {}};
    for (size_t v = 0; v < m.dims.size(); ++v) {
        r.dims.push_back(subs[v].dim());
        inclusions.push_back(subs[v].basis);
    }
    for (size_t i = 0; i < m.quiver.arrows.size(); ++i) {
        const auto& ar = m.quiver.arrows[i];
        Matrix rhs = m.arrow_matrices[i].mul(subs[ar.source].basis);
        auto x = solve(subs[ar.target].basis, rhs);
        if (!x) throw dim_error("subspace not closed under the action");
        r.arrow_matrices.push_back(std::move(*x));
    }
    return r;
}

}  // namespace

SubquotientRep kernel_rep(const RepMorphism& f) {
    f.require_valid("kernel_rep");
    std::vector<Subspace> subs;
    for (size_t v = 0; v < f.vertex_maps.size(); ++v)
        subs.push_back(subspace_from_columns(kernel_basis(f.vertex_maps[v])));
    std::vector<Matrix> inclusions;
    QuiverRep k = induced_on_subspaces(f.source, subs, inclusions);
    return SubquotientRep{k, RepMorphism{k, f.source, std::move(inclusions)}};
}

SubquotientRep cokernel_rep(const RepMorphism& f) {
    f.require_valid("cokernel_rep");
    const QuiverRep& n = f.target;
    std::vector<QuotientMap> qmaps;
    QuiverRep c{n.quiver, n.field, {}, {}};
    for (size_t v = 0; v < n.dims.size(); ++v) {
        qmaps.push_back(quotient_map(subspace_from_columns(f.vertex_maps[v])));
        c.dims.push_back(qmaps.back().projection.rows());
    }
    for (size_t i = 0; i < n.quiver.arrows.size(); ++i) {
        const auto& ar = n.quiver.arrows[i];
        c.arrow_matrices.push_back(
            qmaps[ar.target].projection.mul(n.arrow_matrices[i]).mul(qmaps[ar.source].section));
    }
    std::vector<Matrix> projections;
    for (auto& q : qmaps) projections.push_back(std::move(q.projection));
    return SubquotientRep{c, RepMorphism{n, c, std::move(projections)}};
}

SubquotientRep image_rep(const RepMorphism& f) {
    f.require_valid("image_rep");
    std::vector<Subspace> subs;
    for (size_t v = 0; v < f.vertex_maps.size(); ++v)
        subs.push_back(subspace_from_columns(f.vertex_maps[v]));
    std::vector<Matrix> inclusions;
    QuiverRep im = induced_on_subspaces(f.target, subs, inclusions);
    return SubquotientRep{im, RepMorphism{im, f.target, std::move(inclusions)}};
}

SubquotientRep spin_subrep(const QuiverRep& m, const std::vector<Matrix>& seeds) {
    if (seeds.size() != m.quiver.vertex_count) throw dim_error("spin_subrep: seed count mismatch");
    std::vector<Subspace> subs;
    for (size_t v = 0; v < seeds.size(); ++v) {
        if (seeds[v].rows() != m.dims[v]) throw dim_error("spin_subrep: seed shape mismatch");
        subs.push_back(subspace_from_columns(seeds[v]));
    }
    for (bool grew = true; grew;) {
        grew = false;
        for (size_t i = 0; i < m.quiver.arrows.size(); ++i) {
            const auto& ar = m.quiver.arrows[i];
            if (subs[ar.source].dim() == 0) continue;
            Matrix mapped = m.arrow_matrices[i].mul(subs[ar.source].basis);
            if (subspace_contains(subs[ar.target], mapped)) continue;
            subs[ar.target] =
                subspace_from_columns(Matrix::hstack({subs[ar.target].basis, mapped}));
            grew = true;
        }
    }
    std::vector<Matrix> inclusions;
    QuiverRep sub = induced_on_subspaces(m, subs, inclusions);
    return SubquotientRep{sub, RepMorphism{sub, m, std::move(inclusions)}};
}

QuiverRep kron_P(const FieldSpec& f, size_t i) {
    QuiverRep m{Quiver::kronecker(2), f, {i + 1, i}, {}};
    Matrix la(f, i + 1, i), rho(f, i + 1, i);
    for (size_t j = 0; j < i; ++j) {
        la.at(j, j) = f.one();
        rho.at(j + 1, j) = f.one();
    }
    m.arrow_matrices = {std::move(la), std::move(rho)};
    return m;
}

QuiverRep kron_I(const FieldSpec& f, size_t i) {
    QuiverRep m{Quiver::kronecker(2), f, {i, i + 1}, {}};
    Matrix la(f, i, i + 1), rho(f, i, i + 1);
    for (size_t j = 0; j < i; ++j) {
        la.at(j, j) = f.one();
        rho.at(j, j + 1) = f.one();
    }
    m.arrow_matrices = {std::move(la), std::move(rho)};
    return m;
}

Matrix companion_matrix(const FieldSpec& f, const std::vector<Scalar>& monic_poly) {
    if (monic_poly.size() < 2 || !f.is_one(monic_poly.back()))
        throw dim_error("companion matrix needs a monic polynomial of degree >= 1");
    size_t q = monic_poly.size() - 1;
    Matrix b(f, q, q);
    for (size_t j = 0; j + 1 < q; ++j) b.at(j + 1, j) = f.one();
    for (size_t i = 0; i < q; ++i) b.at(i, q - 1) = f.neg(monic_poly[i]);
    return b;
}

QuiverRep kron_L(const FieldSpec& f, const std::vector<Scalar>& monic_poly) {
    size_t q = monic_poly.size() - 1;
    QuiverRep m{Quiver::kronecker(2), f, {q, q}, {}};
    m.arrow_matrices = {Matrix::identity(f, q), companion_matrix(f, monic_poly)};
    return m;
}

QuiverRep bgp_reflect(const QuiverRep& m, size_t vertex, ReflectDir dir) {
    m.validate();
    if (m.quiver != Quiver::kronecker(2))
        throw dim_error("bgp_reflect: only the Kronecker quiver K_2 is supported");
    const FieldSpec& f = m.field;
    const Matrix& la = m.arrow_matrices[0];
    const Matrix& rho = m.arrow_matrices[1];
    if (dir == ReflectDir::plus) {
        if (vertex != 0) throw dim_error("bgp_reflect: plus requires the sink");
        // kernel of (u, v) -> la u - rho v, then swap arrow slots
        Matrix k = kernel_basis(Matrix::hstack({la, rho.neg()}));
        size_t d1 = m.dims[1];
        Matrix pi_la = k.select_rows([&] {
            std::vector<size_t> idx(d1);
            for (size_t i = 0; i < d1; ++i) idx[i] = i;
            return idx;
        }());
        Matrix pi_rho = k.select_rows([&] {
            std::vector<size_t> idx(d1);
            for (size_t i = 0; i < d1; ++i) idx[i] = d1 + i;
            return idx;
        }());
        return QuiverRep{m.quiver, f, {d1, k.cols()}, {std::move(pi_rho), std::move(pi_la)}};
    }
    if (vertex != 1) throw dim_error("bgp_reflect: minus requires the source");
    // cokernel of v -> (la v, -rho v), then swap arrow slots
    Matrix g = Matrix::vstack({la, rho.neg()});
    QuotientMap qm = quotient_map(subspace_from_columns(g));
    size_t d0 = m.dims[0];
    Matrix j_la(f, 2 * d0, d0), j_rho(f, 2 * d0, d0);
    for (size_t i = 0; i < d0; ++i) {
        j_la.at(i, i) = f.one();
        j_rho.at(d0 + i, i) = f.one();
    }
    Matrix new_la = qm.projection.mul(j_rho);
    Matrix new_rho = qm.projection.mul(j_la);
    return QuiverRep{m.quiver, f, {qm.projection.rows(), d0}, {std::move(new_la), std::move(new_rho)}};
}

std::pair<QuiverRep, std::vector<size_t>> strip_injective_simples(const QuiverRep& m) {
    m.validate();
    const FieldSpec& f = m.field;
    std::vector<size_t> mult(m.quiver.vertex_count, 0);
    std::vector<Subspace> subs;
    for (size_t v = 0; v < m.quiver.vertex_count; ++v) {
        auto out = m.quiver.arrows_out(v);
        if (out.empty()) {
            subs.push_back(subspace_from_columns(Matrix::identity(f, m.dims[v])));
            continue;
        }
        std::vector<Matrix> stacked;
        for (size_t ai : out) stacked.push_back(m.arrow_matrices[ai]);
        Matrix joint = Matrix::vstack(stacked);
        Matrix jk = kernel_basis(joint);
        mult[v] = jk.cols();
        // complement of the joint kernel survives
        QuotientMap qm = quotient_map(subspace_from_columns(jk));
        subs.push_back(subspace_from_columns(qm.section));
    }
    std::vector<Matrix> inclusions;
    QuiverRep stripped = induced_on_subspaces(m, subs, inclusions);
    return {std::move(stripped), std::move(mult)};
}

QuiverRep kt_embed(const Matrix& t) {
    if (t.rows() != t.cols()) throw dim_error("kt_embed: matrix must be square");
    const FieldSpec& f = t.field();
    size_t n = t.rows();
    return QuiverRep{Quiver::kronecker(2), f, {n, n}, {t, Matrix::identity(f, n)}};
}

}  // namespace qk
