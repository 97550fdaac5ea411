#include "quiverkit/algebra.hpp"

#include <algorithm>

namespace qk {

FDAlgebra::FDAlgebra(FieldSpec field, std::vector<std::string> labels,
                     std::vector<std::vector<std::vector<Scalar>>> table, std::vector<Scalar> unit,
                     std::vector<size_t> idempotents, std::vector<size_t> generators)
    : field_(std::move(field)),
      labels_(std::move(labels)),
      table_(std::move(table)),
      unit_(std::move(unit)),
      idempotents_(std::move(idempotents)),
      generators_(std::move(generators)) {
    size_t d = labels_.size();
    if (table_.size() != d || unit_.size() != d)
        throw algebra_error("structure table / unit size mismatch");
    for (const auto& row : table_) {
        if (row.size() != d) throw algebra_error("structure table is ragged");
        for (const auto& cell : row)
            if (cell.size() != d) throw algebra_error("structure constants length mismatch");
    }
    left_mult_.reserve(d);
    for (size_t i = 0; i < d; ++i) {
        Matrix L(field_, d, d);
        for (size_t j = 0; j < d; ++j)
            for (size_t k = 0; k < d; ++k) L.at(k, j) = table_[i][j][k];
        left_mult_.push_back(std::move(L));
    }
}

Matrix FDAlgebra::right_mult(size_t j) const {
    size_t d = dim();
    Matrix R(field_, d, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t k = 0; k < d; ++k) R.at(k, i) = table_[i][j][k];
    return R;
}

Matrix FDAlgebra::left_mult_of(const Matrix& coords) const {
    Matrix L = Matrix::zero(field_, dim(), dim());
    for (size_t i = 0; i < dim(); ++i)
        if (!field_.is_zero(coords.at(i, 0))) L = L.add(left_mult_[i].scale(coords.at(i, 0)));
    return L;
}

Matrix FDAlgebra::multiply(const Matrix& a, const Matrix& b) const { return left_mult_of(a).mul(b); }

Matrix FDAlgebra::unit_coords() const {
    Matrix u(field_, dim(), 1);
    for (size_t i = 0; i < dim(); ++i) u.at(i, 0) = unit_[i];
    return u;
}

Matrix FDAlgebra::basis_vector(size_t i) const {
    Matrix v(field_, dim(), 1);
    v.at(i, 0) = field_.one();
    return v;
}

void FDAlgebra::validate() const {
    size_t d = dim();
    // associativity: L_i L_j = L_(b_i b_j) for all basis pairs
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            Matrix lhs = left_mult_[i].mul(left_mult_[j]);
            Matrix rhs = Matrix::zero(field_, d, d);
            for (size_t k = 0; k < d; ++k)
                if (!field_.is_zero(table_[i][j][k])) rhs = rhs.add(left_mult_[k].scale(table_[i][j][k]));
            if (lhs != rhs) throw algebra_error("multiplication table is not associative");
        }
    if (!left_mult_of(unit_coords()).is_identity()) throw algebra_error("unit does not act as identity");
    Matrix usum(field_, d, 1);
    for (size_t x : idempotents_) {
        if (x >= d) throw algebra_error("idempotent index out of range");
        Matrix e = basis_vector(x);
        if (multiply(e, e) != e) throw algebra_error("designated idempotent is not idempotent");
        usum = usum.add(e);
    }
    for (size_t x : idempotents_)
        for (size_t y : idempotents_) {
            if (x == y) continue;
            if (!multiply(basis_vector(x), basis_vector(y)).is_zero())
                throw algebra_error("designated idempotents are not orthogonal");
        }
    if (!idempotents_.empty() && usum != unit_coords())
        throw algebra_error("designated idempotents do not sum to the unit");
    if (!generators_.empty()) {
        // the designated generators must generate A as a unital algebra
        for (size_t g : generators_)
            if (g >= d) throw algebra_error("generator index out of range");
        Subspace span = subspace_from_columns(unit_coords());
        for (bool grew = true; grew;) {
            grew = false;
            for (size_t g : generators_) {
                Matrix prod = left_mult_[g].mul(span.basis);
                if (subspace_contains(span, prod)) continue;
                span = subspace_from_columns(Matrix::hstack({span.basis, prod}));
                grew = true;
            }
        }
        if (span.dim() != d)
            throw algebra_error("designated generators do not generate the algebra");
    }
}

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b, const char* where) {
    if (!a || !b || !(*a == *b)) throw algebra_error(std::string("algebra mismatch in ") + where);
}

namespace {

std::vector<std::vector<std::vector<Scalar>>> empty_table(const FieldSpec& f, size_t d) {
    return std::vector<std::vector<std::vector<Scalar>>>(
        d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, f.zero())));
}

}  // namespace

AlgebraPtr make_ground_field(const FieldSpec& f) {
    auto t = empty_table(f, 1);
    t[0][0][0] = f.one();
    return std::make_shared<FDAlgebra>(f, std::vector<std::string>{"1"}, std::move(t),
                                       std::vector<Scalar>{f.one()}, std::vector<size_t>{0},
                                       std::vector<size_t>{});
}

AlgebraPtr make_poly_quotient(const FieldSpec& f, size_t n) {
    if (n < 1) throw algebra_error("k[X]/(X^n) needs n >= 1");
    auto t = empty_table(f, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i + j < n) t[i][j][i + j] = f.one();
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; ++i)
        labels.push_back(i == 0 ? "1" : (i == 1 ? "X" : "X" + std::to_string(i)));
    std::vector<Scalar> unit(n, f.zero());
    unit[0] = f.one();
    return std::make_shared<FDAlgebra>(f, std::move(labels), std::move(t), std::move(unit),
                                       std::vector<size_t>{0},
                                       n > 1 ? std::vector<size_t>{1} : std::vector<size_t>{});
}

AlgebraPtr make_truncated_poly(const FieldSpec& f, size_t n) {
    if (n < 1) throw algebra_error("k[X,Y]/(X,Y)^(n+1) needs n >= 1");
    std::vector<std::pair<size_t, size_t>> monos;  // (a, b) with a + b <= n, degree-major
    for (size_t d = 0; d <= n; ++d)
        for (size_t a = d + 1; a-- > 0;) monos.emplace_back(a, d - a);
    auto index_of = [&](size_t a, size_t b) {
        for (size_t i = 0; i < monos.size(); ++i)
            if (monos[i] == std::make_pair(a, b)) return i;
        throw algebra_error("monomial lookup failed");
    };
    size_t d = monos.size();
    auto t = empty_table(f, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            size_t a = monos[i].first + monos[j].first, b = monos[i].second + monos[j].second;
            if (a + b <= n) t[i][j][index_of(a, b)] = f.one();
        }
    auto part = [](const char* v, size_t e) {
        if (e == 0) return std::string();
        if (e == 1) return std::string(v);
        return std::string(v) + std::to_string(e);
    };
    std::vector<std::string> labels;
    for (auto [a, b] : monos)
        labels.push_back(a + b == 0 ? "1" : part("X", a) + part("Y", b));
    std::vector<Scalar> unit(d, f.zero());
    unit[0] = f.one();
    return std::make_shared<FDAlgebra>(f, std::move(labels), std::move(t), std::move(unit),
                                       std::vector<size_t>{0}, std::vector<size_t>{1, 2});
}

AlgebraPtr make_kronecker_algebra(const FieldSpec& f, size_t n) {
    if (n < 1) throw algebra_error("kK_n needs n >= 1");
    size_t d = n + 2;
    auto t = empty_table(f, d);
    t[0][0][0] = f.one();  // e1 e1
    t[1][1][1] = f.one();  // e2 e2
    for (size_t i = 0; i < n; ++i) {
        t[0][2 + i][2 + i] = f.one();  // e1 a_i = a_i
        t[2 + i][1][2 + i] = f.one();  // a_i e2 = a_i
    }
    std::vector<std::string> labels{"e1", "e2"};
    for (size_t i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i + 1));
    std::vector<Scalar> unit(d, f.zero());
    unit[0] = f.one();
    unit[1] = f.one();
    return std::make_shared<FDAlgebra>(f, std::move(labels), std::move(t), std::move(unit),
                                       std::vector<size_t>{0, 1}, std::vector<size_t>{});
}

Matrix AModule::action_of(const Matrix& coords) const {
    const FieldSpec& f = field();
    Matrix m = Matrix::zero(f, dim, dim);
    for (size_t i = 0; i < algebra->dim(); ++i)
        if (!f.is_zero(coords.at(i, 0))) m = m.add(action[i].scale(coords.at(i, 0)));
    return m;
}

void AModule::validate() const {
    const FieldSpec& f = field();
    size_t d = algebra->dim();
    if (action.size() != d) throw algebra_error("AModule action count mismatch");
    for (const auto& m : action) {
        require_same_field(m.field(), f, "AModule");
        if (m.rows() != dim || m.cols() != dim) throw algebra_error("AModule action shape mismatch");
    }
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            Matrix lhs = action[i].mul(action[j]);
            Matrix rhs = Matrix::zero(f, dim, dim);
            for (size_t k = 0; k < d; ++k)
                if (!f.is_zero(algebra->table()[i][j][k]))
                    rhs = rhs.add(action[k].scale(algebra->table()[i][j][k]));
            if (lhs != rhs) throw algebra_error("action is not an algebra homomorphism");
        }
    if (!action_of(algebra->unit_coords()).is_identity())
        throw algebra_error("unit does not act as identity on module");
}

AModule AModule::zero(const AlgebraPtr& a) {
    AModule m{a, 0, {}};
    for (size_t i = 0; i < a->dim(); ++i) m.action.push_back(Matrix::zero(a->field(), 0, 0));
    return m;
}

AModule AModule::regular(const AlgebraPtr& a) {
    AModule m{a, a->dim(), {}};
    for (size_t i = 0; i < a->dim(); ++i) m.action.push_back(a->left_mult(i));
    return m;
}

void FreeAlgModule::validate() const {
    if (action.size() != n_generators) throw algebra_error("FreeAlgModule generator count mismatch");
    for (const auto& m : action) {
        require_same_field(m.field(), field, "FreeAlgModule");
        if (m.rows() != dim || m.cols() != dim) throw algebra_error("FreeAlgModule action shape");
    }
}

bool ModMorphism::is_valid() const {
    if (!(*source.algebra == *target.algebra)) return false;
    if (map.rows() != target.dim || map.cols() != source.dim) return false;
    for (size_t i = 0; i < source.algebra->dim(); ++i)
        if (map.mul(source.action[i]) != target.action[i].mul(map)) return false;
    return true;
}

void ModMorphism::require_valid(const char* where) const {
    if (!is_valid()) throw algebra_error(std::string("invalid module morphism in ") + where);
}

ModMorphism ModMorphism::identity(const AModule& m) {
    return ModMorphism{m, m, Matrix::identity(m.field(), m.dim)};
}

bool FreeModMorphism::is_valid() const {
    if (source.n_generators != target.n_generators) return false;
    if (map.rows() != target.dim || map.cols() != source.dim) return false;
    for (size_t i = 0; i < source.n_generators; ++i)
        if (map.mul(source.action[i]) != target.action[i].mul(map)) return false;
    return true;
}

void FreeModMorphism::require_valid(const char* where) const {
    if (!is_valid()) throw algebra_error(std::string("invalid free module morphism in ") + where);
}

FreeModMorphism FreeModMorphism::identity(const FreeAlgModule& m) {
    return FreeModMorphism{m, m, Matrix::identity(m.field, m.dim)};
}

AModule direct_sum(const AModule& a, const AModule& b) {
    require_same_algebra(a.algebra, b.algebra, "direct_sum");
    AModule r{a.algebra, a.dim + b.dim, {}};
    for (size_t i = 0; i < a.action.size(); ++i)
        r.action.push_back(block_diagonal({a.action[i], b.action[i]}));
    return r;
}

FreeAlgModule direct_sum(const FreeAlgModule& a, const FreeAlgModule& b) {
    if (a.n_generators != b.n_generators) throw algebra_error("direct_sum: generator count mismatch");
    FreeAlgModule r{a.field, a.n_generators, a.dim + b.dim, {}};
    for (size_t i = 0; i < a.action.size(); ++i)
        r.action.push_back(block_diagonal({a.action[i], b.action[i]}));
    return r;
}

AModule amodule_from_quiver_rep(const QuiverRep& rep) {
    rep.validate();
    size_t n = rep.quiver.arrows.size();
    if (rep.quiver != Quiver::kronecker(n))
        throw algebra_error("amodule_from_quiver_rep expects a Kronecker quiver");
    const FieldSpec& f = rep.field;
    AlgebraPtr a = make_kronecker_algebra(f, n);
    size_t d0 = rep.dims[0], d1 = rep.dims[1], d = d0 + d1;
    AModule m{a, d, {}};
    Matrix e1(f, d, d), e2(f, d, d);
    for (size_t i = 0; i < d0; ++i) e1.at(i, i) = f.one();
    for (size_t i = 0; i < d1; ++i) e2.at(d0 + i, d0 + i) = f.one();
    m.action.push_back(std::move(e1));
    m.action.push_back(std::move(e2));
    for (size_t k = 0; k < n; ++k) {
        Matrix ak(f, d, d);
        for (size_t i = 0; i < d0; ++i)
            for (size_t j = 0; j < d1; ++j) ak.at(i, d0 + j) = rep.arrow_matrices[k].at(i, j);
        m.action.push_back(std::move(ak));
    }
    return m;
}

QuiverRep quiver_rep_from_amodule(const AModule& m, Matrix* basis_out) {
    size_t n = m.algebra->dim() - 2;
    if (!(*m.algebra == *make_kronecker_algebra(m.field(), n)))
        throw algebra_error("quiver_rep_from_amodule expects a Kronecker algebra");
    const FieldSpec& f = m.field();
    // split the space along the idempotent images (they are projections summing to 1)
    Subspace v0 = subspace_from_columns(column_space_basis(m.action[0]));
    Subspace v1 = subspace_from_columns(column_space_basis(m.action[1]));
    size_t d0 = v0.dim(), d1 = v1.dim();
    Matrix basis = Matrix::hstack({v0.basis, v1.basis});
    auto inv = inverse(basis);
    if (!inv) throw algebra_error("idempotent images do not split the module");
    if (basis_out) *basis_out = basis;
    QuiverRep rep{Quiver::kronecker(n), f, {d0, d1}, {}};
    for (size_t k = 0; k < n; ++k) {
        Matrix conj = inv->mul(m.action[2 + k]).mul(basis);
        Matrix blk(f, d0, d1);
        for (size_t i = 0; i < d0; ++i)
            for (size_t j = 0; j < d1; ++j) blk.at(i, j) = conj.at(i, d0 + j);
        rep.arrow_matrices.push_back(std::move(blk));
    }
    rep.validate();
    return rep;
}

FreeAlgModule free_module_from_loop_rep(const QuiverRep& rep) {
    size_t n = rep.quiver.arrows.size();
    if (rep.quiver != Quiver::loop(n))
        throw algebra_error("free_module_from_loop_rep expects a loop quiver");
    return FreeAlgModule{rep.field, n, rep.dims[0], rep.arrow_matrices};
}

QuiverRep loop_rep_from_free_module(const FreeAlgModule& m) {
    return QuiverRep{Quiver::loop(m.n_generators), m.field, {m.dim}, m.action};
}

void Ideal::validate() const {
    if (basis.cols() == 0) return;
    for (size_t i = 0; i < algebra->dim(); ++i) {
        Subspace s = subspace_from_columns(basis);
        if (!subspace_contains(s, algebra->left_mult(i).mul(basis)) ||
            !subspace_contains(s, algebra->right_mult(i).mul(basis)))
            throw algebra_error("ideal basis not closed under multiplication");
    }
}

bool radical_available(const FDAlgebra& a) {
    unsigned long p = a.field().characteristic();
    return p == 0 || p > a.dim();
}

Ideal radical(const AlgebraPtr& a) {
    if (!radical_available(*a))
        throw algebra_error(
            "radical unavailable: trace-form method needs characteristic 0 or p > dim A");
    const FieldSpec& f = a->field();
    size_t d = a->dim();
    Matrix gram(f, d, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i; j < d; ++j) {
            gram.at(i, j) = a->left_mult(i).mul(a->left_mult(j)).trace();
            gram.at(j, i) = gram.at(i, j);
        }
    Matrix basis = column_space_basis(kernel_basis(gram));
    Ideal r{a, std::move(basis)};
    r.validate();
    return r;
}

std::optional<Ideal> structural_radical(const AlgebraPtr& a) {
    if (a->idempotents().empty()) return std::nullopt;
    const FieldSpec& f = a->field();
    std::vector<bool> is_idem(a->dim(), false);
    for (size_t x : a->idempotents()) is_idem[x] = true;
    std::vector<Matrix> cols;
    for (size_t i = 0; i < a->dim(); ++i)
        if (!is_idem[i]) cols.push_back(a->basis_vector(i));
    Ideal cand{a, cols.empty() ? Matrix::zero(f, a->dim(), 0)
                               : column_space_basis(Matrix::hstack(cols))};
    try {
        cand.validate();
    } catch (const algebra_error&) {
        return std::nullopt;
    }
    // nilpotency: power chain of the span must vanish
    Subspace cur = subspace_from_columns(cand.basis);
    for (size_t step = 0; step <= a->dim(); ++step) {
        if (cur.dim() == 0) return cand;
        std::vector<Matrix> prods;
        for (size_t i = 0; i < cur.dim(); ++i)
            for (size_t j = 0; j < cand.basis.cols(); ++j)
                prods.push_back(a->multiply(cur.basis.column(i), cand.basis.column(j)));
        cur = subspace_from_columns(Matrix::hstack(prods));
    }
    return std::nullopt;
}

Ideal radical_any(const AlgebraPtr& a) {
    if (radical_available(*a)) return radical(a);
    if (auto s = structural_radical(a)) return *s;
    throw algebra_error("radical unavailable: small characteristic and non-preset basis shape");
}

Submodule submodule_from_subspace(const AModule& m, const Subspace& s) {
    AModule sub{m.algebra, s.dim(), {}};
    for (const auto& act : m.action) {
        if (s.dim() == 0) {
            sub.action.push_back(Matrix::zero(m.field(), 0, 0));
            continue;
        }
        auto sol = solve(s.basis, act.mul(s.basis));
        if (!sol) throw algebra_error("subspace is not a submodule");
        sub.action.push_back(std::move(*sol));
    }
    return Submodule{std::move(sub), s.basis};
}

QuotientModule quotient_by_subspace(const AModule& m, const Subspace& s) {
    for (const auto& act : m.action)
        if (s.dim() > 0 && !subspace_contains(s, act.mul(s.basis)))
            throw algebra_error("subspace is not a submodule");
    QuotientMap qm = quotient_map(s);
    AModule q{m.algebra, qm.projection.rows(), {}};
    for (const auto& act : m.action) q.action.push_back(qm.projection.mul(act).mul(qm.section));
    return QuotientModule{std::move(q), std::move(qm.projection), std::move(qm.section)};
}

namespace {

Subspace radical_image(const AModule& x, const Ideal& rad) {
    if (rad.dim() == 0 || x.dim == 0)
        return subspace_from_columns(Matrix::zero(x.field(), x.dim, 0));
    std::vector<Matrix> images;
    for (size_t k = 0; k < rad.dim(); ++k) images.push_back(x.action_of(rad.basis.column(k)));
    return subspace_from_columns(Matrix::hstack(images));
}

}  // namespace

Submodule radical_submodule(const AModule& x) {
    return submodule_from_subspace(x, radical_image(x, radical_any(x.algebra)));
}

std::vector<size_t> radical_series(const AModule& x) {
    Ideal rad = radical_any(x.algebra);
    std::vector<size_t> dims{x.dim};
    AModule cur = x;
    while (cur.dim > 0) {
        Submodule next = submodule_from_subspace(cur, radical_image(cur, rad));
        if (next.module.dim == cur.dim) throw algebra_error("radical series does not terminate");
        dims.push_back(next.module.dim);
        cur = next.module;
        if (cur.dim == 0) break;
    }
    return dims;
}

Submodule socle(const AModule& x) {
    Ideal rad = radical_any(x.algebra);
    if (rad.dim() == 0 || x.dim == 0)
        return submodule_from_subspace(x, subspace_from_columns(Matrix::identity(x.field(), x.dim)));
    std::vector<Matrix> acts;
    for (size_t k = 0; k < rad.dim(); ++k) acts.push_back(x.action_of(rad.basis.column(k)));
    Matrix joint = Matrix::vstack(acts);
    return submodule_from_subspace(x, subspace_from_columns(kernel_basis(joint)));
}

QuotientModule top(const AModule& x) {
    return quotient_by_subspace(x, radical_image(x, radical_any(x.algebra)));
}

Submodule projective_module(const AlgebraPtr& a, size_t y) {
    if (y >= a->idempotents().size()) throw algebra_error("idempotent index out of range");
    Matrix re = a->right_mult(a->idempotents()[y]);
    return submodule_from_subspace(AModule::regular(a), subspace_from_columns(re));
}

AModule simple_module(const AlgebraPtr& a, size_t y) {
    Submodule p = projective_module(a, y);
    QuotientModule t = top(p.module);
    if (t.module.dim != 1) throw algebra_error("simple_module: algebra is not basic at this idempotent");
    return t.module;
}

namespace {

Subspace corner_subspace(const FDAlgebra& a, size_t ex, size_t ey, const Matrix& span) {
    // e_x * span * e_y
    Matrix m = a.left_mult(ex).mul(a.right_mult(ey)).mul(span);
    return subspace_from_columns(m);
}

Subspace product_span(const FDAlgebra& a, const Subspace& u, const Subspace& v) {
    const FieldSpec& f = a.field();
    if (u.dim() == 0 || v.dim() == 0) return subspace_from_columns(Matrix::zero(f, a.dim(), 0));
    std::vector<Matrix> prods;
    for (size_t i = 0; i < u.dim(); ++i)
        for (size_t j = 0; j < v.dim(); ++j)
            prods.push_back(a.multiply(u.basis.column(i), v.basis.column(j)));
    return subspace_from_columns(Matrix::hstack(prods));
}

}  // namespace

DistributivityReport is_distributive(const AlgebraPtr& a) {
    Ideal rad = radical_any(a);
    const FieldSpec& f = a->field();
    Matrix id_span = Matrix::identity(f, a->dim());
    for (size_t xi = 0; xi < a->idempotents().size(); ++xi)
        for (size_t yi = 0; yi < a->idempotents().size(); ++yi) {
            size_t ex = a->idempotents()[xi], ey = a->idempotents()[yi];
            Subspace v = corner_subspace(*a, ex, ey, id_span);
            Subspace rad_x = corner_subspace(*a, ex, ex, rad.basis);
            Subspace rad_y = corner_subspace(*a, ey, ey, rad.basis);
            Subspace cur = v;
            for (size_t layer = 0; cur.dim() > 0; ++layer) {
                if (layer > a->dim() + 1) throw algebra_error("radical filtration does not terminate");
                Subspace next =
                    subspace_sum(product_span(*a, rad_x, cur), product_span(*a, cur, rad_y));
                size_t layer_dim = cur.dim() - next.dim();
                if (layer_dim >= 2)
                    return DistributivityReport{false, DistributivityWitness{xi, yi, layer, layer_dim}};
                cur = next;
            }
        }
    return DistributivityReport{true, std::nullopt};
}

// ---- free polynomials ----

FreePoly FreePoly::constant(const FieldSpec& f, const Scalar& c) {
    FreePoly p;
    if (!f.is_zero(c)) p.terms[{}] = c;
    return p;
}

FreePoly FreePoly::generator(const FieldSpec& f, uint32_t i) {
    FreePoly p;
    p.terms[{i}] = f.one();
    return p;
}

FreePoly FreePoly::add(const FieldSpec& f, const FreePoly& o) const {
    FreePoly r = *this;
    for (const auto& [w, c] : o.terms) {
        auto it = r.terms.find(w);
        if (it == r.terms.end()) {
            r.terms[w] = c;
        } else {
            it->second = f.add(it->second, c);
            if (f.is_zero(it->second)) r.terms.erase(it);
        }
    }
    return r;
}

FreePoly FreePoly::scale(const FieldSpec& f, const Scalar& c) const {
    FreePoly r;
    if (f.is_zero(c)) return r;
    for (const auto& [w, x] : terms) r.terms[w] = f.mul(x, c);
    return r;
}

FreePoly FreePoly::mul(const FieldSpec& f, const FreePoly& o) const {
    FreePoly r;
    for (const auto& [w1, c1] : terms)
        for (const auto& [w2, c2] : o.terms) {
            std::vector<uint32_t> w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            Scalar c = f.mul(c1, c2);
            auto it = r.terms.find(w);
            if (it == r.terms.end()) {
                if (!f.is_zero(c)) r.terms[w] = c;
            } else {
                it->second = f.add(it->second, c);
                if (f.is_zero(it->second)) r.terms.erase(it);
            }
        }
    return r;
}

size_t FreePoly::degree() const {
    size_t d = 0;
    for (const auto& [w, c] : terms) d = std::max(d, w.size());
    return d;
}

bool FreePoly::is_zero() const { return terms.empty(); }

Matrix FreePoly::eval(const FieldSpec& f, const std::vector<Matrix>& gens, size_t dim) const {
    Matrix acc = Matrix::zero(f, dim, dim);
    for (const auto& [w, c] : terms) {
        Matrix prod = Matrix::identity(f, dim);
        for (uint32_t g : w) prod = prod.mul(gens.at(g));
        acc = acc.add(prod.scale(c));
    }
    return acc;
}

size_t PolyMat::degree() const {
    size_t d = 0;
    for (const auto& e : entries) d = std::max(d, e.degree());
    return d;
}

// ---- bimodules ----

void Bimodule::validate() const {
    if (!left_algebra) throw algebra_error("bimodule without left algebra");
    const FieldSpec& f = left_algebra->field();
    size_t db = left_algebra->dim();
    if (kind == Kind::finite) {
        if (!right_algebra) throw algebra_error("finite bimodule without right algebra");
        size_t da = right_algebra->dim();
        if (left_action.size() != db || right_action.size() != da)
            throw algebra_error("bimodule action count mismatch");
        for (const auto& m : left_action)
            if (m.rows() != dim || m.cols() != dim) throw algebra_error("left action shape");
        for (const auto& m : right_action)
            if (m.rows() != dim || m.cols() != dim) throw algebra_error("right action shape");
        // left action is a homomorphism, right action an anti-homomorphism
        auto check_hom = [&](const FDAlgebra& alg, const std::vector<Matrix>& act, bool anti) {
            for (size_t i = 0; i < alg.dim(); ++i)
                for (size_t j = 0; j < alg.dim(); ++j) {
                    Matrix lhs = anti ? act[j].mul(act[i]) : act[i].mul(act[j]);
                    Matrix rhs = Matrix::zero(f, dim, dim);
                    for (size_t k = 0; k < alg.dim(); ++k)
                        if (!f.is_zero(alg.table()[i][j][k])) rhs = rhs.add(act[k].scale(alg.table()[i][j][k]));
                    if (lhs != rhs) throw algebra_error("bimodule action is not a homomorphism");
                }
        };
        check_hom(*left_algebra, left_action, false);
        check_hom(*right_algebra, right_action, true);
        for (const auto& l : left_action)
            for (const auto& r : right_action)
                if (l.mul(r) != r.mul(l)) throw algebra_error("left and right actions do not commute");
    } else {
        if (left_action_poly.size() != db) throw algebra_error("bimodule poly action count mismatch");
        for (const auto& p : left_action_poly)
            if (p.rows != right_rank || p.cols != right_rank)
                throw algebra_error("poly action shape mismatch");
        // homomorphism property over the free right side
        auto pm_mul = [&](const PolyMat& a, const PolyMat& b) {
            PolyMat r{right_rank, right_rank,
                      std::vector<FreePoly>(right_rank * right_rank, FreePoly::zero())};
            for (size_t i = 0; i < right_rank; ++i)
                for (size_t k = 0; k < right_rank; ++k)
                    for (size_t j = 0; j < right_rank; ++j)
                        r.at(i, j) = r.at(i, j).add(f, a.at(i, k).mul(f, b.at(k, j)));
            return r;
        };
        for (size_t i = 0; i < db; ++i)
            for (size_t j = 0; j < db; ++j) {
                PolyMat lhs = pm_mul(left_action_poly[i], left_action_poly[j]);
                for (size_t r = 0; r < right_rank; ++r)
                    for (size_t c = 0; c < right_rank; ++c) {
                        FreePoly want = FreePoly::zero();
                        for (size_t k = 0; k < db; ++k)
                            want = want.add(
                                f, left_action_poly[k].at(r, c).scale(f, left_algebra->table()[i][j][k]));
                        if (!lhs.at(r, c).add(f, want.scale(f, f.from_int(-1))).is_zero())
                            throw algebra_error("poly bimodule action is not a homomorphism");
                    }
            }
    }
}

bool Bimodule::certificate_valid() const {
    if (!certificate) return true;
    if (kind == Kind::free_right) {
        if (certificate->rank != right_rank) return false;
        if (certificate->kind == BasisCertKind::affine) {
            for (const auto& p : left_action_poly)
                if (p.degree() > 1) return false;
        }
        return true;
    }
    // finite: a free certificate needs a designated basis over which the
    // evaluation map A^r -> M is bijective
    if (certificate->kind == BasisCertKind::affine) return false;
    if (!free_right_basis || free_right_basis->cols() != certificate->rank) return false;
    size_t r = certificate->rank, da = right_algebra->dim();
    if (dim != r * da) return false;
    std::vector<Matrix> cols;
    for (size_t i = 0; i < r; ++i)
        for (size_t t = 0; t < da; ++t)
            cols.push_back(right_action[t].mul(free_right_basis->column(i)));
    return rank(Matrix::hstack(cols)) == dim;
}

Bimodule regular_bimodule(const AlgebraPtr& a) {
    Bimodule b;
    b.kind = Bimodule::Kind::finite;
    b.left_algebra = a;
    b.right_algebra = a;
    b.dim = a->dim();
    for (size_t i = 0; i < a->dim(); ++i) {
        b.left_action.push_back(a->left_mult(i));
        b.right_action.push_back(a->right_mult(i));
    }
    b.free_right_basis = a->unit_coords();
    b.certificate = BasisCertificate{BasisCertKind::free, 1};
    return b;
}

namespace {

struct TensorQuotient {
    QuotientMap qm;
    size_t dim;
};

TensorQuotient tensor_relations(const Bimodule& m, const AModule& x) {
    const FieldSpec& f = m.left_algebra->field();
    size_t D = m.dim, d = x.dim;
    Matrix id_d = Matrix::identity(f, d), id_D = Matrix::identity(f, D);
    std::vector<Matrix> rels;
    for (size_t t = 0; t < m.right_algebra->dim(); ++t) {
        Matrix r = tensor_product(m.right_action[t], id_d).sub(tensor_product(id_D, x.action[t]));
        rels.push_back(std::move(r));
    }
    QuotientMap qm = quotient_map(subspace_from_columns(Matrix::hstack(rels)));
    size_t dim = qm.projection.rows();
    return TensorQuotient{std::move(qm), dim};
}

}  // namespace

AModule tensor_module(const Bimodule& m, const AModule& x) {
    if (m.kind != Bimodule::Kind::finite)
        throw algebra_error("tensor_module: bimodule has a free right side, expected FreeAlgModule");
    require_same_algebra(m.right_algebra, x.algebra, "tensor_module");
    const FieldSpec& f = m.left_algebra->field();
    TensorQuotient tq = tensor_relations(m, x);
    AModule out{m.left_algebra, tq.dim, {}};
    Matrix id_d = Matrix::identity(f, x.dim);
    for (size_t b = 0; b < m.left_algebra->dim(); ++b)
        out.action.push_back(
            tq.qm.projection.mul(tensor_product(m.left_action[b], id_d)).mul(tq.qm.section));
    return out;
}

AModule tensor_module(const Bimodule& m, const FreeAlgModule& x) {
    if (m.kind != Bimodule::Kind::free_right)
        throw algebra_error("tensor_module: bimodule has a finite right side, expected AModule");
    if (m.right_generators != x.n_generators)
        throw algebra_error("tensor_module: free generator count mismatch");
    const FieldSpec& f = m.left_algebra->field();
    AModule out{m.left_algebra, m.right_rank * x.dim, {}};
    for (size_t b = 0; b < m.left_algebra->dim(); ++b) {
        std::vector<std::vector<Matrix>> grid(m.right_rank);
        for (size_t i = 0; i < m.right_rank; ++i)
            for (size_t j = 0; j < m.right_rank; ++j)
                grid[i].push_back(m.left_action_poly[b].at(i, j).eval(f, x.action, x.dim));
        out.action.push_back(block_matrix(grid));
    }
    return out;
}

ModMorphism tensor_morphism(const Bimodule& m, const ModMorphism& fm) {
    fm.require_valid("tensor_morphism");
    const FieldSpec& f = m.left_algebra->field();
    AModule src = tensor_module(m, fm.source);
    AModule tgt = tensor_module(m, fm.target);
    TensorQuotient tq_s = tensor_relations(m, fm.source);
    TensorQuotient tq_t = tensor_relations(m, fm.target);
    Matrix id_D = Matrix::identity(f, m.dim);
    Matrix map = tq_t.qm.projection.mul(tensor_product(id_D, fm.map)).mul(tq_s.qm.section);
    ModMorphism out{std::move(src), std::move(tgt), std::move(map)};
    out.require_valid("tensor_morphism output");
    return out;
}

ModMorphism tensor_morphism(const Bimodule& m, const FreeModMorphism& fm) {
    fm.require_valid("tensor_morphism");
    const FieldSpec& f = m.left_algebra->field();
    AModule src = tensor_module(m, fm.source);
    AModule tgt = tensor_module(m, fm.target);
    Matrix map = tensor_product(Matrix::identity(f, m.right_rank), fm.map);
    ModMorphism out{std::move(src), std::move(tgt), std::move(map)};
    out.require_valid("tensor_morphism output");
    return out;
}

Bimodule tensor_bimodules(const Bimodule& n, const Bimodule& m) {
    if (n.kind == Bimodule::Kind::free_right)
        throw algebra_error("tensor_bimodules: middle algebra must be finite-dimensional");
    require_same_algebra(n.right_algebra, m.left_algebra, "tensor_bimodules");
    const FieldSpec& f = n.left_algebra->field();
    const FDAlgebra& mid = *n.right_algebra;

    if (m.kind == Bimodule::Kind::finite) {
        size_t D = n.dim * m.dim;
        Matrix id_n = Matrix::identity(f, n.dim), id_m = Matrix::identity(f, m.dim);
        std::vector<Matrix> rels;
        for (size_t t = 0; t < mid.dim(); ++t)
            rels.push_back(
                tensor_product(n.right_action[t], id_m).sub(tensor_product(id_n, m.left_action[t])));
        QuotientMap qm = quotient_map(subspace_from_columns(Matrix::hstack(rels)));
        Bimodule out;
        out.kind = Bimodule::Kind::finite;
        out.left_algebra = n.left_algebra;
        out.right_algebra = m.right_algebra;
        out.dim = qm.projection.rows();
        for (size_t b = 0; b < n.left_algebra->dim(); ++b)
            out.left_action.push_back(
                qm.projection.mul(tensor_product(n.left_action[b], id_m)).mul(qm.section));
        for (size_t a = 0; a < m.right_algebra->dim(); ++a)
            out.right_action.push_back(
                qm.projection.mul(tensor_product(id_n, m.right_action[a])).mul(qm.section));
        if (n.free_right_basis && m.free_right_basis) {
            size_t rn = n.free_right_basis->cols(), rm = m.free_right_basis->cols();
            Matrix basis(f, out.dim, rn * rm);
            for (size_t i = 0; i < rn; ++i)
                for (size_t j = 0; j < rm; ++j) {
                    Matrix col = qm.projection.mul(
                        tensor_product(n.free_right_basis->column(i), m.free_right_basis->column(j)));
                    for (size_t r = 0; r < out.dim; ++r) basis.at(r, i * rm + j) = col.at(r, 0);
                }
            out.free_right_basis = std::move(basis);
            out.certificate = BasisCertificate{BasisCertKind::free, rn * rm};
            if (!out.certificate_valid()) throw algebra_error("tensor_bimodules: free basis lost");
        }
        return out;
    }

    // finite tensor free_right: needs a designated free right basis on n
    if (!n.free_right_basis)
        throw algebra_error("tensor_bimodules: left factor needs a free right basis certificate");
    size_t s = n.free_right_basis->cols(), r = m.right_rank, da = mid.dim();
    // freeness matrix: column (k, t) = n_k * b_t
    std::vector<Matrix> cols;
    for (size_t k = 0; k < s; ++k)
        for (size_t t = 0; t < da; ++t)
            cols.push_back(n.right_action[t].mul(n.free_right_basis->column(k)));
    Matrix phi = Matrix::hstack(cols);
    auto phi_inv = inverse(phi);
    if (!phi_inv) throw algebra_error("tensor_bimodules: designated right basis is not free");

    Bimodule out;
    out.kind = Bimodule::Kind::free_right;
    out.left_algebra = n.left_algebra;
    out.right_generators = m.right_generators;
    out.right_rank = s * r;
    for (size_t c = 0; c < n.left_algebra->dim(); ++c) {
        PolyMat pm{s * r, s * r, std::vector<FreePoly>(s * r * s * r, FreePoly::zero())};
        for (size_t i = 0; i < s; ++i) {
            // c * n_i in middle-algebra coordinates over the free basis
            Matrix coords = phi_inv->mul(n.left_action[c].mul(n.free_right_basis->column(i)));
            for (size_t k = 0; k < s; ++k)
                for (size_t t = 0; t < da; ++t) {
                    Scalar coef = coords.at(k * da + t, 0);
                    if (f.is_zero(coef)) continue;
                    for (size_t l = 0; l < r; ++l)
                        for (size_t j = 0; j < r; ++j)
                            pm.at(k * r + l, i * r + j) = pm.at(k * r + l, i * r + j)
                                .add(f, m.left_action_poly[t].at(l, j).scale(f, coef));
                }
        }
        out.left_action_poly.push_back(std::move(pm));
    }
    bool affine = true;
    for (const auto& p : out.left_action_poly) affine = affine && p.degree() <= 1;
    out.certificate = BasisCertificate{affine ? BasisCertKind::affine : BasisCertKind::free, s * r};
    return out;
}

}  // namespace qk
