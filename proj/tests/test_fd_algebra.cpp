#include <doctest.h>

#include "quiverkit/algebra.hpp"
#include "quiverkit/homology.hpp"
#include "quiverkit/rng.hpp"

using namespace qk;

namespace {
const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F7 = FieldSpec::prime(7);
}  // namespace

TEST_CASE("preset algebras validate") {
    for (auto a : {make_ground_field(Q), make_poly_quotient(Q, 3), make_truncated_poly(Q, 2),
                   make_kronecker_algebra(Q, 2)})
        CHECK_NOTHROW(a->validate());
}

TEST_CASE("truncated polynomial algebra") {
    auto a2 = make_truncated_poly(Q, 2);
    CHECK(a2->dim() == 6);
    auto a1 = make_truncated_poly(Q, 1);
    CHECK(a1->dim() == 3);
    CHECK(a1->labels() == std::vector<std::string>{"1", "X", "Y"});
    // X * X = 0 in k[X,Y]/(X,Y)^2
    CHECK(a1->multiply(a1->basis_vector(1), a1->basis_vector(1)).is_zero());
    // X * X^n vanishes by truncation
    auto a3 = make_truncated_poly(Q, 3);
    size_t xcubed = 6;  // 1 X Y X2 XY Y2 X3 ...
    CHECK(a3->labels()[xcubed] == "X3");
    CHECK(a3->multiply(a3->basis_vector(1), a3->basis_vector(xcubed)).is_zero());
}

TEST_CASE("kronecker path algebra") {
    auto a = make_kronecker_algebra(Q, 2);
    CHECK(a->dim() == 4);
    // la e2 = la, e1 la = la, la la = 0
    Matrix la = a->basis_vector(2), e1 = a->basis_vector(0), e2 = a->basis_vector(1);
    CHECK(a->multiply(la, e2) == la);
    CHECK(a->multiply(e1, la) == la);
    CHECK(a->multiply(la, la).is_zero());
    // radical is spanned by the arrows
    Ideal rad = radical(a);
    CHECK(rad.dim() == 2);
    Subspace rs = subspace_from_columns(rad.basis);
    CHECK(subspace_contains(rs, la));
    CHECK_FALSE(subspace_contains(rs, e1));
}

TEST_CASE("radical of presets") {
    Ideal r3 = radical(make_truncated_poly(Q, 2));  // k[X,Y]/(X,Y)^3
    CHECK(r3.dim() == 5);
    CHECK_NOTHROW(r3.validate());

    // trace-form guard: p <= dim A is refused
    CHECK_THROWS_AS(radical(make_truncated_poly(FieldSpec::prime(5), 2)), algebra_error);
    CHECK(radical(make_truncated_poly(F7, 1)).dim() == 2);
}

TEST_CASE("module dictionary round trips") {
    Rng rng(5);
    QuiverRep p1 = kron_P(Q, 1);
    AModule m = amodule_from_quiver_rep(p1);
    CHECK(m.dim == 3);
    CHECK_NOTHROW(m.validate());
    CHECK(quiver_rep_from_amodule(m) == p1);

    AModule s = amodule_from_quiver_rep(kron_P(Q, 0));
    CHECK(s.dim == 1);
    CHECK(s.action[0].is_identity());  // e1 acts as the identity

    std::vector<Scalar> poly{Q.from_int(-1), Q.one()};
    QuiverRep l = kron_L(Q, poly);
    CHECK(quiver_rep_from_amodule(amodule_from_quiver_rep(l)) == l);
}

TEST_CASE("socle, top, projective") {
    auto a = make_truncated_poly(Q, 1);  // k[X,Y]/(X,Y)^2
    auto p = projective_module(a, 0);
    CHECK(p.module.dim == 3);
    auto soc = socle(p.module);
    CHECK(soc.module.dim == 2);
    auto t = top(p.module);
    CHECK(t.module.dim == 1);
    CHECK(radical_series(p.module) == std::vector<size_t>{3, 2, 0});

    auto s = simple_module(a, 0);
    CHECK(s.dim == 1);
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("distributivity") {
    auto r1 = is_distributive(make_kronecker_algebra(Q, 2));
    CHECK_FALSE(r1.distributive);
    REQUIRE(r1.witness);
    CHECK(r1.witness->layer_dim == 2);
    CHECK(r1.witness->x == 0);
    CHECK(r1.witness->y == 1);

    CHECK(is_distributive(make_poly_quotient(Q, 3)).distributive);

    auto r2 = is_distributive(make_truncated_poly(Q, 1));
    CHECK_FALSE(r2.distributive);
    REQUIRE(r2.witness);
    CHECK(r2.witness->layer_dim == 2);
}

TEST_CASE("regular bimodule tensor is the identity") {
    auto a = make_kronecker_algebra(F7, 2);
    Bimodule reg = regular_bimodule(a);
    CHECK_NOTHROW(reg.validate());
    CHECK(reg.certificate_valid());

    Rng rng(31);
    QuiverRep m = kron_L(F7, {F7.from_int(3), F7.one()});
    AModule x = amodule_from_quiver_rep(m);
    AModule y = tensor_module(reg, x);
    CHECK(y.dim == x.dim);
    CHECK(is_isomorphic(x, y, rng).isomorphic);
}

TEST_CASE("free rank multiplies under bimodule tensor") {
    auto a = make_poly_quotient(Q, 2);
    Bimodule reg = regular_bimodule(a);
    // A (+) A as a bimodule: free of rank 2
    Bimodule twice;
    twice.kind = Bimodule::Kind::finite;
    twice.left_algebra = a;
    twice.right_algebra = a;
    twice.dim = 2 * a->dim();
    for (size_t i = 0; i < a->dim(); ++i) {
        twice.left_action.push_back(block_diagonal({a->left_mult(i), a->left_mult(i)}));
        twice.right_action.push_back(block_diagonal({a->right_mult(i), a->right_mult(i)}));
    }
    Matrix basis(Q, twice.dim, 2);
    basis.at(0, 0) = Q.one();
    basis.at(a->dim(), 1) = Q.one();
    twice.free_right_basis = basis;
    twice.certificate = BasisCertificate{BasisCertKind::free, 2};
    CHECK_NOTHROW(twice.validate());
    CHECK(twice.certificate_valid());

    Bimodule prod = tensor_bimodules(twice, twice);
    CHECK(prod.certificate->rank == 4);
    CHECK(prod.certificate_valid());
    CHECK(prod.dim == 4 * a->dim());

    Bimodule with_reg = tensor_bimodules(reg, twice);
    CHECK(with_reg.certificate->rank == 2);
}

TEST_CASE("tensor_module is exact for right-free bimodules") {
    auto a = make_kronecker_algebra(F7, 2);
    Bimodule reg = regular_bimodule(a);
    Rng rng(17);
    // random SES via a spun submodule of a random module
    QuiverRep big{Quiver::kronecker(2), F7, {3, 2}, {rng.matrix(F7, 3, 2), rng.matrix(F7, 3, 2)}};
    AModule mid = amodule_from_quiver_rep(big);
    Matrix seed = rng.matrix(F7, mid.dim, 1);
    Subspace sub_space = [&] {
        Subspace s = subspace_from_columns(seed);
        for (bool grew = true; grew;) {
            grew = false;
            for (const auto& act : mid.action) {
                Matrix img = act.mul(s.basis);
                if (subspace_contains(s, img)) continue;
                s = subspace_from_columns(Matrix::hstack({s.basis, img}));
                grew = true;
            }
        }
        return s;
    }();
    Submodule sub = submodule_from_subspace(mid, sub_space);
    QuotientModule quot = quotient_by_subspace(mid, sub_space);

    AModule ts = tensor_module(reg, sub.module);
    AModule tm = tensor_module(reg, mid);
    AModule tq = tensor_module(reg, quot.module);
    ModMorphism ti = tensor_morphism(reg, ModMorphism{sub.module, mid, sub.inclusion});
    ModMorphism tp = tensor_morphism(reg, ModMorphism{mid, quot.module, quot.projection});
    CHECK(ts.dim + tq.dim == tm.dim);
    CHECK(rank(ti.map) == ts.dim);
    CHECK(rank(tp.map) == tq.dim);
    CHECK(tp.map.mul(ti.map).is_zero());
}
