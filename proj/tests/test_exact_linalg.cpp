#include <doctest.h>

#include "quiverkit/matrix.hpp"
#include "quiverkit/rng.hpp"

using namespace qk;

namespace {
const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F7 = FieldSpec::prime(7);
}  // namespace

TEST_CASE("scalar arithmetic and canonical form") {
    Scalar a = Q.from_ratio(2, 4);
    CHECK(a == Q.from_ratio(1, 2));
    CHECK(Q.to_string(a) == "1/2");
    CHECK(Q.to_string(Q.from_ratio(3, -9)) == "-1/3");
    CHECK(Q.parse("3/7") == Q.from_ratio(3, 7));
    CHECK(Q.add(Q.from_ratio(1, 2), Q.from_ratio(1, 3)) == Q.from_ratio(5, 6));
    CHECK(F7.parse("-1") == F7.from_int(6));
    CHECK(F7.mul(F7.from_int(3), F7.from_int(5)) == F7.from_int(1));
    CHECK(F7.inv(F7.from_int(3)) == F7.from_int(5));
    CHECK_THROWS_AS(Q.inv(Q.zero()), field_error);
    CHECK_THROWS_AS(FieldSpec::prime(6), field_error);
}

TEST_CASE("field axioms on random scalars") {
    for (const FieldSpec& f : {Q, F7}) {
        Rng rng(42);
        for (int t = 0; t < 50; ++t) {
            Scalar a = rng.scalar(f), b = rng.scalar(f), c = rng.scalar(f);
            CHECK(f.add(a, f.add(b, c)) == f.add(f.add(a, b), c));
            CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            if (!f.is_zero(a)) CHECK(f.mul(a, f.inv(a)) == f.one());
        }
    }
}

TEST_CASE("rref basics") {
    auto [z, zp] = rref(Matrix::zero(Q, 2, 2));
    CHECK(z.is_zero());
    CHECK(zp.empty());

    Matrix i3 = Matrix::identity(Q, 3);
    auto [r, p] = rref(i3);
    CHECK(r == i3);
    CHECK(p.size() == 3);

    Matrix prop = Matrix::from_int(Q, {{1, 2}, {2, 4}});
    CHECK(rank(prop) == 1);
}

TEST_CASE("rref idempotent and rank transpose on random matrices") {
    for (const FieldSpec& f : {Q, F2, F7}) {
        Rng rng(7);
        for (int t = 0; t < 20; ++t) {
            Matrix m = rng.matrix(f, 1 + rng.below(5), 1 + rng.below(5));
            auto [r1, p1] = rref(m);
            auto [r2, p2] = rref(r1);
            CHECK(r1 == r2);
            CHECK(rank(m) == rank(m.transpose()));
        }
    }
}

TEST_CASE("kernel_basis") {
    CHECK(kernel_basis(Matrix::identity(Q, 4)).cols() == 0);
    CHECK(kernel_basis(Matrix::zero(Q, 3, 3)).cols() == 3);

    // [1 1] over F_2: kernel spanned by (1,1)
    Matrix m = Matrix::from_int(F2, {{1, 1}});
    Matrix k = kernel_basis(m);
    REQUIRE(k.cols() == 1);
    CHECK(k.at(0, 0) == F2.one());
    CHECK(k.at(1, 0) == F2.one());
    CHECK(m.mul(k).is_zero());
}

TEST_CASE("rank-nullity on random matrices") {
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        const FieldSpec& f = (t % 2) ? Q : F7;
        Matrix m = rng.matrix(f, 1 + rng.below(6), 1 + rng.below(6));
        Matrix k = kernel_basis(m);
        CHECK(m.cols() == rank(m) + k.cols());
        if (k.cols()) CHECK(m.mul(k).is_zero());
        CHECK(rank(k) == k.cols());
    }
}

TEST_CASE("solve") {
    Matrix b = Matrix::from_int(Q, {{3}, {5}});
    auto x = solve(Matrix::identity(Q, 2), b);
    REQUIRE(x);
    CHECK(*x == b);

    CHECK_FALSE(solve(Matrix::zero(Q, 2, 2), b));

    Matrix a = Matrix::from_int(Q, {{2}});
    auto y = solve(a, Matrix::from_int(Q, {{1}}));
    REQUIRE(y);
    CHECK(y->at(0, 0) == Q.from_ratio(1, 2));

    CHECK_THROWS_AS(solve(Matrix::identity(Q, 2), Matrix::identity(Q, 3)), dim_error);
    CHECK_THROWS_AS(Matrix::identity(Q, 2).add(Matrix::identity(F7, 2)), field_error);
}

TEST_CASE("tensor product") {
    CHECK(tensor_product(Matrix::identity(Q, 2), Matrix::identity(Q, 3)) ==
          Matrix::identity(Q, 6));
    Matrix a = Matrix::from_int(Q, {{1, 2}, {3, 4}});
    CHECK(tensor_product(a, Matrix::identity(Q, 1)) == a);

    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        Matrix x = rng.matrix(F7, 2, 2), y = rng.matrix(F7, 2, 2);
        CHECK(rank(tensor_product(x, y)) == rank(x) * rank(y));
        // (a (x) b)(v (x) w) = av (x) bw
        Matrix v = rng.matrix(F7, 2, 1), w = rng.matrix(F7, 2, 1);
        CHECK(tensor_product(x, y).mul(tensor_product(v, w)) ==
              tensor_product(x.mul(v), y.mul(w)));
    }
}

TEST_CASE("block matrix") {
    Matrix a = Matrix::from_int(Q, {{1, 2}, {3, 4}});
    CHECK(block_matrix({{a}}) == a);

    Matrix b = Matrix::from_int(Q, {{5}});
    Matrix d = block_diagonal({a, b});
    CHECK(rank(d) == rank(a) + rank(b));
    CHECK(d.at(2, 2) == Q.from_int(5));
    CHECK(d.at(0, 2) == Q.zero());

    CHECK_THROWS_AS(block_matrix({{a, b}}), dim_error);
}

TEST_CASE("quotient map splits the subspace") {
    Rng rng(5);
    for (int t = 0; t < 15; ++t) {
        Matrix span = rng.matrix(F7, 5, rng.below(4));
        Subspace s = subspace_from_columns(span);
        QuotientMap qm = quotient_map(s);
        CHECK(qm.projection.rows() == 5 - s.dim());
        CHECK(qm.projection.mul(qm.section).is_identity());
        if (s.dim()) CHECK(qm.projection.mul(s.basis).is_zero());
    }
}

TEST_CASE("char_poly and min_poly") {
    Matrix m = Matrix::from_int(Q, {{2, 1}, {0, 2}});
    auto cp = char_poly(m);  // (X-2)^2 = X^2 - 4X + 4
    REQUIRE(cp.size() == 3);
    CHECK(cp[0] == Q.from_int(4));
    CHECK(cp[1] == Q.from_int(-4));
    CHECK(cp[2] == Q.one());
    auto mp = min_poly(m);
    CHECK(mp.size() == 3);

    Matrix d = Matrix::from_int(Q, {{1, 0}, {0, 1}});
    CHECK(min_poly(d).size() == 2);  // X - 1

    // char poly of a random matrix kills the matrix (Cayley-Hamilton)
    Rng rng(9);
    for (int t = 0; t < 8; ++t) {
        const FieldSpec& f = (t % 2) ? Q : F7;
        Matrix r = rng.matrix(f, 4, 4, 2);
        auto p = char_poly(r);
        Matrix acc = Matrix::zero(f, 4, 4);
        for (size_t i = p.size(); i-- > 0;) acc = acc.mul(r).add(Matrix::identity(f, 4).scale(p[i]));
        CHECK(acc.is_zero());
    }
}

TEST_CASE("field_roots") {
    // (X-2)(X+1/3) over Q
    std::vector<Scalar> poly{Q.from_ratio(-2, 3), Q.from_ratio(-5, 3), Q.one()};
    auto roots = field_roots(Q, poly);
    REQUIRE(roots.size() == 2);
    CHECK((roots[0] == Q.from_int(2) || roots[1] == Q.from_int(2)));
    CHECK((roots[0] == Q.from_ratio(-1, 3) || roots[1] == Q.from_ratio(-1, 3)));

    // X^2 + 1 over F_2 has the double root 1
    std::vector<Scalar> p2{F2.one(), F2.zero(), F2.one()};
    auto r2 = field_roots(F2, p2);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == F2.one());
}
