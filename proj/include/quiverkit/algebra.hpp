#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quiverkit/quiver.hpp"

namespace qk {

struct algebra_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite-dimensional associative algebra given by a multiplication table
/// b_i * b_j = sum_k c[i][j][k] b_k, with a unit expression, designated
/// orthogonal primitive idempotents, and an optional generator subset.
class FDAlgebra {
public:
    FDAlgebra(FieldSpec field, std::vector<std::string> labels,
              std::vector<std::vector<std::vector<Scalar>>> table, std::vector<Scalar> unit,
              std::vector<size_t> idempotents, std::vector<size_t> generators = {});

    const FieldSpec& field() const { return field_; }
    size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Scalar>& unit() const { return unit_; }
    const std::vector<size_t>& idempotents() const { return idempotents_; }
    const std::vector<size_t>& generators() const { return generators_; }
    const std::vector<std::vector<std::vector<Scalar>>>& table() const { return table_; }

    /// Left multiplication operator of basis element i on coordinates.
    const Matrix& left_mult(size_t i) const { return left_mult_[i]; }
    Matrix right_mult(size_t i) const;
    /// Left multiplication operator of an arbitrary element.
    Matrix left_mult_of(const Matrix& coords) const;
    /// Product of two coordinate vectors.
    Matrix multiply(const Matrix& a, const Matrix& b) const;
    Matrix unit_coords() const;
    Matrix basis_vector(size_t i) const;

    /// Associativity on all basis triples, unit law, idempotent laws.
    void validate() const;

    bool operator==(const FDAlgebra& o) const {
        return field_ == o.field_ && labels_ == o.labels_ && table_ == o.table_ &&
               unit_ == o.unit_ && idempotents_ == o.idempotents_;
    }

private:
    FieldSpec field_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::vector<Scalar>>> table_;
    std::vector<Scalar> unit_;
    std::vector<size_t> idempotents_;
    std::vector<size_t> generators_;
    std::vector<Matrix> left_mult_;
};

using AlgebraPtr = std::shared_ptr<const FDAlgebra>;

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b, const char* where);

// ---- shipped presets ----

/// The ground field as a one-dimensional algebra.
AlgebraPtr make_ground_field(const FieldSpec& f);
/// k[X]/(X^n), basis 1, X, ..., X^(n-1).
AlgebraPtr make_poly_quotient(const FieldSpec& f, size_t n);
/// k[X,Y]/(X,Y)^(n+1), basis all monomials of total degree <= n.
AlgebraPtr make_truncated_poly(const FieldSpec& f, size_t n);
/// Path algebra kK_n: basis e_1 (vertex 0), e_2 (vertex 1), arrows a_1..a_n from 2 to 1.
AlgebraPtr make_kronecker_algebra(const FieldSpec& f, size_t n);

/// Left module over an FDAlgebra: one action matrix per algebra basis element.
struct AModule {
    AlgebraPtr algebra;
    size_t dim = 0;
    std::vector<Matrix> action;

    const FieldSpec& field() const { return algebra->field(); }
    Matrix action_of(const Matrix& coords) const;
    void validate() const;
    bool operator==(const AModule& o) const {
        return *algebra == *o.algebra && dim == o.dim && action == o.action;
    }

    static AModule zero(const AlgebraPtr& a);
    static AModule regular(const AlgebraPtr& a);
};

/// Module over the free algebra k<X_1..X_n>: generator actions only, no relations.
struct FreeAlgModule {
    FieldSpec field;
    size_t n_generators = 0;
    size_t dim = 0;
    std::vector<Matrix> action;

    void validate() const;
    bool operator==(const FreeAlgModule&) const = default;
};

struct ModMorphism {
    AModule source;
    AModule target;
    Matrix map;

    bool is_valid() const;
    void require_valid(const char* where) const;
    static ModMorphism identity(const AModule& m);
};

struct FreeModMorphism {
    FreeAlgModule source;
    FreeAlgModule target;
    Matrix map;

    bool is_valid() const;
    void require_valid(const char* where) const;
    static FreeModMorphism identity(const FreeAlgModule& m);
};

AModule direct_sum(const AModule& a, const AModule& b);
FreeAlgModule direct_sum(const FreeAlgModule& a, const FreeAlgModule& b);

/// Representation/module dictionary for the shipped quivers. The optional
/// out-parameter receives the change of basis: module coordinates =
/// basis * (vertex-0 block; vertex-1 block).
AModule amodule_from_quiver_rep(const QuiverRep& rep);
QuiverRep quiver_rep_from_amodule(const AModule& m, Matrix* basis_out = nullptr);
FreeAlgModule free_module_from_loop_rep(const QuiverRep& rep);
QuiverRep loop_rep_from_free_module(const FreeAlgModule& m);

/// Two-sided ideal of an algebra, stored by a canonical basis (columns are
/// coordinate vectors).
struct Ideal {
    AlgebraPtr algebra;
    Matrix basis;  // dim(A) x dim(ideal)

    size_t dim() const { return basis.cols(); }
    void validate() const;  // closure under left/right multiplication
};

/// Jacobson radical via the trace form of the regular representation.
/// Valid for characteristic 0 or p > dim A; throws algebra_error otherwise.
Ideal radical(const AlgebraPtr& a);
bool radical_available(const FDAlgebra& a);

/// Radical read off the basis: when the non-idempotent basis elements span a
/// nilpotent two-sided ideal (true for every shipped preset, any
/// characteristic) that span is the radical. nullopt if the shape does not hold.
std::optional<Ideal> structural_radical(const AlgebraPtr& a);
/// Trace form when valid, structural fallback otherwise.
Ideal radical_any(const AlgebraPtr& a);

struct Submodule {
    AModule module;
    Matrix inclusion;  // ambient_dim x dim
};
struct QuotientModule {
    AModule module;
    Matrix projection;  // dim x ambient_dim
    Matrix section;
};

Submodule submodule_from_subspace(const AModule& m, const Subspace& s);
QuotientModule quotient_by_subspace(const AModule& m, const Subspace& s);

/// rad A * X as a submodule.
Submodule radical_submodule(const AModule& x);
/// Dimensions of X > rad X > rad^2 X > ... > 0.
std::vector<size_t> radical_series(const AModule& x);
Submodule socle(const AModule& x);
QuotientModule top(const AModule& x);
/// The projective A e_y (y indexes into the designated idempotent list).
Submodule projective_module(const AlgebraPtr& a, size_t y);
/// Simple top of A e_y; one-dimensional for basic algebras.
AModule simple_module(const AlgebraPtr& a, size_t y);

struct DistributivityWitness {
    size_t x, y;      // idempotent pair
    size_t layer;     // radical layer index with dim >= 2
    size_t layer_dim;
};

struct DistributivityReport {
    bool distributive = false;
    std::optional<DistributivityWitness> witness;
};

/// Kupisch test: every e_x A e_x and e_x A e_y must have all radical-filtration
/// layers of dimension <= 1.
DistributivityReport is_distributive(const AlgebraPtr& a);

// ---- bimodules and tensor functors ----

/// Element of the free algebra k<X_1..X_n>: words in the generators with
/// scalar coefficients. Word {0,2} means X_1 X_3 (applied right-to-left).
struct FreePoly {
    std::map<std::vector<uint32_t>, Scalar> terms;

    static FreePoly zero() { return {}; }
    static FreePoly constant(const FieldSpec& f, const Scalar& c);
    static FreePoly generator(const FieldSpec& f, uint32_t i);
    FreePoly add(const FieldSpec& f, const FreePoly& o) const;
    FreePoly scale(const FieldSpec& f, const Scalar& c) const;
    FreePoly mul(const FieldSpec& f, const FreePoly& o) const;
    size_t degree() const;
    bool is_zero() const;
    /// Substitutes generator matrices (word {i,j} evaluates to gen[i]*gen[j]).
    Matrix eval(const FieldSpec& f, const std::vector<Matrix>& gens, size_t dim) const;
};

struct PolyMat {
    size_t rows = 0, cols = 0;
    std::vector<FreePoly> entries;

    FreePoly& at(size_t i, size_t j) { return entries[i * cols + j]; }
    const FreePoly& at(size_t i, size_t j) const { return entries[i * cols + j]; }
    size_t degree() const;
};

enum class BasisCertKind { free, affine };
struct BasisCertificate {
    BasisCertKind kind;
    size_t rank;
};

/// B-A-bimodule. Two shapes:
///  - finite: A is finite-dimensional; explicit commuting left/right actions
///    on a k-basis, optionally with a designated free right basis;
///  - free_right: A = k<X_1..X_r>; the bimodule is free as a right module
///    with the left action of each B basis element given by a polynomial
///    matrix over A. Affine means all entries have degree <= 1.
struct Bimodule {
    enum class Kind { finite, free_right };

    Kind kind = Kind::finite;
    AlgebraPtr left_algebra;

    // finite shape
    AlgebraPtr right_algebra;
    size_t dim = 0;
    std::vector<Matrix> left_action;
    std::vector<Matrix> right_action;
    std::optional<Matrix> free_right_basis;  // dim x rank, columns are basis members

    // free_right shape
    size_t right_generators = 0;
    size_t right_rank = 0;
    std::vector<PolyMat> left_action_poly;

    std::optional<BasisCertificate> certificate;

    void validate() const;
    /// Checks the certificate (free right basis bijectivity / degree bound).
    bool certificate_valid() const;
};

Bimodule regular_bimodule(const AlgebraPtr& a);

AModule tensor_module(const Bimodule& m, const AModule& x);
AModule tensor_module(const Bimodule& m, const FreeAlgModule& x);
ModMorphism tensor_morphism(const Bimodule& m, const ModMorphism& f);
ModMorphism tensor_morphism(const Bimodule& m, const FreeModMorphism& f);

/// N tensor_B M for n over (C,B), m over (B,A); middle algebra must be
/// finite-dimensional. Free ranks multiply; free tensor affine is affine.
Bimodule tensor_bimodules(const Bimodule& n, const Bimodule& m);

}  // namespace qk
