#pragma once

#include <memory>
#include <variant>

#include "quiverkit/homology.hpp"

namespace qk {

struct functor_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform object/morphism for functor plumbing and the CLI.
using Object = std::variant<QuiverRep, AModule, FreeAlgModule>;
using Morphism = std::variant<RepMorphism, ModMorphism, FreeModMorphism>;

size_t object_dim(const Object& x);
FieldSpec object_field(const Object& x);
Object morphism_source(const Morphism& f);
Object morphism_target(const Morphism& f);

struct CategoryDesc {
    enum class Kind { quiver_rep, amodule, free_module };
    Kind kind = Kind::quiver_rep;
    FieldSpec field;
    Quiver quiver;                // quiver_rep
    AlgebraPtr algebra;           // amodule
    size_t generators = 0;        // free_module

    static CategoryDesc reps(const Quiver& q, const FieldSpec& f);
    static CategoryDesc modules(const AlgebraPtr& a);
    static CategoryDesc free_modules(size_t gens, const FieldSpec& f);

    bool accepts(const Object& x) const;
    std::string describe() const;
    bool operator==(const CategoryDesc& o) const;
};

/// The vertex-split quiver: point p becomes receiver 2p and emitter 2p+1;
/// the extra arrows (2p+1 -> 2p) come first, then the induced ones.
Quiver split_quiver(const Quiver& q);

/// Data of the Jans construction for an algebra A and a two-sided ideal T
/// inside the radical with (rad A) T = T (rad A) = 0. The bipartite quiver K
/// has one arrow (2x+1 -> 2y) per basis element s(x,y,j) of e_x T e_y.
struct JansData {
    AlgebraPtr algebra;
    Ideal ideal;
    Quiver k;
    std::vector<size_t> arrow_x, arrow_y;  // idempotent indices per arrow
    std::vector<Matrix> arrow_s;           // the chosen s(x,y,j), coordinates in A
    std::vector<Submodule> projectives;    // A e_y per idempotent
    std::vector<AModule> simples;          // S_x per idempotent
};

JansData jans_build(const AlgebraPtr& a, const Ideal& t);
/// Cokernel of f_M; requires M in rep'K (no simple injective summand).
AModule jans_apply(const JansData& jd, const QuiverRep& m);
ModMorphism jans_apply(const JansData& jd, const RepMorphism& g);

enum class FunctorKind {
    identity,
    split,
    jans,
    gp,
    brenner,
    ext_embed,
    fn_kron,
    dict_g,
    dict_h,
    kt,
    compose,
    restrict_generators,
};

const char* functor_kind_name(FunctorKind k);

// conversions between the module flavours (used by the handles and harness)
QuiverRep to_quiver_rep(const Object& x);
AModule to_amodule(const Object& x);
FreeAlgModule to_free_module(const Object& x);

/// A realized functor: a kind tag plus construction data, applicable to
/// objects and morphisms of its source category.
struct FunctorHandle {
    FunctorKind kind = FunctorKind::identity;
    FieldSpec field;
    CategoryDesc source, target;

    Quiver split_source;                         // split
    std::shared_ptr<const JansData> jans;        // jans, gp
    size_t n = 0;                                // gp, brenner, fn_kron
    std::shared_ptr<const Bimodule> bimod;       // split/gp (affine), fn_kron (finite)
    std::shared_ptr<const AModule> ext_u, ext_v; // ext_embed
    std::vector<std::vector<Matrix>> ext_z;      // ext_embed derivations
    AlgebraPtr algebra;                          // ext_embed, restrict, g/h, identity
    std::shared_ptr<const FunctorHandle> outer, inner;  // compose: outer after inner

    Object apply(const Object& x) const;
    Morphism apply(const Morphism& f) const;
    Object apply(const QuiverRep& x) const { return apply(Object(x)); }
    Object apply(const AModule& x) const { return apply(Object(x)); }
    Object apply(const FreeAlgModule& x) const { return apply(Object(x)); }
    /// Applies and converts to the target category's natural flavour.
    QuiverRep apply_rep(const QuiverRep& x) const { return to_quiver_rep(apply(Object(x))); }
    AModule apply_mod(const Object& x) const { return to_amodule(apply(x)); }

    /// The stored bimodule certificate, if the construction carries one.
    std::optional<Bimodule> bimodule_certificate() const;
};

FunctorHandle identity_functor(const CategoryDesc& c);
/// rep Q -> rep Q~; for loop quivers this is the strict embedding
/// rep L_n -> rep K_(n+1), (V; x_1..x_n) -> (V, V; id, x_1..x_n).
FunctorHandle split_functor(const Quiver& q, const FieldSpec& f);
FunctorHandle jans_functor(const AlgebraPtr& a, const Ideal& t);
/// mod k<X_1..X_n> -> mod k[X,Y]/(X,Y)^(n+1) via the Jans construction on
/// T = (X,Y)^n; carries an affine bimodule of rank dim A - 1.
FunctorHandle gp_embed(const FieldSpec& f, size_t n);
FunctorHandle brenner_functor(const FieldSpec& f, size_t n);
/// rep K_n -> mod A from derivations z_1..z_n in Z(V, U), given Hom(U,V) = 0
/// and independence mod the bimodule radical of Ext(V, U).
FunctorHandle ext_embed_build(const AModule& u, const AModule& v,
                              const std::vector<std::vector<Matrix>>& z);
/// The self-embedding F_n of rep K_2, realized by its bimodule.
FunctorHandle fn_kron(const FieldSpec& f, size_t n);
FunctorHandle g_dictionary_functor(const FieldSpec& f);
FunctorHandle h_dictionary_functor(const FieldSpec& f);
FunctorHandle kt_functor(const FieldSpec& f);
/// mod A -> mod k<X_1..X_p> along the designated generators of A.
FunctorHandle restrict_functor(const AlgebraPtr& a);
FunctorHandle compose(const FunctorHandle& outer, const FunctorHandle& inner);

/// Brenner's construction on objects/morphisms directly.
FreeAlgModule brenner_apply(size_t n, const FreeAlgModule& m);
FreeModMorphism brenner_apply(size_t n, const FreeModMorphism& f);

AModule h_dictionary_apply(const AlgebraPtr& a2, const QuiverRep& w);

/// F(A) with the right action induced from right multiplications (finite
/// sources); returns the stored certificate for free-algebra sources, where
/// no source algebra applies.
Bimodule eilenberg_watts(const FunctorHandle& f, const AlgebraPtr& a = nullptr);

/// The dimension-n simple over k<X,Y> with x = diag(lambda, m_set) and y the
/// cyclic permutation.
FreeAlgModule klein_simple(const FieldSpec& f, size_t n, const Scalar& lambda,
                           const std::vector<Scalar>& m_set);

/// Pairwise Hom-orthogonal bricks of a common dimension vector on a wild
/// quiver containing a cycle (the tree case is not implemented).
std::vector<QuiverRep> wild_bricks(const Quiver& q, const FieldSpec& f, size_t count);

}  // namespace qk
