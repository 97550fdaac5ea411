#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quiverkit/algebra.hpp"
#include "quiverkit/rng.hpp"

namespace qk {

// ---- Hom spaces ----

std::vector<RepMorphism> hom_basis(const QuiverRep& m, const QuiverRep& n);
std::vector<ModMorphism> hom_basis(const AModule& m, const AModule& n);
std::vector<FreeModMorphism> hom_basis(const FreeAlgModule& m, const FreeAlgModule& n);

size_t hom_dim(const QuiverRep& m, const QuiverRep& n);
size_t hom_dim(const AModule& m, const AModule& n);
size_t hom_dim(const FreeAlgModule& m, const FreeAlgModule& n);

// ---- Ext ----

/// Ext over a quiver: cokernel of the standard map
/// (f_v) -> (f_t M(alpha) - N(alpha) f_s) over all arrows.
struct ExtQuiverResult {
    size_t dim = 0;
    /// Representatives: one matrix per arrow, a basis of a complement of the image.
    std::vector<std::vector<Matrix>> representatives;
};
ExtQuiverResult ext_quiver(const QuiverRep& m, const QuiverRep& n);

/// Ext over a finite-dimensional algebra as derivations modulo inner ones.
struct ExtSpace {
    AModule v, u;  // Ext(V, U): derivations z: A -> Hom_k(V, U)
    size_t dim = 0;
    /// Each representative lists z(b_i) per algebra basis element.
    std::vector<std::vector<Matrix>> representatives;
    Matrix z_space;      // columns: basis of the derivation space Z
    Matrix inner_space;  // columns: basis of the inner derivations B

    /// Coordinates of a derivation in the representative basis (mod inner).
    std::optional<Matrix> ext_coordinates(const std::vector<Matrix>& derivation) const;
};
ExtSpace ext_derivations(const AModule& v, const AModule& u);

/// Checks z(ab) = u(a) z(b) + z(a) v(b) on all basis pairs.
bool is_derivation(const AModule& v, const AModule& u, const std::vector<Matrix>& z);

/// The radical J = rad(End U) Ext + Ext rad(End V) of the End(U)-End(V)-bimodule
/// Ext(V, U), as a coordinate subspace of the Ext representative basis.
struct ExtRadical {
    ExtSpace ext;
    Matrix j_coords;  // ext.dim x dim J

    size_t j_dim() const { return j_coords.cols(); }
    /// Precondition for the extension embedding: residue classes independent in Ext/J.
    bool independent_mod_j(const std::vector<std::vector<Matrix>>& derivations) const;
};
ExtRadical ext_bimodule_radical(const AModule& v, const AModule& u);

// ---- endomorphisms, indecomposability, isomorphism ----

AlgebraPtr end_algebra(const QuiverRep& m);
AlgebraPtr end_algebra(const AModule& m);
AlgebraPtr end_algebra(const FreeAlgModule& m);

bool is_brick(const QuiverRep& m);
bool is_brick(const AModule& m);
bool is_brick(const FreeAlgModule& m);

template <class Obj, class Mor>
struct FittingPair {
    Obj kernel_part;
    Mor kernel_inclusion;
    Obj image_part;
    Mor image_inclusion;
};

/// ker(phi^N) + im(phi^N) with N = dim; absent when the split is trivial.
std::optional<FittingPair<QuiverRep, RepMorphism>> fitting_split(const QuiverRep& m,
                                                                 const RepMorphism& phi);
std::optional<FittingPair<AModule, ModMorphism>> fitting_split(const AModule& m,
                                                               const ModMorphism& phi);
std::optional<FittingPair<FreeAlgModule, FreeModMorphism>> fitting_split(const FreeAlgModule& m,
                                                                         const FreeModMorphism& phi);

struct HomologyConfig {
    size_t random_trials = 32;
    long rational_height = 5;
};

enum class Verdict { yes, no, unknown };

template <class Obj>
struct IndecompResult {
    Verdict verdict = Verdict::unknown;
    std::string certificate;
    std::optional<std::pair<Obj, Obj>> split;  // present when decomposable
};

IndecompResult<QuiverRep> is_indecomposable(const QuiverRep& m, Rng& rng,
                                            const HomologyConfig& cfg = {});
IndecompResult<AModule> is_indecomposable(const AModule& m, Rng& rng,
                                          const HomologyConfig& cfg = {});
IndecompResult<FreeAlgModule> is_indecomposable(const FreeAlgModule& m, Rng& rng,
                                                const HomologyConfig& cfg = {});

/// Krull-Schmidt factors; throws algebra_error when indecomposability cannot
/// be certified (field too small for the randomized phase).
std::vector<QuiverRep> decompose(const QuiverRep& m, Rng& rng, const HomologyConfig& cfg = {});
std::vector<AModule> decompose(const AModule& m, Rng& rng, const HomologyConfig& cfg = {});
std::vector<FreeAlgModule> decompose(const FreeAlgModule& m, Rng& rng,
                                     const HomologyConfig& cfg = {});

template <class Mor>
struct IsoResult {
    bool isomorphic = false;
    bool certain = true;  // false only for randomized negative answers
    std::string reason;
    std::optional<Mor> witness;  // explicit invertible morphism when isomorphic
};

IsoResult<RepMorphism> is_isomorphic(const QuiverRep& m, const QuiverRep& n, Rng& rng,
                                     const HomologyConfig& cfg = {});
IsoResult<ModMorphism> is_isomorphic(const AModule& m, const AModule& n, Rng& rng,
                                     const HomologyConfig& cfg = {});
IsoResult<FreeModMorphism> is_isomorphic(const FreeAlgModule& m, const FreeAlgModule& n, Rng& rng,
                                         const HomologyConfig& cfg = {});

struct SimpleResult {
    Verdict verdict = Verdict::unknown;
    bool exhaustive = false;
    std::string note;
};

/// Simplicity by spinning: exhaustive over finite fields within the budget,
/// sampled (basis + random vectors) over the rationals.
SimpleResult is_simple(const QuiverRep& m, Rng& rng, size_t enumeration_budget = 4096,
                       const HomologyConfig& cfg = {});
SimpleResult is_simple(const AModule& m, Rng& rng, size_t enumeration_budget = 4096,
                       const HomologyConfig& cfg = {});
SimpleResult is_simple(const FreeAlgModule& m, Rng& rng, size_t enumeration_budget = 4096,
                       const HomologyConfig& cfg = {});

}  // namespace qk
