#pragma once

#include "quiverkit/json_io.hpp"

namespace qk {

struct SampleSpec {
    uint64_t seed = 1;
    size_t count = 10;
    size_t dim_bound = 3;
    FieldSpec field;
};

struct CheckResult {
    std::string name;
    std::string sample;
    uint64_t seed = 0;
    bool pass = true;
    std::vector<Json> witnesses;
};

struct VerificationReport {
    std::string functor;
    std::vector<CheckResult> checks;

    bool pass() const;
    Json to_json() const;
};

/// Random objects of a sampleable category (quiver representations, free
/// modules, and modules over the shipped preset algebras).
Object sample_object(const CategoryDesc& c, Rng& rng, size_t dim_bound);

/// Certified-indecomposable, pairwise certainly non-isomorphic sample:
/// canonical small indecomposables first, then Krull-Schmidt factors of
/// random objects.
std::vector<Object> sample_indecomposables(const CategoryDesc& c, Rng& rng, size_t dim_bound,
                                           size_t count);

struct SES {
    Object sub, mid, quot;
    Morphism incl, proj;
};

/// Spin of random vectors inside a random ambient object, with its cokernel.
SES random_ses(const Object& mid, Rng& rng);

/// Exactness on random short exact sequences, indecomposability preservation,
/// and isomorphism reflection, per the representation-embedding definition.
VerificationReport check_embedding(const FunctorHandle& f, const SampleSpec& s);

/// Compares Hom dimensions before and after; reports the faithfulness
/// inequality and exact fullness separately.
VerificationReport check_fullness(const FunctorHandle& f, const SampleSpec& s);

/// dim Hom - dim Ext = Euler form on random pairs over K_2 and K_3.
VerificationReport euler_consistency(const SampleSpec& s);

/// Desk-scale orthogonal-family recipe: dimension-two bricks in rep K_3 from
/// the Klein simples, extension embeddings per preset algebra, pairwise
/// Hom-vanishing of the images.
VerificationReport orthogonal_family(const std::vector<AlgebraPtr>& presets, const SampleSpec& s);

struct SubmoduleLattice {
    std::vector<Matrix> members;          // canonical column bases, members[0] = 0
    std::vector<std::vector<bool>> leq;   // inclusion relation

    size_t size() const { return members.size(); }
};

/// Complete submodule enumeration over a finite field; requires
/// q^dim <= budget.
SubmoduleLattice submodule_lattice(const AModule& m, size_t budget = 4096);
SubmoduleLattice submodule_lattice(const FreeAlgModule& m, size_t budget = 4096);

size_t lattice_budget_from_env(size_t fallback = 4096);

}  // namespace qk
