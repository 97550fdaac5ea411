#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quiverkit/matrix.hpp"

namespace qk {

struct Arrow {
    size_t source;
    size_t target;
    bool operator==(const Arrow&) const = default;
};

/// Finite directed multigraph. Conventions for the shipped presets:
/// kronecker(n) has vertices {0,1} and n arrows 1 -> 0, so vertex 0 carries
/// the sink (projective) side and dimension vectors read (dim 0, dim 1);
/// loop(n) has one vertex and n loops.
struct Quiver {
    size_t vertex_count = 0;
    std::vector<Arrow> arrows;

    static Quiver kronecker(size_t n);
    static Quiver loop(size_t n);

    bool operator==(const Quiver&) const = default;
    void validate() const;
    std::vector<size_t> arrows_out(size_t v) const;
    std::vector<size_t> arrows_in(size_t v) const;
    bool is_sink(size_t v) const { return arrows_out(v).empty(); }
    bool is_source(size_t v) const { return arrows_in(v).empty(); }
};

using DimVector = std::vector<size_t>;

long euler_form(const Quiver& q, const DimVector& a, const DimVector& b);
long tits_form(const Quiver& q, const DimVector& a);

/// A representation: one space per vertex, one matrix per arrow; the matrix
/// of an arrow s -> t has shape dims[t] x dims[s].
struct QuiverRep {
    Quiver quiver;
    FieldSpec field;
    DimVector dims;
    std::vector<Matrix> arrow_matrices;

    size_t total_dim() const;
    void validate() const;
    bool operator==(const QuiverRep&) const = default;

    static QuiverRep zero(const Quiver& q, const FieldSpec& f);
};

/// Vertex-wise linear maps intertwining the arrow actions.
struct RepMorphism {
    QuiverRep source;
    QuiverRep target;
    std::vector<Matrix> vertex_maps;

    bool is_valid() const;
    void require_valid(const char* where) const;
    RepMorphism compose_after(const RepMorphism& inner) const;  // this o inner
    bool is_zero() const;

    static RepMorphism identity(const QuiverRep& m);
    static RepMorphism zero(const QuiverRep& source, const QuiverRep& target);
};

QuiverRep direct_sum(const QuiverRep& a, const QuiverRep& b);
RepMorphism direct_sum(const RepMorphism& f, const RepMorphism& g);

struct SubquotientRep {
    QuiverRep rep;
    RepMorphism map;  // inclusion into, or projection from, the ambient rep
};

SubquotientRep kernel_rep(const RepMorphism& f);
SubquotientRep cokernel_rep(const RepMorphism& f);
SubquotientRep image_rep(const RepMorphism& f);

/// Smallest subrepresentation containing the given vectors (columns per vertex).
SubquotientRep spin_subrep(const QuiverRep& m, const std::vector<Matrix>& seeds);

/// Kronecker indecomposables, bases as in the classification: P(i) has dims
/// (i+1, i) with la(x_j) = y_j, rho(x_j) = y_{j+1}; I(i) has dims (i, i+1);
/// L(Q) has la = id and rho the companion matrix of the monic polynomial Q.
QuiverRep kron_P(const FieldSpec& f, size_t i);
QuiverRep kron_I(const FieldSpec& f, size_t i);
QuiverRep kron_L(const FieldSpec& f, const std::vector<Scalar>& monic_poly);

Matrix companion_matrix(const FieldSpec& f, const std::vector<Scalar>& monic_poly);

enum class ReflectDir { plus, minus };

/// BGP reflection at a sink (plus) or source (minus). On the Kronecker quiver
/// the reflected quiver is identified back with K_2 by swapping the vertices
/// and the two arrow slots, so S+ P(i) = P(i-1), S- P(i) = P(i+1) and S+/-
/// fix each L(Q) exactly.
QuiverRep bgp_reflect(const QuiverRep& m, size_t vertex, ReflectDir dir);

/// Splits off all simple injective summands: at each source vertex x the
/// joint kernel of the outgoing arrow maps contributes S(x)^r. Returns the
/// stripped representation and the multiplicity per vertex. A representation
/// lies in rep'K exactly when all multiplicities are zero.
std::pair<QuiverRep, std::vector<size_t>> strip_injective_simples(const QuiverRep& m);

/// (V, T) -> (V, V; T, id), the embedding of mod k[T] into rep'K_2.
QuiverRep kt_embed(const Matrix& t);

}  // namespace qk
