#pragma once

#include <json.hpp>

#include "quiverkit/functors.hpp"

namespace qk {

using Json = nlohmann::json;

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const Json& j);

/// Matrices serialize as arrays of rows with scalars as strings ("3/7" for
/// rationals, decimal residues over F_p); the field travels alongside.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const Json& j);

Json rep_to_json(const QuiverRep& m);
QuiverRep rep_from_json(const Json& j);

Json algebra_to_json(const FDAlgebra& a);
AlgebraPtr algebra_from_json(const Json& j);

Json amodule_to_json(const AModule& m);
AModule amodule_from_json(const Json& j);

Json free_module_to_json(const FreeAlgModule& m);
FreeAlgModule free_module_from_json(const Json& j);

Json object_to_json(const Object& x);
Object object_from_json(const Json& j);

Json morphism_to_json(const Morphism& f);
Morphism morphism_from_json(const Json& j);

Json functor_to_json(const FunctorHandle& h);
FunctorHandle functor_from_json(const Json& j);

Json category_to_json(const CategoryDesc& c);
CategoryDesc category_from_json(const Json& j);

}  // namespace qk
