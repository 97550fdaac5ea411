#pragma once

#include <optional>
#include <vector>

#include "quiverkit/field.hpp"

namespace qk {

/// Univariate polynomials over a FieldSpec, coefficient of X^i at index i.
using Poly = std::vector<Scalar>;

size_t poly_degree(const FieldSpec& f, const Poly& p);  // degree of 0 is 0
bool poly_is_zero(const FieldSpec& f, const Poly& p);
Poly poly_trim(const FieldSpec& f, Poly p);
Poly poly_monic(const FieldSpec& f, const Poly& p);
Poly poly_add(const FieldSpec& f, const Poly& a, const Poly& b);
Poly poly_sub(const FieldSpec& f, const Poly& a, const Poly& b);
Poly poly_mul(const FieldSpec& f, const Poly& a, const Poly& b);
/// (quotient, remainder); divisor must be nonzero.
std::pair<Poly, Poly> poly_divmod(const FieldSpec& f, const Poly& a, const Poly& b);
Poly poly_mod(const FieldSpec& f, const Poly& a, const Poly& b);
Poly poly_gcd(const FieldSpec& f, Poly a, Poly b);  // monic
Poly poly_derivative(const FieldSpec& f, const Poly& p);
Scalar poly_eval(const FieldSpec& f, const Poly& p, const Scalar& x);
/// base^e mod m over the field.
Poly poly_pow_mod(const FieldSpec& f, Poly base, const mpz_class& e, const Poly& m);

/// Exact irreducibility over F_p (Rabin's test); over the rationals decided
/// for degree <= 3 only, nullopt beyond that.
std::optional<bool> poly_irreducible(const FieldSpec& f, const Poly& p);

/// If p = q^e for an irreducible monic q, returns q; nullopt otherwise (or
/// when irreducibility cannot be decided over the rationals).
std::optional<Poly> poly_primary_base(const FieldSpec& f, const Poly& p);

/// A monic proper factor g of m with gcd(g, m/g) = 1, when one can be found
/// (rational roots over Q; roots and distinct-degree blocks over F_p).
std::optional<Poly> poly_coprime_factor(const FieldSpec& f, const Poly& m);

}  // namespace qk
