#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qk {

struct field_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An exact field element: a reduced rational, or a least nonnegative
/// residue (den == 1) when the owning field is F_p. Arithmetic lives on
/// FieldSpec, which knows how to canonicalize.
struct Scalar {
    mpz_class num{0};
    mpz_class den{1};

    bool operator==(const Scalar& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const;  // lexicographic; for canonical orderings only
};

enum class FieldKind { rationals, prime_field };

class FieldSpec {
public:
    FieldSpec() : kind_(FieldKind::rationals) {}

    static FieldSpec rationals() { return FieldSpec(); }
    static FieldSpec prime(unsigned long p);

    FieldKind kind() const { return kind_; }
    unsigned long characteristic() const { return kind_ == FieldKind::rationals ? 0 : p_; }
    unsigned long modulus() const;

    bool operator==(const FieldSpec& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    Scalar zero() const { return Scalar{}; }
    Scalar one() const { return Scalar{1, 1}; }
    Scalar from_int(long v) const;
    Scalar from_ratio(long num, long den) const;

    Scalar canonical(mpz_class num, mpz_class den) const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar div(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;

    bool is_zero(const Scalar& a) const { return a.num == 0; }
    bool is_one(const Scalar& a) const { return a.num == 1 && a.den == 1; }

    /// Parses "3/7", "-2", "5". Residues are reduced mod p.
    Scalar parse(const std::string& text) const;
    std::string to_string(const Scalar& a) const;

private:
    explicit FieldSpec(unsigned long p) : kind_(FieldKind::prime_field), p_(p) {}

    FieldKind kind_;
    unsigned long p_ = 0;
};

/// Checks that both operands live over the same field; throws field_error otherwise.
void require_same_field(const FieldSpec& a, const FieldSpec& b, const char* where);

}  // namespace qk
