#include "quiverkit/field.hpp"

namespace qk {

bool Scalar::operator<(const Scalar& o) const {
    if (num != o.num) return num < o.num;
    return den < o.den;
}

FieldSpec FieldSpec::prime(unsigned long p) {
    mpz_class m(p);
    if (p < 2 || mpz_probab_prime_p(m.get_mpz_t(), 40) == 0)
        throw field_error("prime_field modulus must be prime, got " + std::to_string(p));
    return FieldSpec(p);
}

unsigned long FieldSpec::modulus() const {
    if (kind_ != FieldKind::prime_field) throw field_error("modulus() on rationals");
    return p_;
}

Scalar FieldSpec::canonical(mpz_class num, mpz_class den) const {
    if (kind_ == FieldKind::prime_field) {
        if (den != 1) {
            // fold the denominator in via a modular inverse
            Scalar n = canonical(std::move(num), 1);
            Scalar d = canonical(std::move(den), 1);
            return mul(n, inv(d));
        }
        mpz_class p(p_), r;
        mpz_mod(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
        return Scalar{std::move(r), 1};
    }
    if (den == 0) throw field_error("zero denominator");
    if (num == 0) return Scalar{};
    if (den < 0) {
        num = -num;
        den = -den;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) {
        num /= g;
        den /= g;
    }
    return Scalar{std::move(num), std::move(den)};
}

Scalar FieldSpec::from_int(long v) const { return canonical(mpz_class(v), 1); }

Scalar FieldSpec::from_ratio(long num, long den) const {
    return canonical(mpz_class(num), mpz_class(den));
}

Scalar FieldSpec::add(const Scalar& a, const Scalar& b) const {
    if (kind_ == FieldKind::prime_field) return canonical(a.num + b.num, 1);
    return canonical(a.num * b.den + b.num * a.den, a.den * b.den);
}

Scalar FieldSpec::sub(const Scalar& a, const Scalar& b) const {
    if (kind_ == FieldKind::prime_field) return canonical(a.num - b.num, 1);
    return canonical(a.num * b.den - b.num * a.den, a.den * b.den);
}

Scalar FieldSpec::mul(const Scalar& a, const Scalar& b) const {
    if (a.num == 0 || b.num == 0) return Scalar{};
    return canonical(a.num * b.num, a.den * b.den);
}

Scalar FieldSpec::neg(const Scalar& a) const {
    if (kind_ == FieldKind::prime_field) return canonical(-a.num, 1);
    return Scalar{-a.num, a.den};
}

Scalar FieldSpec::inv(const Scalar& a) const {
    if (a.num == 0) throw field_error("inverse of zero");
    if (kind_ == FieldKind::prime_field) {
        mpz_class p(p_), r;
        if (mpz_invert(r.get_mpz_t(), a.num.get_mpz_t(), p.get_mpz_t()) == 0)
            throw field_error("inverse of zero residue");
        return Scalar{std::move(r), 1};
    }
    return canonical(a.den, a.num);
}

Scalar FieldSpec::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

Scalar FieldSpec::parse(const std::string& text) const {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return canonical(mpz_class(text), 1);
        return canonical(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw field_error("cannot parse scalar '" + text + "'");
    }
}

std::string FieldSpec::to_string(const Scalar& a) const {
    if (a.den == 1) return a.num.get_str();
    return a.num.get_str() + "/" + a.den.get_str();
}

void require_same_field(const FieldSpec& a, const FieldSpec& b, const char* where) {
    if (a != b) throw field_error(std::string("mixed-field operands in ") + where);
}

}  // namespace qk
