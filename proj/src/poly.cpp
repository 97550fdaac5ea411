#include "quiverkit/poly.hpp"

#include <algorithm>

#include "quiverkit/matrix.hpp"  // field_roots

namespace qk {

Poly poly_trim(const FieldSpec& f, Poly p) {
    while (!p.empty() && f.is_zero(p.back())) p.pop_back();
    return p;
}

bool poly_is_zero(const FieldSpec& f, const Poly& p) {
    for (const auto& c : p)
        if (!f.is_zero(c)) return false;
    return true;
}

size_t poly_degree(const FieldSpec& f, const Poly& p) {
    for (size_t i = p.size(); i-- > 0;)
        if (!f.is_zero(p[i])) return i;
    return 0;
}

Poly poly_monic(const FieldSpec& f, const Poly& p) {
    Poly q = poly_trim(f, p);
    if (q.empty()) return q;
    Scalar inv = f.inv(q.back());
    for (auto& c : q) c = f.mul(c, inv);
    return q;
}

Poly poly_add(const FieldSpec& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), f.zero());
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = f.add(r[i], a[i]);
        if (i < b.size()) r[i] = f.add(r[i], b[i]);
    }
    return poly_trim(f, r);
}

Poly poly_sub(const FieldSpec& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), f.zero());
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = f.add(r[i], a[i]);
        if (i < b.size()) r[i] = f.sub(r[i], b[i]);
    }
    return poly_trim(f, r);
}

Poly poly_mul(const FieldSpec& f, const Poly& a, const Poly& b) {
    if (poly_is_zero(f, a) || poly_is_zero(f, b)) return {};
    Poly r(a.size() + b.size() - 1, f.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (f.is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    return poly_trim(f, r);
}

std::pair<Poly, Poly> poly_divmod(const FieldSpec& f, const Poly& a, const Poly& b) {
    Poly rem = poly_trim(f, a), div = poly_trim(f, b);
    if (div.empty()) throw field_error("polynomial division by zero");
    if (rem.size() < div.size()) return {Poly{}, rem};
    Poly quot(rem.size() - div.size() + 1, f.zero());
    Scalar lead_inv = f.inv(div.back());
    for (size_t i = rem.size(); i-- > 0;) {
        if (i + 1 < div.size()) break;
        Scalar c = f.mul(rem[i], lead_inv);
        if (!f.is_zero(c)) {
            size_t shift = i + 1 - div.size();
            quot[shift] = c;
            for (size_t j = 0; j < div.size(); ++j)
                rem[shift + j] = f.sub(rem[shift + j], f.mul(c, div[j]));
        }
    }
    return {poly_trim(f, quot), poly_trim(f, rem)};
}

Poly poly_mod(const FieldSpec& f, const Poly& a, const Poly& b) { return poly_divmod(f, a, b).second; }

Poly poly_gcd(const FieldSpec& f, Poly a, Poly b) {
    a = poly_trim(f, a);
    b = poly_trim(f, b);
    while (!b.empty()) {
        Poly r = poly_mod(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(f, a);
}

Poly poly_derivative(const FieldSpec& f, const Poly& p) {
    Poly r;
    for (size_t i = 1; i < p.size(); ++i) {
        Scalar c = f.zero();
        for (size_t k = 0; k < i; ++k) c = f.add(c, p[i]);  // i * p[i] in the field
        r.push_back(c);
    }
    return poly_trim(f, r);
}

Scalar poly_eval(const FieldSpec& f, const Poly& p, const Scalar& x) {
    Scalar acc = f.zero();
    for (size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p[i]);
    return acc;
}

Poly poly_pow_mod(const FieldSpec& f, Poly base, const mpz_class& e, const Poly& m) {
    Poly acc{f.one()};
    base = poly_mod(f, base, m);
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = poly_mod(f, poly_mul(f, acc, base), m);
        k >>= 1;
        if (k > 0) base = poly_mod(f, poly_mul(f, base, base), m);
    }
    return acc;
}

namespace {

std::vector<size_t> prime_divisors(size_t n) {
    std::vector<size_t> out;
    for (size_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

Poly x_poly(const FieldSpec& f) { return Poly{f.zero(), f.one()}; }

}  // namespace

std::optional<bool> poly_irreducible(const FieldSpec& f, const Poly& p) {
    Poly m = poly_monic(f, p);
    size_t d = poly_degree(f, m);
    if (d == 0) return false;
    if (d == 1) return true;
    if (f.kind() == FieldKind::rationals) {
        if (d > 3) return std::nullopt;
        return field_roots(f, m).empty();  // degree 2 or 3: irreducible iff rootless
    }
    // Rabin: X^(p^d) = X mod m, and gcd(X^(p^(d/q)) - X, m) = 1 for prime q | d
    mpz_class pr(f.modulus());
    Poly x = x_poly(f);
    for (size_t q : prime_divisors(d)) {
        Poly h = x;
        for (size_t i = 0; i < d / q; ++i) h = poly_pow_mod(f, h, pr, m);
        Poly g = poly_gcd(f, poly_sub(f, h, x), m);
        if (poly_degree(f, g) != 0 || poly_is_zero(f, g)) return false;
    }
    Poly h = x;
    for (size_t i = 0; i < d; ++i) h = poly_pow_mod(f, h, pr, m);
    return poly_is_zero(f, poly_sub(f, h, x));
}

std::optional<Poly> poly_primary_base(const FieldSpec& f, const Poly& p) {
    Poly m = poly_monic(f, p);
    size_t d = poly_degree(f, m);
    if (d == 0) return std::nullopt;
    Poly deriv = poly_derivative(f, m);
    Poly s;
    if (poly_is_zero(f, deriv)) {
        // char p and m = w(X^p); over the prime field w has the same coefficients
        unsigned long pr = f.modulus();
        Poly w;
        for (size_t i = 0; i < m.size(); i += pr) w.push_back(m[i]);
        auto base = poly_primary_base(f, w);
        if (!base) return std::nullopt;
        s = *base;
    } else {
        s = poly_divmod(f, m, poly_gcd(f, m, deriv)).first;
        s = poly_monic(f, s);
    }
    auto irred = poly_irreducible(f, s);
    if (!irred || !*irred) return std::nullopt;
    // verify m is exactly a power of s
    Poly r = m;
    while (poly_degree(f, r) > 0) {
        auto [q, rem] = poly_divmod(f, r, s);
        if (!poly_is_zero(f, rem)) return std::nullopt;
        r = q;
    }
    return s;
}

std::optional<Poly> poly_coprime_factor(const FieldSpec& f, const Poly& p) {
    Poly m = poly_monic(f, p);
    size_t d = poly_degree(f, m);
    if (d < 2) return std::nullopt;
    // grow a factor from one root or one distinct-degree block, then saturate
    auto primary_hull = [&](Poly seed) -> std::optional<Poly> {
        Poly fpart = seed;
        Poly rest = poly_divmod(f, m, fpart).first;
        for (;;) {
            Poly g = poly_gcd(f, rest, seed);
            if (poly_degree(f, g) == 0) break;
            fpart = poly_mul(f, fpart, g);
            rest = poly_divmod(f, rest, g).first;
        }
        if (poly_degree(f, fpart) == 0 || poly_degree(f, fpart) == d) return std::nullopt;
        return poly_monic(f, fpart);
    };
    // root-based primary component
    std::vector<Scalar> roots;
    bool roots_known = true;
    try {
        roots = field_roots(f, m);
    } catch (const field_error&) {
        roots_known = false;
    }
    if (roots_known)
        for (const auto& lam : roots) {
            Poly lin{f.neg(lam), f.one()};
            if (auto h = primary_hull(lin)) return h;
        }
    // distinct-degree block over a prime field
    if (f.kind() == FieldKind::prime_field) {
        mpz_class pr(f.modulus());
        Poly x = x_poly(f);
        Poly h = x;
        for (size_t i = 1; i <= d; ++i) {
            h = poly_pow_mod(f, h, pr, m);
            Poly g = poly_gcd(f, poly_sub(f, h, x), m);
            size_t dg = poly_degree(f, g);
            if (dg == 0 || poly_is_zero(f, g)) continue;
            if (auto out = primary_hull(g)) return out;
        }
    }
    return std::nullopt;
}

}  // namespace qk
