#pragma once

#include <cstdint>

#include "quiverkit/matrix.hpp"

namespace qk {

/// Deterministic splittable generator (splitmix64 core). Every randomized
/// operation takes one of these seeded by the caller, so runs replay exactly.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n).
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    /// Independent child stream; deterministic in (parent state, label).
    Rng split(uint64_t label) {
        Rng child(state_ ^ (0x632be59bd9b4e019ull * (label + 1)));
        child.next();
        return child;
    }

    /// Random scalar. Over F_p: uniform residue. Over the rationals: numerator
    /// in [-height, height], denominator in [1, height].
    Scalar scalar(const FieldSpec& f, long height = 5) {
        if (f.kind() == FieldKind::prime_field)
            return f.from_int(static_cast<long>(below(f.modulus())));
        long num = static_cast<long>(below(2 * height + 1)) - height;
        long den = static_cast<long>(below(height)) + 1;
        return f.from_ratio(num, den);
    }

    Scalar nonzero_scalar(const FieldSpec& f, long height = 5) {
        for (;;) {
            Scalar s = scalar(f, height);
            if (!f.is_zero(s)) return s;
        }
    }

    Matrix matrix(const FieldSpec& f, size_t rows, size_t cols, long height = 5) {
        Matrix m(f, rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) m.at(i, j) = scalar(f, height);
        return m;
    }

    Matrix invertible_matrix(const FieldSpec& f, size_t n, long height = 5) {
        for (;;) {
            Matrix m = matrix(f, n, n, height);
            if (rank(m) == n) return m;
        }
    }

private:
    uint64_t state_;
};

}  // namespace qk
