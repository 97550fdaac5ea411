#include "quiverkit/matrix.hpp"

#include <algorithm>

namespace qk {

Matrix Matrix::identity(const FieldSpec& f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

Matrix Matrix::from_int(const FieldSpec& f, const std::vector<std::vector<long>>& rows) {
    size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix m(f, r, c);
    for (size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw dim_error("ragged literal matrix");
        for (size_t j = 0; j < c; ++j) m.at(i, j) = f.from_int(rows[i][j]);
    }
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : e_)
        if (x.num != 0) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? field_.one() : field_.zero())) return false;
    return true;
}

Matrix Matrix::add(const Matrix& o) const {
    require_same_field(field_, o.field_, "Matrix::add");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw dim_error("shape mismatch in add");
    Matrix r(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.add(e_[i], o.e_[i]);
    return r;
}

Matrix Matrix::sub(const Matrix& o) const {
    require_same_field(field_, o.field_, "Matrix::sub");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw dim_error("shape mismatch in sub");
    Matrix r(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.sub(e_[i], o.e_[i]);
    return r;
}

Matrix Matrix::mul(const Matrix& o) const {
    require_same_field(field_, o.field_, "Matrix::mul");
    if (cols_ != o.rows_) throw dim_error("shape mismatch in mul");
    Matrix r(field_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.num == 0) continue;
            for (size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) = field_.add(r.at(i, j), field_.mul(aik, o.at(k, j)));
        }
    return r;
}

Matrix Matrix::neg() const {
    Matrix r(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.neg(e_[i]);
    return r;
}

Matrix Matrix::scale(const Scalar& c) const {
    Matrix r(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.mul(e_[i], c);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(field_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::pow(size_t k) const {
    if (rows_ != cols_) throw dim_error("pow of non-square matrix");
    Matrix acc = identity(field_, rows_);
    Matrix base = *this;
    while (k) {
        if (k & 1) acc = acc.mul(base);
        k >>= 1;
        if (k) base = base.mul(base);
    }
    return acc;
}

Scalar Matrix::trace() const {
    if (rows_ != cols_) throw dim_error("trace of non-square matrix");
    Scalar t = field_.zero();
    for (size_t i = 0; i < rows_; ++i) t = field_.add(t, at(i, i));
    return t;
}

Matrix Matrix::column(size_t j) const { return columns(j, j + 1); }

Matrix Matrix::columns(size_t j0, size_t j1) const {
    Matrix r(field_, rows_, j1 - j0);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = j0; j < j1; ++j) r.at(i, j - j0) = at(i, j);
    return r;
}

Matrix Matrix::select_rows(const std::vector<size_t>& idx) const {
    Matrix r(field_, idx.size(), cols_);
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(idx[i], j);
    return r;
}

Matrix Matrix::hstack(const std::vector<Matrix>& parts) {
    if (parts.empty()) throw dim_error("hstack of nothing");
    size_t rows = parts[0].rows(), cols = 0;
    for (const auto& p : parts) {
        if (p.rows() != rows) throw dim_error("hstack row mismatch");
        cols += p.cols();
    }
    Matrix r(parts[0].field(), rows, cols);
    size_t off = 0;
    for (const auto& p : parts) {
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < p.cols(); ++j) r.at(i, off + j) = p.at(i, j);
        off += p.cols();
    }
    return r;
}

Matrix Matrix::vstack(const std::vector<Matrix>& parts) {
    if (parts.empty()) throw dim_error("vstack of nothing");
    size_t cols = parts[0].cols(), rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != cols) throw dim_error("vstack col mismatch");
        rows += p.rows();
    }
    Matrix r(parts[0].field(), rows, cols);
    size_t off = 0;
    for (const auto& p : parts) {
        for (size_t i = 0; i < p.rows(); ++i)
            for (size_t j = 0; j < cols; ++j) r.at(off + i, j) = p.at(i, j);
        off += p.rows();
    }
    return r;
}

std::pair<Matrix, std::vector<size_t>> rref(const Matrix& m) {
    const FieldSpec& f = m.field();
    Matrix a = m;
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        size_t sel = row;
        while (sel < a.rows() && f.is_zero(a.at(sel, col))) ++sel;
        if (sel == a.rows()) continue;
        if (sel != row)
            for (size_t j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(row, j));
        Scalar piv_inv = f.inv(a.at(row, col));
        for (size_t j = col; j < a.cols(); ++j) a.at(row, j) = f.mul(a.at(row, j), piv_inv);
        for (size_t i = 0; i < a.rows(); ++i) {
            if (i == row || f.is_zero(a.at(i, col))) continue;
            Scalar factor = a.at(i, col);
            for (size_t j = col; j < a.cols(); ++j)
                a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(a), std::move(pivots)};
}

size_t rank(const Matrix& m) { return rref(m).second.size(); }

Matrix kernel_basis(const Matrix& m) {
    const FieldSpec& f = m.field();
    auto [r, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<size_t> free_cols;
    for (size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Matrix basis(f, m.cols(), free_cols.size());
    for (size_t k = 0; k < free_cols.size(); ++k) {
        size_t fc = free_cols[k];
        basis.at(fc, k) = f.one();
        for (size_t i = 0; i < pivots.size(); ++i)
            basis.at(pivots[i], k) = f.neg(r.at(i, fc));
    }
    return basis;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    require_same_field(a.field(), b.field(), "solve");
    if (a.rows() != b.rows()) throw dim_error("solve: rhs row count mismatch");
    const FieldSpec& f = a.field();
    auto [r, pivots] = rref(Matrix::hstack({a, b}));
    // any pivot beyond a's columns means an inconsistent column
    for (size_t p : pivots)
        if (p >= a.cols()) return std::nullopt;
    Matrix x(f, a.cols(), b.cols());
    for (size_t i = 0; i < pivots.size(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) x.at(pivots[i], j) = r.at(i, a.cols() + j);
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve(m, Matrix::identity(m.field(), m.rows()));
    if (!x) return std::nullopt;
    if (!m.mul(*x).is_identity()) return std::nullopt;  // singular but consistent columns
    return x;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    require_same_field(a.field(), b.field(), "tensor_product");
    const FieldSpec& f = a.field();
    Matrix r(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            if (f.is_zero(a.at(i, j))) continue;
            for (size_t k = 0; k < b.rows(); ++k)
                for (size_t l = 0; l < b.cols(); ++l)
                    r.at(i * b.rows() + k, j * b.cols() + l) = f.mul(a.at(i, j), b.at(k, l));
        }
    return r;
}

Matrix block_matrix(const std::vector<std::vector<Matrix>>& grid) {
    if (grid.empty() || grid[0].empty()) throw dim_error("empty block grid");
    size_t block_cols = grid[0].size();
    std::vector<size_t> row_h(grid.size()), col_w(block_cols, SIZE_MAX);
    for (size_t i = 0; i < grid.size(); ++i) {
        if (grid[i].size() != block_cols) throw dim_error("ragged block grid");
        row_h[i] = grid[i][0].rows();
        for (size_t j = 0; j < block_cols; ++j) {
            if (grid[i][j].rows() != row_h[i]) throw dim_error("inconsistent block heights");
            if (col_w[j] == SIZE_MAX) col_w[j] = grid[i][j].cols();
            if (grid[i][j].cols() != col_w[j]) throw dim_error("inconsistent block widths");
        }
    }
    std::vector<Matrix> rows;
    rows.reserve(grid.size());
    for (const auto& row : grid) rows.push_back(Matrix::hstack(row));
    return Matrix::vstack(rows);
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) throw dim_error("empty block diagonal");
    const FieldSpec& f = blocks[0].field();
    std::vector<std::vector<Matrix>> grid(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = 0; j < blocks.size(); ++j)
            grid[i].push_back(i == j ? blocks[i] : Matrix::zero(f, blocks[i].rows(), blocks[j].cols()));
    return block_matrix(grid);
}

Matrix column_space_basis(const Matrix& m) {
    auto [r, pivots] = rref(m.transpose());
    std::vector<size_t> keep(pivots.size());
    for (size_t i = 0; i < pivots.size(); ++i) keep[i] = i;
    return r.select_rows(keep).transpose();
}

Subspace subspace_from_columns(const Matrix& span_columns) {
    auto [r, pivots] = rref(span_columns.transpose());
    std::vector<size_t> keep(pivots.size());
    for (size_t i = 0; i < pivots.size(); ++i) keep[i] = i;
    return Subspace{r.select_rows(keep).transpose(), pivots};
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    return subspace_from_columns(Matrix::hstack({a.basis, b.basis}));
}

bool subspace_contains(const Subspace& s, const Matrix& vectors) {
    if (s.dim() == 0) return vectors.is_zero();
    return solve(s.basis, vectors).has_value();
}

bool subspace_equal(const Subspace& a, const Subspace& b) { return a.basis == b.basis; }

QuotientMap quotient_map(const Subspace& s) {
    const FieldSpec& f = s.basis.field();
    size_t n = s.ambient_dim(), w = s.dim();
    std::vector<bool> is_pivot(n, false);
    for (size_t p : s.pivots) is_pivot[p] = true;
    std::vector<size_t> comp;
    for (size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) comp.push_back(j);
    Matrix proj(f, n - w, n), sect(f, n, n - w);
    for (size_t k = 0; k < comp.size(); ++k) {
        proj.at(k, comp[k]) = f.one();
        sect.at(comp[k], k) = f.one();
        // subtract the pivot-coordinate multiples of the basis columns
        for (size_t i = 0; i < w; ++i)
            proj.at(k, s.pivots[i]) = f.neg(s.basis.at(comp[k], i));
    }
    return QuotientMap{std::move(proj), std::move(sect)};
}

std::vector<Scalar> char_poly(const Matrix& m) {
    // Samuelson-Berkowitz: division-free, valid over any commutative ring.
    if (m.rows() != m.cols()) throw dim_error("char_poly of non-square matrix");
    const FieldSpec& f = m.field();
    size_t n = m.rows();
    std::vector<Scalar> poly{f.one()};  // char poly of the 0x0 matrix
    for (size_t k = 0; k < n; ++k) {
        // principal (k+1)x(k+1) leading submatrix; Toeplitz factor from row/col k
        size_t s = k + 1;
        // entries: a = m[k][k], row R = m[k][0..k-1], col C = m[0..k-1][k], block A = leading k x k
        std::vector<Scalar> t(s + 1);  // t[j] multiplies X^(s-j) in the Toeplitz column
        t[0] = f.one();
        t[1] = f.neg(m.at(k, k));
        if (k > 0) {
            Matrix R(f, 1, k), C(f, k, 1);
            for (size_t j = 0; j < k; ++j) {
                R.at(0, j) = m.at(k, j);
                C.at(j, 0) = m.at(j, k);
            }
            Matrix A(f, k, k);
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; j < k; ++j) A.at(i, j) = m.at(i, j);
            Matrix acc = C;
            for (size_t j = 2; j <= s; ++j) {
                t[j] = f.neg(R.mul(acc).at(0, 0));
                if (j < s) acc = A.mul(acc);
            }
        }
        std::vector<Scalar> next(s + 1, f.zero());
        // next = Toeplitz(t) * poly, both written highest-degree-first
        for (size_t i = 0; i < poly.size(); ++i)
            for (size_t j = 0; i + j <= s && j < t.size(); ++j)
                next[i + j] = f.add(next[i + j], f.mul(poly[i], t[j]));
        poly = std::move(next);
    }
    // poly is highest-degree-first; flip to coefficient-of-X^i-at-index-i
    std::vector<Scalar> out(poly.rbegin(), poly.rend());
    return out;
}

std::vector<Scalar> min_poly(const Matrix& m) {
    if (m.rows() != m.cols()) throw dim_error("min_poly of non-square matrix");
    const FieldSpec& f = m.field();
    size_t n = m.rows(), nn = n * n;
    auto vectorize = [&](const Matrix& a) {
        Matrix v(f, nn, 1);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) v.at(i * n + j, 0) = a.at(i, j);
        return v;
    };
    std::vector<Matrix> krylov{vectorize(Matrix::identity(f, n))};
    Matrix power = Matrix::identity(f, n);
    for (size_t d = 1; d <= n; ++d) {
        power = power.mul(m);
        Matrix target = vectorize(power);
        Matrix basis = Matrix::hstack(krylov);
        if (auto coeffs = solve(basis, target)) {
            std::vector<Scalar> poly(d + 1, f.zero());
            for (size_t i = 0; i < d; ++i) poly[i] = f.neg(coeffs->at(i, 0));
            poly[d] = f.one();
            return poly;
        }
        krylov.push_back(std::move(target));
    }
    throw field_error("min_poly: no dependency found");  // unreachable
}

namespace {

Scalar poly_eval(const FieldSpec& f, const std::vector<Scalar>& poly, const Scalar& x) {
    Scalar acc = f.zero();
    for (size_t i = poly.size(); i-- > 0;) acc = f.add(f.mul(acc, x), poly[i]);
    return acc;
}

// all positive divisors of |v| by trial division; empty when the bound is exceeded
std::vector<mpz_class> divisors_of(const mpz_class& v, unsigned long bound) {
    mpz_class a = abs(v);
    if (a == 0) return {};
    std::vector<mpz_class> primes, mult;
    mpz_class d = 2;
    while (d * d <= a) {
        if (mpz_cmp_ui(d.get_mpz_t(), bound) > 0) return {};
        if (a % d == 0) {
            primes.push_back(d);
            mpz_class e = 0;
            while (a % d == 0) {
                a /= d;
                ++e;
            }
            mult.push_back(e);
        }
        ++d;
    }
    if (a > 1) {
        primes.push_back(a);
        mult.push_back(1);
    }
    std::vector<mpz_class> divs{1};
    for (size_t i = 0; i < primes.size(); ++i) {
        size_t cur = divs.size();
        mpz_class pe = 1;
        for (mpz_class e = 1; e <= mult[i]; ++e) {
            pe *= primes[i];
            for (size_t j = 0; j < cur; ++j) divs.push_back(divs[j] * pe);
        }
    }
    return divs;
}

}  // namespace

std::vector<Scalar> field_roots(const FieldSpec& f, const std::vector<Scalar>& poly) {
    std::vector<Scalar> roots;
    size_t deg = poly.size();
    while (deg > 0 && f.is_zero(poly[deg - 1])) --deg;
    if (deg <= 1) return roots;  // constant
    if (f.kind() == FieldKind::prime_field) {
        if (f.modulus() > 257)
            throw field_error("field_roots: modulus too large for exhaustive search");
        for (unsigned long v = 0; v < f.modulus(); ++v) {
            Scalar x = f.from_int(static_cast<long>(v));
            if (f.is_zero(poly_eval(f, poly, x))) roots.push_back(x);
        }
        return roots;
    }
    // rationals: clear denominators, then u/v with u | a_0, v | a_deg
    mpz_class lcm = 1;
    for (size_t i = 0; i < deg; ++i) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), poly[i].den.get_mpz_t());
    std::vector<mpz_class> ip(deg);
    for (size_t i = 0; i < deg; ++i) ip[i] = poly[i].num * (lcm / poly[i].den);
    size_t lo = 0;
    while (lo < deg && ip[lo] == 0) ++lo;
    if (lo > 0) roots.push_back(f.zero());
    if (lo == deg) return roots;
    const unsigned long kBound = 1000000;
    auto us = divisors_of(ip[lo], kBound);
    auto vs = divisors_of(ip[deg - 1], kBound);
    if (us.empty() || vs.empty())
        throw field_error("field_roots: coefficient too large for rational root search");
    for (const auto& u : us)
        for (const auto& v : vs)
            for (int sign : {1, -1}) {
                Scalar cand = f.canonical(sign * u, v);
                if (std::find(roots.begin(), roots.end(), cand) != roots.end()) continue;
                if (f.is_zero(poly_eval(f, poly, cand))) roots.push_back(cand);
            }
    return roots;
}

}  // namespace qk
