#include "toricdef/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace toricdef {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("IntMatrix: row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
        }
    return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntVector out(rows_, Int(0));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

// row_a <- s*row_a + t*row_b ; row_b <- p*row_a + q*row_b (simultaneously)
void combine_rows(IntMatrix& m, std::size_t a, std::size_t b, const Int& s, const Int& t,
                  const Int& p, const Int& q) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
        Int x = m(a, c);
        Int y = m(b, c);
        m(a, c) = s * x + t * y;
        m(b, c) = p * x + q * y;
    }
}

// row_dst -= f * row_src
void axpy_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) -= f * m(src, c);
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
        // Bring a nonzero entry to the pivot position.
        std::size_t nz = pivot_row;
        while (nz < a.rows() && a(nz, col) == 0) ++nz;
        if (nz == a.rows()) continue;
        swap_rows(a, pivot_row, nz);
        swap_rows(u, pivot_row, nz);

        for (std::size_t r = pivot_row + 1; r < a.rows(); ++r) {
            if (a(r, col) == 0) continue;
            Int g, s, t;
            const Int x = a(pivot_row, col);
            const Int y = a(r, col);
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            const Int p = -y / g;
            const Int q = x / g;
            combine_rows(a, pivot_row, r, s, t, p, q);
            combine_rows(u, pivot_row, r, s, t, p, q);
        }
        if (a(pivot_row, col) < 0) {
            negate_row(a, pivot_row);
            negate_row(u, pivot_row);
        }
        const Int pivot = a(pivot_row, col);
        for (std::size_t r = 0; r < pivot_row; ++r) {
            Int f;
            mpz_fdiv_q(f.get_mpz_t(), a(r, col).get_mpz_t(), pivot.get_mpz_t());
            axpy_row(a, r, pivot_row, f);
            axpy_row(u, r, pivot_row, f);
        }
        ++pivot_row;
    }
    return {std::move(a), std::move(u)};
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) ++r;
            if (r == n) return 0;
            swap_rows(a, k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::size_t rational_rank(const IntMatrix& m) {
    IntMatrix a = m;
    std::size_t rank = 0;
    Int prev = 1;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t r = rank;
        while (r < a.rows() && a(r, col) == 0) ++r;
        if (r == a.rows()) continue;
        swap_rows(a, rank, r);
        for (std::size_t i = rank + 1; i < a.rows(); ++i) {
            for (std::size_t j = col + 1; j < a.cols(); ++j) {
                Int v = a(i, j) * a(rank, col) - a(i, col) * a(rank, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
            a(i, col) = 0;
        }
        prev = a(rank, col);
        ++rank;
    }
    return rank;
}

LatticeBasis::LatticeBasis(std::vector<IntVector> generators, std::size_t ambient_dim)
    : ambient_dim_(ambient_dim) {
    if (generators.empty()) return;
    const HermiteForm hf = hermite_normal_form(IntMatrix::from_rows(generators, ambient_dim));
    for (std::size_t r = 0; r < hf.h.rows(); ++r) {
        IntVector row = hf.h.row(r);
        if (std::any_of(row.begin(), row.end(), [](const Int& x) { return x != 0; }))
            generators_.push_back(std::move(row));
    }
}

bool LatticeBasis::contains(const IntVector& v) const {
    if (v.size() != ambient_dim_) return false;
    IntVector rest = v;
    for (const IntVector& g : generators_) {
        std::size_t pivot = 0;
        while (g[pivot] == 0) ++pivot;
        for (std::size_t c = 0; c < pivot; ++c)
            if (rest[c] != 0) return false;
        if (rest[pivot] == 0) continue;
        if (!mpz_divisible_p(rest[pivot].get_mpz_t(), g[pivot].get_mpz_t())) return false;
        const Int f = rest[pivot] / g[pivot];
        for (std::size_t c = pivot; c < ambient_dim_; ++c) rest[c] -= f * g[c];
    }
    return std::all_of(rest.begin(), rest.end(), [](const Int& x) { return x == 0; });
}

LatticeBasis integer_kernel_basis(const IntMatrix& m) {
    // u * m^T = h; rows of u facing zero rows of h span the left kernel of m^T.
    const HermiteForm hf = hermite_normal_form(m.transposed());
    std::vector<IntVector> basis;
    for (std::size_t r = 0; r < hf.h.rows(); ++r) {
        bool zero = true;
        for (std::size_t c = 0; c < hf.h.cols() && zero; ++c) zero = hf.h(r, c) == 0;
        if (zero) basis.push_back(hf.u.row(r));
    }
    return LatticeBasis(std::move(basis), m.cols());
}

LatticeBasis constrained_kernel_lattice(const IntMatrix& m, std::span<const Int> moduli) {
    if (moduli.size() != m.cols())
        throw std::invalid_argument("constrained_kernel_lattice: moduli length differs from column count");
    // Substitute d_i = moduli_i * y_i and solve the homogeneous system in y.
    IntMatrix scaled = m;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) scaled(r, c) *= moduli[c];
    const LatticeBasis ky = integer_kernel_basis(scaled);
    std::vector<IntVector> basis;
    for (IntVector y : ky.generators()) {
        for (std::size_t c = 0; c < y.size(); ++c) y[c] *= moduli[c];
        basis.push_back(std::move(y));
    }
    return LatticeBasis(std::move(basis), m.cols());
}

void RowEchelon::reduce(RatVector& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::size_t p = pivots_[i];
        if (v[p] == 0) continue;
        const Rat f = v[p];
        const RatVector& row = rows_[i];
        for (std::size_t c = 0; c < ncols_; ++c)
            if (row[c] != 0) v[c] -= f * row[c];
    }
}

bool RowEchelon::insert(RatVector v) {
    if (v.size() != ncols_) throw std::invalid_argument("RowEchelon: vector length mismatch");
    reduce(v);
    std::size_t p = 0;
    while (p < ncols_ && v[p] == 0) ++p;
    if (p == ncols_) return false;
    const Rat inv = 1 / v[p];
    for (Rat& x : v) x *= inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

bool RowEchelon::contains(RatVector v) const {
    if (v.size() != ncols_) throw std::invalid_argument("RowEchelon: vector length mismatch");
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

std::size_t rational_rank(const std::vector<RatVector>& rows, std::size_t ncols) {
    RowEchelon e(ncols);
    for (const RatVector& r : rows) e.insert(r);
    return e.rank();
}

std::vector<RatVector> rational_nullspace(const std::vector<RatVector>& rows, std::size_t ncols) {
    // Gauss-Jordan to reduced row echelon form.
    std::vector<RatVector> a = rows;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < a.size(); ++col) {
        std::size_t r = rank;
        while (r < a.size() && a[r][col] == 0) ++r;
        if (r == a.size()) continue;
        std::swap(a[rank], a[r]);
        const Rat inv = 1 / a[rank][col];
        for (Rat& x : a[rank]) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == rank || a[i][col] == 0) continue;
            const Rat f = a[i][col];
            for (std::size_t c = 0; c < ncols; ++c) a[i][c] -= f * a[rank][c];
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t p : pivot_cols) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        RatVector v(ncols, Rat(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

IntVector primitive_integer_vector(const RatVector& v) {
    Int l = 1;
    for (const Rat& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntVector out;
    out.reserve(v.size());
    Int g = 0;
    for (const Rat& x : v) {
        Int n = x.get_num() * (l / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        out.push_back(std::move(n));
    }
    if (g > 1)
        for (Int& x : out) x /= g;
    return out;
}

RatVector to_rational(const IntVector& v) {
    RatVector out;
    out.reserve(v.size());
    for (const Int& x : v) out.emplace_back(x);
    return out;
}

RatVector to_rational(std::span<const std::int64_t> v) {
    RatVector out;
    out.reserve(v.size());
    for (std::int64_t x : v) out.emplace_back(static_cast<long>(x));
    return out;
}

}  // namespace toricdef
