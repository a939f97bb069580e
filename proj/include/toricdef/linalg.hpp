#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace toricdef {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

/// Dense rectangular matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector row(std::size_t r) const;
    IntMatrix transposed() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntVector operator*(const IntVector& v) const;
    bool operator==(const IntMatrix& rhs) const = default;

    bool is_zero() const;
    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

struct HermiteForm {
    IntMatrix h;  // row-style HNF of the input
    IntMatrix u;  // unimodular transform, u * m == h
};

/// Row-style Hermite normal form: pivots positive, entries above a pivot in [0, pivot).
HermiteForm hermite_normal_form(const IntMatrix& m);

/// Exact determinant of a square matrix (Bareiss elimination).
Int determinant(const IntMatrix& m);

/// Rank over Q by fraction-free elimination.
std::size_t rational_rank(const IntMatrix& m);

/// A Z-basis of a sublattice of Z^n, stored in Hermite normal form.
class LatticeBasis {
public:
    LatticeBasis() = default;
    LatticeBasis(std::vector<IntVector> generators, std::size_t ambient_dim);

    const std::vector<IntVector>& generators() const { return generators_; }
    std::size_t rank() const { return generators_.size(); }
    std::size_t ambient_dim() const { return ambient_dim_; }
    bool empty() const { return generators_.empty(); }

    /// True iff v lies in the Z-span of the generators.
    bool contains(const IntVector& v) const;
    bool operator==(const LatticeBasis& rhs) const = default;

private:
    std::vector<IntVector> generators_;
    std::size_t ambient_dim_ = 0;
};

/// Z-basis of {v integral : m v = 0}.
LatticeBasis integer_kernel_basis(const IntMatrix& m);

/// Z-basis of {d integral : m d = 0 and moduli[i] | d[i] for all i}.
LatticeBasis constrained_kernel_lattice(const IntMatrix& m, std::span<const Int> moduli);

/// Incrementally built row space over Q (reduced row echelon, pivots normalised to 1).
class RowEchelon {
public:
    explicit RowEchelon(std::size_t ncols) : ncols_(ncols) {}

    /// Adds v to the span; returns true iff the rank increased.
    bool insert(RatVector v);
    bool contains(RatVector v) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t ncols() const { return ncols_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
    void reduce(RatVector& v) const;

    std::size_t ncols_;
    std::vector<RatVector> rows_;
    std::vector<std::size_t> pivots_;
};

std::size_t rational_rank(const std::vector<RatVector>& rows, std::size_t ncols);

/// Basis of {x in Q^ncols : row . x = 0 for every row}.
std::vector<RatVector> rational_nullspace(const std::vector<RatVector>& rows, std::size_t ncols);

/// Scales a rational vector by the lcm of its denominators and divides out the content.
IntVector primitive_integer_vector(const RatVector& v);

RatVector to_rational(const IntVector& v);
RatVector to_rational(std::span<const std::int64_t> v);

}  // namespace toricdef
