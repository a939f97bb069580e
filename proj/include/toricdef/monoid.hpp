#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "toricdef/linalg.hpp"
#include "toricdef/polytope.hpp"

namespace toricdef {

/// eta(c) = -min over vertices of <v, c>.
std::int64_t eta(const Polytope& p, std::span<const std::int64_t> c);

/// True iff (c, h) lies in the dual cone, i.e. h >= eta(c).
bool in_dual_cone(const Polytope& p, std::span<const std::int64_t> c, std::int64_t h);

/// Sum over vertices of <(v, 1), (c, h)>; positive on nonzero points of the dual cone.
std::int64_t total_pairing(const Polytope& p, std::span<const std::int64_t> c, std::int64_t h);

/// A linear form sum a_i t_i on the edge parameters, stored as a coefficient tuple.
/// Different tuples may restrict to the same functional on T(P); see FunctionalSpace.
struct TFunctional {
    std::vector<std::int64_t> coeffs;

    TFunctional() = default;
    explicit TFunctional(std::size_t n) : coeffs(n, 0) {}
    explicit TFunctional(std::vector<std::int64_t> c) : coeffs(std::move(c)) {}

    std::int64_t deg() const;
    bool is_zero() const;
    TFunctional& operator+=(const TFunctional& o);
    TFunctional& operator-=(const TFunctional& o);
    TFunctional operator+(const TFunctional& o) const { return TFunctional(*this) += o; }
    TFunctional operator-(const TFunctional& o) const { return TFunctional(*this) -= o; }
    TFunctional operator*(std::int64_t s) const;
    bool operator==(const TFunctional&) const = default;
};

/// The lattice T_Z(P) of edge-length vectors satisfying the 2-face relations;
/// functionals are compared by their values on its basis.
class FunctionalSpace {
public:
    explicit FunctionalSpace(const Polytope& p);

    const LatticeBasis& lattice() const { return basis_; }
    std::size_t dim() const { return basis_.rank(); }
    std::vector<Int> evaluate(const TFunctional& f) const;
    bool equal(const TFunctional& a, const TFunctional& b) const;

private:
    LatticeBasis basis_;
};

/// Canonical tuple for eta~(c), read off the lambda-path from vertex 0 to v(c).
TFunctional eta_tilde(const Polytope& p, std::span<const std::int64_t> c);

/// Minimal generators (c_i, eta(c_i)) of the monoid S, sorted lexicographically,
/// without the distinguished element R* = (0, 1), which is implicit.
struct HilbertBasis {
    std::vector<HilbertGenerator> elements;

    std::size_t size() const { return elements.size(); }
    const Point& c(std::size_t j) const { return elements[j].c; }
};

/// Hilbert basis for dim(P) <= 2.
HilbertBasis hilbert_basis(const Polytope& p);

/// Validates a user-supplied generator list: heights, irreducibility and generation of
/// every point with all vertex pairings <= check_level. Throws ValidationError.
HilbertBasis validated_hilbert_basis(const Polytope& p, std::vector<HilbertGenerator> gens,
                                     std::int64_t check_level = 3);

/// Supplied basis if present (validated), otherwise the built-in one; dim >= 3 without a
/// supplied basis is unsupported.
HilbertBasis hilbert_basis_for(const PolytopeFile& file);

/// True iff (c, h) is a nonnegative integer combination of the basis elements and R*.
bool generated_by(const Polytope& p, const HilbertBasis& hb, std::span<const std::int64_t> c, std::int64_t h);

/// Sum k_j c_j.
Point combination(const HilbertBasis& hb, std::span<const std::int64_t> k);

/// eta(k) = sum k_j eta(c_j) - eta(sum k_j c_j).
std::int64_t eta_of(const Polytope& p, const HilbertBasis& hb, std::span<const std::int64_t> k);

struct FreePairDecomposition {
    std::vector<std::int64_t> k;
    Point c;                    // sum k_j c_j
    std::int64_t eta_c = 0;     // eta(c)
    TFunctional boundary;       // eta~(c), canonical tuple
    TFunctional lam_tilde;      // per-edge coefficients, nonnegative multiples of l_i
    std::int64_t lam = 0;       // sum of lam_tilde
};

FreePairDecomposition free_pair_decompose(const Polytope& p, const HilbertBasis& hb,
                                          std::span<const std::int64_t> k);

/// Greedy representation of (c, eta(c)) in the basis: repeatedly take the first
/// generator whose removal stays on the boundary and subtract it as often as possible.
std::vector<std::int64_t> boundary_representation(const Polytope& p, const HilbertBasis& hb,
                                                  std::span<const std::int64_t> c);

/// All k in N^r with 1 <= |k| <= bound, ordered by |k| then lexicographically descending.
std::vector<std::vector<std::int64_t>> exponent_tuples(std::size_t r, std::int64_t bound);

}  // namespace toricdef
