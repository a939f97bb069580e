#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricdef/base_space.hpp"
#include "toricdef/polyring.hpp"
#include "toricdef/polytope.hpp"

namespace toricdef {

/// Edge-length vector of a summand: entry i is the lattice length of the part of edge i it carries.
using SplitVector = std::vector<std::int64_t>;

struct MinkowskiDecomposition {
    std::vector<SplitVector> summands;  // descending lexicographic; summand k carries K_k

    std::size_t size() const { return summands.size(); }
    std::int64_t split(std::size_t edge, std::size_t k) const { return summands[k][edge]; }
    bool operator==(const MinkowskiDecomposition&) const = default;
};

/// True iff n closes up on every 2-face (sum of sign * n_i * primitive_i is zero).
bool closes_up(const Polytope& p, const SplitVector& n);

/// Vertices of the summand up to translation, counterclockwise from the lexicographically
/// smallest one (polygons and intervals).
std::vector<Point> summand_vertices(const Polytope& p, const SplitVector& n);

/// All nonzero closed n with 0 <= n_i <= l_i, descending lexicographically.
std::vector<SplitVector> lattice_summands(const Polytope& p);

/// Summands of P that are not sums of two nonzero summands.
bool is_indecomposable(const Polytope& p, const SplitVector& n);

/// Decompositions up to translation and permutation of summands, including the trivial one.
/// With maximal_only, only those whose summands are all indecomposable. Needs dim <= 2.
std::vector<MinkowskiDecomposition> enumerate_decompositions(const Polytope& p, bool maximal_only);

/// Checks closure per summand and that the splits add up to the edge lengths. Throws ValidationError.
MinkowskiDecomposition validated_decomposition(const Polytope& p, const std::vector<SummandEdgeLength>& entries);

/// Enumerated decompositions for dim <= 2, the supplied one otherwise.
std::vector<MinkowskiDecomposition> decompositions_for(const PolytopeFile& file, bool maximal_only);

/// u_i -> prod_k K_k^(n_ik).
std::map<Variable, Polynomial> map_f(const Polytope& p, const MinkowskiDecomposition& dec);
/// True iff every binomial of the ideal maps to zero.
bool f_kills_binomials(const Polytope& p, const MinkowskiDecomposition& dec);

/// f(u0) = (sum_k n_{u0,k} K_k) / l_{u0}, which makes g(T_{u0,1}) vanish.
Polynomial f_of_u0(const Polytope& p, const MinkowskiDecomposition& dec, std::size_t u0_edge);

struct MapG {
    std::map<Variable, Polynomial> assignment;  // every T_ij
    bool edge_identity = true;  // f(u_i) = sum_j f(u0)^(l_i - j) g(T_ij)
    bool kills_base_ideal = true;  // g(I_B) = 0
    std::vector<std::string> failures;
};

MapG map_g(const Polytope& p, const MinkowskiDecomposition& dec, const BaseSpace& bs);

/// Generic rank of the Jacobian of g on T_b with respect to K_1 - K_0, ..., K_m - K_0,
/// taken over a few random rational points; redraws counts the points beyond the first.
std::size_t component_dimension(const MapG& g, const BaseSpace& bs, std::size_t num_summands,
                                std::uint64_t seed = 1, std::size_t* redraws = nullptr);

/// Preferred u0 edge: the first edge left unsplit by some maximal decomposition, else edge 0.
std::size_t preferred_u0_edge(const Polytope& p, const std::vector<MinkowskiDecomposition>& maximal);

/// A linear subspace of T_b-space, given by independent linear equations.
struct LinearComponent {
    std::vector<Polynomial> equations;
    std::size_t dim = 0;
};

/// Components of V(I_b) when every generator is a product of linear forms; nullopt otherwise.
std::optional<std::vector<LinearComponent>> linear_components(const BaseSpace& bs);

struct DecompositionCheck {
    MinkowskiDecomposition dec;
    bool f_ok = false;
    bool edge_identity = false;
    bool kills_base_ideal = false;
    std::size_t dimension = 0;
    std::size_t redraws = 0;
    std::map<Variable, Polynomial> image;  // g on T_b
    std::optional<std::size_t> component;
};

struct CorrespondenceReport {
    std::vector<DecompositionCheck> decompositions;
    std::optional<std::vector<LinearComponent>> components;
    bool bijective = false;
    std::string status;
};

CorrespondenceReport correspondence_report(const Polytope& p, const BaseSpace& bs,
                                           const std::vector<MinkowskiDecomposition>& maximal,
                                           std::uint64_t seed = 1);

}  // namespace toricdef
