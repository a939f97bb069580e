#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "toricdef/linalg.hpp"
#include "toricdef/monoid.hpp"
#include "toricdef/polytope.hpp"

namespace toricdef {

/// V_k(P) in coordinates (t_1k, ..., t_nk, s_k).
struct VkSpace {
    std::int64_t k = 0;
    std::size_t dim = 0;
    std::vector<RatVector> basis;
};

/// The linear conditions cutting out V_k(P), one row per equation.
std::vector<RatVector> vk_equations(const Polytope& p, std::int64_t k);
VkSpace vk_space(const Polytope& p, std::int64_t k);
std::size_t t1_dimension(const Polytope& p, std::int64_t k);

/// The degree-k part of the tangent space of the base, in coordinates T_1k..T_nk.
/// For k = 1 the parameter of u0_edge is fixed to zero.
std::vector<RatVector> t0b_equations(const Polytope& p, std::int64_t k, std::size_t u0_edge = 0);
std::vector<RatVector> t0b_basis(const Polytope& p, std::int64_t k, std::size_t u0_edge = 0);

/// Largest k for which anything can be nonzero: the longest edge.
std::int64_t default_kmax(const Polytope& p);

struct Prop32Row {
    std::int64_t k = 0;
    std::size_t t0b = 0;
    std::size_t t1 = 0;
};

/// dim T0B(k) against dim T1(-kR*) for k = 1..kmax.
std::vector<Prop32Row> tangent_comparison(const Polytope& p, std::int64_t kmax, std::size_t u0_edge = 0);

/// Throws CorrectnessError naming the first k where the two dimensions differ.
void require_tangent_equality(const std::vector<Prop32Row>& rows);

/// Lattice-width invariants of a polygon.
struct WidthInvariants {
    std::int64_t n1 = 0;  // min width over nonzero c
    std::int64_t n2 = 0;  // min over independent pairs of the larger width
    Point b1, b2;         // realising directions, first nonzero coordinate positive
};
WidthInvariants width_invariants(const Polytope& p);

struct LengthInvariants {
    std::int64_t l1 = 0;  // longest edge
    std::int64_t l2 = 0;  // max over independent edge pairs of the shorter length
};
LengthInvariants length_invariants(const Polytope& p);

enum class T2Method { General, Lattice3d, ClosedForm3d };
std::string to_string(T2Method m);

struct T2Profile {
    T2Method method = T2Method::General;
    std::vector<std::size_t> dims;  // dims[k-1] = dim T2(-kR*)
    std::int64_t n1 = 0, n2 = 0, l1 = 0, l2 = 0;  // polygons only
};

/// Relation-module formula; works in every dimension given a Hilbert basis.
std::size_t t2_dimension_general(const Polytope& p, const HilbertBasis& hb, std::int64_t k);
/// Span formula for polygons.
std::size_t t2_dimension_lattice3d(const Polytope& p, std::int64_t k);
/// Case formula for polygons, k = 1..kmax.
T2Profile t2_closed_form_3d(const Polytope& p, std::int64_t kmax);

T2Profile t2_profile(const Polytope& p, const HilbertBasis& hb, T2Method method, std::int64_t kmax);

/// k-range on which T2 can be nonzero for polygons (n2 + 1); longest edge + 1 otherwise.
std::int64_t default_t2_kmax(const Polytope& p);

}  // namespace toricdef
