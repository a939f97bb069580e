#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "toricdef/monoid.hpp"
#include "toricdef/polyring.hpp"
#include "toricdef/polytope.hpp"

namespace toricdef {

enum class IdealStrategy { FacesBasis, MinimalWidth };
std::string to_string(IdealStrategy s);
IdealStrategy parse_strategy(const std::string& s);

/// p_d = prod u_i^(d_i+ / l_i) - prod u_i^(d_i- / l_i).
struct TTildeBinomial {
    std::vector<std::int64_t> d;
    Polynomial binomial;  // in u1..un
    std::int64_t degree = 0;  // sum of d_i+
};

using TTildeIdeal = std::vector<TTildeBinomial>;

/// d(face, c)_i = sign of edge i in the face times <d^i, c>; zero off the face.
std::vector<std::int64_t> face_vector(const Polytope& p, std::size_t face, std::span<const std::int64_t> c);

/// Checks l_i | d_i and d orthogonal to T(P), then builds p_d. Throws CorrectnessError.
TTildeBinomial ttilde_binomial(const Polytope& p, std::vector<std::int64_t> d);

/// Generators of the ideal in the u-variables. Minimal-width needs a polygon.
TTildeIdeal ttilde_generators(const Polytope& p, IdealStrategy strategy = IdealStrategy::FacesBasis);

/// The deformation parameters T_ij, 1 <= j <= l_i, without T_{u0_edge,1}.
std::vector<Variable> t_variables(const Polytope& p, std::size_t u0_edge = 0);

/// u_i = u0^l_i + sum_j T_ij u0^(l_i - j), with T_{u0_edge,1} = 0. Pass Variable::t() for the family.
std::map<Variable, Polynomial> edge_substitution(const Polytope& p, std::size_t u0_edge, Variable base);

/// Coefficients p^(i)_d of u0^(g_d - i), i = 0..g_d (index i).
std::vector<Polynomial> u0_coefficients(const Polytope& p, const TTildeBinomial& b, std::size_t u0_edge = 0);

/// All nonzero p^(i)_d, i >= 1, over the generators; scalar duplicates removed.
std::vector<Polynomial> base_ideal_generators(const Polytope& p, const TTildeIdeal& gens, std::size_t u0_edge = 0);

/// Per degree k, excludes T_ik for a maximal set of edges with independent columns in the
/// tangent equations, preferring long edges and then high indices. Returns the kept ones.
std::vector<Variable> choose_basis(const Polytope& p, std::size_t u0_edge = 0);

struct BaseSpace {
    std::size_t u0_edge = 0;
    IdealStrategy strategy = IdealStrategy::FacesBasis;
    TTildeIdeal ttilde;
    std::vector<Variable> variables;  // all T parameters
    std::vector<Polynomial> ib_full;
    std::vector<Variable> basis;  // T_b
    std::map<Variable, Polynomial> elimination_map;
    std::vector<Polynomial> ib_reduced;  // minimal homogeneous generators in T_b
};

/// ttilde generators, I_B, basis choice, elimination and certification in one go.
BaseSpace base_space(const Polytope& p, IdealStrategy strategy = IdealStrategy::FacesBasis, std::size_t u0_edge = 0);

/// Fills elimination_map and ib_reduced; certifies that the substituted I_B and I_b
/// generate the same ideal. Throws CorrectnessError if an excluded parameter is never isolated.
void eliminate(BaseSpace& bs);

/// Applies the elimination map, giving a polynomial in T_b.
Polynomial to_basis(const BaseSpace& bs, const Polynomial& f);

/// Throws CorrectnessError unless the linear parts of I_B cut out the tangent space of the base.
void require_tangent_match(const Polytope& p, const BaseSpace& bs);

/// Monomials in vars of the given weighted degree, ascending.
std::vector<Monomial> monomials_of_weight(const std::vector<Variable>& vars, int weight);

/// Exact membership in a homogeneous ideal, checked degree by degree. With strict, only
/// multiples by monomials of positive degree count (membership in gens * (vars)).
bool in_homogeneous_ideal(const Polynomial& f, const std::vector<Polynomial>& gens,
                          const std::vector<Variable>& vars, bool strict = false);

/// Drops generators already in the ideal of the others of lower or equal degree.
std::vector<Polynomial> minimal_generators(std::vector<Polynomial> gens, const std::vector<Variable>& vars);

/// dims[k-1] = dim W_k for k = 1..kmax.
std::vector<std::size_t> w_graded_dims(const BaseSpace& bs, std::int64_t kmax);

/// p^(k)_{d+e} - p^(k)_d - p^(k)_e, pushed to T_b.
Polynomial additivity_defect(const Polytope& p, const BaseSpace& bs, const std::vector<std::int64_t>& d,
                             const std::vector<std::int64_t>& e, std::int64_t k);

/// Membership in J_b = I_b * (T_b).
bool in_jb(const BaseSpace& bs, const Polynomial& f);

struct FamilyMember {
    std::vector<std::int64_t> k;
    std::vector<std::int64_t> boundary;  // exponents of x in the second term
    std::int64_t lam = 0;
    std::vector<std::int64_t> lam_tilde;
    Polynomial f;        // x, t
    Polynomial F_u;      // x, u
    Polynomial F_tT;     // x, t, T
};

struct FamilyEquations {
    std::int64_t degree_bound = 0;
    std::size_t u0_edge = 0;
    std::vector<FamilyMember> members;
};

/// All f_k with 1 <= |k| <= D that are not identically zero, deduplicated. Checks that
/// setting T = 0, or u_i = t^l_i, gives back f_k.
FamilyEquations family_binomials(const Polytope& p, const HilbertBasis& hb, std::int64_t degree_bound = 3,
                                 std::size_t u0_edge = 0);

using TangentVector = std::map<Variable, Rat>;

struct FirstOrderMember {
    std::vector<std::int64_t> k;
    Polynomial f;
    Polynomial first_order;  // coefficient of epsilon
};

/// Derivative of F_k(x, t, eps * tvec) at eps = 0. Throws ValidationError if tvec is not
/// tangent to the base.
std::vector<FirstOrderMember> first_order_family(const Polytope& p, const FamilyEquations& fam,
                                                 const TangentVector& tvec);

void require_tangent_vector(const Polytope& p, const TangentVector& tvec, std::size_t u0_edge = 0);

/// Script for a computer-algebra system: ring, family ideal, I_B and I_b.
std::string export_cas(const BaseSpace& bs, const FamilyEquations& fam, std::size_t num_x);

}  // namespace toricdef
