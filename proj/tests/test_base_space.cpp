#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "toricdef/base_space.hpp"
#include "toricdef/tangent.hpp"

using namespace toricdef;
using toricdef::testing::fixture;

namespace {

bool same_up_to_sign(const Polynomial& a, const Polynomial& b) { return a == b || a == -b; }

// each expected polynomial occurs, up to sign, exactly once
void expect_generators(const std::vector<Polynomial>& got, const std::vector<std::string>& want) {
    ASSERT_EQ(got.size(), want.size());
    for (const auto& w : want) {
        auto pw = parse_polynomial(w);
        int hits = 0;
        for (const auto& g : got) hits += same_up_to_sign(g, pw);
        EXPECT_EQ(hits, 1) << w;
    }
}

std::vector<Polytope> two_d_fixtures() {
    return {fixture("house.poly"), fixture("triangle.poly"), fixture("square2.poly")};
}

// Brute force: small integer rescalings of the edges that still close up.
std::vector<std::vector<std::int64_t>> closing_vectors(const Polytope& p, std::int64_t box) {
    std::vector<std::vector<std::int64_t>> out;
    const auto n = p.num_edges();
    std::vector<std::int64_t> t(n, -box);
    for (;;) {
        std::int64_t sx = 0, sy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sx += t[i] * p.edges()[i].vector[0];
            sy += t[i] * p.edges()[i].vector[1];
        }
        if (sx == 0 && sy == 0) out.push_back(t);
        std::size_t a = 0;
        while (a < n && t[a] == box) t[a++] = -box;
        if (a == n) break;
        ++t[a];
    }
    return out;
}

Point random_point(std::mt19937_64& rng, std::int64_t r) {
    std::uniform_int_distribution<std::int64_t> d(-r, r);
    return {d(rng), d(rng)};
}

}  // namespace

TEST(BaseSpace, HouseBinomials) {
    auto gens = ttilde_generators(fixture("house.poly"));
    ASSERT_EQ(gens.size(), 2u);
    EXPECT_EQ(gens[0].binomial, parse_polynomial("u4 - u1*u2"));
    EXPECT_EQ(gens[1].binomial, parse_polynomial("u5*u1 - u2*u3"));
    EXPECT_EQ(gens[0].degree, 2);
    EXPECT_EQ(gens[1].degree, 3);
}

TEST(BaseSpace, IntervalHasNoBinomials) {
    EXPECT_TRUE(ttilde_generators(interval(4)).empty());
    EXPECT_THROW(ttilde_generators(interval(4), IdealStrategy::MinimalWidth), UnsupportedError);
}

TEST(BaseSpace, BinomialExponentsAreOrthogonal) {
    std::mt19937_64 rng(41);
    std::vector<Polytope> polys = two_d_fixtures();
    for (int i = 0; i < 6; ++i) polys.push_back(toricdef::testing::random_polygon(rng, 5, 2));
    for (const auto& p : polys) {
        auto closing = closing_vectors(p, 2);
        for (const auto& b : ttilde_generators(p)) {
            // exponent difference times lengths recovers d
            for (std::size_t i = 0; i < p.num_edges(); ++i) {
                auto u = Variable::u(i + 1);
                std::int64_t diff = 0;
                for (const auto& [m, c] : b.binomial.terms()) diff += (c > 0 ? 1 : -1) * m.exponent(u);
                EXPECT_EQ(diff * p.edges()[i].length, b.d[i]);
            }
            for (const auto& t : closing) {
                std::int64_t s = 0;
                for (std::size_t i = 0; i < t.size(); ++i) s += t[i] * b.d[i];
                EXPECT_EQ(s, 0);
            }
        }
    }
}

TEST(BaseSpace, BadVectorsAreRejected) {
    auto p = fixture("house.poly");
    EXPECT_THROW(ttilde_binomial(p, {0, 0, 1, 0, 0}), CorrectnessError);  // not divisible
    EXPECT_THROW(ttilde_binomial(p, {1, 0, 0, 0, 0}), CorrectnessError);  // not orthogonal
}

TEST(BaseSpace, HouseBaseIdeal) {
    auto bs = base_space(fixture("house.poly"));
    expect_generators(bs.ib_full, {"T41 - T21", "T42", "T51 - T21 - T31", "T52 - T32 - T21*T31", "T21*T32"});
    for (const auto& g : bs.ib_full) {
        auto parts = g.graded_components();
        EXPECT_EQ(parts.size(), 1u) << g.to_string();
    }
    EXPECT_EQ(bs.basis, (std::vector<Variable>{Variable::T(2, 1), Variable::T(3, 1), Variable::T(3, 2)}));
    expect_generators(bs.ib_reduced, {"T21*T32"});
    const std::map<Variable, std::string> elim{{Variable::T(4, 1), "T21"},
                                               {Variable::T(4, 2), "0"},
                                               {Variable::T(5, 1), "T21 + T31"},
                                               {Variable::T(5, 2), "T32 + T21*T31"}};
    ASSERT_EQ(bs.elimination_map.size(), elim.size());
    for (const auto& [v, s] : elim) EXPECT_EQ(bs.elimination_map.at(v), parse_polynomial(s)) << v.name();
}

TEST(BaseSpace, IntervalBase) {
    for (std::int64_t m = 2; m <= 5; ++m) {
        auto bs = base_space(interval(m));
        EXPECT_TRUE(bs.ib_full.empty());
        EXPECT_TRUE(bs.ib_reduced.empty());
        EXPECT_TRUE(bs.elimination_map.empty());
        std::vector<Variable> want;
        for (std::int64_t j = 2; j <= m; ++j) want.push_back(Variable::T(1, j));
        EXPECT_EQ(bs.basis, want);
    }
}

TEST(BaseSpace, TriangleIsRigid) {
    auto bs = base_space(fixture("triangle.poly"));
    EXPECT_TRUE(bs.basis.empty());
    EXPECT_TRUE(bs.ib_reduced.empty());
    EXPECT_EQ(bs.elimination_map.size(), 2u);
    for (const auto& [v, h] : bs.elimination_map) EXPECT_TRUE(h.is_zero());
}

TEST(BaseSpace, BasisSizeIsTangentDimension) {
    std::mt19937_64 rng(43);
    std::vector<Polytope> polys = two_d_fixtures();
    for (int i = 0; i < 15; ++i) polys.push_back(toricdef::testing::random_polygon(rng, 6, 3));
    for (const auto& p : polys)
        for (std::size_t u0 = 0; u0 < p.num_edges(); u0 += 2) {
            auto basis = choose_basis(p, u0);
            for (std::int64_t k = 1; k <= p.max_edge_length(); ++k) {
                auto count = std::count_if(basis.begin(), basis.end(), [&](const Variable& v) { return v.j() == k; });
                EXPECT_EQ(static_cast<std::size_t>(count), t1_dimension(p, k));
            }
            EXPECT_NO_THROW(base_space(p, IdealStrategy::FacesBasis, u0));
        }
}

TEST(BaseSpace, StrategiesGenerateTheSameIdeal) {
    std::mt19937_64 rng(47);
    std::vector<Polytope> polys = two_d_fixtures();
    for (int i = 0; i < 12; ++i) polys.push_back(toricdef::testing::random_polygon(rng, 6, 3));
    for (const auto& p : polys) {
        auto a = base_space(p, IdealStrategy::FacesBasis);
        auto b = base_space(p, IdealStrategy::MinimalWidth);
        for (const auto& g : a.ib_full) EXPECT_TRUE(in_homogeneous_ideal(g, b.ib_full, a.variables)) << g.to_string();
        for (const auto& g : b.ib_full) EXPECT_TRUE(in_homogeneous_ideal(g, a.ib_full, a.variables)) << g.to_string();
        EXPECT_EQ(w_graded_dims(a, 8), w_graded_dims(b, 8));
    }
}

TEST(BaseSpace, HomogeneousMembership) {
    std::vector<Variable> vars{Variable::T(1, 1), Variable::T(2, 1), Variable::T(2, 2)};
    std::vector<Polynomial> gens{parse_polynomial("T11*T21")};
    EXPECT_TRUE(in_homogeneous_ideal(parse_polynomial("T11^2*T21 - 3*T11*T21^2"), gens, vars));
    EXPECT_TRUE(in_homogeneous_ideal(parse_polynomial("T11*T21*T22"), gens, vars));
    EXPECT_FALSE(in_homogeneous_ideal(parse_polynomial("T11^2"), gens, vars));
    EXPECT_TRUE(in_homogeneous_ideal(parse_polynomial("T11*T21"), gens, vars));
    EXPECT_FALSE(in_homogeneous_ideal(parse_polynomial("T11*T21"), gens, vars, true));
    EXPECT_EQ(monomials_of_weight(vars, 2).size(), 4u);  // T11^2, T11*T21, T21^2, T22
}

TEST(BaseSpace, WDimensions) {
    auto house = base_space(fixture("house.poly"));
    EXPECT_EQ(w_graded_dims(house, 5), (std::vector<std::size_t>{0, 0, 1, 0, 0}));
    EXPECT_EQ(w_graded_dims(base_space(interval(4)), 5), std::vector<std::size_t>(5, 0));
    EXPECT_EQ(w_graded_dims(base_space(fixture("triangle.poly")), 3), std::vector<std::size_t>(3, 0));
}

TEST(BaseSpace, WBoundedByT2) {
    std::mt19937_64 rng(53);
    std::vector<Polytope> polys = two_d_fixtures();
    for (int i = 0; i < 15; ++i) polys.push_back(toricdef::testing::random_polygon(rng, 6, 3));
    for (const auto& p : polys) {
        auto hb = hilbert_basis(p);
        auto kmax = width_invariants(p).n2 + 2;
        auto w = w_graded_dims(base_space(p), kmax);
        for (std::int64_t k = 1; k <= kmax; ++k) EXPECT_LE(w[k - 1], t2_dimension_general(p, hb, k)) << k;
    }
}

TEST(BaseSpace, AdditivityModuloJb) {
    std::mt19937_64 rng(59);
    std::vector<Polytope> polys = two_d_fixtures();
    for (int i = 0; i < 5; ++i) polys.push_back(toricdef::testing::random_polygon(rng, 5, 2));
    for (const auto& p : polys) {
        auto bs = base_space(p);
        for (int trial = 0; trial < 6; ++trial) {
            auto d = face_vector(p, 0, random_point(rng, 3));
            auto e = face_vector(p, 0, random_point(rng, 3));
            std::int64_t top = 0;
            for (std::size_t i = 0; i < d.size(); ++i) top += std::abs(d[i]) + std::abs(e[i]);
            for (std::int64_t k = 1; k <= std::min<std::int64_t>(top, 6); ++k) {
                auto defect = additivity_defect(p, bs, d, e, k);
                EXPECT_TRUE(in_jb(bs, defect)) << defect.to_string();
            }
        }
    }
}

TEST(BaseSpace, IntervalFamily) {
    auto p = interval(3);
    auto fam = family_binomials(p, hilbert_basis(p), 2);
    bool found = false;
    for (const auto& m : fam.members)
        if (m.F_tT == parse_polynomial("x1*x2 - t^3 - T12*t - T13")) found = true;
    EXPECT_TRUE(found);
    for (const auto& m : fam.members) EXPECT_FALSE(m.f.is_zero());
}

TEST(BaseSpace, HouseFamilyProjects) {
    auto p = fixture("house.poly");
    auto fam = family_binomials(p, hilbert_basis(p), 3);
    ASSERT_FALSE(fam.members.empty());
    std::map<Variable, Polynomial> zero;
    for (const auto& v : t_variables(p)) zero.emplace(v, Polynomial());
    for (const auto& m : fam.members) {
        EXPECT_EQ(m.F_tT.substitute(zero), m.f);
        // both sides of f_k are the same monoid element: substitute x_j = chi^(c_j, eta_j) via weights
        auto hb = hilbert_basis(p);
        std::int64_t h_left = 0, h_right = m.lam;
        for (std::size_t j = 0; j < hb.size(); ++j) {
            h_left += m.k[j] * hb.elements[j].eta;
            h_right += m.boundary[j] * hb.elements[j].eta;
        }
        EXPECT_EQ(h_left, h_right);
        EXPECT_EQ(combination(hb, m.k), combination(hb, m.boundary));
    }
}

TEST(BaseSpace, FirstOrderMatchesDerivative) {
    auto p = interval(3);
    auto fam = family_binomials(p, hilbert_basis(p), 3);
    TangentVector tv{{Variable::T(1, 2), Rat(1)}};
    auto fo = first_order_family(p, fam, tv);
    ASSERT_EQ(fo.size(), fam.members.size());
    // oracle: put T = eps * tvec with eps a fresh variable and read off the eps-linear part
    const auto eps = Variable::K(0);
    std::map<Variable, Polynomial> sub;
    for (const auto& v : t_variables(p)) {
        auto it = tv.find(v);
        sub.emplace(v, it == tv.end() ? Polynomial() : Polynomial(eps) * Polynomial(it->second));
    }
    for (std::size_t a = 0; a < fo.size(); ++a) {
        auto coeffs = fam.members[a].F_tT.substitute(sub).coefficients_in(eps);
        EXPECT_EQ(fo[a].first_order, coeffs.count(1) ? coeffs[1] : Polynomial());
        if (fam.members[a].f == parse_polynomial("x1*x2 - t^3")) EXPECT_EQ(fo[a].first_order, parse_polynomial("-t"));
    }
}

TEST(BaseSpace, FirstOrderExponentsHouse) {
    auto p = fixture("house.poly");
    auto fam = family_binomials(p, hilbert_basis(p), 3);
    auto dir = t0b_basis(p, 2);
    ASSERT_EQ(dir.size(), 1u);
    TangentVector tv;
    for (std::size_t i = 0; i < p.num_edges(); ++i)
        if (dir[0][i] != 0) tv[Variable::T(i + 1, 2)] = dir[0][i];
    auto fo = first_order_family(p, fam, tv);
    bool any = false;
    for (std::size_t a = 0; a < fo.size(); ++a)
        for (const auto& [m, c] : fo[a].first_order.terms()) {
            any = true;
            EXPECT_EQ(m.exponent(Variable::t()), fam.members[a].lam - 2);
        }
    EXPECT_TRUE(any);
    EXPECT_TRUE(first_order_family(p, fam, {}).front().first_order.is_zero());
    EXPECT_THROW(first_order_family(p, fam, {{Variable::T(4, 2), Rat(1)}}), ValidationError);
    EXPECT_THROW(first_order_family(p, fam, {{Variable::T(1, 2), Rat(1)}}), ValidationError);
}

TEST(BaseSpace, CasExport) {
    auto p = fixture("house.poly");
    auto hb = hilbert_basis(p);
    auto bs = base_space(p);
    auto text = export_cas(bs, family_binomials(p, hb, 2), hb.size());
    EXPECT_EQ(text.rfind("ring R = 0, (", 0), 0u);
    for (const auto& g : bs.ib_full) EXPECT_NE(text.find(g.to_string()), std::string::npos);
    EXPECT_EQ(text, export_cas(bs, family_binomials(p, hb, 2), hb.size()));

    auto q = interval(3);
    auto empty = export_cas(base_space(q), FamilyEquations{}, 2);
    EXPECT_NE(empty.find("ideal family = 0;"), std::string::npos);
    EXPECT_NE(empty.find("ideal IB = 0;"), std::string::npos);
}
