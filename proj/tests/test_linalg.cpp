#include <gtest/gtest.h>

#include <random>

#include "toricdef/linalg.hpp"

using namespace toricdef;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long range) {
    std::uniform_int_distribution<long> dist(-range, range);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
    return m;
}

// Oracle: cofactor expansion.
Int cofactor_det(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Int total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, mc = 0; c < n; ++c)
                if (c != j) minor(r - 1, mc++) = m(r, c);
        Int term = m(0, j) * cofactor_det(minor);
        total += (j % 2 == 0) ? term : Int(-term);
    }
    return total;
}

bool is_hermite(const IntMatrix& h) {
    std::size_t last_pivot = 0;
    bool seen_zero_row = false;
    for (std::size_t r = 0; r < h.rows(); ++r) {
        std::size_t p = 0;
        while (p < h.cols() && h(r, p) == 0) ++p;
        if (p == h.cols()) {
            seen_zero_row = true;
            continue;
        }
        if (seen_zero_row) return false;
        if (r > 0 && p <= last_pivot && !(r == 0)) return false;
        if (h(r, p) <= 0) return false;
        for (std::size_t above = 0; above < r; ++above)
            if (h(above, p) < 0 || h(above, p) >= h(r, p)) return false;
        last_pivot = p;
    }
    return true;
}

}  // namespace

TEST(Hermite, SmallExample) {
    IntMatrix m{{2, 4}, {1, 3}};
    auto hf = hermite_normal_form(m);
    EXPECT_EQ(hf.h, (IntMatrix{{1, 1}, {0, 2}}));
    EXPECT_EQ(hf.u * m, hf.h);
    EXPECT_EQ(abs(determinant(hf.u)), 1);
}

TEST(Hermite, ZeroAndIdentity) {
    IntMatrix z(2, 3);
    auto hz = hermite_normal_form(z);
    EXPECT_TRUE(hz.h.is_zero());
    auto hi = hermite_normal_form(IntMatrix::identity(3));
    EXPECT_EQ(hi.h, IntMatrix::identity(3));
}

TEST(Hermite, RandomMatricesSatisfyDefiningProperties) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
        auto m = random_matrix(rng, r, c, 6);
        auto hf = hermite_normal_form(m);
        EXPECT_EQ(hf.u * m, hf.h);
        EXPECT_EQ(abs(cofactor_det(hf.u)), 1);
        EXPECT_TRUE(is_hermite(hf.h)) << hf.h.to_string();
        EXPECT_EQ(rational_rank(m), rational_rank(hf.h));
    }
}

TEST(Determinant, MatchesCofactorExpansion) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + trial % 5;
        auto m = random_matrix(rng, n, n, 5);
        EXPECT_EQ(determinant(m), cofactor_det(m));
    }
    EXPECT_EQ(determinant(IntMatrix{{1, 2}, {2, 4}}), 0);
}

TEST(Kernel, OneRelation) {
    auto k = integer_kernel_basis(IntMatrix{{1, 1}});
    ASSERT_EQ(k.rank(), 1u);
    EXPECT_TRUE(k.contains({Int(1), Int(-1)}));
    EXPECT_TRUE(k.contains({Int(-3), Int(3)}));
    EXPECT_FALSE(k.contains({Int(1), Int(1)}));
}

TEST(Kernel, ContainsExactlyTheBruteForceSolutions) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_matrix(rng, 1 + trial % 2, 3, 3);
        auto k = integer_kernel_basis(m);
        EXPECT_EQ(k.rank(), 3 - rational_rank(m));
        for (long a = -4; a <= 4; ++a)
            for (long b = -4; b <= 4; ++b)
                for (long c = -4; c <= 4; ++c) {
                    IntVector v{Int(a), Int(b), Int(c)};
                    auto mv = m * v;
                    bool zero = std::all_of(mv.begin(), mv.end(), [](const Int& x) { return x == 0; });
                    EXPECT_EQ(zero, k.contains(v));
                }
    }
}

TEST(Kernel, ConstrainedByModuli) {
    std::vector<Int> moduli{Int(2), Int(2)};
    auto k = constrained_kernel_lattice(IntMatrix{{1, 1}}, moduli);
    ASSERT_EQ(k.rank(), 1u);
    EXPECT_TRUE(k.contains({Int(2), Int(-2)}));
    EXPECT_FALSE(k.contains({Int(1), Int(-1)}));
}

TEST(Kernel, ConstrainedBruteForce) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto m = random_matrix(rng, 1, 3, 3);
        std::vector<Int> moduli{Int(1 + trial % 3), Int(2), Int(1 + trial % 2)};
        auto k = constrained_kernel_lattice(m, moduli);
        for (long a = -6; a <= 6; ++a)
            for (long b = -6; b <= 6; ++b)
                for (long c = -6; c <= 6; ++c) {
                    IntVector v{Int(a), Int(b), Int(c)};
                    auto mv = m * v;
                    bool ok = mv[0] == 0;
                    for (int i = 0; i < 3; ++i) ok = ok && (v[i] % moduli[i] == 0);
                    EXPECT_EQ(ok, k.contains(v));
                }
    }
}

TEST(RowEchelonTest, RankAndMembership) {
    RowEchelon e(3);
    EXPECT_TRUE(e.insert({Rat(1), Rat(2), Rat(3)}));
    EXPECT_FALSE(e.insert({Rat(2), Rat(4), Rat(6)}));
    EXPECT_TRUE(e.insert({Rat(0), Rat(1), Rat(1)}));
    EXPECT_EQ(e.rank(), 2u);
    EXPECT_TRUE(e.contains({Rat(1), Rat(3), Rat(4)}));
    EXPECT_FALSE(e.contains({Rat(0), Rat(0), Rat(1)}));
}

TEST(Nullspace, OrthogonalToRows) {
    std::vector<RatVector> rows{{Rat(1), Rat(1), Rat(0)}, {Rat(0), Rat(1), Rat(-1)}};
    auto ns = rational_nullspace(rows, 3);
    ASSERT_EQ(ns.size(), 1u);
    for (const auto& r : rows) {
        Rat s = 0;
        for (int i = 0; i < 3; ++i) s += r[i] * ns[0][i];
        EXPECT_EQ(s, 0);
    }
    EXPECT_EQ(primitive_integer_vector({Rat(1, 2), Rat(-1, 3), Rat(0)}),
              (IntVector{Int(3), Int(-2), Int(0)}));
}
