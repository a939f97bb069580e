#include "toricdef/monoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "toricdef/errors.hpp"

namespace toricdef {

std::int64_t eta(const Polytope& p, std::span<const std::int64_t> c) {
    return -p.pairing(min_vertex(p, c), c);
}

bool in_dual_cone(const Polytope& p, std::span<const std::int64_t> c, std::int64_t h) {
    return h >= eta(p, c);
}

std::int64_t total_pairing(const Polytope& p, std::span<const std::int64_t> c, std::int64_t h) {
    std::int64_t s = 0;
    for (std::size_t v = 0; v < p.num_vertices(); ++v) s += p.pairing(v, c) + h;
    return s;
}

std::int64_t TFunctional::deg() const { return std::accumulate(coeffs.begin(), coeffs.end(), std::int64_t{0}); }

bool TFunctional::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](auto x) { return x == 0; });
}

TFunctional& TFunctional::operator+=(const TFunctional& o) {
    if (coeffs.size() < o.coeffs.size()) coeffs.resize(o.coeffs.size(), 0);
    for (std::size_t i = 0; i < o.coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
}

TFunctional& TFunctional::operator-=(const TFunctional& o) {
    if (coeffs.size() < o.coeffs.size()) coeffs.resize(o.coeffs.size(), 0);
    for (std::size_t i = 0; i < o.coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
}

TFunctional TFunctional::operator*(std::int64_t s) const {
    TFunctional r(*this);
    for (auto& x : r.coeffs) x *= s;
    return r;
}

FunctionalSpace::FunctionalSpace(const Polytope& p) : basis_(integer_kernel_basis(p.face_relation_matrix())) {}

std::vector<Int> FunctionalSpace::evaluate(const TFunctional& f) const {
    std::vector<Int> out;
    for (const auto& g : basis_.generators()) {
        Int s = 0;
        for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * Int(static_cast<long>(f.coeffs[i]));
        out.push_back(s);
    }
    return out;
}

bool FunctionalSpace::equal(const TFunctional& a, const TFunctional& b) const {
    return evaluate(a) == evaluate(b);
}

TFunctional eta_tilde(const Polytope& p, std::span<const std::int64_t> c) {
    const auto path = path_lambda(p, min_vertex(p, c));
    TFunctional f(p.num_edges());
    for (std::size_t i = 0; i < p.num_edges(); ++i)
        f.coeffs[i] = -path.steps[i] * dot(p.edges()[i].vector, c);
    return f;
}

namespace {

// Rays of the dual cone, as (c, eta(c)) with c primitive.
std::vector<Point> dual_rays(const Polytope& p) {
    std::vector<Point> rays;
    if (p.dim() == 1) {
        rays = {{1}, {-1}};
    } else {
        const auto& cv = p.ccw_vertices();
        for (std::size_t i = 0; i < cv.size(); ++i) {
            const auto& a = p.vertices()[cv[i]];
            const auto& b = p.vertices()[cv[(i + 1) % cv.size()]];
            Point n{-(b[1] - a[1]), b[0] - a[0]};
            auto g = std::gcd(n[0], n[1]);
            rays.push_back({n[0] / g, n[1] / g});
        }
    }
    return rays;
}

bool lex_less(const HilbertGenerator& a, const HilbertGenerator& b) {
    return std::tie(a.c, a.eta) < std::tie(b.c, b.eta);
}

}  // namespace

HilbertBasis hilbert_basis(const Polytope& p) {
    if (p.dim() > 2)
        throw UnsupportedError("built-in Hilbert basis needs dim <= 2; supply 'gen' lines for dimension " +
                               std::to_string(p.dim()));
    // Every minimal generator lies in the half-open parallelepiped of dim+1 rays,
    // so its total pairing is below the sum of the largest dim+1 ray pairings.
    std::vector<std::int64_t> ray_levels;
    for (const auto& w : dual_rays(p)) ray_levels.push_back(total_pairing(p, w, eta(p, w)));
    std::sort(ray_levels.rbegin(), ray_levels.rend());
    std::int64_t bound = 0;
    for (std::size_t i = 0; i <= p.dim() && i < ray_levels.size(); ++i) bound += ray_levels[i];

    struct Candidate {
        std::int64_t level;
        Point c;
        std::int64_t h;
    };
    std::vector<Candidate> cands;
    const auto box = width_box(p, bound);
    for (auto& c : box_points(p.dim(), box)) {
        if (std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; })) continue;
        const auto h = eta(p, c);
        const auto level = total_pairing(p, c, h);
        if (level <= bound) cands.push_back({level, std::move(c), h});
    }
    cands.push_back({static_cast<std::int64_t>(p.num_vertices()), Point(p.dim(), 0), 1});
    std::sort(cands.begin(), cands.end(),
              [](const auto& a, const auto& b) { return std::tie(a.level, a.c, a.h) < std::tie(b.level, b.c, b.h); });

    std::vector<const Candidate*> irreducible;
    for (const auto& x : cands) {
        bool reducible = false;
        for (const auto* y : irreducible) {
            Point diff(p.dim());
            for (std::size_t a = 0; a < p.dim(); ++a) diff[a] = x.c[a] - y->c[a];
            if (in_dual_cone(p, diff, x.h - y->h)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) irreducible.push_back(&x);
    }
    HilbertBasis hb;
    for (const auto* x : irreducible)
        if (std::any_of(x->c.begin(), x->c.end(), [](auto v) { return v != 0; }))
            hb.elements.push_back({x->c, x->h});
    std::sort(hb.elements.begin(), hb.elements.end(), lex_less);
    return hb;
}

bool generated_by(const Polytope& p, const HilbertBasis& hb, std::span<const std::int64_t> c, std::int64_t h) {
    std::map<std::pair<Point, std::int64_t>, bool> memo;
    auto rec = [&](auto&& self, const Point& x, std::int64_t hx) -> bool {
        if (!in_dual_cone(p, x, hx)) return false;
        if (hx == 0 && std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; })) return true;
        auto key = std::make_pair(x, hx);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool ok = hx > eta(p, x) && self(self, x, hx - 1);
        for (std::size_t j = 0; !ok && j < hb.size(); ++j) {
            Point y(x.size());
            for (std::size_t a = 0; a < x.size(); ++a) y[a] = x[a] - hb.c(j)[a];
            ok = self(self, y, hx - hb.elements[j].eta);
        }
        memo[key] = ok;
        return ok;
    };
    return rec(rec, Point(c.begin(), c.end()), h);
}

HilbertBasis validated_hilbert_basis(const Polytope& p, std::vector<HilbertGenerator> gens,
                                     std::int64_t check_level) {
    HilbertBasis hb;
    for (auto& g : gens) {
        if (g.c.size() != p.dim()) throw ValidationError("Hilbert generator has wrong dimension");
        bool zero = std::all_of(g.c.begin(), g.c.end(), [](auto v) { return v == 0; });
        if (zero && g.eta == 1) continue;  // R*, implicit
        if (zero || g.eta != eta(p, g.c))
            throw ValidationError("Hilbert generator " + format_point(g.c) + " does not have height eta(c) = " +
                                  std::to_string(eta(p, g.c)));
        hb.elements.push_back(g);
    }
    std::sort(hb.elements.begin(), hb.elements.end(), lex_less);
    hb.elements.erase(std::unique(hb.elements.begin(), hb.elements.end(),
                                  [](const auto& a, const auto& b) { return a.c == b.c; }),
                      hb.elements.end());

    auto minus = [&](const Point& a, const Point& b) {
        Point d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
        return d;
    };
    for (const auto& x : hb.elements) {
        if (in_dual_cone(p, x.c, x.eta - 1))
            throw ValidationError("Hilbert generator " + format_point(x.c) + " is reducible");
        for (const auto& y : hb.elements)
            if (y.c != x.c && in_dual_cone(p, minus(x.c, y.c), x.eta - y.eta))
                throw ValidationError("Hilbert generator " + format_point(x.c) + " is reducible");
    }

    const auto box = width_box(p, check_level);
    for (const auto& c : box_points(p.dim(), box)) {
        std::int64_t hi = check_level;
        for (std::size_t v = 0; v < p.num_vertices(); ++v) hi = std::min(hi, check_level - p.pairing(v, c));
        for (std::int64_t h = eta(p, c); h <= hi; ++h)
            if (!generated_by(p, hb, c, h))
                throw ValidationError("Hilbert generators do not generate (" + format_point(c) + ", " +
                                      std::to_string(h) + ")");
    }
    return hb;
}

HilbertBasis hilbert_basis_for(const PolytopeFile& file) {
    if (file.hilbert) return validated_hilbert_basis(file.polytope, *file.hilbert);
    return hilbert_basis(file.polytope);
}

Point combination(const HilbertBasis& hb, std::span<const std::int64_t> k) {
    Point c(hb.size() ? hb.c(0).size() : 0, 0);
    for (std::size_t j = 0; j < hb.size(); ++j)
        for (std::size_t a = 0; a < c.size(); ++a) c[a] += k[j] * hb.c(j)[a];
    return c;
}

std::int64_t eta_of(const Polytope& p, const HilbertBasis& hb, std::span<const std::int64_t> k) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < hb.size(); ++j) s += k[j] * hb.elements[j].eta;
    return s - eta(p, combination(hb, k));
}

FreePairDecomposition free_pair_decompose(const Polytope& p, const HilbertBasis& hb,
                                          std::span<const std::int64_t> k) {
    if (k.size() != hb.size()) throw ValidationError("exponent tuple has wrong length");
    FreePairDecomposition d;
    d.k.assign(k.begin(), k.end());
    d.c = combination(hb, k);
    d.eta_c = eta(p, d.c);
    d.boundary = eta_tilde(p, d.c);
    d.lam_tilde = TFunctional(p.num_edges());
    const auto vc = min_vertex(p, d.c);
    for (std::size_t j = 0; j < hb.size(); ++j) {
        if (k[j] == 0) continue;
        const auto path = path_mu(p, vc, hb.c(j));
        for (std::size_t i = 0; i < p.num_edges(); ++i)
            d.lam_tilde.coeffs[i] -= k[j] * path.steps[i] * dot(p.edges()[i].vector, hb.c(j));
    }
    d.lam = d.lam_tilde.deg();
    return d;
}

std::vector<std::int64_t> boundary_representation(const Polytope& p, const HilbertBasis& hb,
                                                  std::span<const std::int64_t> c) {
    std::vector<std::int64_t> b(hb.size(), 0);
    Point cur(c.begin(), c.end());
    auto stays = [&](const Point& x, std::size_t j) {
        Point y(x.size());
        for (std::size_t a = 0; a < x.size(); ++a) y[a] = x[a] - hb.c(j)[a];
        return std::make_pair(eta(p, y) + hb.elements[j].eta == eta(p, x), y);
    };
    while (std::any_of(cur.begin(), cur.end(), [](auto v) { return v != 0; })) {
        bool found = false;
        for (std::size_t j = 0; j < hb.size() && !found; ++j) {
            auto [ok, next] = stays(cur, j);
            while (ok) {
                found = true;
                ++b[j];
                cur = next;
                std::tie(ok, next) = stays(cur, j);
            }
        }
        if (!found) throw CorrectnessError("no boundary representation of " + format_point(c));
    }
    return b;
}

std::vector<std::vector<std::int64_t>> exponent_tuples(std::size_t r, std::int64_t bound) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> k(r, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::int64_t left) -> void {
        if (pos + 1 == r) {
            k[pos] = left;
            out.push_back(k);
            return;
        }
        for (std::int64_t x = left; x >= 0; --x) {
            k[pos] = x;
            self(self, pos + 1, left - x);
        }
    };
    if (r == 0) return out;
    for (std::int64_t s = 1; s <= bound; ++s) rec(rec, 0, s);
    return out;
}

}  // namespace toricdef
