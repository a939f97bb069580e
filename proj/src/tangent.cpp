#include "toricdef/tangent.hpp"

#include <algorithm>
#include <numeric>

#include "toricdef/errors.hpp"

namespace toricdef {

std::vector<RatVector> vk_equations(const Polytope& p, std::int64_t k) {
    const std::size_t n = p.num_edges();
    std::vector<RatVector> rows;
    for (const auto& face : p.two_faces())
        for (std::size_t a = 0; a < p.dim(); ++a) {
            RatVector row(n + 1, Rat(0));
            for (const auto& fe : face) row[fe.edge] += fe.sign * p.edges()[fe.edge].vector[a];
            rows.push_back(std::move(row));
        }
    for (std::size_t i = 0; i < n; ++i)
        if (p.edges()[i].length <= k - 1) {
            RatVector row(n + 1, Rat(0));
            row[i] = 1;
            row[n] = -1;
            rows.push_back(std::move(row));
        }
    if (k == 1) {
        RatVector row(n + 1, Rat(0));
        row[n] = 1;
        rows.push_back(std::move(row));
    }
    return rows;
}

VkSpace vk_space(const Polytope& p, std::int64_t k) {
    if (k < 1) throw ValidationError("degree k must be positive");
    VkSpace v;
    v.k = k;
    v.basis = rational_nullspace(vk_equations(p, k), p.num_edges() + 1);
    v.dim = v.basis.size();
    return v;
}

std::size_t t1_dimension(const Polytope& p, std::int64_t k) {
    // the all-ones vector (s = 1 for k >= 2, s = 0 for k = 1) always lies in V_k
    return vk_space(p, k).dim - 1;
}

std::vector<RatVector> t0b_equations(const Polytope& p, std::int64_t k, std::size_t u0_edge) {
    const std::size_t n = p.num_edges();
    std::vector<RatVector> rows;
    for (std::size_t i = 0; i < n; ++i)
        if (p.edges()[i].length < k) {
            RatVector row(n, Rat(0));
            row[i] = 1;
            rows.push_back(std::move(row));
        }
    for (const auto& face : p.two_faces())
        for (std::size_t a = 0; a < p.dim(); ++a) {
            RatVector row(n, Rat(0));
            bool any = false;
            for (const auto& fe : face) {
                const auto& e = p.edges()[fe.edge];
                if (e.length < k) continue;
                row[fe.edge] += fe.sign * e.primitive[a];
                any = any || e.primitive[a] != 0;
            }
            if (any) rows.push_back(std::move(row));
        }
    if (k == 1) {
        RatVector row(n, Rat(0));
        row[u0_edge] = 1;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<RatVector> t0b_basis(const Polytope& p, std::int64_t k, std::size_t u0_edge) {
    if (k < 1) throw ValidationError("degree k must be positive");
    return rational_nullspace(t0b_equations(p, k, u0_edge), p.num_edges());
}

std::int64_t default_kmax(const Polytope& p) { return p.max_edge_length(); }

std::vector<Prop32Row> tangent_comparison(const Polytope& p, std::int64_t kmax, std::size_t u0_edge) {
    std::vector<Prop32Row> rows;
    for (std::int64_t k = 1; k <= kmax; ++k) rows.push_back({k, t0b_basis(p, k, u0_edge).size(), t1_dimension(p, k)});
    return rows;
}

void require_tangent_equality(const std::vector<Prop32Row>& rows) {
    for (const auto& r : rows)
        if (r.t0b != r.t1)
            throw CorrectnessError("tangent space of the base has dimension " + std::to_string(r.t0b) + " in degree " +
                                   std::to_string(r.k) + " but T1 has dimension " + std::to_string(r.t1));
}

namespace {

void require_polygon(const Polytope& p, const char* what) {
    if (p.dim() != 2) throw UnsupportedError(std::string(what) + " needs a polygon, got dimension " + std::to_string(p.dim()));
}

bool first_nonzero_positive(const Point& c) {
    for (auto x : c)
        if (x != 0) return x > 0;
    return false;
}

bool independent2(const Point& a, const Point& b) { return a[0] * b[1] - a[1] * b[0] != 0; }

}  // namespace

WidthInvariants width_invariants(const Polytope& p) {
    require_polygon(p, "lattice width invariants");
    const std::int64_t bound = std::max(width(p, Point{1, 0}), width(p, Point{0, 1}));
    std::vector<std::pair<std::int64_t, Point>> cands;
    for (auto& c : box_points(2, width_box(p, bound)))
        if (first_nonzero_positive(c)) {
            auto w = width(p, c);
            if (w <= bound) cands.emplace_back(w, std::move(c));
        }
    std::sort(cands.begin(), cands.end());
    WidthInvariants wi;
    wi.n1 = cands.front().first;
    wi.b1 = cands.front().second;
    for (const auto& [w, c] : cands)
        if (independent2(c, wi.b1)) {
            wi.n2 = w;
            wi.b2 = c;
            break;
        }
    return wi;
}

LengthInvariants length_invariants(const Polytope& p) {
    LengthInvariants li;
    const auto& es = p.edges();
    for (std::size_t i = 0; i < es.size(); ++i) {
        li.l1 = std::max(li.l1, es[i].length);
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            std::vector<RatVector> rows{to_rational(std::span<const std::int64_t>(es[i].primitive)),
                                        to_rational(std::span<const std::int64_t>(es[j].primitive))};
            if (rational_rank(rows, p.dim()) == 2) li.l2 = std::max(li.l2, std::min(es[i].length, es[j].length));
        }
    }
    return li;
}

std::string to_string(T2Method m) {
    switch (m) {
        case T2Method::General: return "general";
        case T2Method::Lattice3d: return "lattice3d";
        case T2Method::ClosedForm3d: return "closedform3d";
    }
    return "?";
}

std::size_t t2_dimension_general(const Polytope& p, const HilbertBasis& hb, std::int64_t k) {
    if (k < 1) throw ValidationError("degree k must be positive");
    const std::size_t dim = p.dim() + 1;
    std::vector<Point> E;
    for (const auto& g : hb.elements) {
        Point e = g.c;
        e.push_back(g.eta);
        E.push_back(std::move(e));
    }
    Point rstar(dim, 0);
    rstar.back() = 1;
    E.push_back(rstar);
    const std::size_t m = E.size();
    const std::size_t nv = p.num_vertices();

    auto pairing = [&](std::size_t v, const Point& e) {
        return dot(p.vertices()[v], std::span<const std::int64_t>(e).first(dim - 1)) + e.back();
    };
    std::vector<std::vector<bool>> member(nv, std::vector<bool>(m));
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t j = 0; j < m; ++j) member[v][j] = pairing(v, E[j]) < k;

    // relations among the elements flagged in `mask`, embedded in Q^m
    auto relations = [&](const std::vector<bool>& mask) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < m; ++j)
            if (mask[j]) idx.push_back(j);
        std::vector<RatVector> rows;
        for (std::size_t a = 0; a < dim; ++a) {
            RatVector row;
            for (auto j : idx) row.emplace_back(E[j][a]);
            rows.push_back(std::move(row));
        }
        std::vector<RatVector> out;
        for (auto& q : rational_nullspace(rows, idx.size())) {
            RatVector full(m, Rat(0));
            for (std::size_t t = 0; t < idx.size(); ++t) full[idx[t]] = q[t];
            out.push_back(std::move(full));
        }
        return out;
    };

    std::size_t total = 0;
    RowEchelon summed(m);
    for (std::size_t v = 0; v < nv; ++v) {
        auto rel = relations(member[v]);
        total += rel.size();
        for (auto& q : rel) summed.insert(q);
    }
    const std::size_t kernel_dim = total - summed.rank();

    RowEchelon image(nv * m);
    for (const auto& e : p.edges()) {
        std::vector<bool> both(m);
        for (std::size_t j = 0; j < m; ++j) both[j] = member[e.tail][j] && member[e.head][j];
        for (const auto& q : relations(both)) {
            RatVector vec(nv * m, Rat(0));
            for (std::size_t j = 0; j < m; ++j) {
                vec[e.tail * m + j] = q[j];
                vec[e.head * m + j] = -q[j];
            }
            image.insert(std::move(vec));
        }
    }
    return kernel_dim - image.rank();
}

std::size_t t2_dimension_lattice3d(const Polytope& p, std::int64_t k) {
    require_polygon(p, "the lattice T2 formula");
    if (k < 1) throw ValidationError("degree k must be positive");
    const auto& cv = p.ccw_vertices();
    const std::size_t n = cv.size();
    const RatVector rstar{Rat(0), Rat(0), Rat(1)};

    // numerator: intersection of the spans attached to the boundary edges,
    // described by the union of their annihilators
    std::vector<RatVector> annihilators;
    std::int64_t normal_box = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = p.vertices()[cv[i]];
        const auto& b = p.vertices()[cv[(i + 1) % n]];
        const Point d{b[0] - a[0], b[1] - a[1]};
        const auto len = std::gcd(d[0], d[1]);
        const Point normal{-d[1] / len, d[0] / len};
        normal_box = std::max({normal_box, std::abs(normal[0]), std::abs(normal[1])});
        std::vector<RatVector> span;
        if (k >= 2) {
            if (len < k) continue;  // the whole space
            span = {{Rat(normal[0]), Rat(normal[1]), Rat(eta(p, normal))}, rstar};
        } else {
            // K-set elements r in S with <a, r> = <a', r> = 0, found by enumeration
            for (const auto& c : box_points(2, normal_box + 1)) {
                const auto h = -dot(a, c);
                if (h == -dot(b, c) && in_dual_cone(p, c, h)) span.push_back({Rat(c[0]), Rat(c[1]), Rat(h)});
            }
        }
        for (auto& row : rational_nullspace(span, 3)) annihilators.push_back(std::move(row));
    }
    const std::size_t num_dim = 3 - rational_rank(annihilators, 3);

    // denominator: (c, eta(c)) with width(c) <= k - 1, plus R* when k >= 2
    std::vector<RatVector> den_vectors;
    if (k >= 2) {
        den_vectors.push_back(rstar);
        for (const auto& c : box_points(2, width_box(p, k - 1)))
            if (width(p, c) <= k - 1) den_vectors.push_back({Rat(c[0]), Rat(c[1]), Rat(eta(p, c))});
    }
    RowEchelon den(3), joint(3);
    for (const auto& r : rational_nullspace(annihilators, 3)) joint.insert(r);
    for (const auto& v : den_vectors) {
        den.insert(v);
        if (joint.insert(v)) throw CorrectnessError("T2 span formula: denominator not contained in numerator");
    }
    return num_dim - den.rank();
}

T2Profile t2_closed_form_3d(const Polytope& p, std::int64_t kmax) {
    require_polygon(p, "the closed T2 formula");
    T2Profile prof;
    prof.method = T2Method::ClosedForm3d;
    const auto wi = width_invariants(p);
    const auto li = length_invariants(p);
    prof.n1 = wi.n1;
    prof.n2 = wi.n2;
    prof.l1 = li.l1;
    prof.l2 = li.l2;
    for (std::int64_t k = 1; k <= kmax; ++k) {
        std::size_t d = 0;
        if (li.l2 < k && k <= li.l1 && k <= wi.n1) d = 1;
        else if (k > li.l1 && wi.n1 < k && k <= wi.n2) d = 1;
        else if (k > li.l1 && k <= wi.n1) d = 2;
        prof.dims.push_back(d);
    }
    return prof;
}

T2Profile t2_profile(const Polytope& p, const HilbertBasis& hb, T2Method method, std::int64_t kmax) {
    if (method == T2Method::ClosedForm3d) return t2_closed_form_3d(p, kmax);
    T2Profile prof;
    prof.method = method;
    if (p.dim() == 2) {
        const auto wi = width_invariants(p);
        const auto li = length_invariants(p);
        prof.n1 = wi.n1;
        prof.n2 = wi.n2;
        prof.l1 = li.l1;
        prof.l2 = li.l2;
    }
    for (std::int64_t k = 1; k <= kmax; ++k)
        prof.dims.push_back(method == T2Method::General ? t2_dimension_general(p, hb, k) : t2_dimension_lattice3d(p, k));
    return prof;
}

std::int64_t default_t2_kmax(const Polytope& p) {
    if (p.dim() == 2) return width_invariants(p).n2 + 1;
    return p.max_edge_length() + 1;
}

}  // namespace toricdef
