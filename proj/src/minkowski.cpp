#include "toricdef/minkowski.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "toricdef/errors.hpp"
#include "toricdef/linalg.hpp"
#include "toricdef/seed.hpp"

namespace toricdef {

bool closes_up(const Polytope& p, const SplitVector& n) {
    for (const auto& face : p.two_faces()) {
        Point s(p.dim(), 0);
        for (const auto& fe : face)
            for (std::size_t a = 0; a < p.dim(); ++a) s[a] += fe.sign * n[fe.edge] * p.edges()[fe.edge].primitive[a];
        if (std::any_of(s.begin(), s.end(), [](auto x) { return x != 0; })) return false;
    }
    return true;
}

std::vector<Point> summand_vertices(const Polytope& p, const SplitVector& n) {
    if (p.dim() == 1) return {Point{0}, Point{n[0]}};
    if (p.dim() != 2) throw UnsupportedError("summand shapes are only drawn for polygons");
    std::vector<Point> pts;
    Point cur{0, 0};
    for (const auto& fe : p.two_faces()[0]) {
        const auto len = n[fe.edge];
        if (len == 0) continue;
        const auto& prim = p.edges()[fe.edge].primitive;
        cur = {cur[0] + fe.sign * len * prim[0], cur[1] + fe.sign * len * prim[1]};
        pts.push_back(cur);
    }
    if (pts.empty()) return {Point{0, 0}};
    std::int64_t area2 = 0;
    for (std::size_t a = 0; a < pts.size(); ++a) {
        const auto& u = pts[a];
        const auto& v = pts[(a + 1) % pts.size()];
        area2 += u[0] * v[1] - u[1] * v[0];
    }
    if (area2 < 0) std::reverse(pts.begin(), pts.end());
    std::rotate(pts.begin(), std::min_element(pts.begin(), pts.end()), pts.end());
    const Point base = pts.front();
    for (auto& q : pts) q = {q[0] - base[0], q[1] - base[1]};
    return pts;
}

namespace {

// Odometer over the box 0 <= n_i <= bound_i.
template <class F>
void for_each_below(const SplitVector& bound, F&& visit) {
    SplitVector n(bound.size(), 0);
    for (;;) {
        visit(n);
        std::size_t a = 0;
        while (a < n.size() && n[a] == bound[a]) n[a++] = 0;
        if (a == n.size()) return;
        ++n[a];
    }
}

bool is_zero(const SplitVector& n) {
    return std::all_of(n.begin(), n.end(), [](auto x) { return x == 0; });
}

bool fits(const SplitVector& a, const SplitVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

SplitVector edge_lengths(const Polytope& p) {
    SplitVector l;
    for (const auto& e : p.edges()) l.push_back(e.length);
    return l;
}

}  // namespace

std::vector<SplitVector> lattice_summands(const Polytope& p) {
    std::vector<SplitVector> out;
    for_each_below(edge_lengths(p), [&](const SplitVector& n) {
        if (!is_zero(n) && closes_up(p, n)) out.push_back(n);
    });
    std::sort(out.rbegin(), out.rend());
    return out;
}

bool is_indecomposable(const Polytope& p, const SplitVector& n) {
    bool split = false;
    for_each_below(n, [&](const SplitVector& m) {
        if (!split && !is_zero(m) && m != n && closes_up(p, m)) split = true;
    });
    return !split;
}

std::vector<MinkowskiDecomposition> enumerate_decompositions(const Polytope& p, bool maximal_only) {
    if (p.dim() > 2) throw UnsupportedError("Minkowski decompositions are enumerated for dim <= 2 only");
    auto parts = lattice_summands(p);
    if (maximal_only)
        std::erase_if(parts, [&](const SplitVector& n) { return !is_indecomposable(p, n); });
    std::vector<MinkowskiDecomposition> out;
    MinkowskiDecomposition cur;
    auto rec = [&](auto&& self, std::size_t start, SplitVector& left) -> void {
        if (is_zero(left)) {
            out.push_back(cur);
            return;
        }
        for (std::size_t j = start; j < parts.size(); ++j) {
            if (!fits(parts[j], left)) continue;
            for (std::size_t i = 0; i < left.size(); ++i) left[i] -= parts[j][i];
            cur.summands.push_back(parts[j]);
            self(self, j, left);
            cur.summands.pop_back();
            for (std::size_t i = 0; i < left.size(); ++i) left[i] += parts[j][i];
        }
    };
    auto total = edge_lengths(p);
    rec(rec, 0, total);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.summands < b.summands; });
    return out;
}

MinkowskiDecomposition validated_decomposition(const Polytope& p, const std::vector<SummandEdgeLength>& entries) {
    std::size_t count = 0;
    for (const auto& e : entries) {
        if (e.edge >= p.num_edges()) throw ValidationError("summand entry names edge " + std::to_string(e.edge + 1) +
                                                           ", which does not exist");
        count = std::max(count, e.summand + 1);
    }
    MinkowskiDecomposition dec;
    dec.summands.assign(count, SplitVector(p.num_edges(), 0));
    for (const auto& e : entries) dec.summands[e.summand][e.edge] += e.length;
    for (std::size_t k = 0; k < count; ++k) {
        if (is_zero(dec.summands[k])) throw ValidationError("summand " + std::to_string(k) + " is empty");
        if (!closes_up(p, dec.summands[k])) throw ValidationError("summand " + std::to_string(k) + " does not close up");
    }
    for (std::size_t i = 0; i < p.num_edges(); ++i) {
        std::int64_t s = 0;
        for (const auto& n : dec.summands) s += n[i];
        if (s != p.edges()[i].length)
            throw ValidationError("splits of edge " + std::to_string(i + 1) + " add up to " + std::to_string(s) +
                                  ", not " + std::to_string(p.edges()[i].length));
    }
    std::sort(dec.summands.rbegin(), dec.summands.rend());
    return dec;
}

std::vector<MinkowskiDecomposition> decompositions_for(const PolytopeFile& file, bool maximal_only) {
    if (file.polytope.dim() <= 2) return enumerate_decompositions(file.polytope, maximal_only);
    if (!file.minkowski) throw UnsupportedError("dim >= 3 needs a 'minkowski' stanza in the input");
    return {validated_decomposition(file.polytope, *file.minkowski)};
}

std::map<Variable, Polynomial> map_f(const Polytope& p, const MinkowskiDecomposition& dec) {
    std::map<Variable, Polynomial> f;
    for (std::size_t i = 0; i < p.num_edges(); ++i) {
        Monomial m;
        for (std::size_t k = 0; k < dec.size(); ++k)
            if (dec.split(i, k) > 0) m = m * Monomial(Variable::K(k), static_cast<int>(dec.split(i, k)));
        f.emplace(Variable::u(i + 1), Polynomial(m, 1));
    }
    return f;
}

bool f_kills_binomials(const Polytope& p, const MinkowskiDecomposition& dec) {
    const auto f = map_f(p, dec);
    for (const auto& b : ttilde_generators(p))
        if (!b.binomial.substitute(f).is_zero()) return false;
    return true;
}

Polynomial f_of_u0(const Polytope& p, const MinkowskiDecomposition& dec, std::size_t u0_edge) {
    Polynomial s;
    for (std::size_t k = 0; k < dec.size(); ++k) s += Polynomial(Variable::K(k)) * Polynomial(Rat(dec.split(u0_edge, k)));
    return s * Polynomial(Rat(1, static_cast<unsigned long>(p.edges()[u0_edge].length)));
}

namespace {

Rat binomial(std::int64_t n, std::int64_t k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rat(r);
}

// sum over p_k <= n_k with sum p_k = j of prod binom(n_k, p_k) diff_k^p_k
Polynomial g_sum(const std::vector<std::int64_t>& n, const std::vector<Polynomial>& diff, std::int64_t j) {
    Polynomial total;
    std::vector<std::int64_t> pk(n.size(), 0);
    auto rec = [&](auto&& self, std::size_t k, std::int64_t left) -> void {
        if (k == n.size()) {
            if (left != 0) return;
            Polynomial term(Rat(1));
            for (std::size_t a = 0; a < n.size(); ++a)
                if (pk[a] > 0) term *= diff[a].pow(static_cast<unsigned>(pk[a])) * Polynomial(binomial(n[a], pk[a]));
            total += term;
            return;
        }
        for (std::int64_t v = 0; v <= std::min(n[k], left); ++v) {
            pk[k] = v;
            self(self, k + 1, left - v);
        }
        pk[k] = 0;
    };
    rec(rec, 0, j);
    return total;
}

}  // namespace

MapG map_g(const Polytope& p, const MinkowskiDecomposition& dec, const BaseSpace& bs) {
    MapG out;
    const auto f = map_f(p, dec);
    const auto f0 = f_of_u0(p, dec, bs.u0_edge);
    std::vector<Polynomial> diff;
    for (std::size_t k = 0; k < dec.size(); ++k) diff.push_back(Polynomial(Variable::K(k)) - f0);

    for (std::size_t i = 0; i < p.num_edges(); ++i) {
        const auto l = p.edges()[i].length;
        std::vector<std::int64_t> n;
        for (std::size_t k = 0; k < dec.size(); ++k) n.push_back(dec.split(i, k));
        Polynomial rhs = f0.pow(static_cast<unsigned>(l));
        for (std::int64_t j = 1; j <= l; ++j) {
            auto gij = g_sum(n, diff, j);
            rhs += f0.pow(static_cast<unsigned>(l - j)) * gij;
            if (i == bs.u0_edge && j == 1) {
                if (!gij.is_zero()) out.failures.push_back("g(T_" + std::to_string(i + 1) + ",1) = " + gij.to_string());
                continue;
            }
            out.assignment.emplace(Variable::T(i + 1, j), std::move(gij));
        }
        if (!(rhs == f.at(Variable::u(i + 1)))) {
            out.edge_identity = false;
            out.failures.push_back("edge " + std::to_string(i + 1) + ": " + (rhs - f.at(Variable::u(i + 1))).to_string());
        }
    }
    for (const auto& g : bs.ib_full) {
        auto img = g.substitute(out.assignment);
        if (!img.is_zero()) {
            out.kills_base_ideal = false;
            out.failures.push_back(g.to_string() + " maps to " + img.to_string());
        }
    }
    return out;
}

std::size_t component_dimension(const MapG& g, const BaseSpace& bs, std::size_t num_summands, std::uint64_t seed,
                                std::size_t* redraws) {
    if (redraws) *redraws = 0;
    if (num_summands < 2 || bs.basis.empty()) return 0;
    // the image only depends on differences, so K_0 can be set to zero
    const std::map<Variable, Polynomial> k0{{Variable::K(0), Polynomial()}};
    std::vector<Polynomial> image;
    for (const auto& v : bs.basis) image.push_back(g.assignment.at(v).substitute(k0));
    std::vector<Variable> params;
    for (std::size_t k = 1; k < num_summands; ++k) params.push_back(Variable::K(k));
    const auto jac = jacobian(image, params);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-97, 97);
    std::size_t best = 0;
    for (int attempt = 0; attempt < 4 && best < std::min(image.size(), params.size()); ++attempt) {
        std::map<Variable, Rat> point;
        for (const auto& v : params) point[v] = Rat(coord(rng));
        std::vector<RatVector> rows;
        for (const auto& row : jac) {
            RatVector r;
            for (const auto& e : row) r.push_back(e.evaluate(point));
            rows.push_back(std::move(r));
        }
        best = std::max(best, rational_rank(rows, params.size()));
        if (redraws && attempt > 0) ++*redraws;
    }
    return best;
}

std::size_t preferred_u0_edge(const Polytope& p, const std::vector<MinkowskiDecomposition>& maximal) {
    for (std::size_t i = 0; i < p.num_edges(); ++i)
        for (const auto& dec : maximal)
            for (std::size_t k = 0; k < dec.size(); ++k)
                if (dec.split(i, k) == p.edges()[i].length) return i;
    return 0;
}

namespace {

// Splits f into linear forms over the T_b coordinates, or fails.
std::optional<std::vector<RatVector>> linear_factors(const Polynomial& f, const std::vector<Variable>& vars) {
    std::map<Variable, std::size_t> index;
    for (std::size_t a = 0; a < vars.size(); ++a) index[vars[a]] = a;
    std::vector<RatVector> out;
    // common monomial content first
    std::map<Variable, int> content;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        std::map<Variable, int> here;
        for (const auto& [v, e] : m.factors()) here[v] = e;
        if (first) {
            content = here;
            first = false;
            continue;
        }
        for (auto it = content.begin(); it != content.end();) {
            auto h = here.find(it->first);
            if (h == here.end()) {
                it = content.erase(it);
            } else {
                it->second = std::min(it->second, h->second);
                ++it;
            }
        }
    }
    Polynomial rest;
    for (const auto& [m, c] : f.terms()) {
        Monomial q = m;
        for (const auto& [v, e] : content) q = q.quotient(Monomial(v, e));
        rest += Polynomial(q, c);
    }
    for (const auto& [v, e] : content) {
        if (!index.count(v)) return std::nullopt;
        RatVector r(vars.size(), Rat(0));
        r[index[v]] = 1;
        for (int k = 0; k < e; ++k) out.push_back(r);
    }
    if (rest.is_constant()) return out;
    if (rest.degree() != 1) return std::nullopt;
    RatVector r(vars.size(), Rat(0));
    for (const auto& [m, c] : rest.terms()) {
        if (m.is_one()) return std::nullopt;
        auto v = m.factors().front().first;
        if (!index.count(v)) return std::nullopt;
        r[index[v]] = c;
    }
    out.push_back(r);
    return out;
}

bool row_space_contains(const std::vector<RatVector>& big, const std::vector<RatVector>& small, std::size_t n) {
    RowEchelon e(n);
    for (const auto& r : big) e.insert(r);
    for (const auto& r : small)
        if (!e.contains(r)) return false;
    return true;
}

}  // namespace

std::optional<std::vector<LinearComponent>> linear_components(const BaseSpace& bs) {
    const auto& vars = bs.basis;
    const std::size_t n = vars.size();
    std::vector<std::vector<RatVector>> factors;
    for (const auto& g : bs.ib_reduced) {
        auto f = linear_factors(g, vars);
        if (!f) return std::nullopt;
        factors.push_back(std::move(*f));
    }
    // one factor per generator; the zero set is the union over all choices
    std::vector<std::vector<RatVector>> candidates;
    std::vector<RatVector> cur;
    auto rec = [&](auto&& self, std::size_t g) -> void {
        if (g == factors.size()) {
            candidates.push_back(cur);
            return;
        }
        for (const auto& r : factors[g]) {
            cur.push_back(r);
            self(self, g + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);

    // keep the maximal subspaces, i.e. the minimal row spaces
    std::vector<std::vector<RatVector>> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
        bool drop = false;
        for (std::size_t b = 0; b < candidates.size() && !drop; ++b) {
            if (a == b) continue;
            const bool b_in_a = row_space_contains(candidates[a], candidates[b], n);
            const bool a_in_b = row_space_contains(candidates[b], candidates[a], n);
            if (b_in_a && (!a_in_b || b < a)) drop = true;
        }
        if (!drop) kept.push_back(candidates[a]);
    }
    std::vector<LinearComponent> out;
    for (const auto& rows : kept) {
        LinearComponent c;
        RowEchelon e(n);
        for (const auto& r : rows)
            if (e.insert(r)) {
                Polynomial eq;
                for (std::size_t a = 0; a < n; ++a)
                    if (r[a] != 0) eq += Polynomial(vars[a]) * Polynomial(r[a]);
                c.equations.push_back(eq.monic());
            }
        c.dim = n - e.rank();
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        std::vector<std::string> sa, sb;
        for (const auto& e : a.equations) sa.push_back(e.to_string());
        for (const auto& e : b.equations) sb.push_back(e.to_string());
        return sa < sb;
    });
    return out;
}

CorrespondenceReport correspondence_report(const Polytope& p, const BaseSpace& bs,
                                           const std::vector<MinkowskiDecomposition>& maximal, std::uint64_t seed) {
    CorrespondenceReport rep;
    for (std::size_t idx = 0; idx < maximal.size(); ++idx) {
        const auto& dec = maximal[idx];
        DecompositionCheck chk;
        chk.dec = dec;
        chk.f_ok = f_kills_binomials(p, dec);
        const auto g = map_g(p, dec, bs);
        chk.edge_identity = g.edge_identity && g.failures.empty();
        chk.kills_base_ideal = g.kills_base_ideal;
        chk.dimension = component_dimension(g, bs, dec.size(), split_seed(seed, idx), &chk.redraws);
        for (const auto& v : bs.basis) chk.image.emplace(v, g.assignment.at(v));
        rep.decompositions.push_back(std::move(chk));
    }
    rep.components = linear_components(bs);
    const bool all_maps_ok = std::all_of(rep.decompositions.begin(), rep.decompositions.end(), [](const auto& c) {
        return c.f_ok && c.edge_identity && c.kills_base_ideal;
    });
    if (!rep.components) {
        rep.status = "verification partial: inclusion ⊇ only";
        return rep;
    }
    const auto& comps = *rep.components;
    std::vector<int> hits(comps.size(), 0);
    bool each_once = true;
    for (auto& chk : rep.decompositions) {
        std::vector<std::size_t> matches;
        for (std::size_t c = 0; c < comps.size(); ++c) {
            if (comps[c].dim != chk.dimension) continue;
            bool inside = true;
            for (const auto& eq : comps[c].equations) inside = inside && eq.substitute(chk.image).is_zero();
            if (inside) matches.push_back(c);
        }
        if (matches.size() == 1) {
            chk.component = matches.front();
            ++hits[matches.front()];
        } else {
            each_once = false;
        }
    }
    rep.bijective = all_maps_ok && each_once && comps.size() == rep.decompositions.size() &&
                    std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
    rep.status = rep.bijective ? "verified" : "mismatch";
    return rep;
}

}  // namespace toricdef
