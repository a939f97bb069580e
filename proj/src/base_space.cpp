#include "toricdef/base_space.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "toricdef/errors.hpp"
#include "toricdef/linalg.hpp"
#include "toricdef/tangent.hpp"

namespace toricdef {

std::string to_string(IdealStrategy s) { return s == IdealStrategy::FacesBasis ? "faces-basis" : "minimal-width"; }

IdealStrategy parse_strategy(const std::string& s) {
    if (s == "faces-basis") return IdealStrategy::FacesBasis;
    if (s == "minimal-width") return IdealStrategy::MinimalWidth;
    throw ValidationError("unknown strategy '" + s + "' (faces-basis or minimal-width)");
}

std::vector<std::int64_t> face_vector(const Polytope& p, std::size_t face, std::span<const std::int64_t> c) {
    std::vector<std::int64_t> d(p.num_edges(), 0);
    for (const auto& fe : p.two_faces().at(face)) d[fe.edge] = fe.sign * dot(p.edges()[fe.edge].vector, c);
    return d;
}

TTildeBinomial ttilde_binomial(const Polytope& p, std::vector<std::int64_t> d) {
    const std::size_t n = p.num_edges();
    if (d.size() != n) throw CorrectnessError("binomial exponent vector has the wrong length");
    Monomial plus, minus;
    std::int64_t g = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto l = p.edges()[i].length;
        if (d[i] % l != 0)
            throw CorrectnessError("entry " + std::to_string(i + 1) + " of " + format_point(d) +
                                   " is not divisible by the edge length");
        if (d[i] > 0) {
            plus = plus * Monomial(Variable::u(i + 1), static_cast<int>(d[i] / l));
            g += d[i];
        } else if (d[i] < 0) {
            minus = minus * Monomial(Variable::u(i + 1), static_cast<int>(-d[i] / l));
        }
    }
    const auto kernel = integer_kernel_basis(p.face_relation_matrix());
    for (const auto& t : kernel.generators()) {
        Int s = 0;
        for (std::size_t i = 0; i < n; ++i) s += t[i] * d[i];
        if (s != 0) throw CorrectnessError(format_point(d) + " is not orthogonal to the edge-length space");
    }
    TTildeBinomial b;
    b.d = std::move(d);
    b.binomial = Polynomial(plus, 1) - Polynomial(minus, 1);
    b.degree = g;
    return b;
}

TTildeIdeal ttilde_generators(const Polytope& p, IdealStrategy strategy) {
    std::vector<std::vector<std::int64_t>> ds;
    if (strategy == IdealStrategy::MinimalWidth) {
        if (p.dim() != 2) throw UnsupportedError("the minimal-width strategy needs a polygon");
        const auto wi = width_invariants(p);
        ds.push_back(face_vector(p, 0, wi.b1));
        ds.push_back(face_vector(p, 0, wi.b2));
    } else {
        for (std::size_t f = 0; f < p.two_faces().size(); ++f)
            for (std::size_t a = 0; a < p.dim(); ++a) {
                Point c(p.dim(), 0);
                c[a] = 1;
                ds.push_back(face_vector(p, f, c));
            }
    }
    TTildeIdeal out;
    std::set<std::vector<std::int64_t>> seen;
    for (auto& d : ds) {
        auto nz = std::find_if(d.begin(), d.end(), [](auto x) { return x != 0; });
        if (nz == d.end()) continue;
        auto key = d;
        if (*nz < 0)
            for (auto& x : key) x = -x;
        if (!seen.insert(key).second) continue;
        out.push_back(ttilde_binomial(p, d));
    }
    return out;
}

std::vector<Variable> t_variables(const Polytope& p, std::size_t u0_edge) {
    std::vector<Variable> vars;
    for (std::size_t i = 0; i < p.num_edges(); ++i)
        for (std::int64_t j = 1; j <= p.edges()[i].length; ++j)
            if (!(i == u0_edge && j == 1)) vars.push_back(Variable::T(i + 1, j));
    return vars;
}

std::map<Variable, Polynomial> edge_substitution(const Polytope& p, std::size_t u0_edge, Variable base) {
    std::map<Variable, Polynomial> sub;
    const Polynomial b(base);
    for (std::size_t i = 0; i < p.num_edges(); ++i) {
        const auto l = p.edges()[i].length;
        Polynomial ui = b.pow(static_cast<unsigned>(l));
        for (std::int64_t j = 1; j <= l; ++j)
            if (!(i == u0_edge && j == 1)) ui += Polynomial(Variable::T(i + 1, j)) * b.pow(static_cast<unsigned>(l - j));
        sub.emplace(Variable::u(i + 1), std::move(ui));
    }
    return sub;
}

namespace {

void require_homogeneous(const Polynomial& f, int degree) {
    for (const auto& [m, c] : f.terms())
        if (m.weighted_degree() != degree)
            throw CorrectnessError(f.to_string() + " is not homogeneous of degree " + std::to_string(degree));
}

std::string scalar_key(const Polynomial& f) { return f.monic().to_string(); }

}  // namespace

std::vector<Polynomial> u0_coefficients(const Polytope& p, const TTildeBinomial& b, std::size_t u0_edge) {
    const auto sub = b.binomial.substitute(edge_substitution(p, u0_edge, Variable::u0()));
    const auto g = static_cast<int>(b.degree);
    std::vector<Polynomial> out(g + 1);
    for (auto& [e, coeff] : sub.coefficients_in(Variable::u0())) {
        if (e > g) throw CorrectnessError("u0-degree exceeds the binomial degree");
        require_homogeneous(coeff, g - e);
        out[g - e] = coeff;
    }
    if (!out[0].is_zero()) throw CorrectnessError("leading u0-coefficient of " + b.binomial.to_string() + " is not zero");
    return out;
}

std::vector<Polynomial> base_ideal_generators(const Polytope& p, const TTildeIdeal& gens, std::size_t u0_edge) {
    std::vector<Polynomial> out;
    std::set<std::string> seen;
    for (const auto& b : gens) {
        auto coeffs = u0_coefficients(p, b, u0_edge);
        for (std::size_t i = 1; i < coeffs.size(); ++i)
            if (!coeffs[i].is_zero() && seen.insert(scalar_key(coeffs[i])).second) out.push_back(coeffs[i]);
    }
    return out;
}

std::vector<Variable> choose_basis(const Polytope& p, std::size_t u0_edge) {
    const std::size_t n = p.num_edges();
    std::vector<Variable> kept;
    for (std::int64_t k = 1; k <= p.max_edge_length(); ++k) {
        const auto rows = t0b_equations(p, k, u0_edge);
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < n; ++i)
            if (p.edges()[i].length >= k && !(k == 1 && i == u0_edge)) order.push_back(i);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto la = p.edges()[a].length, lb = p.edges()[b].length;
            return la != lb ? la > lb : a > b;
        });
        RowEchelon columns(rows.size());
        std::set<std::size_t> excluded;
        for (auto i : order) {
            RatVector col(rows.size());
            for (std::size_t r = 0; r < rows.size(); ++r) col[r] = rows[r][i];
            if (columns.insert(col)) excluded.insert(i);
        }
        for (std::size_t i = 0; i < n; ++i)
            if (p.edges()[i].length >= k && !(k == 1 && i == u0_edge) && !excluded.count(i))
                kept.push_back(Variable::T(i + 1, k));
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::vector<Monomial> monomials_of_weight(const std::vector<Variable>& vars, int weight) {
    std::vector<Monomial> out;
    std::vector<int> exps(vars.size(), 0);
    auto rec = [&](auto&& self, std::size_t idx, int left) -> void {
        if (idx == vars.size()) {
            if (left != 0) return;
            Monomial m;
            for (std::size_t a = 0; a < vars.size(); ++a)
                if (exps[a] > 0) m = m * Monomial(vars[a], exps[a]);
            out.push_back(m);
            return;
        }
        const int w = vars[idx].weight();
        for (int e = 0; e * w <= left; ++e) {
            exps[idx] = e;
            self(self, idx + 1, left - e * w);
        }
        exps[idx] = 0;
    };
    if (weight >= 0) rec(rec, 0, weight);
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
}

bool in_homogeneous_ideal(const Polynomial& f, const std::vector<Polynomial>& gens, const std::vector<Variable>& vars,
                          bool strict) {
    for (const auto& [k, part] : f.graded_components()) {
        std::vector<Polynomial> span;
        for (const auto& g : gens) {
            if (g.is_zero()) continue;
            const int dg = g.weighted_degree();
            require_homogeneous(g, dg);
            if (dg > k || (strict && dg == k)) continue;
            for (const auto& m : monomials_of_weight(vars, k - dg)) span.push_back(g * Polynomial(m, 1));
        }
        std::map<Monomial, std::size_t, GrlexLess> index;
        for (const auto& s : span)
            for (const auto& [m, c] : s.terms()) index.emplace(m, 0);
        for (const auto& [m, c] : part.terms())
            if (!index.count(m)) return false;
        std::size_t col = 0;
        for (auto& [m, i] : index) i = col++;
        auto vec = [&](const Polynomial& q) {
            RatVector v(index.size(), Rat(0));
            for (const auto& [m, c] : q.terms()) v[index.at(m)] = c;
            return v;
        };
        RowEchelon ech(index.size());
        for (const auto& s : span) ech.insert(vec(s));
        if (!ech.contains(vec(part))) return false;
    }
    return true;
}

std::vector<Polynomial> minimal_generators(std::vector<Polynomial> gens, const std::vector<Variable>& vars) {
    std::vector<Polynomial> nonzero;
    for (auto& g : gens)
        if (!g.is_zero()) nonzero.push_back(g.monic());
    std::stable_sort(nonzero.begin(), nonzero.end(), [](const Polynomial& a, const Polynomial& b) {
        return a.weighted_degree() < b.weighted_degree();
    });
    std::vector<Polynomial> kept;
    for (auto& g : nonzero)
        if (!in_homogeneous_ideal(g, kept, vars)) kept.push_back(g);
    return kept;
}

Polynomial to_basis(const BaseSpace& bs, const Polynomial& f) { return f.substitute(bs.elimination_map); }

void eliminate(BaseSpace& bs) {
    std::set<Variable> excluded;
    const std::set<Variable> kept(bs.basis.begin(), bs.basis.end());
    for (const auto& v : bs.variables)
        if (!kept.count(v)) excluded.insert(v);

    std::vector<Polynomial> gens = bs.ib_full;
    std::map<Variable, Polynomial> assigned;
    for (;;) {
        std::vector<std::size_t> order(gens.size());
        for (std::size_t a = 0; a < order.size(); ++a) order[a] = a;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return gens[a].weighted_degree() < gens[b].weighted_degree();
        });
        bool progress = false;
        for (auto gi : order) {
            const auto& g = gens[gi];
            if (g.is_zero()) continue;
            std::optional<Variable> pick;
            Rat coeff;
            for (const auto& [m, c] : g.terms()) {
                if (m.degree() != 1) continue;
                const auto v = m.factors().front().first;
                if (excluded.count(v) && !assigned.count(v) && (!pick || v < *pick)) {
                    pick = v;
                    coeff = c;
                }
            }
            if (!pick) continue;
            // homogeneity keeps the pivot out of every other term
            Polynomial rest = g - Polynomial(Monomial(*pick), coeff);
            Polynomial h = -rest * Polynomial(Rat(1) / coeff);
            if (h.variables().count(*pick)) throw CorrectnessError("pivot " + pick->name() + " is not isolated");
            const std::map<Variable, Polynomial> one{{*pick, h}};
            for (auto& q : gens) q = q.substitute(one);
            for (auto& [v, q] : assigned) q = q.substitute(one);
            assigned.emplace(*pick, h);
            progress = true;
            break;
        }
        if (!progress) break;
    }
    for (const auto& v : excluded)
        if (!assigned.count(v)) throw CorrectnessError("parameter " + v.name() + " could not be eliminated");
    for (const auto& [v, q] : assigned)
        for (const auto& w : q.variables())
            if (!kept.count(w)) throw CorrectnessError("elimination of " + v.name() + " still involves " + w.name());

    bs.elimination_map = assigned;
    bs.ib_reduced = minimal_generators(gens, bs.basis);

    // both inclusions between the substituted I_B and (I_b)
    std::vector<Polynomial> substituted;
    for (const auto& g : bs.ib_full) substituted.push_back(to_basis(bs, g));
    for (const auto& g : substituted)
        if (!in_homogeneous_ideal(g, bs.ib_reduced, bs.basis))
            throw CorrectnessError(g.to_string() + " is not in the reduced base ideal");
    for (const auto& g : bs.ib_reduced)
        if (!in_homogeneous_ideal(g, substituted, bs.basis))
            throw CorrectnessError(g.to_string() + " is not in the substituted base ideal");
}

void require_tangent_match(const Polytope& p, const BaseSpace& bs) {
    const std::size_t n = p.num_edges();
    for (std::int64_t j = 1; j <= p.max_edge_length(); ++j) {
        const auto expected = t0b_equations(p, j, bs.u0_edge);
        std::vector<RatVector> linear;
        for (std::size_t i = 0; i < n; ++i)
            if (p.edges()[i].length < j || (j == 1 && i == bs.u0_edge)) {
                RatVector row(n, Rat(0));
                row[i] = 1;
                linear.push_back(std::move(row));
            }
        for (const auto& g : bs.ib_full) {
            if (g.weighted_degree() != j) continue;
            RatVector row(n, Rat(0));
            for (const auto& [m, c] : g.terms())
                if (m.degree() == 1) row[m.factors().front().first.i() - 1] = c;
            linear.push_back(std::move(row));
        }
        auto both = expected;
        both.insert(both.end(), linear.begin(), linear.end());
        const auto r = rational_rank(both, n);
        if (r != rational_rank(expected, n) || r != rational_rank(linear, n))
            throw CorrectnessError("linear part of the base ideal in degree " + std::to_string(j) +
                                   " does not cut out the tangent space");
    }
}

BaseSpace base_space(const Polytope& p, IdealStrategy strategy, std::size_t u0_edge) {
    if (u0_edge >= p.num_edges()) throw ValidationError("u0 edge " + std::to_string(u0_edge + 1) + " does not exist");
    BaseSpace bs;
    bs.u0_edge = u0_edge;
    bs.strategy = strategy;
    bs.ttilde = ttilde_generators(p, strategy);
    bs.variables = t_variables(p, u0_edge);
    bs.ib_full = base_ideal_generators(p, bs.ttilde, u0_edge);
    bs.basis = choose_basis(p, u0_edge);
    require_tangent_match(p, bs);
    eliminate(bs);
    return bs;
}

std::vector<std::size_t> w_graded_dims(const BaseSpace& bs, std::int64_t kmax) {
    std::vector<std::size_t> dims(static_cast<std::size_t>(std::max<std::int64_t>(kmax, 0)), 0);
    for (const auto& g : bs.ib_reduced) {
        const auto k = g.weighted_degree();
        if (k >= 1 && k <= kmax) ++dims[k - 1];
    }
    return dims;
}

namespace {

Polynomial degree_piece(const Polytope& p, const BaseSpace& bs, const std::vector<std::int64_t>& d, std::int64_t k) {
    if (std::all_of(d.begin(), d.end(), [](auto x) { return x == 0; })) return Polynomial();
    const auto coeffs = u0_coefficients(p, ttilde_binomial(p, d), bs.u0_edge);
    if (k < 0 || static_cast<std::size_t>(k) >= coeffs.size()) return Polynomial();
    return to_basis(bs, coeffs[k]);
}

}  // namespace

Polynomial additivity_defect(const Polytope& p, const BaseSpace& bs, const std::vector<std::int64_t>& d,
                             const std::vector<std::int64_t>& e, std::int64_t k) {
    std::vector<std::int64_t> sum(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) sum[i] = d[i] + e[i];
    return degree_piece(p, bs, sum, k) - degree_piece(p, bs, d, k) - degree_piece(p, bs, e, k);
}

bool in_jb(const BaseSpace& bs, const Polynomial& f) { return in_homogeneous_ideal(f, bs.ib_reduced, bs.basis, true); }

namespace {

Polynomial x_power(std::span<const std::int64_t> k) {
    Monomial m;
    for (std::size_t j = 0; j < k.size(); ++j)
        if (k[j] > 0) m = m * Monomial(Variable::x(j + 1), static_cast<int>(k[j]));
    return Polynomial(m, 1);
}

}  // namespace

FamilyEquations family_binomials(const Polytope& p, const HilbertBasis& hb, std::int64_t degree_bound,
                                 std::size_t u0_edge) {
    if (degree_bound < 0) throw ValidationError("degree bound must not be negative");
    FamilyEquations fam;
    fam.degree_bound = degree_bound;
    fam.u0_edge = u0_edge;
    const auto sub_t = edge_substitution(p, u0_edge, Variable::t());
    std::map<Variable, Polynomial> toric;
    for (std::size_t i = 0; i < p.num_edges(); ++i)
        toric.emplace(Variable::u(i + 1), Polynomial(Variable::t()).pow(static_cast<unsigned>(p.edges()[i].length)));
    std::map<Variable, Polynomial> zero_t;
    for (const auto& v : t_variables(p, u0_edge)) zero_t.emplace(v, Polynomial());

    std::set<std::string> seen;
    for (const auto& k : exponent_tuples(hb.size(), degree_bound)) {
        const auto dec = free_pair_decompose(p, hb, k);
        FamilyMember mem;
        mem.k = k;
        mem.boundary = boundary_representation(p, hb, dec.c);
        mem.lam = dec.lam;
        mem.lam_tilde = dec.lam_tilde.coeffs;
        const auto xb = x_power(mem.boundary);
        mem.f = x_power(k) - xb * Polynomial(Variable::t()).pow(static_cast<unsigned>(dec.lam));
        if (mem.f.is_zero() || !seen.insert(mem.f.to_string()).second) continue;
        Monomial um;
        for (std::size_t i = 0; i < p.num_edges(); ++i) {
            const auto l = p.edges()[i].length;
            if (mem.lam_tilde[i] % l != 0) throw CorrectnessError("lambda~ is not a multiple of the edge length");
            if (mem.lam_tilde[i] > 0) um = um * Monomial(Variable::u(i + 1), static_cast<int>(mem.lam_tilde[i] / l));
        }
        mem.F_u = x_power(k) - xb * Polynomial(um, 1);
        mem.F_tT = mem.F_u.substitute(sub_t);
        if (!(mem.F_tT.substitute(zero_t) == mem.f) || !(mem.F_u.substitute(toric) == mem.f))
            throw CorrectnessError("lifting of " + mem.f.to_string() + " does not project back");
        fam.members.push_back(std::move(mem));
    }
    return fam;
}

void require_tangent_vector(const Polytope& p, const TangentVector& tvec, std::size_t u0_edge) {
    const std::size_t n = p.num_edges();
    std::int64_t top = 0;
    for (const auto& [v, val] : tvec) {
        if (v.family() != Family::TT || v.i() < 1 || v.i() > n || v.j() < 1 ||
            v.j() > static_cast<unsigned>(p.edges()[v.i() - 1].length))
            throw ValidationError(v.name() + " is not a deformation parameter");
        if (v.i() - 1 == u0_edge && v.j() == 1 && val != 0)
            throw ValidationError(v.name() + " is fixed to zero");
        top = std::max<std::int64_t>(top, v.j());
    }
    for (std::int64_t j = 1; j <= top; ++j) {
        RatVector x(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i) {
            auto it = tvec.find(Variable::T(i + 1, j));
            if (it != tvec.end()) x[i] = it->second;
        }
        for (const auto& row : t0b_equations(p, j, u0_edge)) {
            Rat s = 0;
            for (std::size_t i = 0; i < n; ++i) s += row[i] * x[i];
            if (s != 0) throw ValidationError("vector is not tangent to the base in degree " + std::to_string(j));
        }
    }
}

std::vector<FirstOrderMember> first_order_family(const Polytope& p, const FamilyEquations& fam,
                                                 const TangentVector& tvec) {
    require_tangent_vector(p, tvec, fam.u0_edge);
    std::map<Variable, Polynomial> zero_t;
    for (const auto& v : t_variables(p, fam.u0_edge)) zero_t.emplace(v, Polynomial());
    std::vector<FirstOrderMember> out;
    for (const auto& mem : fam.members) {
        FirstOrderMember fo{mem.k, mem.f, Polynomial()};
        std::map<unsigned, Polynomial> by_degree;
        for (const auto& [v, val] : tvec)
            if (val != 0 && zero_t.count(v))
                by_degree[v.j()] += mem.F_tT.derivative(v).substitute(zero_t) * Polynomial(val);
        for (const auto& [j, piece] : by_degree) {
            for (const auto& [m, c] : piece.terms())
                if (m.exponent(Variable::t()) != mem.lam - static_cast<std::int64_t>(j))
                    throw CorrectnessError("first-order term of degree " + std::to_string(j) + " has t-exponent " +
                                           std::to_string(m.exponent(Variable::t())));
            fo.first_order += piece;
        }
        out.push_back(std::move(fo));
    }
    return out;
}

namespace {

std::string ideal_line(const std::string& name, const std::vector<Polynomial>& gens) {
    std::string s = "ideal " + name + " = ";
    if (gens.empty()) return s + "0;";
    for (std::size_t a = 0; a < gens.size(); ++a) s += (a ? ", " : "") + gens[a].to_string();
    return s + ";";
}

}  // namespace

std::string export_cas(const BaseSpace& bs, const FamilyEquations& fam, std::size_t num_x) {
    std::vector<std::string> names;
    for (std::size_t j = 1; j <= num_x; ++j) names.push_back(Variable::x(j).name());
    names.push_back(Variable::t().name());
    for (const auto& v : bs.variables) names.push_back(v.name());
    std::ostringstream out;
    out << "ring R = 0, (";
    for (std::size_t a = 0; a < names.size(); ++a) out << (a ? "," : "") << names[a];
    out << "), dp;\n";
    std::vector<Polynomial> family;
    for (const auto& m : fam.members) family.push_back(m.F_tT);
    out << ideal_line("family", family) << "\n";
    out << ideal_line("IB", bs.ib_full) << "\n";
    out << ideal_line("Ib", bs.ib_reduced) << "\n";
    return out.str();
}

}  // namespace toricdef
