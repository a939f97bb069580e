#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "toricdef/errors.hpp"
#include "toricdef/minkowski.hpp"
#include "toricdef/seed.hpp"
#include "toricdef/tangent.hpp"

namespace toricdef::cli {

std::string Report::render() const {
    std::string s = text;
    s += "---data---\n";
    for (const auto& [k, v] : data) s += k + "=" + v + "\n";
    return s;
}

namespace {

template <class Range, class F>
std::string join(const Range& r, const std::string& sep, F&& fmt) {
    std::string s;
    bool first = true;
    for (const auto& x : r) {
        if (!first) s += sep;
        s += fmt(x);
        first = false;
    }
    return s;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
    return join(v, ",", [](std::size_t x) { return std::to_string(x); });
}

std::string join_ints(const std::vector<std::int64_t>& v) {
    return join(v, ",", [](std::int64_t x) { return std::to_string(x); });
}

std::string names(const std::vector<Variable>& vs) {
    return join(vs, " ", [](const Variable& v) { return v.name(); });
}

struct Loaded {
    PolytopeFile file;
    std::size_t u0 = 0;
    std::int64_t kmax = 0;
    std::optional<HilbertBasis> hb;

    const Polytope& p() const { return file.polytope; }
};

Loaded load(const RunConfig& cfg, bool want_hilbert = true) {
    Loaded l{read_polytope_file(cfg.input), 0, 0, std::nullopt};
    const auto& p = l.p();
    if (cfg.u0_edge) {
        if (*cfg.u0_edge < 1 || *cfg.u0_edge > p.num_edges())
            throw ValidationError("--u0-edge must be between 1 and " + std::to_string(p.num_edges()));
        l.u0 = *cfg.u0_edge - 1;
    }
    if (cfg.kmax) {
        if (*cfg.kmax < 1) throw ValidationError("--kmax must be positive");
        l.kmax = *cfg.kmax;
    } else {
        l.kmax = p.dim() == 2 ? width_invariants(p).n2 + 2 : 6;
    }
    if (cfg.degree_bound < 0) throw ValidationError("--degree-bound must be nonnegative");
    if (want_hilbert) {
        try {
            l.hb = hilbert_basis_for(l.file);
        } catch (const UnsupportedError&) {
        }
    }
    return l;
}

const HilbertBasis& need_hilbert(const Loaded& l) {
    if (!l.hb) throw UnsupportedError("no Hilbert basis: dimension " + std::to_string(l.p().dim()) +
                                      " needs a supplied 'gen' stanza");
    return *l.hb;
}

std::string hilbert_element(const HilbertGenerator& g) {
    return "(" + join_ints(g.c) + ";" + std::to_string(g.eta) + ")";
}

void summary(Report& r, const Polytope& p) {
    r.line("polytope: dim " + std::to_string(p.dim()) + ", " + std::to_string(p.num_vertices()) + " vertices, " +
           std::to_string(p.num_edges()) + " edges, " + std::to_string(p.two_faces().size()) + " 2-faces");
    r.line("vertices: " + join(p.vertices(), " ", [](const Point& v) { return format_point(v); }));
    for (std::size_t i = 0; i < p.num_edges(); ++i) {
        const auto& e = p.edges()[i];
        r.line("  edge " + std::to_string(i + 1) + ": v" + std::to_string(e.tail + 1) + " -> v" +
               std::to_string(e.head + 1) + ", vector " + format_point(e.vector) + ", length " +
               std::to_string(e.length));
    }
    r.put("dim", std::to_string(p.dim()));
    r.put("vertices", std::to_string(p.num_vertices()));
    r.put("edges", std::to_string(p.num_edges()));
    r.put("edge_lengths", join(p.edges(), ",", [](const Edge& e) { return std::to_string(e.length); }));
}

void hilbert_section(Report& r, const Loaded& l) {
    if (!l.hb) {
        r.line("hilbert basis: not available (dimension >= 3 without a supplied basis)");
        r.put("hilbert.count", "none");
        return;
    }
    r.line("hilbert basis: " + std::to_string(l.hb->size()) + " elements plus R* = (0;1)");
    for (std::size_t j = 0; j < l.hb->size(); ++j)
        r.line("  x" + std::to_string(j + 1) + " " + hilbert_element(l.hb->elements[j]));
    r.put("hilbert.count", std::to_string(l.hb->size()));
    r.put("hilbert", join(l.hb->elements, " ", hilbert_element));
}

void t1_section(Report& r, const Loaded& l) {
    const auto rows = tangent_comparison(l.p(), l.kmax, l.u0);
    std::vector<std::size_t> t1, t0b;
    for (const auto& row : rows) {
        t1.push_back(row.t1);
        t0b.push_back(row.t0b);
    }
    r.line("k = 1.." + std::to_string(l.kmax));
    r.line("  dim T1(-kR*):  " + join_sizes(t1));
    r.line("  dim T0B(k):    " + join_sizes(t0b));
    r.put("kmax", std::to_string(l.kmax));
    r.put("t1", join_sizes(t1));
    r.put("t0b", join_sizes(t0b));
    require_tangent_equality(rows);
}

std::vector<T2Method> t2_methods(const Loaded& l) {
    std::vector<T2Method> ms;
    if (l.hb) ms.push_back(T2Method::General);
    if (l.p().dim() == 2) {
        ms.push_back(T2Method::Lattice3d);
        ms.push_back(T2Method::ClosedForm3d);
    }
    return ms;
}

// Returns false if the methods disagree.
bool t2_section(Report& r, const Loaded& l) {
    const auto methods = t2_methods(l);
    if (methods.empty()) throw UnsupportedError("no T2 method available for this input");
    const HilbertBasis empty;
    std::optional<std::vector<std::size_t>> first;
    bool agree = true;
    for (auto m : methods) {
        const auto prof = t2_profile(l.p(), l.hb ? *l.hb : empty, m, l.kmax);
        r.line("  dim T2(-kR*) [" + to_string(m) + "]: " + join_sizes(prof.dims));
        r.put("t2." + to_string(m), join_sizes(prof.dims));
        if (m == T2Method::ClosedForm3d) {
            r.line("  invariants l1=" + std::to_string(prof.l1) + " l2=" + std::to_string(prof.l2) +
                   " n1=" + std::to_string(prof.n1) + " n2=" + std::to_string(prof.n2));
            r.put("invariants", std::to_string(prof.l1) + "," + std::to_string(prof.l2) + "," +
                                    std::to_string(prof.n1) + "," + std::to_string(prof.n2));
        }
        if (!first) first = prof.dims;
        else if (*first != prof.dims) agree = false;
    }
    r.line(std::string("  methods ") + (agree ? "agree" : "DISAGREE"));
    r.put("t2.agree", agree ? "yes" : "no");
    return agree;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << content;
}

std::string default_cas_path(const std::string& input) {
    std::filesystem::path p(input);
    return p.stem().string() + ".cas.txt";
}

std::string split_name(const Polytope& p, const SplitVector& n) {
    std::string s = "n=(" + join_ints(n) + ")";
    if (p.dim() <= 2) s += " vertices " + join(summand_vertices(p, n), " ", [](const Point& v) { return format_point(v); });
    return s;
}

bool splits_edge(const MinkowskiDecomposition& dec, std::size_t edge) {
    std::size_t carriers = 0;
    for (std::size_t k = 0; k < dec.size(); ++k)
        if (dec.split(edge, k) != 0) ++carriers;
    return carriers > 1;
}

}  // namespace

Report cmd_analyze(const RunConfig& cfg) {
    Report r;
    const auto l = load(cfg);
    summary(r, l.p());
    hilbert_section(r, l);
    r.line("tangent space:");
    t1_section(r, l);
    r.line("obstruction space:");
    if (t2_methods(l).empty()) {
        r.line("  not available for this input");
        r.put("t2", "none");
    } else if (!t2_section(r, l)) {
        r.exit_code = 4;
    }
    return r;
}

Report cmd_t1(const RunConfig& cfg) {
    Report r;
    const auto l = load(cfg, false);
    t1_section(r, l);
    for (std::int64_t k = 1; k <= l.kmax; ++k) {
        const auto vk = vk_space(l.p(), k);
        r.put("vk." + std::to_string(k), std::to_string(vk.dim));
    }
    return r;
}

Report cmd_t2(const RunConfig& cfg) {
    Report r;
    const auto l = load(cfg);
    r.line("k = 1.." + std::to_string(l.kmax));
    r.put("kmax", std::to_string(l.kmax));
    if (!t2_section(r, l)) r.exit_code = 4;
    return r;
}

Report cmd_base_ideal(const RunConfig& cfg) {
    Report r;
    const auto l = load(cfg, false);
    const auto bs = base_space(l.p(), cfg.strategy, l.u0);
    r.line("strategy: " + to_string(bs.strategy) + ", u0 edge " + std::to_string(bs.u0_edge + 1));
    r.line("binomials (" + std::to_string(bs.ttilde.size()) + "):");
    for (const auto& b : bs.ttilde) r.line("  " + b.binomial.to_string() + "    d=(" + join_ints(b.d) + ")");
    r.line("parameters: " + names(bs.variables));
    r.line("I_B generators (" + std::to_string(bs.ib_full.size()) + "):");
    for (const auto& g : bs.ib_full) r.line("  " + g.to_string());
    r.line("T_b: " + (bs.basis.empty() ? std::string("(none)") : names(bs.basis)));
    r.line("elimination:");
    for (const auto& [v, f] : bs.elimination_map) r.line("  " + v.name() + " = " + f.to_string());
    r.line("I_b generators (" + std::to_string(bs.ib_reduced.size()) + "):");
    for (const auto& g : bs.ib_reduced) r.line("  " + g.to_string());
    const auto w = w_graded_dims(bs, l.kmax);
    r.line("dim W_k, k = 1.." + std::to_string(l.kmax) + ": " + join_sizes(w));

    r.put("strategy", to_string(bs.strategy));
    r.put("u0_edge", std::to_string(bs.u0_edge + 1));
    r.put("ib.count", std::to_string(bs.ib_full.size()));
    for (std::size_t i = 0; i < bs.ib_full.size(); ++i) r.put("ib." + std::to_string(i + 1), bs.ib_full[i].to_string());
    r.put("basis", join(bs.basis, ",", [](const Variable& v) { return v.name(); }));
    for (const auto& [v, f] : bs.elimination_map) r.put("elim." + v.name(), f.to_string());
    r.put("ib_reduced.count", std::to_string(bs.ib_reduced.size()));
    for (std::size_t i = 0; i < bs.ib_reduced.size(); ++i)
        r.put("ib_reduced." + std::to_string(i + 1), bs.ib_reduced[i].to_string());
    r.put("w", join_sizes(w));
    return r;
}

Report cmd_family(const RunConfig& cfg) {
    Report r;
    const auto l = load(cfg);
    const auto& hb = need_hilbert(l);
    const auto fam = family_binomials(l.p(), hb, cfg.degree_bound, l.u0);
    r.line("family up to |k| <= " + std::to_string(cfg.degree_bound) + ", u0 edge " + std::to_string(l.u0 + 1) +
           ": " + std::to_string(fam.members.size()) + " equations");
    r.line("projection checks (T = 0 and u_i = t^l_i): passed");
    for (const auto& m : fam.members) {
        r.line("k=(" + join_ints(m.k) + ") lambda=" + std::to_string(m.lam) + " lambda~=(" + join_ints(m.lam_tilde) + ")");
        r.line("  f      = " + m.f.to_string());
        r.line("  F(x,u) = " + m.F_u.to_string());
        r.line("  F(x,T) = " + m.F_tT.to_string());
    }
    r.put("degree_bound", std::to_string(cfg.degree_bound));
    r.put("u0_edge", std::to_string(l.u0 + 1));
    r.put("family.count", std::to_string(fam.members.size()));
    for (std::size_t i = 0; i < fam.members.size(); ++i) r.put("family." + std::to_string(i + 1), fam.members[i].F_tT.to_string());
    if (cfg.out) {
        const auto bs = base_space(l.p(), cfg.strategy, l.u0);
        write_file(*cfg.out, export_cas(bs, fam, hb.size()));
        r.line("wrote " + *cfg.out);
        r.put("cas.path", *cfg.out);
    }
    return r;
}

Report cmd_minkowski(const RunConfig& cfg) {
    Report r;
    const auto l = load(cfg, false);
    const auto& p = l.p();
    const auto listed = decompositions_for(l.file, cfg.maximal);
    const auto maximal = cfg.maximal ? listed : decompositions_for(l.file, true);

    r.line(std::string(cfg.maximal ? "maximal decompositions" : "decompositions") + " (" +
           std::to_string(listed.size()) + "):");
    for (std::size_t d = 0; d < listed.size(); ++d) {
        r.line("  D" + std::to_string(d + 1) + ": " + std::to_string(listed[d].size()) + " summand(s)");
        for (std::size_t k = 0; k < listed[d].size(); ++k)
            r.line("    K" + std::to_string(k) + " " + split_name(p, listed[d].summands[k]));
    }
    r.put("decompositions.count", std::to_string(listed.size()));
    r.put("maximal.count", std::to_string(maximal.size()));
    if (maximal.size() == 1 && maximal.front().size() == 1) r.line("P is indecomposable");
    r.put("indecomposable", maximal.size() == 1 && maximal.front().size() == 1 ? "yes" : "no");

    const std::size_t u0 = cfg.u0_edge ? l.u0 : preferred_u0_edge(p, maximal);
    const auto bs = base_space(p, cfg.strategy, u0);
    const auto rep = correspondence_report(p, bs, maximal, cfg.seed);
    r.line("u0 edge " + std::to_string(u0 + 1) + (cfg.u0_edge ? " (given)" : " (preferred)"));
    r.put("u0_edge", std::to_string(u0 + 1));
    r.line("I_b: " + (bs.ib_reduced.empty() ? std::string("(0)")
                                            : join(bs.ib_reduced, ", ", [](const Polynomial& f) { return f.to_string(); })) +
           " over {" + join(bs.basis, ",", [](const Variable& v) { return v.name(); }) + "}");

    bool maps_ok = true;
    for (std::size_t d = 0; d < rep.decompositions.size(); ++d) {
        const auto& chk = rep.decompositions[d];
        const auto tag = "maximal." + std::to_string(d + 1);
        const bool generalized = splits_edge(chk.dec, u0);
        r.line("maximal M" + std::to_string(d + 1) + ":");
        for (std::size_t k = 0; k < chk.dec.size(); ++k)
            r.line("  K" + std::to_string(k) + " " + split_name(p, chk.dec.summands[k]));
        r.line("  f(u0) = " + f_of_u0(p, chk.dec, u0).to_string() + (generalized ? "  [generalized: u0 edge is split]" : ""));
        r.line(std::string("  f kills binomials: ") + (chk.f_ok ? "yes" : "NO"));
        r.line(std::string("  edge identities: ") + (chk.edge_identity ? "yes" : "NO"));
        r.line(std::string("  g(I_B) = 0: ") + (chk.kills_base_ideal ? "yes" : "NO"));
        for (const auto& [v, g] : chk.image) r.line("  g(" + v.name() + ") = " + g.to_string());
        r.line("  component dimension " + std::to_string(chk.dimension) + " (redraws " + std::to_string(chk.redraws) + ")");
        if (chk.component) r.line("  matches component C" + std::to_string(*chk.component + 1));
        maps_ok = maps_ok && chk.f_ok && chk.edge_identity && chk.kills_base_ideal;
        r.put(tag + ".summands", std::to_string(chk.dec.size()));
        r.put(tag + ".generalized", generalized ? "yes" : "no");
        r.put(tag + ".f", chk.f_ok ? "ok" : "fail");
        r.put(tag + ".edge_identity", chk.edge_identity ? "ok" : "fail");
        r.put(tag + ".g", chk.kills_base_ideal ? "ok" : "fail");
        r.put(tag + ".dim", std::to_string(chk.dimension));
        r.put(tag + ".redraws", std::to_string(chk.redraws));
        r.put(tag + ".component", chk.component ? std::to_string(*chk.component + 1) : "none");
    }
    if (rep.components) {
        r.line("components of V(I_b) (" + std::to_string(rep.components->size()) + "):");
        for (std::size_t c = 0; c < rep.components->size(); ++c) {
            const auto& comp = (*rep.components)[c];
            const auto eqs = comp.equations.empty()
                                 ? std::string("(whole space)")
                                 : join(comp.equations, ", ", [](const Polynomial& f) { return f.to_string() + " = 0"; });
            r.line("  C" + std::to_string(c + 1) + ": " + eqs + ", dim " + std::to_string(comp.dim));
            r.put("component." + std::to_string(c + 1),
                  join(comp.equations, ",", [](const Polynomial& f) { return f.to_string(); }) + ";dim=" +
                      std::to_string(comp.dim));
        }
    } else {
        r.line("components of V(I_b): generators do not factor into linear forms");
    }
    r.line("correspondence: " + rep.status);
    r.put("correspondence", rep.status);
    if (!maps_ok) r.exit_code = 4;
    return r;
}

namespace {

enum class Outcome { Pass, Fail, Skip };

struct Check {
    std::string name;
    Outcome outcome = Outcome::Pass;
    std::string detail;
};

// Runs a check body; exceptions become failures (or skips for unsupported features).
Check run_check(const std::string& name, const std::function<std::string()>& body) {
    Check c{name, Outcome::Pass, ""};
    try {
        c.detail = body();
    } catch (const UnsupportedError& e) {
        c.outcome = Outcome::Skip;
        c.detail = e.what();
    } catch (const std::exception& e) {
        c.outcome = Outcome::Fail;
        c.detail = e.what();
    }
    return c;
}

void fail(const std::string& what) { throw CorrectnessError(what); }

std::string free_pair_check(const Polytope& p, const HilbertBasis& hb, std::int64_t bound) {
    const FunctionalSpace space(p);
    std::map<std::pair<Point, std::vector<Int>>, std::pair<std::vector<Int>, std::vector<Int>>> seen;
    std::size_t count = 0;
    for (const auto& k : exponent_tuples(hb.size(), bound)) {
        const auto d = free_pair_decompose(p, hb, k);
        TFunctional total(p.num_edges());
        for (std::size_t j = 0; j < hb.size(); ++j) total += eta_tilde(p, hb.c(j)) * k[j];
        const auto tag = "k=(" + join_ints(k) + ")";
        for (std::size_t i = 0; i < p.num_edges(); ++i)
            if (d.lam_tilde.coeffs[i] < 0 || d.lam_tilde.coeffs[i] % p.edges()[i].length != 0)
                fail(tag + ": lambda~ not in l_i * N");
        if (d.lam != d.lam_tilde.deg()) fail(tag + ": lambda != sum lambda~");
        if (d.lam != eta_of(p, hb, k)) fail(tag + ": lambda != eta(k)");
        if (!space.equal(total, d.boundary + d.lam_tilde)) fail(tag + ": reconstruction fails");
        if (d.lam == 0 && !d.lam_tilde.is_zero()) fail(tag + ": eta(k) = 0 but lambda~ != 0");
        auto key = std::make_pair(d.c, space.evaluate(total));
        auto val = std::make_pair(space.evaluate(d.boundary), space.evaluate(d.lam_tilde));
        auto [it, fresh] = seen.emplace(key, val);
        if (!fresh && it->second != val) fail(tag + ": decomposition not unique");
        ++count;
    }
    return std::to_string(count) + " tuples";
}

}  // namespace

Report cmd_verify(const RunConfig& cfg) {
    Report r;
    std::vector<Check> checks;
    std::optional<Loaded> loaded;
    try {
        loaded = load(cfg);
        checks.push_back({"two-face-closure", Outcome::Pass, ""});
    } catch (const ValidationError& e) {
        checks.push_back({"two-face-closure", Outcome::Fail, e.what()});
        r.exit_code = 2;
    }

    if (loaded) {
        const auto& l = *loaded;
        const auto& p = l.p();
        const bool polygon = p.dim() == 2;
        std::optional<BaseSpace> bs;

        checks.push_back(run_check("hilbert-basis", [&] {
            const auto& hb = need_hilbert(l);
            validated_hilbert_basis(p, hb.elements, 3);
            return std::to_string(hb.size()) + " generators, generation and minimality at pairings <= 3";
        }));
        checks.push_back(run_check("free-pair", [&] {
            return free_pair_check(p, need_hilbert(l), std::max<std::int64_t>(cfg.degree_bound, 1));
        }));
        checks.push_back(run_check("eta-tilde-degree", [&] {
            const std::int64_t box = p.dim() <= 2 ? 4 : 2;
            std::size_t n = 0;
            for (const auto& c : box_points(p.dim(), box)) {
                if (eta_tilde(p, c).deg() != eta(p, c)) fail("deg eta~(c) != eta(c) at c=" + format_point(c));
                ++n;
            }
            return std::to_string(n) + " points";
        }));
        checks.push_back(run_check("tangent-dimensions", [&] {
            require_tangent_equality(tangent_comparison(p, l.kmax, l.u0));
            return "dim T0B(k) = dim T1(-kR*) for k <= " + std::to_string(l.kmax);
        }));
        checks.push_back(run_check("t2-agreement", [&]() -> std::string {
            if (!polygon) throw UnsupportedError("only one T2 method outside polygons");
            Report scratch;
            if (!t2_section(scratch, l)) fail("T2 methods disagree");
            return "three methods agree for k <= " + std::to_string(l.kmax);
        }));
        checks.push_back(run_check("base-ideal-elimination", [&] {
            bs = base_space(p, cfg.strategy, l.u0);
            return std::to_string(bs->ib_reduced.size()) + " generators over " + std::to_string(bs->basis.size()) +
                   " parameters";
        }));
        checks.push_back(run_check("strategies-agree", [&]() -> std::string {
            if (!polygon) throw UnsupportedError("minimal-width needs a polygon");
            if (!bs) fail("no base space");
            const auto other = base_space(
                p, cfg.strategy == IdealStrategy::FacesBasis ? IdealStrategy::MinimalWidth : IdealStrategy::FacesBasis,
                l.u0);
            for (const auto& g : other.ib_reduced)
                if (!in_homogeneous_ideal(g, bs->ib_reduced, bs->basis)) fail("ideals differ: " + g.to_string());
            for (const auto& g : bs->ib_reduced)
                if (!in_homogeneous_ideal(g, other.ib_reduced, other.basis)) fail("ideals differ: " + g.to_string());
            return "same reduced ideal";
        }));
        checks.push_back(run_check("additivity-mod-Jb", [&] {
            if (!bs) fail("no base space");
            std::mt19937_64 rng(split_seed(cfg.seed, 1001));
            std::uniform_int_distribution<std::int64_t> coef(-2, 2);
            std::size_t pairs = 0;
            const auto& gens = bs->ttilde;
            if (gens.empty()) return std::string("no binomials");
            auto draw = [&] {
                std::vector<std::int64_t> d(p.num_edges(), 0);
                for (const auto& g : gens) {
                    const auto a = coef(rng);
                    for (std::size_t i = 0; i < d.size(); ++i) d[i] += a * g.d[i];
                }
                return d;
            };
            const auto top = std::min<std::int64_t>(p.max_edge_length(), 6);
            for (int n = 0; n < 10; ++n) {
                const auto d = draw(), e = draw();
                for (std::int64_t k = 1; k <= top; ++k) {
                    const auto defect = additivity_defect(p, *bs, d, e, k);
                    if (!in_jb(*bs, defect)) fail("defect not in J_b for d=(" + join_ints(d) + "), e=(" + join_ints(e) + "), k=" + std::to_string(k));
                }
                ++pairs;
            }
            return std::to_string(pairs) + " pairs";
        }));
        checks.push_back(run_check("w-bounded-by-t2", [&] {
            if (!bs) fail("no base space");
            const auto& hb = need_hilbert(l);
            const auto w = w_graded_dims(*bs, l.kmax);
            for (std::int64_t k = 1; k <= l.kmax; ++k) {
                const auto t2 = t2_dimension_general(p, hb, k);
                if (w[k - 1] > t2) fail("dim W_" + std::to_string(k) + " > dim T2");
            }
            return "W = (" + join_sizes(w) + ")";
        }));
        checks.push_back(run_check("family-projection", [&] {
            const auto fam = family_binomials(p, need_hilbert(l), cfg.degree_bound, l.u0);
            return std::to_string(fam.members.size()) + " equations";
        }));
        checks.push_back(run_check("first-order-degrees", [&] {
            const auto fam = family_binomials(p, need_hilbert(l), cfg.degree_bound, l.u0);
            std::size_t vectors = 0;
            for (std::int64_t k = 1; k <= p.max_edge_length(); ++k)
                for (const auto& v : t0b_basis(p, k, l.u0)) {
                    TangentVector tv;
                    for (std::size_t i = 0; i < p.num_edges(); ++i)
                        if (v[i] != 0) tv[Variable::T(i + 1, k)] = v[i];
                    first_order_family(p, fam, tv);
                    ++vectors;
                }
            return std::to_string(vectors) + " tangent vectors";
        }));
        std::optional<CorrespondenceReport> corr;
        checks.push_back(run_check("minkowski-maps", [&] {
            const auto maximal = decompositions_for(l.file, true);
            const auto u0 = cfg.u0_edge ? l.u0 : preferred_u0_edge(p, maximal);
            const auto mbs = base_space(p, cfg.strategy, u0);
            corr = correspondence_report(p, mbs, maximal, cfg.seed);
            for (std::size_t d = 0; d < corr->decompositions.size(); ++d) {
                const auto& chk = corr->decompositions[d];
                const auto tag = "decomposition " + std::to_string(d + 1);
                if (!chk.f_ok) fail(tag + ": f does not kill the binomials");
                if (!chk.edge_identity) fail(tag + ": edge identity fails");
                if (!chk.kills_base_ideal) fail(tag + ": g(I_B) != 0");
            }
            return std::to_string(corr->decompositions.size()) + " maximal decompositions";
        }));
        checks.push_back(run_check("correspondence", [&]() -> std::string {
            if (!corr) throw UnsupportedError("no decompositions");
            if (corr->status == "mismatch") fail("decompositions do not match components");
            std::size_t redraws = 0;
            for (const auto& c : corr->decompositions) redraws += c.redraws;
            return corr->status + ", redraws " + std::to_string(redraws);
        }));
    }

    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const auto& c : checks) {
        const char* tag = c.outcome == Outcome::Pass ? "PASS" : c.outcome == Outcome::Fail ? "FAIL" : "SKIP";
        r.line(std::string(tag) + " " + c.name + (c.detail.empty() ? "" : ": " + c.detail));
        r.put("check." + c.name, c.outcome == Outcome::Pass ? "pass" : c.outcome == Outcome::Fail ? "fail" : "skip");
        (c.outcome == Outcome::Pass ? passed : c.outcome == Outcome::Fail ? failed : skipped)++;
    }
    r.line(std::to_string(passed) + " passed, " + std::to_string(failed) + " failed, " + std::to_string(skipped) +
           " skipped");
    r.put("passed", std::to_string(passed));
    r.put("failed", std::to_string(failed));
    r.put("skipped", std::to_string(skipped));
    if (failed > 0 && r.exit_code == 0) r.exit_code = 4;
    return r;
}

Report cmd_export_cas(const RunConfig& cfg) {
    Report r;
    const auto l = load(cfg);
    const auto& hb = need_hilbert(l);
    const auto fam = family_binomials(l.p(), hb, cfg.degree_bound, l.u0);
    const auto bs = base_space(l.p(), cfg.strategy, l.u0);
    const auto script = export_cas(bs, fam, hb.size());
    const auto path = cfg.out ? *cfg.out : default_cas_path(cfg.input);
    write_file(path, script);
    r.line("wrote " + path + " (" + std::to_string(fam.members.size()) + " family equations, " +
           std::to_string(bs.ib_full.size()) + " I_B generators, " + std::to_string(bs.ib_reduced.size()) +
           " I_b generators)");
    r.put("cas.path", path);
    r.put("cas.bytes", std::to_string(script.size()));
    return r;
}

Report run(const RunConfig& cfg) {
    static const std::map<std::string, Report (*)(const RunConfig&)> table{
        {"analyze", cmd_analyze}, {"t1", cmd_t1},       {"t2", cmd_t2},         {"base-ideal", cmd_base_ideal},
        {"family", cmd_family},   {"minkowski", cmd_minkowski}, {"verify", cmd_verify}, {"export-cas", cmd_export_cas},
    };
    const auto it = table.find(cfg.command);
    if (it == table.end()) throw ValidationError("unknown command '" + cfg.command + "'");
    auto r = it->second(cfg);
    r.put("command", cfg.command);
    r.put("seed", std::to_string(cfg.seed));
    r.put("exit", std::to_string(r.exit_code));
    return r;
}

}  // namespace toricdef::cli
