#include "toricdef/polytope.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "toricdef/errors.hpp"

namespace toricdef {

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string format_point(std::span<const std::int64_t> p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(p[i]);
    }
    return out + ")";
}

bool Path::empty() const {
    return std::all_of(steps.begin(), steps.end(), [](int s) { return s == 0; });
}

namespace {

Point sub(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

std::int64_t cross(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

Polytope::Polytope(std::size_t dim, std::vector<Point> vertices,
                   const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                   std::vector<TwoFace> two_faces)
    : dim_(dim), vertices_(std::move(vertices)), faces_(std::move(two_faces)) {
    if (dim_ == 0) throw ValidationError("polytope dimension must be at least 1");
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (vertices_[v].size() != dim_)
            throw ValidationError("vertex " + std::to_string(v + 1) + " has wrong number of coordinates");
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [t, h] = edges[e];
        if (t >= vertices_.size() || h >= vertices_.size() || t == h)
            throw ValidationError("edge " + std::to_string(e + 1) + " has invalid endpoints");
        Edge edge;
        edge.tail = t;
        edge.head = h;
        edge.vector = sub(vertices_[h], vertices_[t]);
        std::int64_t g = 0;
        for (auto x : edge.vector) g = std::gcd(g, x);
        edge.length = g;
        edge.primitive = edge.vector;
        for (auto& x : edge.primitive) x /= g;
        edges_.push_back(std::move(edge));
    }
    validate();
    if (dim_ == 2) build_cycle();
}

void Polytope::validate() {
    if (vertices_.size() < 2) throw ValidationError("polytope needs at least two vertices");
    for (auto x : vertices_[0])
        if (x != 0) throw ValidationError("vertex 1 must be the origin");
    std::set<Point> seen;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (!seen.insert(vertices_[v]).second)
            throw ValidationError("vertex " + std::to_string(v + 1) + " is repeated");
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto key = std::minmax(edges_[e].tail, edges_[e].head);
        if (!pairs.insert(key).second)
            throw ValidationError("edge " + std::to_string(e + 1) + " is repeated");
    }

    incident_.assign(vertices_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        incident_[edges_[e].tail].push_back(e);
        incident_[edges_[e].head].push_back(e);
    }

    for (std::size_t f = 0; f < faces_.size(); ++f) {
        Point sum(dim_, 0);
        for (const auto& fe : faces_[f]) {
            if (fe.edge >= edges_.size() || (fe.sign != 1 && fe.sign != -1))
                throw ValidationError("2-face " + std::to_string(f + 1) + " references an invalid edge");
            for (std::size_t a = 0; a < dim_; ++a) sum[a] += fe.sign * edges_[fe.edge].vector[a];
        }
        for (auto x : sum)
            if (x != 0) throw ValidationError("2-face " + std::to_string(f + 1) + " does not close");
    }

    // connectivity of the 1-skeleton
    std::vector<bool> reached(vertices_.size(), false);
    std::deque<std::size_t> queue{0};
    reached[0] = true;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto e : incident_[v]) {
            auto w = edges_[e].tail == v ? edges_[e].head : edges_[e].tail;
            if (!reached[w]) {
                reached[w] = true;
                queue.push_back(w);
            }
        }
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (!reached[v])
            throw ValidationError("vertex " + std::to_string(v + 1) + " is not connected to the 1-skeleton");

    if (dim_ == 1) {
        if (vertices_.size() != 2 || edges_.size() != 1 || !faces_.empty())
            throw ValidationError("a 1-dimensional polytope has two vertices, one edge and no 2-faces");
    }
    if (dim_ == 2) {
        if (faces_.size() != 1 || faces_[0].size() != edges_.size() || edges_.size() != vertices_.size())
            throw ValidationError("a polygon has one 2-face containing every edge");
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (incident_[v].size() != 2)
                throw ValidationError("vertex " + std::to_string(v + 1) + " does not have two polygon edges");
    }
}

void Polytope::build_cycle() {
    // walk the boundary starting along the smaller-index edge at vertex 0
    std::vector<std::size_t> verts{0};
    std::vector<std::size_t> eds;
    std::size_t cur = 0;
    std::size_t prev_edge = incident_[0][1];
    for (std::size_t step = 0; step < vertices_.size(); ++step) {
        auto e = incident_[cur][0] == prev_edge ? incident_[cur][1] : incident_[cur][0];
        eds.push_back(e);
        cur = edges_[e].tail == cur ? edges_[e].head : edges_[e].tail;
        prev_edge = e;
        if (cur == 0) break;
        verts.push_back(cur);
    }
    if (cur != 0 || verts.size() != vertices_.size())
        throw ValidationError("polygon edges do not form a single cycle");

    std::int64_t area2 = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const auto& a = vertices_[verts[i]];
        const auto& b = vertices_[verts[(i + 1) % verts.size()]];
        area2 += a[0] * b[1] - a[1] * b[0];
    }
    if (area2 < 0) {
        std::reverse(verts.begin() + 1, verts.end());
        std::reverse(eds.begin(), eds.end());
    }
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = vertices_[verts[(i + n - 1) % n]];
        const auto& b = vertices_[verts[i]];
        const auto& c = vertices_[verts[(i + 1) % n]];
        if (cross(a, b, c) <= 0)
            throw ValidationError("vertex " + std::to_string(verts[i] + 1) + " is not a strictly convex corner");
    }
    // turning by more than one full revolution would make a star polygon
    std::int64_t winding_check = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = vertices_[verts[i]];
        const auto& b = vertices_[verts[(i + 1) % n]];
        if (b[1] < a[1] || (b[1] == a[1] && b[0] < a[0])) continue;
        const auto& c = vertices_[verts[(i + 2) % n]];
        if (c[1] < b[1] || (c[1] == b[1] && c[0] < b[0])) ++winding_check;
    }
    if (winding_check != 1) throw ValidationError("polygon boundary is not convex");
    ccw_vertices_ = std::move(verts);
    ccw_edges_ = std::move(eds);
}

std::int64_t Polytope::pairing(std::size_t vertex, std::span<const std::int64_t> c) const {
    return dot(vertices_[vertex], c);
}

std::int64_t Polytope::max_edge_length() const {
    std::int64_t m = 0;
    for (const auto& e : edges_) m = std::max(m, e.length);
    return m;
}

IntMatrix Polytope::face_relation_matrix() const {
    IntMatrix m(faces_.size() * dim_, edges_.size());
    for (std::size_t f = 0; f < faces_.size(); ++f)
        for (const auto& fe : faces_[f])
            for (std::size_t a = 0; a < dim_; ++a)
                m(f * dim_ + a, fe.edge) += fe.sign * edges_[fe.edge].vector[a];
    return m;
}

Point Polytope::displacement(const Path& path) const {
    Point d(dim_, 0);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        for (std::size_t a = 0; a < dim_; ++a) d[a] += path.steps[i] * edges_[i].vector[a];
    return d;
}

Polytope polygon_from_vertices(const std::vector<Point>& points) {
    if (points.size() < 3) throw ValidationError("a polygon needs at least three vertices");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != 2)
            throw ValidationError("vertex " + std::to_string(i + 1) + " is not a 2D point");
        for (std::size_t j = 0; j < i; ++j)
            if (points[i] == points[j])
                throw ValidationError("vertex " + std::to_string(i + 1) + " duplicates vertex " +
                                      std::to_string(j + 1));
    }

    // Andrew's monotone chain keeping strict corners only
    std::vector<std::size_t> idx(points.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return points[a] < points[b]; });
    std::vector<std::size_t> hull;
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t base = hull.size();
        for (auto i : idx) {
            while (hull.size() >= base + 2 &&
                   cross(points[hull[hull.size() - 2]], points[hull.back()], points[i]) <= 0)
                hull.pop_back();
            hull.push_back(i);
        }
        hull.pop_back();
        std::reverse(idx.begin(), idx.end());
    }
    if (hull.size() < 3) throw ValidationError("vertices are collinear; polygon is degenerate");

    // any input point off the hull must lie on its boundary
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (std::find(hull.begin(), hull.end(), i) != hull.end()) continue;
        bool on_boundary = false;
        for (std::size_t k = 0; k < hull.size(); ++k) {
            const auto& a = points[hull[k]];
            const auto& b = points[hull[(k + 1) % hull.size()]];
            if (cross(a, b, points[i]) == 0) on_boundary = true;
        }
        if (!on_boundary)
            throw ValidationError("vertex " + std::to_string(i + 1) + " " + format_point(points[i]) +
                                  " is not in convex position");
    }

    std::size_t first = *std::min_element(hull.begin(), hull.end());
    auto it = std::find(hull.begin(), hull.end(), first);
    std::rotate(hull.begin(), it, hull.end());

    const Point origin = points[first];
    std::vector<Point> verts;
    for (auto i : hull) verts.push_back(sub(points[i], origin));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    TwoFace face;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        edges.emplace_back(i, (i + 1) % verts.size());
        face.push_back({i, 1});
    }
    return Polytope(2, std::move(verts), edges, {face});
}

Polytope interval(std::int64_t m) {
    if (m < 1) throw ValidationError("interval length must be positive");
    return Polytope(1, {{0}, {m}}, {{0, 1}}, {});
}

namespace {

std::vector<std::string> split_words(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

std::int64_t parse_int(const std::string& s, std::size_t line) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + s + "'");
    }
    if (pos != s.size()) throw ParseError(line, "expected an integer, got '" + s + "'");
    return v;
}

}  // namespace

PolytopeFile parse_polytope_file(std::string_view text) {
    std::optional<std::size_t> dim;
    std::vector<Point> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<TwoFace> faces;
    std::optional<std::vector<HilbertGenerator>> hilbert;
    std::optional<std::vector<SummandEdgeLength>> minkowski;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto w = split_words(raw);
        if (w.empty()) continue;
        const auto& key = w[0];
        if (key == "dim") {
            if (w.size() != 2) throw ParseError(lineno, "expected 'dim <d>'");
            if (dim) throw ParseError(lineno, "dimension given twice");
            auto d = parse_int(w[1], lineno);
            if (d < 1) throw ParseError(lineno, "dimension must be positive");
            dim = static_cast<std::size_t>(d);
            continue;
        }
        if (!dim) throw ParseError(lineno, "'dim' must come first");
        if (key == "vertex") {
            if (w.size() != *dim + 1) throw ParseError(lineno, "vertex needs " + std::to_string(*dim) + " coordinates");
            Point p;
            for (std::size_t i = 1; i < w.size(); ++i) p.push_back(parse_int(w[i], lineno));
            vertices.push_back(std::move(p));
        } else if (key == "edge") {
            if (w.size() != 3) throw ParseError(lineno, "expected 'edge <tail> <head>'");
            auto t = parse_int(w[1], lineno), h = parse_int(w[2], lineno);
            if (t < 1 || h < 1) throw ParseError(lineno, "vertex indices are 1-based");
            edges.emplace_back(static_cast<std::size_t>(t - 1), static_cast<std::size_t>(h - 1));
        } else if (key == "face2") {
            if (w.size() < 2) throw ParseError(lineno, "empty 2-face");
            TwoFace f;
            for (std::size_t i = 1; i < w.size(); ++i) {
                auto s = parse_int(w[i], lineno);
                if (s == 0) throw ParseError(lineno, "edge indices are 1-based");
                f.push_back({static_cast<std::size_t>(std::llabs(s) - 1), s > 0 ? 1 : -1});
            }
            faces.push_back(std::move(f));
        } else if (key == "hilbert") {
            if (!hilbert) hilbert.emplace();
        } else if (key == "gen") {
            if (w.size() != *dim + 2) throw ParseError(lineno, "expected 'gen <c> <eta>'");
            HilbertGenerator g;
            for (std::size_t i = 1; i <= *dim; ++i) g.c.push_back(parse_int(w[i], lineno));
            g.eta = parse_int(w.back(), lineno);
            if (!hilbert) hilbert.emplace();
            hilbert->push_back(std::move(g));
        } else if (key == "minkowski") {
            if (!minkowski) minkowski.emplace();
        } else if (key == "summand") {
            if (w.size() != 6 || w[2] != "edge" || w[4] != "length")
                throw ParseError(lineno, "expected 'summand <k> edge <i> length <n>'");
            auto k = parse_int(w[1], lineno), e = parse_int(w[3], lineno), n = parse_int(w[5], lineno);
            if (k < 0 || e < 1 || n < 0) throw ParseError(lineno, "invalid summand entry");
            if (!minkowski) minkowski.emplace();
            minkowski->push_back({static_cast<std::size_t>(k), static_cast<std::size_t>(e - 1), n});
        } else {
            throw ParseError(lineno, "unknown keyword '" + key + "'");
        }
    }
    if (!dim) throw ParseError(lineno + 1, "missing 'dim' line");
    if (vertices.empty()) throw ValidationError("no vertices given");

    auto build = [&]() -> Polytope {
        if (*dim == 2 && edges.empty() && faces.empty()) return polygon_from_vertices(vertices);
        if (*dim == 1 && edges.empty() && faces.empty()) {
            if (vertices.size() != 2) throw ValidationError("an interval has exactly two vertices");
            edges.emplace_back(0, 1);
        }
        if (edges.empty()) throw ValidationError("dimension " + std::to_string(*dim) + " needs explicit edges");
        if (*dim >= 3 && faces.empty()) throw ValidationError("dimension " + std::to_string(*dim) + " needs explicit 2-faces");
        const Point origin = vertices[0];
        for (auto& v : vertices) v = sub(v, origin);
        return Polytope(*dim, vertices, edges, faces);
    };
    return PolytopeFile{build(), std::move(hilbert), std::move(minkowski)};
}

Polytope load_polytope(std::string_view text) { return parse_polytope_file(text).polytope; }

PolytopeFile read_polytope_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_polytope_file(ss.str());
}

std::size_t min_vertex(const Polytope& p, std::span<const std::int64_t> c) {
    std::size_t best = 0;
    for (std::size_t v = 1; v < p.num_vertices(); ++v)
        if (p.pairing(v, c) < p.pairing(best, c)) best = v;
    return best;
}

Path path_lambda(const Polytope& p, std::size_t v) {
    Path path{std::vector<int>(p.num_edges(), 0), 0, v};
    if (v == 0) return path;
    auto step = [&](std::size_t e, std::size_t from) {
        path.steps[e] += p.edges()[e].tail == from ? 1 : -1;
    };
    if (p.dim() == 2) {
        const auto& cv = p.ccw_vertices();
        const auto& ce = p.ccw_edges();
        const std::size_t n = cv.size();
        std::size_t pos = static_cast<std::size_t>(std::find(cv.begin(), cv.end(), v) - cv.begin());
        if (pos <= n - pos) {
            for (std::size_t i = 0; i < pos; ++i) step(ce[i], cv[i]);
        } else {
            for (std::size_t i = n; i > pos; --i) step(ce[i - 1], cv[i % n]);
        }
        return path;
    }
    // breadth-first search, exploring edges in increasing index order
    std::vector<std::ptrdiff_t> via(p.num_vertices(), -1);
    std::vector<bool> seen(p.num_vertices(), false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (auto e : p.incident(u)) {
            auto w = p.edges()[e].tail == u ? p.edges()[e].head : p.edges()[e].tail;
            if (seen[w]) continue;
            seen[w] = true;
            via[w] = static_cast<std::ptrdiff_t>(e);
            queue.push_back(w);
        }
    }
    for (std::size_t cur = v; cur != 0;) {
        auto e = static_cast<std::size_t>(via[cur]);
        auto prev = p.edges()[e].tail == cur ? p.edges()[e].head : p.edges()[e].tail;
        step(e, prev);
        cur = prev;
    }
    return path;
}

Path path_mu(const Polytope& p, std::size_t v, std::span<const std::int64_t> c) {
    const std::size_t target = min_vertex(p, c);
    Path path{std::vector<int>(p.num_edges(), 0), v, target};
    auto other = [&](std::size_t e, std::size_t from) {
        return p.edges()[e].tail == from ? p.edges()[e].head : p.edges()[e].tail;
    };
    auto step = [&](std::size_t e, std::size_t from) {
        path.steps[e] += p.edges()[e].tail == from ? 1 : -1;
    };

    std::size_t cur = v;
    // strictly descend while possible
    for (;;) {
        bool moved = false;
        for (auto e : p.incident(cur)) {
            auto w = other(e, cur);
            if (p.pairing(w, c) < p.pairing(cur, c)) {
                step(e, cur);
                cur = w;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    if (cur == target) return path;
    // on the minimal face: level moves only
    const auto level = p.pairing(cur, c);
    if (level != p.pairing(target, c))
        throw CorrectnessError("descending walk stopped above the minimum");
    std::vector<std::ptrdiff_t> via(p.num_vertices(), -1);
    std::vector<bool> seen(p.num_vertices(), false);
    std::deque<std::size_t> queue{cur};
    seen[cur] = true;
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (auto e : p.incident(u)) {
            auto w = other(e, u);
            if (seen[w] || p.pairing(w, c) != level) continue;
            seen[w] = true;
            via[w] = static_cast<std::ptrdiff_t>(e);
            queue.push_back(w);
        }
    }
    if (!seen[target]) throw CorrectnessError("minimal face of the polytope is not connected");
    std::vector<std::pair<std::size_t, std::size_t>> back;
    for (std::size_t x = target; x != cur;) {
        auto e = static_cast<std::size_t>(via[x]);
        auto prev = other(e, x);
        back.emplace_back(e, prev);
        x = prev;
    }
    for (auto it = back.rbegin(); it != back.rend(); ++it) step(it->first, it->second);
    return path;
}

std::int64_t width(const Polytope& p, std::span<const std::int64_t> c) {
    std::int64_t lo = 0, hi = 0;
    for (std::size_t v = 0; v < p.num_vertices(); ++v) {
        auto x = p.pairing(v, c);
        if (v == 0 || x < lo) lo = x;
        if (v == 0 || x > hi) hi = x;
    }
    return hi - lo;
}

namespace {

// For edge vectors E (rows, square, invertible): |c_j| <= bound * sum_i |adj(E)_{j,i}| / |det E|.
std::optional<std::int64_t> box_from_edges(const Polytope& p, const std::vector<std::size_t>& choice,
                                           std::int64_t bound) {
    const std::size_t d = p.dim();
    IntMatrix e(d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) e(r, k) = static_cast<long>(p.edges()[choice[r]].vector[k]);
    Int det = determinant(e);
    if (det == 0) return std::nullopt;
    std::int64_t best = 0;
    for (std::size_t j = 0; j < d; ++j) {
        Int row_sum = 0;
        for (std::size_t i = 0; i < d; ++i) {
            // cofactor C_{i,j} gives adj(E)_{j,i}
            IntMatrix minor(d - 1, d - 1);
            for (std::size_t r = 0, mr = 0; r < d; ++r) {
                if (r == i) continue;
                for (std::size_t k = 0, mk = 0; k < d; ++k) {
                    if (k == j) continue;
                    minor(mr, mk++) = e(r, k);
                }
                ++mr;
            }
            Int cof = d == 1 ? Int(1) : determinant(minor);
            row_sum += abs(cof);
        }
        Int b = row_sum * bound / abs(det);
        best = std::max<std::int64_t>(best, b.get_si());
    }
    return best;
}

}  // namespace

std::int64_t width_box(const Polytope& p, std::int64_t bound) {
    const std::size_t d = p.dim();
    const std::size_t n = p.num_edges();
    std::optional<std::int64_t> best;
    if (d <= 2) {
        for (std::size_t a = 0; a < n; ++a) {
            if (d == 1) {
                if (auto b = box_from_edges(p, {a}, bound); b && (!best || *b < *best)) best = b;
                continue;
            }
            for (std::size_t b2 = a + 1; b2 < n; ++b2)
                if (auto b = box_from_edges(p, {a, b2}, bound); b && (!best || *b < *best)) best = b;
        }
    } else {
        std::vector<std::size_t> choice;
        std::vector<RatVector> rows;
        for (std::size_t e = 0; e < n && choice.size() < d; ++e) {
            rows.push_back(to_rational(std::span<const std::int64_t>(p.edges()[e].vector)));
            if (rational_rank(rows, d) == rows.size()) choice.push_back(e);
            else rows.pop_back();
        }
        if (choice.size() == d) best = box_from_edges(p, choice, bound);
    }
    if (!best) throw UnsupportedError("polytope is not full-dimensional");
    return *best;
}

std::vector<Point> box_points(std::size_t dim, std::int64_t box) {
    std::vector<Point> out;
    Point c(dim, -box);
    for (;;) {
        out.push_back(c);
        std::size_t k = dim;
        while (k > 0) {
            --k;
            if (c[k] < box) {
                ++c[k];
                for (std::size_t r = k + 1; r < dim; ++r) c[r] = -box;
                break;
            }
            if (k == 0) return out;
        }
        if (dim == 0) return out;
    }
}

}  // namespace toricdef
