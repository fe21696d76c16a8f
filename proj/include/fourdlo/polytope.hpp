#pragma once

// Exact vertex sets of the 16-cell, tesseract and 24-cell family, with
// incidence derived by brute force over exact inner products.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fourdlo/exactnum.hpp"
#include "fourdlo/isometry.hpp"

namespace fourdlo {

using Edge = std::pair<int, int>;

struct VertexSet {
    std::string name;
    std::vector<QuatEx> points;

    std::size_t size() const { return points.size(); }
    /// Index of p, or -1.
    int find(const QuatEx& p) const {
        auto it = std::lower_bound(points.begin(), points.end(), p);
        if (it == points.end() || *it != p) return -1;
        return static_cast<int>(it - points.begin());
    }
    bool contains(const QuatEx& p) const { return find(p) >= 0; }
    friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.points == b.points; }
};

/// Sorts points into canonical order and rejects duplicates.
inline VertexSet make_vertex_set(std::string name, std::vector<QuatEx> points) {
    std::sort(points.begin(), points.end());
    if (std::adjacent_find(points.begin(), points.end()) != points.end())
        throw std::invalid_argument("vertex set '" + name + "' has duplicate points");
    return {std::move(name), std::move(points)};
}

enum class VertexSetName { V8, V16, V16Plus, V16Minus, V24, V24Prime };

inline VertexSetName parse_vertex_set_name(std::string_view name) {
    if (name == "V8") return VertexSetName::V8;
    if (name == "V16") return VertexSetName::V16;
    if (name == "V16+") return VertexSetName::V16Plus;
    if (name == "V16-") return VertexSetName::V16Minus;
    if (name == "V24") return VertexSetName::V24;
    if (name == "V24'") return VertexSetName::V24Prime;
    throw std::invalid_argument("unknown vertex set name: " + std::string(name));
}

inline const char* to_string(VertexSetName n) {
    switch (n) {
        case VertexSetName::V8: return "V8";
        case VertexSetName::V16: return "V16";
        case VertexSetName::V16Plus: return "V16+";
        case VertexSetName::V16Minus: return "V16-";
        case VertexSetName::V24: return "V24";
        case VertexSetName::V24Prime: return "V24'";
    }
    return "?";
}

namespace detail {

inline std::vector<QuatEx> axis_points() {
    std::vector<QuatEx> out;
    for (int axis = 0; axis < 4; ++axis) {
        for (int s : {1, -1}) {
            QSqrt2 c[4] = {0, 0, 0, 0};
            c[axis] = s;
            out.emplace_back(c[0], c[1], c[2], c[3]);
        }
    }
    return out;
}

/// 1/2(+-i +-j +-k +-1); parity filter: 0 all, +1 even number of minus signs, -1 odd.
inline std::vector<QuatEx> half_points(int parity) {
    const QSqrt2 half = QSqrt2::rational(1, 2);
    std::vector<QuatEx> out;
    for (int mask = 0; mask < 16; ++mask) {
        const int minus = __builtin_popcount(static_cast<unsigned>(mask));
        if (parity == 1 && minus % 2 != 0) continue;
        if (parity == -1 && minus % 2 == 0) continue;
        auto c = [&](int bit) { return (mask >> bit & 1) ? -half : half; };
        out.emplace_back(c(0), c(1), c(2), c(3));
    }
    return out;
}

/// (+-x +-y)/sqrt2 over the six unordered pairs of the axes 1, i, j, k.
inline std::vector<QuatEx> diagonal_points() {
    const QSqrt2 h = QSqrt2::inv_sqrt2();
    std::vector<QuatEx> out;
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            for (int sa : {1, -1}) {
                for (int sb : {1, -1}) {
                    QSqrt2 c[4] = {0, 0, 0, 0};
                    c[a] = h * QSqrt2(sa);
                    c[b] = h * QSqrt2(sb);
                    out.emplace_back(c[0], c[1], c[2], c[3]);
                }
            }
        }
    }
    return out;
}

}  // namespace detail

inline VertexSet make_vertices(VertexSetName name) {
    std::vector<QuatEx> pts;
    switch (name) {
        case VertexSetName::V8: pts = detail::axis_points(); break;
        case VertexSetName::V16: pts = detail::half_points(0); break;
        case VertexSetName::V16Plus: pts = detail::half_points(1); break;
        case VertexSetName::V16Minus: pts = detail::half_points(-1); break;
        case VertexSetName::V24:
            pts = detail::axis_points();
            for (auto& p : detail::half_points(0)) pts.push_back(std::move(p));
            break;
        case VertexSetName::V24Prime: pts = detail::diagonal_points(); break;
    }
    return make_vertex_set(to_string(name), std::move(pts));
}

inline VertexSet make_vertices(std::string_view name) { return make_vertices(parse_vertex_set_name(name)); }

inline QuatEx omega() {
    const QSqrt2 h = QSqrt2::rational(1, 2);
    return {h, h, h, h};
}

/// Vertices, edges, faces and cells of a polytope or compound.
///
/// Faces and cells are sorted vertex-index sets. vertex_labels / edge_labels
/// list the component ids (of a compound) each element belongs to; a plain
/// polytope labels everything with component 0.
struct CellComplex {
    std::string name;
    VertexSet vertices;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> faces;
    std::vector<std::vector<int>> cells;
    std::vector<std::vector<int>> vertex_labels;
    std::vector<std::vector<int>> edge_labels;

    struct Counts {
        std::size_t v, e, f, c;
        friend bool operator==(const Counts&, const Counts&) = default;
    };
    Counts counts() const { return {vertices.size(), edges.size(), faces.size(), cells.size()}; }
    long euler() const {
        return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) +
               static_cast<long>(faces.size()) - static_cast<long>(cells.size());
    }

    int find_edge(int a, int b) const {
        const Edge e = std::minmax(a, b);
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it == edges.end() || *it != e) return -1;
        return static_cast<int>(it - edges.begin());
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(vertices.size());
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        return adj;
    }

    /// Edge ids with both endpoints in `vertex_ids`.
    std::vector<int> edges_within(const std::vector<int>& vertex_ids) const {
        std::vector<int> out;
        std::vector<char> in(vertices.size(), 0);
        for (int v : vertex_ids) in[v] = 1;
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (in[edges[e].first] && in[edges[e].second]) out.push_back(static_cast<int>(e));
        return out;
    }
};

/// All unordered pairs whose exact inner product re(p conj(q)) equals `inner`.
inline std::vector<Edge> derive_edges(const VertexSet& vs, const QSqrt2& inner) {
    if (inner < QSqrt2(-1) || inner > QSqrt2(1)) throw std::invalid_argument("derive_edges: inner product outside [-1, 1]");
    std::vector<Edge> out;
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            if (dot(vs.points[a], vs.points[b]) == inner) out.emplace_back(static_cast<int>(a), static_cast<int>(b));
    return out;
}

/// Tesseract edges by the "differ in exactly one coordinate" rule, read in the
/// tesseract's own frame: the frame axes are the four edge vectors at the
/// first vertex, and two vertices are adjacent iff they differ by +-one axis.
inline std::vector<Edge> tesseract_edges(const VertexSet& vs) {
    if (vs.size() != 16) throw std::invalid_argument("tesseract_edges: expected 16 vertices, got " + std::to_string(vs.size()));
    const QuatEx& base = vs.points.front();
    // nearest neighbours of the base vertex span the frame
    QSqrt2 best(-2);
    for (std::size_t i = 1; i < vs.size(); ++i) best = std::max(best, dot(base, vs.points[i]));
    std::vector<QuatEx> axes;
    for (std::size_t i = 1; i < vs.size(); ++i)
        if (dot(base, vs.points[i]) == best) axes.push_back(vs.points[i] - base);
    if (axes.size() != 4) throw std::invalid_argument("tesseract_edges: vertex set is not a tesseract");
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b)
            if (!dot(axes[a], axes[b]).is_zero()) throw std::invalid_argument("tesseract_edges: frame is not orthogonal");
    std::vector<Edge> out;
    for (std::size_t a = 0; a < vs.size(); ++a) {
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
            const QuatEx d = vs.points[b] - vs.points[a];
            const bool one_axis = std::any_of(axes.begin(), axes.end(),
                                              [&](const QuatEx& ax) { return d == ax || d == -ax; });
            if (one_axis) out.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    }
    if (out.size() != 32) throw std::invalid_argument("tesseract_edges: vertex set is not a tesseract");
    return out;
}

struct CellsAndFaces {
    std::vector<std::vector<int>> cells;
    std::vector<std::vector<int>> faces;
};

/// Cells as the vertices nearest each dual vertex (maximal exact inner
/// product), faces as intersections of two cells in at least three vertices.
/// `cell_size` is the required size of every nearest set.
inline CellsAndFaces derive_cells_from_dual(const VertexSet& vs, const VertexSet& dual, std::size_t cell_size) {
    CellsAndFaces out;
    for (const QuatEx& c : dual.points) {
        QSqrt2 best(-2);
        for (const QuatEx& v : vs.points) best = std::max(best, dot(v, c));
        std::vector<int> cell;
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (dot(vs.points[i], c) == best) cell.push_back(static_cast<int>(i));
        if (cell.size() != cell_size)
            throw std::invalid_argument("derive_cells: vertex sets are not dual (nearest set of size " +
                                        std::to_string(cell.size()) + ", expected " + std::to_string(cell_size) + ")");
        out.cells.push_back(std::move(cell));
    }
    std::sort(out.cells.begin(), out.cells.end());
    std::set<std::vector<int>> faces;
    for (std::size_t a = 0; a < out.cells.size(); ++a) {
        for (std::size_t b = a + 1; b < out.cells.size(); ++b) {
            std::vector<int> shared;
            std::set_intersection(out.cells[a].begin(), out.cells[a].end(), out.cells[b].begin(), out.cells[b].end(),
                                  std::back_inserter(shared));
            if (shared.size() >= 3) faces.insert(std::move(shared));
        }
    }
    out.faces.assign(faces.begin(), faces.end());
    return out;
}

/// The 24 octahedral cells of a 24-cell from its dual vertex set, plus the
/// 96 triangular faces.
inline CellsAndFaces derive_cells_24cell(const VertexSet& vs24, const VertexSet& dual) {
    if (vs24.size() != 24 || dual.size() != 24) throw std::invalid_argument("derive_cells_24cell: expected 24 + 24 vertices");
    return derive_cells_from_dual(vs24, dual, 6);
}

enum class ComplexKind { Cell16, Tesseract, Cell24, Cell24Dual };

inline const char* to_string(ComplexKind k) {
    switch (k) {
        case ComplexKind::Cell16: return "cell16";
        case ComplexKind::Tesseract: return "tesseract";
        case ComplexKind::Cell24: return "cell24";
        case ComplexKind::Cell24Dual: return "cell24-dual";
    }
    return "?";
}

namespace detail {

inline void label_single(CellComplex& c) {
    c.vertex_labels.assign(c.vertices.size(), {0});
    c.edge_labels.assign(c.edges.size(), {0});
}

}  // namespace detail

inline CellComplex build_complex(ComplexKind kind) {
    CellComplex c;
    c.name = to_string(kind);
    CellsAndFaces cf;
    switch (kind) {
        case ComplexKind::Cell16:
            c.vertices = make_vertices(VertexSetName::V8);
            c.edges = derive_edges(c.vertices, QSqrt2(0));
            cf = derive_cells_from_dual(c.vertices, make_vertices(VertexSetName::V16), 4);
            break;
        case ComplexKind::Tesseract:
            c.vertices = make_vertices(VertexSetName::V16);
            c.edges = tesseract_edges(c.vertices);
            cf = derive_cells_from_dual(c.vertices, make_vertices(VertexSetName::V8), 8);
            break;
        case ComplexKind::Cell24:
            c.vertices = make_vertices(VertexSetName::V24);
            c.edges = derive_edges(c.vertices, QSqrt2::rational(1, 2));
            cf = derive_cells_24cell(c.vertices, make_vertices(VertexSetName::V24Prime));
            break;
        case ComplexKind::Cell24Dual:
            c.vertices = make_vertices(VertexSetName::V24Prime);
            c.edges = derive_edges(c.vertices, QSqrt2::rational(1, 2));
            cf = derive_cells_24cell(c.vertices, make_vertices(VertexSetName::V24));
            break;
    }
    c.cells = std::move(cf.cells);
    c.faces = std::move(cf.faces);
    detail::label_single(c);
    return c;
}

/// Image of a complex under an exact isometry, re-sorted into canonical order.
inline CellComplex transform(const CellComplex& c, const ExactIsometry& g, std::string name = {}) {
    std::vector<QuatEx> moved;
    moved.reserve(c.vertices.size());
    for (const auto& p : c.vertices.points) moved.push_back(g.apply(p));
    CellComplex out;
    out.name = name.empty() ? c.name : std::move(name);
    out.vertices = make_vertex_set(out.name, moved);
    std::vector<int> remap(moved.size());
    for (std::size_t i = 0; i < moved.size(); ++i) remap[i] = out.vertices.find(moved[i]);
    for (auto [a, b] : c.edges) out.edges.push_back(std::minmax(remap[a], remap[b]));
    std::vector<std::size_t> edge_order(out.edges.size());
    for (std::size_t i = 0; i < edge_order.size(); ++i) edge_order[i] = i;
    std::sort(edge_order.begin(), edge_order.end(), [&](auto x, auto y) { return out.edges[x] < out.edges[y]; });
    std::vector<Edge> sorted_edges;
    std::vector<std::vector<int>> sorted_edge_labels;
    for (auto i : edge_order) {
        sorted_edges.push_back(out.edges[i]);
        sorted_edge_labels.push_back(c.edge_labels.empty() ? std::vector<int>{0} : c.edge_labels[i]);
    }
    out.edges = std::move(sorted_edges);
    out.edge_labels = std::move(sorted_edge_labels);
    auto remap_sets = [&](const std::vector<std::vector<int>>& sets) {
        std::vector<std::vector<int>> r;
        for (const auto& s : sets) {
            std::vector<int> m;
            for (int v : s) m.push_back(remap[v]);
            std::sort(m.begin(), m.end());
            r.push_back(std::move(m));
        }
        std::sort(r.begin(), r.end());
        return r;
    };
    out.faces = remap_sets(c.faces);
    out.cells = remap_sets(c.cells);
    out.vertex_labels.assign(out.vertices.size(), {});
    for (std::size_t i = 0; i < moved.size(); ++i)
        out.vertex_labels[remap[i]] = c.vertex_labels.empty() ? std::vector<int>{0} : c.vertex_labels[i];
    return out;
}

/// Components sharing one ambient, plus their union with provenance labels.
struct Compound {
    std::string name;
    std::vector<CellComplex> components;
    CellComplex combined;
};

/// Union of components; labels record which components hold each vertex/edge.
/// The union keeps vertices and edges only (cells stay per component).
inline Compound make_compound(std::string name, std::vector<CellComplex> components) {
    Compound out;
    out.name = name;
    std::vector<QuatEx> all;
    for (const auto& c : components)
        for (const auto& p : c.vertices.points) all.push_back(p);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    out.combined.name = name;
    out.combined.vertices = make_vertex_set(name, std::move(all));
    out.combined.vertex_labels.assign(out.combined.vertices.size(), {});
    std::map<Edge, std::vector<int>> edges;
    for (std::size_t k = 0; k < components.size(); ++k) {
        const auto& c = components[k];
        std::vector<int> remap(c.vertices.size());
        for (std::size_t i = 0; i < c.vertices.size(); ++i) {
            remap[i] = out.combined.vertices.find(c.vertices.points[i]);
            out.combined.vertex_labels[remap[i]].push_back(static_cast<int>(k));
        }
        for (auto [a, b] : c.edges) edges[std::minmax(remap[a], remap[b])].push_back(static_cast<int>(k));
    }
    for (auto& [e, labels] : edges) {
        out.combined.edges.push_back(e);
        out.combined.edge_labels.push_back(std::move(labels));
    }
    out.components = std::move(components);
    return out;
}

enum class CompoundKind { Three16, ThreeTesseracts, DualPair24, TwoThree16 };

inline const char* to_string(CompoundKind k) {
    switch (k) {
        case CompoundKind::Three16: return "three16";
        case CompoundKind::ThreeTesseracts: return "threeTesseracts";
        case CompoundKind::DualPair24: return "dualPair24";
        case CompoundKind::TwoThree16: return "twoThree16";
    }
    return "?";
}

/// (1 + i)/sqrt2, the dual map V24 -> V24'.
inline QuatEx dual_map_quat() {
    const QSqrt2 h = QSqrt2::inv_sqrt2();
    return {h, 0, 0, h};
}

namespace detail {

inline std::vector<CellComplex> three_sixteen_cells() {
    const CellComplex base = build_complex(ComplexKind::Cell16);
    const QuatEx w = omega();
    return {transform(base, ExactIsometry::identity(), "16-cell V8"),
            transform(base, ExactIsometry::left_mult(w), "16-cell V16+"),
            transform(base, ExactIsometry::left_mult(w * w), "16-cell V16-")};
}

/// The tesseracts inscribed in the vertex-down 24-cell, found as the distinct
/// images of the standard tesseract's vertex set under left multiplication by
/// the 24 points of V24.
inline std::vector<CellComplex> three_tesseracts() {
    const CellComplex base = build_complex(ComplexKind::Tesseract);
    const VertexSet v24 = make_vertices(VertexSetName::V24);
    std::vector<CellComplex> found;
    for (const QuatEx& a : v24.points) {
        const auto g = ExactIsometry::left_mult(a);
        CellComplex img = transform(base, g);
        const bool seen = std::any_of(found.begin(), found.end(),
                                      [&](const CellComplex& c) { return c.vertices == img.vertices; });
        if (seen) continue;
        // the image must itself satisfy the one-coordinate rule in its own frame
        if (tesseract_edges(img.vertices) != img.edges) throw std::logic_error("tesseract image lost its edge rule");
        img.name = "tesseract " + std::to_string(found.size());
        found.push_back(std::move(img));
    }
    return found;
}

}  // namespace detail

inline Compound build_compound(CompoundKind kind) {
    switch (kind) {
        case CompoundKind::Three16: return make_compound("three16", detail::three_sixteen_cells());
        case CompoundKind::ThreeTesseracts: return make_compound("threeTesseracts", detail::three_tesseracts());
        case CompoundKind::DualPair24:
            return make_compound("dualPair24", {build_complex(ComplexKind::Cell24), build_complex(ComplexKind::Cell24Dual)});
        case CompoundKind::TwoThree16: {
            auto parts = detail::three_sixteen_cells();
            const auto dual = ExactIsometry::right_mult(dual_map_quat());
            const std::size_t n = parts.size();
            for (std::size_t k = 0; k < n; ++k) parts.push_back(transform(parts[k], dual, parts[k].name + " dual"));
            return make_compound("twoThree16", std::move(parts));
        }
    }
    throw std::invalid_argument("unknown compound kind");
}

struct CrossingPoints {
    VertexSet points;
    /// hits[i] = number of component edges whose normalized midpoint is points[i]
    std::vector<int> hits;
};

/// Normalized edge midpoints of the three 16-cells, where their edges
/// appear to cross.
inline CrossingPoints crossing_points(const Compound& three16) {
    std::map<QuatEx, int> hits;
    for (const auto& comp : three16.components) {
        for (auto [a, b] : comp.edges) {
            const QuatEx sum = comp.vertices.points[a] + comp.vertices.points[b];
            const auto mid = normalized_exact(sum);
            if (!mid) throw std::domain_error("crossing_points: degenerate or non-exact edge midpoint");
            ++hits[*mid];
        }
    }
    CrossingPoints out;
    std::vector<QuatEx> pts;
    for (auto& [p, n] : hits) {
        pts.push_back(p);
        out.hits.push_back(n);
    }
    out.points = make_vertex_set("crossings", std::move(pts));
    return out;
}

}  // namespace fourdlo
