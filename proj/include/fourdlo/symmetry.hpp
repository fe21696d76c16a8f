#pragma once

// Quaternionic symmetry groups of the 24-cell family: binary polyhedral
// groups, +-[A x B] products, stabilizers, orbits, the edge <-> three-fold
// rotation correspondence and Hopf fibrations.

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourdlo/cyclic.hpp"
#include "fourdlo/exactnum.hpp"
#include "fourdlo/isometry.hpp"
#include "fourdlo/polytope.hpp"

namespace fourdlo {

// ---------------------------------------------------------------------------
// Binary polyhedral groups

/// T*, the 24 points of V24.
inline std::vector<QuatEx> binary_tetrahedral() { return make_vertices(VertexSetName::V24).points; }

/// O* = V24 u V24'.
inline std::vector<QuatEx> binary_octahedral() {
    auto out = make_vertices(VertexSetName::V24).points;
    for (auto& p : make_vertices(VertexSetName::V24Prime).points) out.push_back(std::move(p));
    std::sort(out.begin(), out.end());
    return out;
}

/// Lift of C_n about a unit imaginary axis, as exact quaternions. Only
/// n in {1, 2, 4} keep cos(pi/n) in Q(sqrt 2); other n throw.
inline std::vector<QuatEx> cyclic_lift_exact(const QuatEx& axis, long n) {
    std::vector<QuatEx> out;
    for (const auto& c : CyclicQuat::lift(axis, n)) {
        auto e = c.to_exact();
        if (!e) throw std::domain_error("cyclic_lift_exact: C_" + std::to_string(n) + " lift is not exact in Q(sqrt 2)");
        out.push_back(std::move(*e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rotations fixing 1

/// x -> r^-1 x r: fixes +-1 and turns the imaginary 3-space about im(r) by
/// 2 arccos(re(r)), clockwise as seen from r looking toward 1.
inline ExactIsometry conjugation_rotation(const QuatEx& r) {
    if (!r.is_unit()) throw std::invalid_argument("conjugation_rotation: r must be a unit quaternion");
    return {r.inverse(), r};
}

struct AngleAxis {
    double angle = 0;             ///< radians in [0, 2 pi)
    std::optional<Vec3> axis;     ///< unit axis; empty for the identity
};

inline AngleAxis rotation_angle_axis(const ExactIsometry& g) {
    if (g.reflects() || g.left() != g.right().inverse())
        throw std::invalid_argument("rotation_angle_axis: isometry does not fix 1");
    const Quat4 r = g.right().to_float();
    AngleAxis out;
    out.angle = 2 * std::acos(std::clamp(r.w, -1.0, 1.0));
    if (g.right().im().is_zero()) {
        out.angle = 0;
        return out;
    }
    out.axis = normalized(r.im());
    return out;
}

// ---------------------------------------------------------------------------
// Structures, stabilizers and orbits

/// What a stabilizer must preserve. Edges and components index into `points`.
struct Structure {
    VertexSet points;
    std::vector<Edge> edges;
    std::vector<Edge> directed_edges;
    std::vector<std::vector<int>> components;
};

enum class StabilizerMode { Vertices, Edges, DirectedEdges, Components };

inline Structure structure_of(const CellComplex& c) {
    Structure s;
    s.points = c.vertices;
    s.edges = c.edges;
    return s;
}

inline Structure structure_of(const Compound& compound) {
    Structure s = structure_of(compound.combined);
    for (const auto& comp : compound.components) {
        std::vector<int> ids;
        for (const auto& p : comp.vertices.points) ids.push_back(compound.combined.vertices.find(p));
        std::sort(ids.begin(), ids.end());
        s.components.push_back(std::move(ids));
    }
    return s;
}

/// The vertex-down 24-cell with each edge directed from V8 to V16+, V16+ to
/// V16- and V16- to V8 (the cyclic order induced by left multiplication by
/// omega).
inline Structure directed_24cell(const CellComplex& cell24) {
    const VertexSet v8 = make_vertices(VertexSetName::V8);
    const VertexSet vp = make_vertices(VertexSetName::V16Plus);
    auto cls = [&](const QuatEx& p) { return v8.contains(p) ? 0 : vp.contains(p) ? 1 : 2; };
    Structure s = structure_of(cell24);
    for (auto [a, b] : cell24.edges) {
        const int ca = cls(cell24.vertices.points[a]);
        const int cb = cls(cell24.vertices.points[b]);
        if (ca == cb) throw std::logic_error("directed_24cell: edge inside one class");
        if ((ca + 1) % 3 == cb) s.directed_edges.emplace_back(a, b);
        else s.directed_edges.emplace_back(b, a);
    }
    std::sort(s.directed_edges.begin(), s.directed_edges.end());
    return s;
}

/// Permutation of `points` induced by g, or nullopt if g moves a point outside.
inline std::optional<std::vector<int>> point_permutation(const ExactIsometry& g, const VertexSet& points) {
    std::vector<int> perm(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const int j = points.find(g.apply(points.points[i]));
        if (j < 0) return std::nullopt;
        perm[i] = j;
    }
    return perm;
}

inline bool preserves(const ExactIsometry& g, const Structure& s, StabilizerMode mode) {
    const auto perm = point_permutation(g, s.points);
    if (!perm) return false;
    switch (mode) {
        case StabilizerMode::Vertices: return true;
        case StabilizerMode::Edges: {
            std::set<Edge> edges(s.edges.begin(), s.edges.end());
            for (auto [a, b] : s.edges)
                if (!edges.contains(std::minmax((*perm)[a], (*perm)[b]))) return false;
            return true;
        }
        case StabilizerMode::DirectedEdges: {
            std::set<Edge> edges(s.directed_edges.begin(), s.directed_edges.end());
            for (auto [a, b] : s.directed_edges)
                if (!edges.contains({(*perm)[a], (*perm)[b]})) return false;
            return true;
        }
        case StabilizerMode::Components: {
            std::set<std::vector<int>> comps(s.components.begin(), s.components.end());
            for (const auto& comp : s.components) {
                std::vector<int> img;
                for (int v : comp) img.push_back((*perm)[v]);
                std::sort(img.begin(), img.end());
                if (!comps.contains(img)) return false;
            }
            return true;
        }
    }
    return false;
}

/// Subgroup of g preserving the structure; closure is re-verified.
inline ExactGroup stabilizer(const ExactGroup& g, const Structure& s, StabilizerMode mode, std::string name = {}) {
    std::vector<ExactIsometry> keep;
    for (const auto& e : g.elements())
        if (preserves(e, s, mode)) keep.push_back(e);
    auto sub = ExactGroup::from_elements(std::move(keep), {}, std::move(name));
    if (!sub.is_subgroup_of(g)) throw NotAGroup("stabilizer is not a subgroup");
    return sub;
}

/// g extended by an orientation-reversing witness preserving the same
/// structure. Returns g unchanged when the witness is already a member.
inline ExactGroup extend_reflections(const ExactGroup& g, const ExactIsometry& witness, const Structure& s,
                                     StabilizerMode mode, std::string name = {}) {
    if (!preserves(witness, s, mode)) throw std::invalid_argument("extend_reflections: witness does not preserve the structure");
    for (const auto& e : g.elements())
        if (!preserves(e, s, mode)) throw std::invalid_argument("extend_reflections: group does not preserve the structure");
    if (g.contains(witness)) return g;
    std::vector<ExactIsometry> elements = g.elements();
    for (const auto& e : g.elements()) elements.push_back(witness * e);
    auto ext = ExactGroup::from_elements(std::move(elements), {}, name.empty() ? g.name() + "*2" : std::move(name));
    if (ext.order() != 2 * g.order()) throw NotAGroup("extend_reflections: extension is not of index 2");
    return ext;
}

/// Orbits ordered by their smallest member; members sorted.
struct Partition {
    std::vector<std::vector<int>> orbits;
    std::vector<int> orbit_of;

    std::vector<std::size_t> sizes() const {
        std::vector<std::size_t> s;
        for (const auto& o : orbits) s.push_back(o.size());
        return s;
    }
};

namespace detail {

inline Partition partition_from_union(std::vector<int> parent) {
    const std::size_t n = parent.size();
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    Partition p;
    p.orbit_of.assign(n, -1);
    std::map<int, int> root_to_orbit;
    for (std::size_t i = 0; i < n; ++i) {
        const int r = find(static_cast<int>(i));
        auto [it, fresh] = root_to_orbit.emplace(r, static_cast<int>(p.orbits.size()));
        if (fresh) p.orbits.emplace_back();
        p.orbits[it->second].push_back(static_cast<int>(i));
        p.orbit_of[i] = it->second;
    }
    return p;
}

inline void unite(std::vector<int>& parent, int a, int b) {
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
}

inline std::vector<std::vector<int>> permutations_of(const ExactGroup& g, const VertexSet& points) {
    std::vector<std::vector<int>> perms;
    perms.reserve(g.order());
    for (const auto& e : g.elements()) {
        auto perm = point_permutation(e, points);
        if (!perm) throw std::invalid_argument("orbits: group does not preserve the point set");
        perms.push_back(std::move(*perm));
    }
    return perms;
}

/// Orbits of index sets (edges, cells, ...) under vertex permutations.
inline Partition set_orbits_from_perms(const std::vector<std::vector<int>>& perms,
                                       const std::vector<std::vector<int>>& sets, bool ordered) {
    auto key = [&](std::vector<int> s) {
        if (!ordered) std::sort(s.begin(), s.end());
        return s;
    };
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < sets.size(); ++i) index.emplace(key(sets[i]), static_cast<int>(i));
    std::vector<int> parent(sets.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& perm : perms) {
        for (std::size_t i = 0; i < sets.size(); ++i) {
            std::vector<int> img;
            for (int v : sets[i]) img.push_back(perm[v]);
            auto it = index.find(key(img));
            if (it == index.end()) throw std::invalid_argument("orbits: group does not preserve the item set");
            unite(parent, static_cast<int>(i), it->second);
        }
    }
    return partition_from_union(std::move(parent));
}

}  // namespace detail

inline Partition vertex_orbits(const ExactGroup& g, const VertexSet& points) {
    const auto perms = detail::permutations_of(g, points);
    std::vector<int> parent(points.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& perm : perms)
        for (std::size_t i = 0; i < perm.size(); ++i) detail::unite(parent, static_cast<int>(i), perm[i]);
    return detail::partition_from_union(std::move(parent));
}

inline Partition edge_orbits(const ExactGroup& g, const CellComplex& c) {
    std::vector<std::vector<int>> sets;
    for (auto [a, b] : c.edges) sets.push_back({a, b});
    return detail::set_orbits_from_perms(detail::permutations_of(g, c.vertices), sets, false);
}

/// Orbits of vertex-index sets such as cells or faces.
inline Partition set_orbits(const ExactGroup& g, const VertexSet& points, const std::vector<std::vector<int>>& sets) {
    return detail::set_orbits_from_perms(detail::permutations_of(g, points), sets, false);
}

/// Orbit of one point and its stabilizer, for orbit-stabilizer checks.
inline std::size_t orbit_size(const ExactGroup& g, const QuatEx& x) {
    std::set<QuatEx> orbit;
    for (const auto& e : g.elements()) orbit.insert(e.apply(x));
    return orbit.size();
}

inline std::size_t point_stabilizer_order(const ExactGroup& g, const QuatEx& x) {
    return static_cast<std::size_t>(std::count_if(g.elements().begin(), g.elements().end(),
                                                  [&](const ExactIsometry& e) { return e.apply(x) == x; }));
}

// ---------------------------------------------------------------------------
// Edges as three-fold rotations

/// e = p r^-1 for the directed edge p <- r of the vertex-down 24-cell; e^3 = -1.
inline QuatEx edge_rotation(const QuatEx& p, const QuatEx& r) {
    static const VertexSet v24 = make_vertices(VertexSetName::V24);
    if (!v24.contains(p) || !v24.contains(r) || dot(p, r) != QSqrt2::rational(1, 2))
        throw std::invalid_argument("edge_rotation: pair is not an edge of the vertex-down 24-cell");
    return p * r.inverse();
}

struct Ring {
    std::vector<int> vertices;  ///< cyclic order x, e x, e^2 x, ...
    std::vector<int> edges;     ///< sorted edge ids
    int family = -1;
};

struct RingFamily {
    QuatEx rotation;  ///< the family's e (of e, e^-1, the one with positive leading imaginary part)
    Vec3 axis;        ///< unit three-fold rotation axis
    std::vector<int> rings;
};

struct RingPartition {
    std::vector<Ring> rings;
    std::vector<RingFamily> families;
    std::vector<int> ring_of_edge;
};

namespace detail {

/// Of e and e^-1, the one whose imaginary part has a positive leading coordinate.
inline QuatEx family_key(const QuatEx& e) {
    for (const QSqrt2* c : {&e.x(), &e.y(), &e.z()}) {
        const int s = c->sign();
        if (s != 0) return s > 0 ? e : e.inverse();
    }
    return e;
}

}  // namespace detail

/// Splits the 96 edges of the 24-cell into closed rings of six along great
/// circles; rings whose edges share a rotation axis form one family.
inline RingPartition edge_rings(const CellComplex& cell24) {
    RingPartition out;
    out.ring_of_edge.assign(cell24.edges.size(), -1);
    const auto& pts = cell24.vertices.points;
    std::map<QuatEx, int> family_index;
    for (std::size_t start = 0; start < cell24.edges.size(); ++start) {
        if (out.ring_of_edge[start] >= 0) continue;
        const auto [a, b] = cell24.edges[start];
        const QuatEx e = detail::family_key(edge_rotation(pts[a], pts[b]));
        Ring ring;
        const QuatEx x0 = pts[b];
        QuatEx x = x0;
        int prev = cell24.vertices.find(x);
        ring.vertices.push_back(prev);
        for (int step = 0; step < 6; ++step) {
            x = e * x;
            const int cur = cell24.vertices.find(x);
            const int edge = cur < 0 ? -1 : cell24.find_edge(prev, cur);
            if (edge < 0) throw std::invalid_argument("edge_rings: complex is not a 24-cell");
            ring.edges.push_back(edge);
            if (step < 5) ring.vertices.push_back(cur);
            prev = cur;
        }
        if (x != x0) throw std::invalid_argument("edge_rings: ring does not close after six edges");
        std::sort(ring.edges.begin(), ring.edges.end());
        const int ring_id = static_cast<int>(out.rings.size());
        for (int edge : ring.edges) {
            if (out.ring_of_edge[edge] >= 0) throw std::logic_error("edge_rings: edge in two rings");
            out.ring_of_edge[edge] = ring_id;
        }
        auto [it, fresh] = family_index.emplace(e, static_cast<int>(out.families.size()));
        if (fresh) out.families.push_back({e, normalized(e.im().to_float().im()), {}});
        ring.family = it->second;
        out.families[it->second].rings.push_back(ring_id);
        out.rings.push_back(std::move(ring));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hopf fibrations

enum class Side { Left, Right };

inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

/// Fibration of S^3 into the great circles {(cos t + sin t q) x} (left side)
/// or {x (cos t + sin t q)} (right side).
struct Fibration {
    QuatEx axis;
    Side side = Side::Left;

    Fibration(QuatEx q, Side s) : axis(std::move(q)), side(s) {
        if (!axis.re().is_zero() || !axis.is_unit())
            throw std::invalid_argument("Fibration: axis must be an exact unit imaginary quaternion");
    }
};

struct Fiber {
    Fibration fibration;
    QuatEx base;

    /// The point at parameter theta; period 2 pi, at(0) = base.
    Quat4 at(double theta) const {
        const Quat4 q = fibration.axis.to_float();
        const Quat4 r{q.x * std::sin(theta), q.y * std::sin(theta), q.z * std::sin(theta), std::cos(theta)};
        const Quat4 x = base.to_float();
        return fibration.side == Side::Left ? r * x : x * r;
    }

    /// Exact membership: y x^-1 (left) or x^-1 y (right) lies in span(1, q).
    bool contains(const QuatEx& y) const {
        if (!y.is_unit()) return false;
        const QuatEx d = fibration.side == Side::Left ? y * base.inverse() : base.inverse() * y;
        const QuatEx v = d.im();
        const QuatEx& q = fibration.axis;
        // v parallel to q: all 2x2 minors vanish
        return (v.x() * q.y() - v.y() * q.x()).is_zero() && (v.y() * q.z() - v.z() * q.y()).is_zero() &&
               (v.x() * q.z() - v.z() * q.x()).is_zero();
    }
};

inline Fiber hopf_fiber(const Fibration& f, const QuatEx& x) {
    if (!x.is_unit()) throw std::invalid_argument("hopf_fiber: base point must be a unit quaternion");
    return {f, x};
}

/// Groups point indices by fiber, in order of first appearance.
inline std::vector<std::vector<int>> fiber_partition(const Fibration& f, const VertexSet& points) {
    std::vector<std::vector<int>> fibers;
    std::vector<Fiber> reps;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool placed = false;
        for (std::size_t k = 0; k < reps.size() && !placed; ++k) {
            if (reps[k].contains(points.points[i])) {
                fibers[k].push_back(static_cast<int>(i));
                placed = true;
            }
        }
        if (!placed) {
            reps.push_back(hopf_fiber(f, points.points[i]));
            fibers.push_back({static_cast<int>(i)});
        }
    }
    return fibers;
}

/// Moves every vertex theta along its fiber (float pipeline).
inline std::vector<Quat4> slide(const Fibration& f, double theta, const CellComplex& c) {
    std::vector<Quat4> out;
    for (const auto& p : c.vertices.points) out.push_back(hopf_fiber(f, p).at(theta));
    return out;
}

/// Exact slide by k quarter-pi steps (theta = k pi/4, where cos and sin stay in Q(sqrt 2)).
inline std::vector<QuatEx> slide_exact(const Fibration& f, long eighth_turns, const VertexSet& points) {
    const auto r = CyclicQuat(f.axis, mpq_class(mpz_class(eighth_turns), mpz_class(4))).to_exact();
    if (!r) throw std::logic_error("slide_exact: non-exact rotor");
    std::vector<QuatEx> out;
    for (const auto& p : points.points) out.push_back(f.side == Side::Left ? *r * p : p * *r);
    return out;
}

/// c x (left) or x c (right) with c kept symbolic, so slides by angles
/// outside Q(sqrt 2) (such as pi/6 about (i+j+k)/sqrt3) still compare exactly.
struct SlidPoint {
    QuatEx base;
    CyclicQuat shift;
    Side side = Side::Right;
};

/// Exact equality of two slid points on the same side.
inline bool same_point(const SlidPoint& a, const SlidPoint& b) {
    if (a.side != b.side) throw std::invalid_argument("same_point: points slid on different sides");
    // right: x c_a = y c_b  <=>  y^-1 x = c_b c_a^-1 ; left: c_a x = c_b y  <=>  x y^-1 = c_a^-1 c_b
    const CyclicQuat rel = a.side == Side::Right ? b.shift * a.shift.inverse() : a.shift.inverse() * b.shift;
    const auto exact = rel.to_exact();
    if (!exact) return false;
    const QuatEx lhs = a.side == Side::Right ? b.base.inverse() * a.base : a.base * b.base.inverse();
    return lhs == *exact;
}

inline bool same_point_set(const std::vector<SlidPoint>& a, const std::vector<SlidPoint>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& p : a)
        if (std::none_of(b.begin(), b.end(), [&](const SlidPoint& q) { return same_point(p, q); })) return false;
    return true;
}

/// Images of `points` after k = 0..steps applications of the generator.
inline std::vector<std::vector<SlidPoint>> slide_images(const VertexSet& points, const CyclicQuat& generator, Side side,
                                                        int steps) {
    std::vector<std::vector<SlidPoint>> out;
    for (int k = 0; k <= steps; ++k) {
        std::vector<SlidPoint> img;
        const CyclicQuat c = generator.pow(k);
        for (const auto& p : points.points) img.push_back({p, c, side});
        out.push_back(std::move(img));
    }
    return out;
}

/// Summary of a repeated slide: first step returning every point to itself,
/// and the number of distinct image sets before that.
struct SlideCycle {
    int period = -1;
    int distinct_images = 0;
};

inline SlideCycle slide_cycle(const VertexSet& points, const CyclicQuat& generator, Side side, int max_steps) {
    const auto images = slide_images(points, generator, side, max_steps);
    SlideCycle out;
    for (int k = 1; k <= max_steps; ++k) {
        bool pointwise = true;
        for (std::size_t i = 0; i < points.size() && pointwise; ++i)
            pointwise = same_point(images[0][i], images[k][i]);
        if (pointwise) {
            out.period = k;
            break;
        }
    }
    const int span = out.period > 0 ? out.period : max_steps + 1;
    std::vector<int> reps;
    for (int k = 0; k < span; ++k) {
        const bool dup = std::any_of(reps.begin(), reps.end(), [&](int r) { return same_point_set(images[r], images[k]); });
        if (!dup) reps.push_back(k);
    }
    out.distinct_images = static_cast<int>(reps.size());
    return out;
}

// ---------------------------------------------------------------------------
// Named groups

using MixedGroup = SymGroup<QuatEx, CyclicQuat>;

/// +-[T x C6]: T* on the left, the order-12 lift of C6 about the three-fold
/// axis i+j+k on the right.
inline MixedGroup tetra_times_c6() {
    std::vector<QuatEx> left = binary_tetrahedral();
    auto right = CyclicQuat::lift(QuatEx(1, 1, 1, 0), 6);
    return product_group(left, right, "+-[TxC6]");
}

/// +-[C2 x C11]: {+-1, +-i} on the left, the order-22 lift of C11 about j on the right.
inline MixedGroup c2_times_c11() {
    auto left = cyclic_lift_exact(QuatEx::i(), 2);
    auto right = CyclicQuat::lift(QuatEx::j(), 11);
    return product_group(left, right, "+-[C2xC11]");
}

/// The groups this library names, computed on first use and cached.
class GroupCatalog {
public:
    /// +-[O x O], 1152 rotations preserving V24 u V24'.
    const ExactGroup& dual_pair() {
        return cached(dual_pair_, [] { return product_group(binary_octahedral(), binary_octahedral(), "+-[OxO]"); });
    }
    /// +-[O x O].2, with the reflection x -> conj(x).
    const ExactGroup& dual_pair_reflections() {
        return cached(dual_pair_refl_, [this] {
            Structure s;
            s.points = make_vertex_set("V24uV24'", binary_octahedral());
            return extend_reflections(dual_pair(), ExactIsometry::conjugation(), s, StabilizerMode::Vertices, "+-[OxO].2");
        });
    }
    /// +-1/2[O x O], the 576 rotations of the vertex-down 24-cell.
    const ExactGroup& full24() {
        return cached(full24_, [this] {
            return stabilizer(dual_pair(), structure_of(cell24()), StabilizerMode::Vertices, "+-1/2[OxO]");
        });
    }
    /// Full 24-cell symmetry including reflections (order 1152).
    const ExactGroup& full24_reflections() {
        return cached(full24_refl_, [this] {
            return extend_reflections(full24(), ExactIsometry::conjugation(), structure_of(cell24()), StabilizerMode::Edges,
                                      "+-1/2[OxO].2");
        });
    }
    /// +-1/6[O x O]: rotations preserving tesseract k of the three-tesseract compound.
    const ExactGroup& tesseract(int k) {
        check_index(k);
        return cached(tess_[k], [this, k] {
            const auto& comp = three_tesseracts().components[static_cast<std::size_t>(k)];
            return stabilizer(full24(), structure_of(comp), StabilizerMode::Vertices, "tess(" + std::to_string(k) + ")");
        });
    }
    /// Rotations preserving 16-cell k (V8, V16+, V16-) of the three-16-cell compound.
    const ExactGroup& sixteen(int k) {
        check_index(k);
        return cached(sixteen_[k], [this, k] {
            const auto& comp = three_sixteen().components[static_cast<std::size_t>(k)];
            return stabilizer(full24(), structure_of(comp), StabilizerMode::Vertices, "sixteen(" + std::to_string(k) + ")");
        });
    }
    /// Stabilizer of the omega-directed edges (order 288; "(we think) +-[T x T]", hedged).
    const ExactGroup& directed24() {
        return cached(directed_, [this] {
            return stabilizer(full24(), directed_24cell(cell24()), StabilizerMode::DirectedEdges, "directed24");
        });
    }
    /// Right multiplication by T*: preserves every edge's rotation e, so its
    /// edge orbits are the four ring families.
    const ExactGroup& rings() {
        return cached(rings_, [] {
            return generate_group(std::vector{ExactIsometry::right_mult(omega()), ExactIsometry::right_mult(QuatEx::i())},
                                  kDefaultGroupCap, "rings");
        });
    }
    /// Left multiplication by T*.
    const ExactGroup& left_tetrahedral() {
        return cached(left_t_, [] {
            return generate_group(std::vector{ExactIsometry::left_mult(omega()), ExactIsometry::left_mult(QuatEx::i())},
                                  kDefaultGroupCap, "T*");
        });
    }
    /// Left multiplication by O*.
    const ExactGroup& left_octahedral() {
        return cached(left_o_, [] {
            std::vector<ExactIsometry> gens;
            for (const auto& q : binary_octahedral()) gens.push_back(ExactIsometry::left_mult(q));
            return generate_group(gens, kDefaultGroupCap, "O*");
        });
    }
    const ExactGroup& trivial() {
        return cached(trivial_, [] { return ExactGroup{}; });
    }

    const CellComplex& cell24() {
        std::call_once(cell24_once_, [this] { cell24_ = build_complex(ComplexKind::Cell24); });
        return cell24_;
    }
    const Compound& three_tesseracts() {
        std::call_once(tess_once_, [this] { three_tess_ = build_compound(CompoundKind::ThreeTesseracts); });
        return three_tess_;
    }
    const Compound& three_sixteen() {
        std::call_once(sixteen_once_, [this] { three16_ = build_compound(CompoundKind::Three16); });
        return three16_;
    }

private:
    template <class F>
    const ExactGroup& cached(std::optional<ExactGroup>& slot, F&& make) {
        std::lock_guard lock(mutex_);
        if (!slot) slot = make();
        return *slot;
    }
    static void check_index(int k) {
        if (k < 0 || k > 2) throw std::out_of_range("group index must be 0, 1 or 2");
    }

    std::recursive_mutex mutex_;
    std::optional<ExactGroup> dual_pair_, dual_pair_refl_, full24_, full24_refl_, directed_, rings_, left_t_, left_o_,
        trivial_;
    std::optional<ExactGroup> tess_[3], sixteen_[3];
    std::once_flag cell24_once_, tess_once_, sixteen_once_;
    CellComplex cell24_;
    Compound three_tess_, three16_;
};

}  // namespace fourdlo
