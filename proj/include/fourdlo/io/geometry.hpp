#pragma once

// Geometry export: the 24-cell with its labels, compounds, edge rings,
// named groups, the fixture wiring and the projected arcs for one pose, as
// JSON. Exact coordinates travel as strings next to display floats.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fourdlo/fixture.hpp"
#include "fourdlo/symmetry.hpp"

namespace fourdlo::io {

inline constexpr int kGeometryVersion = 1;

using Exact4 = std::array<std::string, 4>;  ///< x, y, z, w
using Float4 = std::array<double, 4>;
using Float3 = std::array<double, 3>;

struct GeometryExport {
    struct Vertex {
        Exact4 exact;
        Float4 value;
        std::vector<int> tesseracts;  ///< components of the three-tesseract compound holding it
        friend bool operator==(const Vertex&, const Vertex&) = default;
    };
    struct Edge {
        int a = 0, b = 0;
        int tesseract = -1;
        int ring = -1;
        int family = -1;
        int quadrant = -1;
        int strand = -1;
        friend bool operator==(const Edge&, const Edge&) = default;
    };
    struct Compound {
        std::string name;
        int components = 0;
        std::vector<Exact4> vertices;
        std::vector<std::vector<int>> vertex_labels;
        std::vector<std::array<int, 2>> edges;
        std::vector<std::vector<int>> edge_labels;
        friend bool operator==(const Compound&, const Compound&) = default;
    };
    struct Ring {
        int family = -1;
        std::vector<int> vertices;
        std::vector<int> edges;
        friend bool operator==(const Ring&, const Ring&) = default;
    };
    struct Family {
        Exact4 rotation;
        Float3 axis;
        std::vector<int> rings;
        friend bool operator==(const Family&, const Family&) = default;
    };
    struct Group {
        std::string name;
        std::size_t order = 0;
        std::vector<std::string> generators;
        friend bool operator==(const Group&, const Group&) = default;
    };
    struct Strand {
        int id = 0, quadrant = 0, first_led = 0, led_count = 0;
        std::vector<int> edges;
        friend bool operator==(const Strand&, const Strand&) = default;
    };
    struct FixtureInfo {
        int leds_per_edge = 0, quadrants = 0, strands_per_quadrant = 0;
        std::size_t led_count = 0;
        bool round_robin = false;
        std::string warning;
        std::vector<Strand> strands;
        friend bool operator==(const FixtureInfo&, const FixtureInfo&) = default;
    };
    struct Arc {
        int edge = 0;
        std::string kind;
        std::optional<Float3> start, end;  ///< empty at infinity
        Float3 center{}, normal{}, direction{};
        double radius = 0, sweep = 0, clip_radius = 0;
        std::vector<Float3> samples;
        friend bool operator==(const Arc&, const Arc&) = default;
    };

    int version = kGeometryVersion;
    Float4 pose_left{0, 0, 0, 1}, pose_right{0, 0, 0, 1};
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> cells;
    std::vector<Compound> compounds;
    std::vector<Ring> rings;
    std::vector<Family> families;
    std::vector<Group> groups;
    FixtureInfo fixture;
    std::vector<Arc> arcs;

    friend bool operator==(const GeometryExport&, const GeometryExport&) = default;
};

/// Points per arc in the `samples` polyline.
inline constexpr int kArcSamples = 17;

namespace detail {

inline Exact4 exact4(const QuatEx& q) { return {q.x().to_string(), q.y().to_string(), q.z().to_string(), q.w().to_string()}; }
inline Float4 float4(const Quat4& q) { return {q.x, q.y, q.z, q.w}; }
inline Float3 float3(const Vec3& v) { return {v.x, v.y, v.z}; }

template <class G>
GeometryExport::Group describe_group(const G& g, std::string name) {
    GeometryExport::Group out{std::move(name), g.order(), {}};
    for (const auto& e : g.generating_set()) {
        const std::string x = e.reflects() ? "conj(x)" : "x";
        out.generators.push_back("x -> [" + e.left().to_string() + "] " + x + " [" + e.right().to_string() + "]");
    }
    return out;
}

inline GeometryExport::Compound describe_compound(const Compound& c) {
    GeometryExport::Compound out;
    out.name = c.name;
    out.components = static_cast<int>(c.components.size());
    for (const auto& p : c.combined.vertices.points) out.vertices.push_back(exact4(p));
    out.vertex_labels = c.combined.vertex_labels;
    for (auto [a, b] : c.combined.edges) out.edges.push_back({a, b});
    out.edge_labels = c.combined.edge_labels;
    return out;
}

}  // namespace detail

inline GeometryExport::Arc describe_arc(const ProjectedArc& arc) {
    using detail::float3;
    GeometryExport::Arc a;
    a.edge = arc.edge_id;
    a.kind = to_string(arc.kind);
    if (!is_infinite(arc.start)) a.start = float3(std::get<Vec3>(arc.start));
    if (!is_infinite(arc.end)) a.end = float3(std::get<Vec3>(arc.end));
    a.center = float3(arc.center);
    a.normal = float3(arc.normal);
    a.direction = float3(arc.direction);
    a.radius = arc.radius;
    a.sweep = arc.sweep;
    a.clip_radius = arc.clip_radius;
    for (const auto& p : sample_arc(arc, kArcSamples)) a.samples.push_back(float3(p));
    return a;
}

/// Arcs of every edge of `complex` under `pose`, in edge order.
inline std::vector<GeometryExport::Arc> project_arcs(const CellComplex& complex, const ViewPose& pose) {
    std::vector<GeometryExport::Arc> out;
    for (std::size_t e = 0; e < complex.edges.size(); ++e) {
        const auto [a, b] = complex.edges[e];
        out.push_back(describe_arc(project_edge(complex.vertices.points[a].to_float(), complex.vertices.points[b].to_float(),
                                                pose, static_cast<int>(e))));
    }
    return out;
}

/// Builds the export for the default 24-cell fixture under `fixture.pose`.
inline GeometryExport build_export(GroupCatalog& catalog, const Fixture& fixture) {
    using detail::exact4;
    using detail::float3;
    using detail::float4;
    const CellComplex& c = catalog.cell24();
    if (fixture.arcs.size() != c.edges.size()) throw std::invalid_argument("build_export: fixture is not on the 24-cell");
    const Compound& tess = catalog.three_tesseracts();
    const RingPartition rings = edge_rings(c);

    GeometryExport g;
    g.pose_left = float4(fixture.pose.left);
    g.pose_right = float4(fixture.pose.right);

    for (const auto& p : c.vertices.points) {
        GeometryExport::Vertex v{exact4(p), float4(p.to_float()), {}};
        const int id = tess.combined.vertices.find(p);
        if (id >= 0) v.tesseracts = tess.combined.vertex_labels[static_cast<std::size_t>(id)];
        g.vertices.push_back(std::move(v));
    }

    std::vector<int> strand_of(c.edges.size(), -1);
    for (const auto& st : fixture.strands)
        for (int e : st.edges) strand_of[static_cast<std::size_t>(e)] = st.id;
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
        const auto [a, b] = c.edges[e];
        GeometryExport::Edge out;
        out.a = a;
        out.b = b;
        const int ta = tess.combined.vertices.find(c.vertices.points[a]);
        const int tb = tess.combined.vertices.find(c.vertices.points[b]);
        const int te = ta < 0 || tb < 0 ? -1 : tess.combined.find_edge(ta, tb);
        if (te >= 0 && !tess.combined.edge_labels[static_cast<std::size_t>(te)].empty())
            out.tesseract = tess.combined.edge_labels[static_cast<std::size_t>(te)].front();
        out.ring = rings.ring_of_edge[e];
        out.family = rings.rings[static_cast<std::size_t>(out.ring)].family;
        out.quadrant = fixture.quadrant_of_edge[e];
        out.strand = strand_of[e];
        g.edges.push_back(out);
    }
    g.cells = c.cells;

    for (const Compound* comp : {&catalog.three_sixteen(), &tess}) g.compounds.push_back(detail::describe_compound(*comp));
    g.compounds.push_back(detail::describe_compound(build_compound(CompoundKind::DualPair24)));

    for (const auto& r : rings.rings) g.rings.push_back({r.family, r.vertices, r.edges});
    for (const auto& f : rings.families) g.families.push_back({exact4(f.rotation), float3(f.axis), f.rings});

    g.groups = {
        detail::describe_group(catalog.dual_pair(), "dualpair"),
        detail::describe_group(catalog.dual_pair_reflections(), "dualpair.2"),
        detail::describe_group(catalog.full24(), "full24"),
        detail::describe_group(catalog.full24_reflections(), "full24.2"),
        detail::describe_group(catalog.tesseract(0), "tess(0)"),
        detail::describe_group(catalog.tesseract(1), "tess(1)"),
        detail::describe_group(catalog.tesseract(2), "tess(2)"),
        detail::describe_group(catalog.sixteen(0), "sixteen(0)"),
        detail::describe_group(catalog.sixteen(1), "sixteen(1)"),
        detail::describe_group(catalog.sixteen(2), "sixteen(2)"),
        detail::describe_group(catalog.directed24(), "directed24"),
        detail::describe_group(catalog.rings(), "rings"),
        detail::describe_group(catalog.left_tetrahedral(), "leftT"),
        detail::describe_group(catalog.left_octahedral(), "leftO"),
        detail::describe_group(catalog.trivial(), "trivial"),
        detail::describe_group(tetra_times_c6(), "+-[TxC6]"),
        detail::describe_group(c2_times_c11(), "+-[C2xC11]"),
    };

    const FixtureConfig& cfg = fixture.config;
    g.fixture = {cfg.leds_per_edge, cfg.quadrants, cfg.strands_per_quadrant, fixture.size(),
                 fixture.round_robin_fallback, fixture.warning, {}};
    for (const auto& st : fixture.strands) g.fixture.strands.push_back({st.id, st.quadrant, st.first_led, st.led_count, st.edges});

    for (const auto& arc : fixture.arcs) g.arcs.push_back(describe_arc(arc));
    return g;
}

// JSON mapping. Arc endpoints at infinity and the radius of straight arcs
// (infinite) are written as null.

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GeometryExport::Vertex, exact, value, tesseracts)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GeometryExport::Edge, a, b, tesseract, ring, family, quadrant, strand)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GeometryExport::Compound, name, components, vertices, vertex_labels, edges, edge_labels)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GeometryExport::Ring, family, vertices, edges)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GeometryExport::Family, rotation, axis, rings)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GeometryExport::Group, name, order, generators)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GeometryExport::Strand, id, quadrant, first_led, led_count, edges)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GeometryExport::FixtureInfo, leds_per_edge, quadrants, strands_per_quadrant, led_count,
                                   round_robin, warning, strands)

inline void to_json(nlohmann::json& j, const GeometryExport::Arc& a) {
    j = {{"edge", a.edge},   {"kind", a.kind},   {"center", a.center},           {"normal", a.normal},
         {"direction", a.direction}, {"sweep", a.sweep}, {"clip_radius", a.clip_radius}, {"samples", a.samples}};
    j["radius"] = std::isfinite(a.radius) ? nlohmann::json(a.radius) : nlohmann::json(nullptr);
    j["start"] = a.start ? nlohmann::json(*a.start) : nlohmann::json(nullptr);
    j["end"] = a.end ? nlohmann::json(*a.end) : nlohmann::json(nullptr);
}

inline void from_json(const nlohmann::json& j, GeometryExport::Arc& a) {
    j.at("edge").get_to(a.edge);
    j.at("kind").get_to(a.kind);
    j.at("center").get_to(a.center);
    j.at("normal").get_to(a.normal);
    j.at("direction").get_to(a.direction);
    a.radius = j.at("radius").is_null() ? INFINITY : j.at("radius").get<double>();
    j.at("sweep").get_to(a.sweep);
    j.at("clip_radius").get_to(a.clip_radius);
    j.at("samples").get_to(a.samples);
    a.start = j.at("start").is_null() ? std::nullopt : std::optional<Float3>(j.at("start").get<Float3>());
    a.end = j.at("end").is_null() ? std::nullopt : std::optional<Float3>(j.at("end").get<Float3>());
}

inline nlohmann::json to_json(const GeometryExport& g) {
    nlohmann::json j;
    j["format"] = "fourdlo-geometry";
    j["version"] = g.version;
    j["pose"] = {{"left", g.pose_left}, {"right", g.pose_right}};
    j["vertices"] = g.vertices;
    j["edges"] = g.edges;
    j["cells"] = g.cells;
    j["compounds"] = g.compounds;
    j["rings"] = g.rings;
    j["families"] = g.families;
    j["groups"] = g.groups;
    j["fixture"] = g.fixture;
    j["arcs"] = g.arcs;
    return j;
}

/// Reads an export back; throws std::invalid_argument on a wrong format or
/// version, nlohmann::json exceptions on missing or mistyped fields.
inline GeometryExport geometry_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "fourdlo-geometry") throw std::invalid_argument("not a fourdlo geometry export");
    GeometryExport g;
    j.at("version").get_to(g.version);
    if (g.version != kGeometryVersion) throw std::invalid_argument("unsupported geometry version " + std::to_string(g.version));
    j.at("pose").at("left").get_to(g.pose_left);
    j.at("pose").at("right").get_to(g.pose_right);
    j.at("vertices").get_to(g.vertices);
    j.at("edges").get_to(g.edges);
    j.at("cells").get_to(g.cells);
    j.at("compounds").get_to(g.compounds);
    j.at("rings").get_to(g.rings);
    j.at("families").get_to(g.families);
    j.at("groups").get_to(g.groups);
    j.at("fixture").get_to(g.fixture);
    j.at("arcs").get_to(g.arcs);
    return g;
}

/// Pretty JSON text; identical inputs give identical bytes.
inline std::string dump_geometry(const GeometryExport& g) { return to_json(g).dump(1) + "\n"; }

/// Exact vertex coordinates as QuatEx, parsing the export's strings.
inline QuatEx parse_exact(const Exact4& e) {
    return {QSqrt2::parse(e[0]), QSqrt2::parse(e[1]), QSqrt2::parse(e[2]), QSqrt2::parse(e[3])};
}

}  // namespace fourdlo::io
