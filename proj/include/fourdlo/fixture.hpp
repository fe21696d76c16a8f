#pragma once

// Virtual LED fixture laid along the projected edge arcs: quadrants of
// strands, each strand a run of whole edges.

#include <stdexcept>
#include <string>
#include <vector>

#include "fourdlo/polytope.hpp"
#include "fourdlo/projection.hpp"

namespace fourdlo {

struct FixtureConfig {
    int leds_per_edge = 146;
    int quadrants = 4;
    int strands_per_quadrant = 7;

    int strand_count() const { return quadrants * strands_per_quadrant; }
    friend bool operator==(const FixtureConfig&, const FixtureConfig&) = default;
};

struct LedRecord {
    int index = 0;
    int strand = 0;
    int offset = 0;
    int edge = 0;
    double t = 0;       ///< fraction of the 4D edge arc, (k + 1/2)/n
    Quat4 position4;    ///< unposed point on the edge's great circle
    Vec3 position3;     ///< projected after the pose (clipped on straight arcs)
};

struct Strand {
    int id = 0;
    int quadrant = 0;
    std::vector<int> edges;
    int first_led = 0;
    int led_count = 0;
};

struct Fixture {
    FixtureConfig config;
    ViewPose pose;
    std::vector<LedRecord> leds;
    std::vector<Strand> strands;
    std::vector<int> quadrant_of_edge;
    std::vector<ProjectedArc> arcs;  ///< indexed by edge id
    bool round_robin_fallback = false;
    std::string warning;

    std::size_t size() const { return leds.size(); }
};

/// Quadrant of a projected point by its x-y sign pair, rotating
/// counterclockwise: 0 is x > 0, y >= 0. Returns -1 at the z axis.
inline int sign_quadrant(const Vec3& p, double zero_tol = 1e-12) {
    const double x = std::abs(p.x) < zero_tol ? 0.0 : p.x;
    const double y = std::abs(p.y) < zero_tol ? 0.0 : p.y;
    if (x > 0 && y >= 0) return 0;
    if (x <= 0 && y > 0) return 1;
    if (x < 0 && y <= 0) return 2;
    if (x >= 0 && y < 0) return 3;
    return -1;
}

inline Fixture build_fixture(const CellComplex& complex, const FixtureConfig& cfg = {}, const ViewPose& pose = {}) {
    if (complex.edges.empty()) throw std::invalid_argument("build_fixture: complex has no edges");
    if (cfg.leds_per_edge < 1 || cfg.quadrants < 1 || cfg.strands_per_quadrant < 1)
        throw std::invalid_argument("build_fixture: counts must be positive");
    pose.validate();

    Fixture f;
    f.config = cfg;
    f.pose = pose;
    const int edge_count = static_cast<int>(complex.edges.size());
    for (int e = 0; e < edge_count; ++e) {
        const auto [a, b] = complex.edges[static_cast<std::size_t>(e)];
        f.arcs.push_back(project_edge(complex.vertices.points[a].to_float(), complex.vertices.points[b].to_float(), pose, e));
    }

    // quadrants by projected midpoint, when that is balanced
    f.quadrant_of_edge.assign(static_cast<std::size_t>(edge_count), -1);
    bool balanced = cfg.quadrants == 4 && edge_count % 4 == 0;
    if (balanced) {
        std::vector<int> counts(4, 0);
        for (int e = 0; e < edge_count; ++e) {
            const int q = sign_quadrant(f.arcs[static_cast<std::size_t>(e)].point_at(0.5));
            f.quadrant_of_edge[static_cast<std::size_t>(e)] = q;
            if (q < 0) {
                balanced = false;
                break;
            }
            ++counts[static_cast<std::size_t>(q)];
        }
        for (int c : counts) balanced = balanced && c == edge_count / 4;
    }
    if (!balanced) {
        f.round_robin_fallback = true;
        f.warning = "edge midpoints do not split evenly into " + std::to_string(cfg.quadrants) +
                    " sign quadrants; edges assigned round-robin";
        for (int e = 0; e < edge_count; ++e) f.quadrant_of_edge[static_cast<std::size_t>(e)] = e % cfg.quadrants;
    }

    // within a quadrant, canonical edge order; the first (E_q mod S) strands take one extra edge
    const int per_q = cfg.strands_per_quadrant;
    for (int q = 0; q < cfg.quadrants; ++q) {
        std::vector<int> edges;
        for (int e = 0; e < edge_count; ++e)
            if (f.quadrant_of_edge[static_cast<std::size_t>(e)] == q) edges.push_back(e);
        const int n = static_cast<int>(edges.size());
        std::size_t next = 0;
        for (int s = 0; s < per_q; ++s) {
            Strand st;
            st.id = q * per_q + s;
            st.quadrant = q;
            const int load = n / per_q + (s < n % per_q ? 1 : 0);
            for (int k = 0; k < load; ++k) st.edges.push_back(edges[next++]);
            f.strands.push_back(std::move(st));
        }
    }

    const int n = cfg.leds_per_edge;
    for (auto& st : f.strands) {
        st.first_led = static_cast<int>(f.leds.size());
        int offset = 0;
        for (int e : st.edges) {
            const auto [a, b] = complex.edges[static_cast<std::size_t>(e)];
            const Quat4 pa = complex.vertices.points[a].to_float(), pb = complex.vertices.points[b].to_float();
            for (int k = 0; k < n; ++k) {
                LedRecord led;
                led.index = static_cast<int>(f.leds.size());
                led.strand = st.id;
                led.offset = offset++;
                led.edge = e;
                led.t = (k + 0.5) / n;
                led.position4 = slerp(pa, pb, led.t);
                led.position3 = f.arcs[static_cast<std::size_t>(e)].point_at(led.t);
                f.leds.push_back(led);
            }
        }
        st.led_count = offset;
    }
    return f;
}

/// The LED at (strand, offset); throws std::out_of_range on a bad address.
inline const LedRecord& led_lookup(const Fixture& f, int strand, int offset) {
    if (strand < 0 || strand >= static_cast<int>(f.strands.size()))
        throw std::out_of_range("led_lookup: no strand " + std::to_string(strand));
    const Strand& st = f.strands[static_cast<std::size_t>(strand)];
    if (offset < 0 || offset >= st.led_count)
        throw std::out_of_range("led_lookup: strand " + std::to_string(strand) + " has no offset " + std::to_string(offset));
    return f.leds[static_cast<std::size_t>(st.first_led + offset)];
}

}  // namespace fourdlo
