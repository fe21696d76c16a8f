#pragma once

// The mathematical self-check run by `fourdlo validate`: expected against
// computed values, one row per check.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fourdlo/fixture.hpp"
#include "fourdlo/projection.hpp"
#include "fourdlo/symmetry.hpp"

namespace fourdlo {

struct Check {
    std::string section;
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct ValidateOptions {
    /// Test hook: swap one 24-cell vertex for a point of V24' before the incidence checks.
    bool corrupt_vertex = false;
};

struct ValidationReport {
    std::vector<Check> checks;
    double seconds = 0;

    bool ok() const {
        return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
    }

    std::string table() const {
        std::size_t w[4] = {7, 5, 8, 8};
        for (const auto& c : checks) {
            w[0] = std::max(w[0], c.section.size());
            w[1] = std::max(w[1], c.name.size());
            w[2] = std::max(w[2], c.expected.size());
            w[3] = std::max(w[3], c.computed.size());
        }
        std::ostringstream os;
        auto row = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                       const std::string& e) {
            os << std::left << std::setw(static_cast<int>(w[0])) << a << "  " << std::setw(static_cast<int>(w[1])) << b
               << "  " << std::setw(static_cast<int>(w[2])) << c << "  " << std::setw(static_cast<int>(w[3])) << d << "  " << e
               << "\n";
        };
        row("section", "check", "expected", "computed", "result");
        for (const auto& c : checks) row(c.section, c.name, c.expected, c.computed, c.pass ? "PASS" : "FAIL");
        os << (ok() ? "all " + std::to_string(checks.size()) + " checks passed"
                    : std::to_string(failures()) + " of " + std::to_string(checks.size()) + " checks FAILED")
           << " in " << std::fixed << std::setprecision(1) << seconds << " s\n";
        return os.str();
    }
};

namespace detail {

inline std::string counts_str(const CellComplex::Counts& c) {
    return std::to_string(c.v) + "/" + std::to_string(c.e) + "/" + std::to_string(c.f) + "/" + std::to_string(c.c);
}

inline std::string sci(double x) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << x;
    return os.str();
}

/// The 24-cell rebuilt from a vertex list, the way build_complex does it.
inline CellComplex cell24_from(const VertexSet& vs) {
    CellComplex c;
    c.name = "cell24";
    c.vertices = vs;
    c.edges = derive_edges(vs, QSqrt2::rational(1, 2));
    auto cf = derive_cells_24cell(vs, make_vertices(VertexSetName::V24Prime));
    c.cells = std::move(cf.cells);
    c.faces = std::move(cf.faces);
    return c;
}

inline double arc_deviation(const ProjectedArc& arc, int samples) {
    double worst = 0;
    for (const auto& p : sample_arc(arc, samples)) {
        double d;
        if (arc.kind == ArcKind::Circular) {
            const Vec3 v = p - arc.center;
            const double off = dot(v, arc.normal);
            const double in = norm(v - arc.normal * off) - arc.radius;
            d = std::hypot(off, in);
        } else {
            d = norm(p - arc.direction * dot(p, arc.direction));
        }
        worst = std::max(worst, d);
    }
    return worst;
}

}  // namespace detail

inline ValidationReport run_validation(GroupCatalog& catalog, const ValidateOptions& opt = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    ValidationReport r;
    auto add = [&](std::string section, std::string name, std::string expected, std::string computed) {
        const bool pass = expected == computed;
        r.checks.push_back({std::move(section), std::move(name), std::move(expected), std::move(computed), pass});
    };
    auto guarded = [&](const std::string& section, const std::string& name, const std::string& expected,
                       const std::function<std::string()>& f) {
        std::string got;
        try {
            got = f();
        } catch (const std::exception& e) {
            got = std::string("error: ") + e.what();
        }
        add(section, name, expected, got);
    };
    auto n = [](auto x) { return std::to_string(x); };

    // incidence
    guarded("incidence", "cell24 V/E/F/C", "24/96/96/24", [&] {
        VertexSet vs = make_vertices(VertexSetName::V24);
        if (opt.corrupt_vertex) {
            auto pts = vs.points;
            pts.front() = make_vertices(VertexSetName::V24Prime).points.front();
            vs = make_vertex_set("V24 (corrupted)", pts);
        }
        return detail::counts_str(detail::cell24_from(vs).counts());
    });
    const CellComplex& c24 = catalog.cell24();
    add("incidence", "cell24 Euler count", "0", n(c24.euler()));
    {
        std::vector<int> cells_at(24, 0), deg(24, 0);
        for (const auto& cell : c24.cells)
            for (int v : cell) ++cells_at[static_cast<std::size_t>(v)];
        for (auto [a, b] : c24.edges) ++deg[a], ++deg[b];
        const bool six = std::all_of(cells_at.begin(), cells_at.end(), [](int x) { return x == 6; });
        const bool eight = std::all_of(deg.begin(), deg.end(), [](int x) { return x == 8; });
        add("incidence", "cell24 cells per vertex", "6", six ? "6" : "uneven");
        add("incidence", "cell24 edges per vertex", "8", eight ? "8" : "uneven");
    }
    for (auto [kind, want] : {std::pair{ComplexKind::Cell16, "8/24/32/16"}, std::pair{ComplexKind::Tesseract, "16/32/24/8"}}) {
        guarded("incidence", std::string(to_string(kind)) + " V/E/F/C", want, [&, kind = kind] {
            const auto c = build_complex(kind);
            return detail::counts_str(c.counts()) + (c.euler() == 0 ? "" : " (Euler " + std::to_string(c.euler()) + ")");
        });
    }

    // group orders: closures of generators, checked against |A*| |B*| / 2
    using Mixed = Isometry<QuatEx, CyclicQuat>;
    const QuatEx w = omega(), i = QuatEx::i(), oct = dual_map_quat();  // T* = <w, i>, O* = <w, (1+i)/sqrt2>
    const std::size_t t = binary_tetrahedral().size(), o = binary_octahedral().size();
    add("groups", "|T*|", "24", n(catalog.left_tetrahedral().order()));
    add("groups", "|O*|", "48", n(catalog.left_octahedral().order()));
    const auto oxo = generate_group(std::vector{ExactIsometry::left_mult(w), ExactIsometry::left_mult(oct),
                                                ExactIsometry::right_mult(w), ExactIsometry::right_mult(oct)});
    add("groups", "+-[OxO] rotations", "1152", n(oxo.order()));
    add("groups", "+-[OxO] vs |O*||O*|/2", n(o * o / 2), n(oxo.order()));
    add("groups", "24-cell rotations +-1/2[OxO]", "576", n(catalog.full24().order()));
    add("groups", "24-cell with reflections", "1152", n(catalog.full24_reflections().order()));
    add("groups", "single-tesseract stabilizer", "192", n(catalog.tesseract(0).order()));
    add("groups", "directed-edge stabilizer ((we think) +-[TxT])", "288", n(catalog.directed24().order()));
    {
        const auto txt = generate_group(std::vector{ExactIsometry::left_mult(w), ExactIsometry::left_mult(i),
                                                    ExactIsometry::right_mult(w), ExactIsometry::right_mult(i)});
        add("groups", "+-[TxT] vs |T*||T*|/2", n(t * t / 2), n(txt.order()));
        const bool same = txt.is_subgroup_of(catalog.directed24()) && catalog.directed24().is_subgroup_of(txt);
        add("groups", "directed-edge stabilizer vs +-[TxT]", "same set", same ? "same set" : "different");
    }
    {
        const CyclicQuat one;
        const auto txc6 = generate_group(std::vector{Mixed(w, one), Mixed(i, one),
                                                     Mixed(QuatEx::one(), CyclicQuat::generator(QuatEx(1, 1, 1, 0), 6))});
        add("groups", "+-[TxC6]", "144", n(txc6.order()));
        add("groups", "+-[TxC6] vs |T*||C12|/2", n(t * 12 / 2), n(txc6.order()));
        const auto c2c11 = generate_group(std::vector{Mixed(i, one), Mixed(QuatEx::one(), CyclicQuat::generator(QuatEx::j(), 11))});
        add("groups", "+-[C2xC11]", "44", n(c2c11.order()));
        add("groups", "+-[C2xC11] vs |C4||C22|/2", n(std::size_t{4} * 22 / 2), n(c2c11.order()));
    }

    // edges and rotations
    {
        int directed = 0, three_fold = 0;
        for (auto [a, b] : c24.edges) {
            for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
                const QuatEx e = edge_rotation(c24.vertices.points[p], c24.vertices.points[q]);
                ++directed;
                three_fold += e * e * e == -QuatEx::one();
            }
        }
        add("edges", "directed edges with (p r^-1)^3 = -1", "192/192", n(three_fold) + "/" + n(directed));
        const auto rings = edge_rings(c24);
        std::size_t six = 0, four = 0;
        for (const auto& ring : rings.rings) six += ring.edges.size() == 6;
        for (const auto& f : rings.families) four += f.rings.size() == 4;
        add("edges", "rings of 6", "16 x 6", n(six) + " x 6" + (six == rings.rings.size() ? "" : " (of " + n(rings.rings.size()) + ")"));
        add("edges", "axis families of 4 rings", "4 x 4", n(four) + " x 4" + (four == rings.families.size() ? "" : " (of " + n(rings.families.size()) + ")"));
    }

    // compounds
    {
        const Compound& tess = catalog.three_tesseracts();
        std::string parts;
        for (const auto& comp : tess.components) parts += (parts.empty() ? "" : "+") + n(comp.edges.size());
        bool partition = tess.combined.edges.size() == 96;
        for (const auto& l : tess.combined.edge_labels) partition = partition && l.size() == 1;
        add("compounds", "three tesseracts split the edges", "32+32+32 disjoint", parts + (partition ? " disjoint" : " overlapping"));
        bool two = tess.combined.vertices.size() == 24;
        for (const auto& l : tess.combined.vertex_labels) two = two && l.size() == 2;
        add("compounds", "tesseracts per vertex", "2", two ? "2" : "uneven");

        const auto cp = crossing_points(catalog.three_sixteen());
        const bool is_v24p = cp.points == make_vertices(VertexSetName::V24Prime);
        const bool three = std::all_of(cp.hits.begin(), cp.hits.end(), [](int h) { return h == 3; });
        add("compounds", "16-cell edge midpoints", "24 points = V24', 3 each",
            n(cp.points.size()) + " points" + (is_v24p ? " = V24'" : " != V24'") + (three ? ", 3 each" : ", uneven"));

        const auto v24 = make_vertices(VertexSetName::V24), v24p = make_vertices(VertexSetName::V24Prime);
        std::vector<QuatEx> image;
        for (const auto& p : v24.points) image.push_back(p * dual_map_quat());
        std::sort(image.begin(), image.end());
        const bool bijective = std::adjacent_find(image.begin(), image.end()) == image.end() && image == v24p.points;
        add("compounds", "x (1+i)/sqrt2 maps V24 onto V24'", "bijection", bijective ? "bijection" : "not a bijection");
    }

    // Hopf
    {
        const auto fibers = fiber_partition(Fibration(QuatEx::i(), Side::Left), make_vertices(VertexSetName::V24));
        std::size_t fours = 0;
        for (const auto& f : fibers) fours += f.size() == 4;
        add("hopf", "left i-fibers of V24", "6 x 4", n(fibers.size()) + " x " + (fours == fibers.size() ? "4" : "uneven"));
        const auto cyc = slide_cycle(make_vertices(VertexSetName::V8), CyclicQuat::generator(QuatEx(1, 1, 1, 0), 6), Side::Right, 12);
        add("hopf", "V8 slid in pi/6 steps: period", "12", n(cyc.period));
        add("hopf", "V8 slid in pi/6 steps: distinct 16-cells", "6", n(cyc.distinct_images));
    }

    // projection
    {
        auto show = [](const StereoPoint& s) {
            if (is_infinite(s)) return std::string("infinity");
            const Vec3 v = std::get<Vec3>(s);
            std::ostringstream os;
            os << "(" << v.x << "," << v.y << "," << v.z << ")";
            return os.str();
        };
        add("projection", "pi(1)", "(0,0,0)", show(stereo({0, 0, 0, 1})));
        add("projection", "pi(i)", "(1,0,0)", show(stereo({1, 0, 0, 0})));
        add("projection", "pi(-1)", "infinity", show(stereo({0, 0, 0, -1})));
        double worst = 0;
        for (const ViewPose& pose : {ViewPose::identity(), ViewPose::normalized({0.31, -0.22, 0.47, 0.8}, {-0.13, 0.52, 0.29, 0.77})}) {
            for (auto [a, b] : c24.edges) {
                const auto arc = project_edge(c24.vertices.points[a].to_float(), c24.vertices.points[b].to_float(), pose);
                worst = std::max(worst, detail::arc_deviation(arc, 64));
            }
        }
        add("projection", "96 arcs off circle/line (64 samples)", "< 1e-9", worst < 1e-9 ? "< 1e-9" : detail::sci(worst));
        double mult = 0;
        const auto v24p = make_vertices(VertexSetName::V24Prime);
        for (const auto& x : c24.vertices.points)
            for (const auto& y : v24p.points) mult = std::max(mult, max_abs_diff((x * y).to_float(), x.to_float() * y.to_float()));
        add("projection", "exact vs float products", "< 1e-12", mult < 1e-12 ? "< 1e-12" : detail::sci(mult));
    }

    // fixture
    {
        const Fixture f = build_fixture(c24);
        add("fixture", "LEDs / strands", "14016 / 28", n(f.size()) + " / " + n(f.strands.size()));
    }

    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace fourdlo
