#include <gtest/gtest.h>

#include <Eigen/Geometry>
#include <numeric>
#include <random>
#include <set>

#include "fourdlo/symmetry.hpp"

using namespace fourdlo;

namespace {

GroupCatalog& catalog() {
    static GroupCatalog c;
    return c;
}

const QSqrt2 kHalf = QSqrt2::rational(1, 2);

std::set<QuatEx> as_set(const std::vector<QuatEx>& v) { return {v.begin(), v.end()}; }

// Rotation of the imaginary 3-space by `angle` about `axis`, clockwise when
// seen from the axis tip (so a negative right-handed angle).
Eigen::Vector3d clockwise(const Eigen::Vector3d& axis, double angle, const Eigen::Vector3d& v) {
    return Eigen::AngleAxisd(-angle, axis.normalized()) * v;
}

}  // namespace

TEST(Isometry, ApplyExamples) {
    EXPECT_EQ(ExactIsometry(omega(), QuatEx::one()).apply(QuatEx::one()), omega());
    const QuatEx d = ExactIsometry(QuatEx::one(), dual_map_quat()).apply(QuatEx::one());
    EXPECT_EQ(d, dual_map_quat());
    EXPECT_TRUE(make_vertices(VertexSetName::V24Prime).contains(d));
    EXPECT_EQ(ExactIsometry::conjugation().apply(QuatEx::i()), -QuatEx::i());
}

TEST(Isometry, SignCanonical) {
    const ExactIsometry a(omega(), QuatEx::i());
    const ExactIsometry b(-omega(), -QuatEx::i());
    EXPECT_EQ(a, b);
    EXPECT_TRUE(b.left().has_positive_sign());
    EXPECT_EQ(std::hash<ExactIsometry>{}(a), std::hash<ExactIsometry>{}(b));
}

TEST(Isometry, CompositionLawAndUnitImages) {
    const auto& g = catalog().dual_pair_reflections();
    std::mt19937 rng(17);
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    const auto pts = make_vertices(VertexSetName::V24Prime).points;
    const QuatEx x = QuatEx(1, 2, QSqrt2::sqrt2(), -3);  // not unit, not in any vertex set
    for (int trial = 0; trial < 200; ++trial) {
        const auto& a = g.elements()[pick(rng)];
        const auto& b = g.elements()[pick(rng)];
        EXPECT_EQ((a * b).apply(x), a.apply(b.apply(x)));
        EXPECT_EQ(a.inverse().apply(a.apply(x)), x);
        EXPECT_TRUE(a.apply(pts[trial % pts.size()]).is_unit());
        EXPECT_LT(max_abs_diff(a.apply(x.to_float()), a.apply(x).to_float()), 1e-12);
    }
}

TEST(Isometry, LeftAndRightMultiplicationsCommute) {
    const auto v24 = make_vertices(VertexSetName::V24).points;
    for (const auto& a : v24) {
        for (const auto& b : {omega(), QuatEx::i(), dual_map_quat()}) {
            const auto l = ExactIsometry::left_mult(a), r = ExactIsometry::right_mult(b);
            EXPECT_EQ(l * r, r * l);
            for (const auto& x : v24) EXPECT_EQ((l * r).apply(x), (r * l).apply(x));
        }
    }
}

TEST(Rotations, ConjugationExamples) {
    const QuatEx r = (QuatEx::one() + QuatEx::k()) * QSqrt2::inv_sqrt2();
    EXPECT_EQ(conjugation_rotation(r).apply(QuatEx::i()), -QuatEx::j());
    EXPECT_EQ(conjugation_rotation(QuatEx::one()), ExactIsometry::identity());
    const auto w = conjugation_rotation(omega());
    EXPECT_EQ(w.apply(QuatEx::i()), QuatEx::k());
    EXPECT_EQ(w.apply(QuatEx::k()), QuatEx::j());
    EXPECT_EQ(w.apply(QuatEx::j()), QuatEx::i());
    EXPECT_EQ(conjugation_rotation(r).apply(QuatEx::one()), QuatEx::one());
    EXPECT_EQ(conjugation_rotation(r).apply(-QuatEx::one()), -QuatEx::one());
}

TEST(Rotations, MatchRotationMatrixOracle) {
    std::vector<QuatEx> rs = make_vertices(VertexSetName::V24).points;
    for (const auto& p : make_vertices(VertexSetName::V24Prime).points) rs.push_back(p);
    for (const auto& r : rs) {
        const auto g = conjugation_rotation(r);
        EXPECT_EQ(g, conjugation_rotation(-r));
        const AngleAxis aa = rotation_angle_axis(g);
        for (const auto& u : {QuatEx::i(), QuatEx::j(), QuatEx::k(), omega().im()}) {
            const Quat4 img = g.apply(u).to_float();
            const Quat4 uf = u.to_float();
            Eigen::Vector3d expect(uf.x, uf.y, uf.z);
            if (aa.axis) expect = clockwise({aa.axis->x, aa.axis->y, aa.axis->z}, aa.angle, expect);
            EXPECT_NEAR(img.x, expect.x(), 1e-12);
            EXPECT_NEAR(img.y, expect.y(), 1e-12);
            EXPECT_NEAR(img.z, expect.z(), 1e-12);
            EXPECT_NEAR(img.w, 0.0, 1e-12);
        }
    }
}

TEST(Rotations, AngleAxis) {
    const QuatEx r = (QuatEx::one() + QuatEx::k()) * QSqrt2::inv_sqrt2();
    auto aa = rotation_angle_axis(conjugation_rotation(r));
    EXPECT_NEAR(aa.angle, M_PI / 2, 1e-12);
    ASSERT_TRUE(aa.axis);
    EXPECT_NEAR(aa.axis->z, 1.0, 1e-12);
    aa = rotation_angle_axis(conjugation_rotation(omega()));
    EXPECT_NEAR(aa.angle, 2 * M_PI / 3, 1e-12);
    EXPECT_NEAR(aa.axis->x, 1 / std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(aa.axis->y, 1 / std::sqrt(3.0), 1e-12);
    aa = rotation_angle_axis(ExactIsometry::identity());
    EXPECT_EQ(aa.angle, 0.0);
    EXPECT_FALSE(aa.axis);
    EXPECT_THROW(rotation_angle_axis(ExactIsometry::left_mult(omega())), std::invalid_argument);
    EXPECT_THROW(rotation_angle_axis(ExactIsometry::conjugation()), std::invalid_argument);
}

TEST(Groups, BinaryPolyhedral) {
    const auto t = generate_group(std::vector{ExactIsometry::left_mult(omega()), ExactIsometry::left_mult(QuatEx::i())});
    EXPECT_EQ(t.order(), 24u);
    // x -> a x is stored up to sign, so the orbit of 1 is {+-a}: all of V24
    std::set<QuatEx> orbit;
    for (const auto& e : t.elements()) {
        orbit.insert(e.left());
        orbit.insert(-e.left());
    }
    EXPECT_EQ(orbit, as_set(binary_tetrahedral()));
    std::vector<ExactIsometry> gens;
    for (const auto& q : binary_octahedral()) gens.push_back(ExactIsometry::left_mult(q));
    EXPECT_EQ(generate_group(gens).order(), 48u);
    EXPECT_EQ(binary_octahedral().size(), 48u);
    EXPECT_EQ(generate_group(std::vector<ExactIsometry>{}).order(), 1u);
    EXPECT_THROW(generate_group(gens, 10), GroupTooLarge);
}

TEST(Groups, ProductGroupOrders) {
    EXPECT_EQ(catalog().dual_pair().order(), 1152u);
    EXPECT_EQ(catalog().dual_pair().order(), binary_octahedral().size() * binary_octahedral().size() / 2);
    EXPECT_EQ(tetra_times_c6().order(), 144u);
    EXPECT_EQ(c2_times_c11().order(), 44u);
    EXPECT_THROW(product_group(std::vector{QuatEx::one(), omega()}, binary_tetrahedral()), NotAGroup);
}

TEST(Groups, FromElementsRejectsNonGroups) {
    std::vector<ExactIsometry> els{ExactIsometry::identity(), ExactIsometry::left_mult(omega())};
    EXPECT_THROW(ExactGroup::from_elements(els), NotAGroup);
    EXPECT_THROW(ExactGroup::from_elements({ExactIsometry::left_mult(QuatEx::i())}), NotAGroup);
    els.push_back(ExactIsometry::identity());
    EXPECT_THROW(ExactGroup::from_elements(els), NotAGroup);
}

TEST(Groups, Stabilizers) {
    auto& c = catalog();
    EXPECT_EQ(c.full24().order(), 576u);
    EXPECT_TRUE(c.full24().is_subgroup_of(c.dual_pair()));
    for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(c.tesseract(k).order(), 192u);
        EXPECT_EQ(c.sixteen(k).order(), 192u);
    }
    EXPECT_EQ(c.full24().order() / c.tesseract(0).order(), 3u);
    const auto& d = c.directed24();
    EXPECT_EQ(d.order(), 288u);
    // the hedged identification: both one-sided projections are T*
    EXPECT_EQ(as_set(d.left_projection()), as_set(binary_tetrahedral()));
    EXPECT_EQ(as_set(d.right_projection()), as_set(binary_tetrahedral()));
    EXPECT_EQ(c.trivial().order(), 1u);
    EXPECT_EQ(c.rings().order(), 24u);
}

TEST(Groups, TesseractStabilizerOfStandardV16) {
    const auto s = stabilizer(catalog().full24(), structure_of(build_complex(ComplexKind::Tesseract)),
                              StabilizerMode::Edges);
    EXPECT_EQ(s.order(), 192u);
}

TEST(Groups, Reflections) {
    auto& c = catalog();
    const auto& dp2 = c.dual_pair_reflections();
    EXPECT_EQ(dp2.order(), 2304u);
    EXPECT_TRUE(c.dual_pair().is_subgroup_of(dp2));
    const auto& f2 = c.full24_reflections();
    EXPECT_EQ(f2.order(), 1152u);
    const auto s = structure_of(c.cell24());
    const auto again = extend_reflections(f2, ExactIsometry::conjugation(), s, StabilizerMode::Edges);
    EXPECT_EQ(again.order(), f2.order());
    EXPECT_TRUE(again.is_subgroup_of(f2));
    // a reflection that swaps V24 with V24' does not preserve the 24-cell
    const ExactIsometry bad(QuatEx::one(), dual_map_quat(), true);
    EXPECT_THROW(extend_reflections(c.full24(), bad, s, StabilizerMode::Vertices), std::invalid_argument);
}

TEST(Orbits, Examples) {
    auto& c = catalog();
    const auto& cell24 = c.cell24();
    EXPECT_EQ(edge_orbits(c.full24(), cell24).orbits.size(), 1u);
    const auto& standard = c.three_tesseracts().components;
    int v16 = -1;
    for (int k = 0; k < 3; ++k)
        if (standard[k].vertices == make_vertices(VertexSetName::V16)) v16 = k;
    ASSERT_GE(v16, 0);
    auto sizes = vertex_orbits(c.tesseract(v16), cell24.vertices).sizes();
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(sizes, (std::vector<std::size_t>{8, 16}));
    const auto triv = edge_orbits(c.trivial(), cell24);
    EXPECT_EQ(triv.orbits.size(), 96u);
    for (std::size_t i = 0; i < 96; ++i) EXPECT_EQ(triv.orbit_of[i], static_cast<int>(i));
    EXPECT_EQ(set_orbits(c.full24(), cell24.vertices, cell24.cells).orbits.size(), 1u);
    EXPECT_THROW(vertex_orbits(c.dual_pair(), cell24.vertices), std::invalid_argument);
}

TEST(Orbits, SizesDivideOrderAndIdsAreStable) {
    auto& c = catalog();
    for (const ExactGroup* g : {&c.directed24(), &c.tesseract(1), &c.rings(), &c.sixteen(2)}) {
        const auto p = edge_orbits(*g, c.cell24());
        int prev = -1;
        for (const auto& o : p.orbits) {
            EXPECT_EQ(g->order() % o.size(), 0u);
            EXPECT_GT(o.front(), prev);
            prev = o.front();
        }
    }
}

TEST(Orbits, OrbitStabilizerForNamedGroups) {
    auto& c = catalog();
    const auto v24 = make_vertices(VertexSetName::V24);
    for (const ExactGroup* g : {&c.full24(), &c.full24_reflections(), &c.tesseract(0), &c.sixteen(0), &c.directed24(),
                                &c.rings(), &c.dual_pair()}) {
        for (const auto& x : {QuatEx::one(), omega(), dual_map_quat()})
            EXPECT_EQ(orbit_size(*g, x) * point_stabilizer_order(*g, x), g->order()) << g->name();
    }
}

TEST(EdgeRotation, Examples) {
    EXPECT_EQ(edge_rotation(omega(), QuatEx::one()), omega());
    EXPECT_EQ(edge_rotation(QuatEx::one(), omega()), omega().inverse());
    const QuatEx w = omega();
    EXPECT_EQ(w * w * w, -QuatEx::one());
    EXPECT_THROW(edge_rotation(QuatEx::one(), QuatEx::i()), std::invalid_argument);
    EXPECT_THROW(edge_rotation(QuatEx::one(), dual_map_quat()), std::invalid_argument);
}

TEST(EdgeRotation, AllDirectedEdgesAreThreeFold) {
    const auto& c = catalog().cell24();
    int count = 0;
    for (auto [a, b] : c.edges) {
        for (auto [p, r] : {std::pair{a, b}, std::pair{b, a}}) {
            const QuatEx e = edge_rotation(c.vertices.points[p], c.vertices.points[r]);
            EXPECT_EQ(e * e * e, -QuatEx::one());
            ++count;
        }
    }
    EXPECT_EQ(count, 192);
}

TEST(EdgeRings, Partition) {
    const auto& c = catalog().cell24();
    const auto rp = edge_rings(c);
    EXPECT_EQ(rp.rings.size(), 16u);
    EXPECT_EQ(rp.families.size(), 4u);
    for (const auto& f : rp.families) EXPECT_EQ(f.rings.size(), 4u);
    std::vector<int> seen(96, 0);
    for (const auto& r : rp.rings) {
        EXPECT_EQ(r.edges.size(), 6u);
        EXPECT_EQ(r.vertices.size(), 6u);
        for (int e : r.edges) ++seen[e];
    }
    for (int s : seen) EXPECT_EQ(s, 1);
}

TEST(EdgeRings, RingsLieOnGreatCircles) {
    const auto& c = catalog().cell24();
    const auto rp = edge_rings(c);
    for (const auto& r : rp.rings) {
        // every triple of ring vertices is linearly dependent with the first two
        const QuatEx& a = c.vertices.points[r.vertices[0]];
        const QuatEx& b = c.vertices.points[r.vertices[1]];
        for (int v : r.vertices) {
            const QuatEx& x = c.vertices.points[v];
            const QSqrt2 g00 = dot(a, a), g01 = dot(a, b), g02 = dot(a, x), g11 = dot(b, b), g12 = dot(b, x),
                         g22 = dot(x, x);
            const QSqrt2 det = g00 * (g11 * g22 - g12 * g12) - g01 * (g01 * g22 - g12 * g02) + g02 * (g01 * g12 - g11 * g02);
            EXPECT_TRUE(det.is_zero());
        }
    }
}

TEST(EdgeRings, RingThroughOneAndOmega) {
    const auto& c = catalog().cell24();
    const auto rp = edge_rings(c);
    const int e = c.find_edge(c.vertices.find(QuatEx::one()), c.vertices.find(omega()));
    ASSERT_GE(e, 0);
    std::set<QuatEx> ring;
    for (int v : rp.rings[rp.ring_of_edge[e]].vertices) ring.insert(c.vertices.points[v]);
    const QuatEx w = omega(), w2 = omega() * omega();
    EXPECT_EQ(ring, (std::set<QuatEx>{QuatEx::one(), w, w2, -QuatEx::one(), -w, -w2}));
}

TEST(EdgeRings, FamiliesAreRingsGroupOrbits) {
    auto& cat = catalog();
    const auto rp = edge_rings(cat.cell24());
    const auto orbits = edge_orbits(cat.rings(), cat.cell24());
    ASSERT_EQ(orbits.orbits.size(), 4u);
    for (std::size_t e = 0; e < 96; ++e)
        for (std::size_t f = 0; f < 96; ++f)
            EXPECT_EQ(orbits.orbit_of[e] == orbits.orbit_of[f],
                      rp.rings[rp.ring_of_edge[e]].family == rp.rings[rp.ring_of_edge[f]].family);
}

TEST(Hopf, FiberThroughOne) {
    const Fibration f(QuatEx::i(), Side::Left);
    const Fiber fb = hopf_fiber(f, QuatEx::one());
    EXPECT_LT(max_abs_diff(fb.at(0), (Quat4{0, 0, 0, 1})), 1e-15);
    EXPECT_LT(max_abs_diff(fb.at(M_PI / 2), (Quat4{1, 0, 0, 0})), 1e-15);
    EXPECT_LT(max_abs_diff(fb.at(2 * M_PI), fb.at(0)), 1e-14);
    EXPECT_TRUE(fb.contains(QuatEx::i()));
    EXPECT_TRUE(fb.contains(-QuatEx::one()));
    EXPECT_FALSE(fb.contains(QuatEx::j()));
    EXPECT_THROW(Fibration(omega(), Side::Left), std::invalid_argument);
    EXPECT_THROW(Fibration(QuatEx::i() + QuatEx::j(), Side::Left), std::invalid_argument);
}

TEST(Hopf, FibersOfTwentyFourCell) {
    const auto v24 = make_vertices(VertexSetName::V24);
    const auto v8 = make_vertices(VertexSetName::V8);
    const auto fibers = fiber_partition(Fibration(QuatEx::i(), Side::Left), v24);
    ASSERT_EQ(fibers.size(), 6u);
    int on_v8 = 0;
    for (const auto& fb : fibers) {
        EXPECT_EQ(fb.size(), 4u);
        const bool all8 = std::all_of(fb.begin(), fb.end(), [&](int i) { return v8.contains(v24.points[i]); });
        const bool none8 = std::none_of(fb.begin(), fb.end(), [&](int i) { return v8.contains(v24.points[i]); });
        EXPECT_TRUE(all8 || none8);
        on_v8 += all8;
    }
    EXPECT_EQ(on_v8, 2);
    for (const auto& x : v24.points) {
        const Fiber a = hopf_fiber(Fibration(QuatEx::i(), Side::Right), x);
        EXPECT_TRUE(a.contains(-x));
    }
}

TEST(Hopf, SlideExactAndFloat) {
    const auto c = build_complex(ComplexKind::Cell16);
    const Fibration f(QuatEx::i(), Side::Left);
    const auto moved = slide(f, 0.0, c);
    for (std::size_t i = 0; i < moved.size(); ++i)
        EXPECT_LT(max_abs_diff(moved[i], c.vertices.points[i].to_float()), 1e-15);
    const auto half_turn = slide_exact(f, 4, c.vertices);
    for (std::size_t i = 0; i < half_turn.size(); ++i) EXPECT_EQ(half_turn[i], -c.vertices.points[i]);
    const auto eighth = slide_exact(f, 1, c.vertices);
    const auto eighth_f = slide(f, M_PI / 4, c);
    for (std::size_t i = 0; i < eighth.size(); ++i) EXPECT_LT(max_abs_diff(eighth[i].to_float(), eighth_f[i]), 1e-12);
}

TEST(Hopf, SixteenCellSlidTwelveSteps) {
    const auto v8 = make_vertices(VertexSetName::V8);
    const auto gen = CyclicQuat::generator(QuatEx(1, 1, 1, 0), 6);
    const auto cyc = slide_cycle(v8, gen, Side::Right, 12);
    EXPECT_EQ(cyc.period, 12);
    EXPECT_EQ(cyc.distinct_images, 6);
    // every second image is one of the three 16-cells on V24
    const auto images = slide_images(v8, gen, Side::Right, 4);
    std::vector<SlidPoint> v16p;
    for (const auto& p : make_vertices(VertexSetName::V16Plus).points) v16p.push_back({p, CyclicQuat(), Side::Right});
    std::vector<SlidPoint> v16m;
    for (const auto& p : make_vertices(VertexSetName::V16Minus).points) v16m.push_back({p, CyclicQuat(), Side::Right});
    EXPECT_TRUE(same_point_set(images[2], v16p) || same_point_set(images[2], v16m));
    EXPECT_FALSE(same_point_set(images[1], v16p) || same_point_set(images[1], v16m));
    // the symbolic comparison agrees with floats
    for (std::size_t i = 0; i < v8.size(); ++i) {
        const Quat4 x = v8.points[i].to_float() * gen.pow(3).to_float();
        EXPECT_NEAR(norm(x), 1.0, 1e-12);
    }
}

TEST(Hopf, SymbolicComparisonMatchesFloat) {
    const auto v24 = make_vertices(VertexSetName::V24);
    const auto gen = CyclicQuat::generator(QuatEx(1, 1, 1, 0), 6);
    for (int a = 0; a < 12; ++a) {
        for (int b = 0; b < 12; ++b) {
            for (std::size_t i = 0; i < v24.size(); i += 5) {
                for (std::size_t j = 0; j < v24.size(); j += 3) {
                    const SlidPoint p{v24.points[i], gen.pow(a), Side::Right};
                    const SlidPoint q{v24.points[j], gen.pow(b), Side::Right};
                    const Quat4 pf = v24.points[i].to_float() * gen.pow(a).to_float();
                    const Quat4 qf = v24.points[j].to_float() * gen.pow(b).to_float();
                    EXPECT_EQ(same_point(p, q), max_abs_diff(pf, qf) < 1e-9);
                }
            }
        }
    }
}

TEST(CyclicQuat, LiftsAndCanonicalForm) {
    const auto lift6 = CyclicQuat::lift(QuatEx(1, 1, 1, 0), 6);
    EXPECT_EQ(lift6.size(), 12u);
    EXPECT_EQ(std::set<CyclicQuat>(lift6.begin(), lift6.end()).size(), 12u);
    const auto g = CyclicQuat::generator(QuatEx(2, 2, 2, 0), 6);
    EXPECT_EQ(g, CyclicQuat::generator(QuatEx(1, 1, 1, 0), 6));
    EXPECT_EQ(g.pow(12), CyclicQuat::one());
    EXPECT_EQ(g.pow(6), -CyclicQuat::one());
    EXPECT_EQ(g * g.inverse(), CyclicQuat::one());
    // exp(pi/6 u) with u along -(i+j+k) is the inverse of the one along +(i+j+k)
    EXPECT_EQ(CyclicQuat::generator(QuatEx(-1, -1, -1, 0), 6), g.inverse());
    EXPECT_FALSE(g.to_exact());
    ASSERT_TRUE(g.pow(2).to_exact());
    EXPECT_EQ(*g.pow(2).to_exact(), omega());
    EXPECT_FALSE(CyclicQuat::generator(QuatEx::j(), 11).to_exact());
    const auto c4 = CyclicQuat::generator(QuatEx::k(), 4).to_exact();
    ASSERT_TRUE(c4);
    EXPECT_EQ(*c4, (QuatEx::one() + QuatEx::k()) * QSqrt2::inv_sqrt2());
    EXPECT_THROW(g * CyclicQuat::generator(QuatEx::i(), 6), std::domain_error);
    EXPECT_THROW(CyclicQuat(omega(), mpq_class(1, 3)), std::invalid_argument);
    for (const auto& c : CyclicQuat::lift(QuatEx::j(), 11)) {
        const Quat4 f = c.to_float();
        EXPECT_NEAR(norm(f), 1.0, 1e-12);
    }
}

TEST(Catalog, MixedGroupProjections) {
    const auto g = tetra_times_c6();
    EXPECT_EQ(g.left_projection().size(), 24u);
    EXPECT_EQ(g.right_projection().size(), 12u);
    const auto h = c2_times_c11();
    EXPECT_EQ(h.left_projection().size(), 4u);
    EXPECT_EQ(h.right_projection().size(), 22u);
}
