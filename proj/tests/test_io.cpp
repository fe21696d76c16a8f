#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "fourdlo/io/frames.hpp"
#include "fourdlo/io/geometry.hpp"
#include "fourdlo/io/live.hpp"
#include "fourdlo/script/parser.hpp"

using namespace fourdlo;
using namespace fourdlo::io;

namespace {

GroupCatalog& catalog() {
    static GroupCatalog c;
    return c;
}

const Fixture& fixture() {
    static const Fixture f = build_fixture(catalog().cell24());
    return f;
}

const GeometryExport& identity_export() {
    static const GeometryExport g = build_export(catalog(), fixture());
    return g;
}

const GeometryExport::Group& group(const GeometryExport& g, const std::string& name) {
    for (const auto& x : g.groups)
        if (x.name == name) return x;
    throw std::out_of_range(name);
}

}  // namespace

TEST(Geometry, Counts) {
    const auto& g = identity_export();
    EXPECT_EQ(g.vertices.size(), 24u);
    EXPECT_EQ(g.edges.size(), 96u);
    EXPECT_EQ(g.cells.size(), 24u);
    EXPECT_EQ(g.rings.size(), 16u);
    EXPECT_EQ(g.families.size(), 4u);
    EXPECT_EQ(g.arcs.size(), 96u);
    EXPECT_EQ(g.fixture.led_count, 14016u);
    EXPECT_EQ(g.fixture.strands.size(), 28u);
    ASSERT_EQ(g.compounds.size(), 3u);
    EXPECT_EQ(g.compounds[0].name, "three16");
    EXPECT_EQ(g.compounds[0].edges.size(), 72u);
    EXPECT_EQ(g.compounds[1].edges.size(), 96u);
    EXPECT_EQ(g.compounds[2].vertices.size(), 48u);
}

TEST(Geometry, LabelsAgree) {
    const auto& g = identity_export();
    std::map<int, int> per_tess;
    for (const auto& v : g.vertices) EXPECT_EQ(v.tesseracts.size(), 2u);
    for (const auto& e : g.edges) {
        ++per_tess[e.tesseract];
        EXPECT_GE(e.quadrant, 0);
        EXPECT_LT(e.quadrant, 4);
        ASSERT_GE(e.strand, 0);
        EXPECT_EQ(g.fixture.strands[static_cast<std::size_t>(e.strand)].quadrant, e.quadrant);
        EXPECT_EQ(g.rings[static_cast<std::size_t>(e.ring)].family, e.family);
    }
    EXPECT_EQ(per_tess, (std::map<int, int>{{0, 32}, {1, 32}, {2, 32}}));
    int covered = 0;
    for (const auto& s : g.fixture.strands) covered += s.led_count;
    EXPECT_EQ(static_cast<std::size_t>(covered), g.fixture.led_count);
}

TEST(Geometry, ExactStringsParseBack) {
    const auto& g = identity_export();
    const auto& pts = catalog().cell24().vertices.points;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const QuatEx q = parse_exact(g.vertices[k].exact);
        EXPECT_EQ(q, pts[k]);
        const Quat4 f = q.to_float();
        EXPECT_EQ(g.vertices[k].value, (Float4{f.x, f.y, f.z, f.w}));
    }
}

TEST(Geometry, GroupOrders) {
    const auto& g = identity_export();
    EXPECT_EQ(group(g, "dualpair").order, 1152u);
    EXPECT_EQ(group(g, "full24").order, 576u);
    EXPECT_EQ(group(g, "full24.2").order, 1152u);
    EXPECT_EQ(group(g, "tess(0)").order, 192u);
    EXPECT_EQ(group(g, "directed24").order, 288u);
    EXPECT_EQ(group(g, "+-[TxC6]").order, 144u);
    EXPECT_EQ(group(g, "+-[C2xC11]").order, 44u);
    EXPECT_EQ(group(g, "trivial").order, 1u);
    EXPECT_FALSE(group(g, "dualpair").generators.empty());
}

TEST(Geometry, GeneratingSetClosesToGroup) {
    const auto& d = catalog().directed24();
    EXPECT_EQ(generate_group(d.generating_set()).order(), d.order());
    const auto& f = catalog().full24_reflections();
    EXPECT_EQ(generate_group(f.generating_set()).order(), f.order());
}

TEST(Geometry, PointAtInfinityIsNull) {
    // -1 is a vertex, so its 8 edges run off to infinity.
    int open = 0;
    for (const auto& a : identity_export().arcs) open += !a.start || !a.end;
    EXPECT_EQ(open, 8);
    const nlohmann::json j = to_json(identity_export());
    int nulls = 0;
    for (const auto& a : j.at("arcs")) nulls += a.at("start").is_null() || a.at("end").is_null();
    EXPECT_EQ(nulls, 8);
}

TEST(Geometry, JsonRoundTrip) {
    const auto& g = identity_export();
    const std::string text = dump_geometry(g);
    const GeometryExport back = geometry_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(back, g);
    EXPECT_EQ(dump_geometry(back), text);
}

TEST(Geometry, Deterministic) {
    GroupCatalog fresh;
    const Fixture f = build_fixture(fresh.cell24());
    EXPECT_EQ(dump_geometry(build_export(fresh, f)), dump_geometry(identity_export()));
}

TEST(Geometry, PoseMovesArcsOnly) {
    const ViewPose pose = ViewPose::normalized({0.1, 0.2, -0.3, 1}, {0, 0.4, 0, 1});
    const Fixture f = build_fixture(catalog().cell24(), {}, pose);
    const GeometryExport g = build_export(catalog(), f);
    const auto& base = identity_export();
    EXPECT_EQ(g.vertices, base.vertices);
    EXPECT_EQ(g.rings, base.rings);
    EXPECT_EQ(g.groups, base.groups);
    EXPECT_NE(g.arcs, base.arcs);
    EXPECT_NEAR(g.pose_left[1], pose.left.y, 0);
    EXPECT_NEAR(g.pose_right[1], pose.right.y, 0);
}

TEST(Geometry, RejectsForeignJson) {
    nlohmann::json j = to_json(identity_export());
    j["format"] = "something-else";
    EXPECT_THROW(geometry_from_json(j), std::invalid_argument);
    j = to_json(identity_export());
    j["version"] = kGeometryVersion + 1;
    EXPECT_THROW(geometry_from_json(j), std::invalid_argument);
    j = to_json(identity_export());
    j.erase("edges");
    EXPECT_THROW(geometry_from_json(j), nlohmann::json::exception);
}

namespace {

script::Frame frame(std::size_t index, std::size_t leds, std::uint8_t seed) {
    script::Frame f;
    f.index = index;
    for (std::size_t k = 0; k < 3 * leds; ++k) f.rgb.push_back(static_cast<std::uint8_t>(seed + k * 7));
    return f;
}

}  // namespace

TEST(Frames, HeaderBytes) {
    std::ostringstream out;
    write_frame_header(out, {kFrameFileVersion, 14016, 1380, 30.0f});
    const std::string s = out.str();
    ASSERT_EQ(s.size(), kFrameHeaderSize);
    EXPECT_EQ(s.substr(0, 4), "4DLO");
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    EXPECT_EQ(byte(4), 1);
    EXPECT_EQ(byte(8) | byte(9) << 8, 14016);
    EXPECT_EQ(byte(12) | byte(13) << 8, 1380);
    // 30.0f is 0x41f00000
    EXPECT_EQ(byte(16), 0x00);
    EXPECT_EQ(byte(18), 0xf0);
    EXPECT_EQ(byte(19), 0x41);
}

TEST(Frames, RoundTrip) {
    std::stringstream io;
    const FrameHeader h{kFrameFileVersion, 5, 3, 30.0f};
    FrameWriter w(io, h);
    for (std::size_t k = 0; k < 3; ++k) w.write(frame(k, 5, static_cast<std::uint8_t>(k)));
    EXPECT_TRUE(w.complete());
    EXPECT_EQ(io.str().size(), kFrameHeaderSize + 3 * 5 * 3);
    const FrameFile f = read_frame_file(io);
    EXPECT_EQ(f.header, h);
    ASSERT_EQ(f.frames.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(f.frames[k], frame(k, 5, static_cast<std::uint8_t>(k)).rgb);
}

TEST(Frames, WriterChecks) {
    std::stringstream io;
    FrameWriter w(io, {kFrameFileVersion, 2, 1, 10.0f});
    EXPECT_FALSE(w.complete());
    EXPECT_THROW(w.write(frame(0, 3, 0)), std::invalid_argument);
    w.write(frame(0, 2, 0));
    EXPECT_THROW(w.write(frame(1, 2, 0)), std::logic_error);
}

TEST(Frames, ReaderErrors) {
    std::stringstream good;
    FrameWriter w(good, {kFrameFileVersion, 2, 2, 10.0f});
    w.write(frame(0, 2, 0));
    w.write(frame(1, 2, 1));
    const std::string s = good.str();

    const auto read = [](const std::string& bytes) {
        std::istringstream in(bytes);
        return read_frame_file(in);
    };
    EXPECT_NO_THROW(read(s));
    EXPECT_THROW(read(s.substr(0, 10)), FrameFormatError);
    EXPECT_THROW(read(s.substr(0, s.size() - 1)), FrameFormatError);
    EXPECT_THROW(read(s + "x"), FrameFormatError);
    std::string bad = s;
    bad[0] = 'X';
    EXPECT_THROW(read(bad), FrameFormatError);
    bad = s;
    bad[4] = 9;
    EXPECT_THROW(read(bad), FrameFormatError);
}

TEST(Geometry, ProjectArcsMatchesExport) {
    EXPECT_EQ(project_arcs(catalog().cell24(), ViewPose{}), identity_export().arcs);
}

TEST(Live, ParsesMessages) {
    const auto pose = std::get<PoseMessage>(parse_client_message(R"({"type":"pose","left":[0,0,0,2],"right":[1,1,1,1]})"));
    EXPECT_EQ(pose.pose.left, Quat4::identity());
    EXPECT_DOUBLE_EQ(pose.pose.right.x, 0.5);
    EXPECT_DOUBLE_EQ(pose.pose.right.w, 0.5);
    EXPECT_EQ(std::get<SceneMessage>(parse_client_message(R"({"type":"scene","index":2})")).index, 2u);
    EXPECT_EQ(std::get<SignalMessage>(parse_client_message(R"({"type":"signal","value":0.25})")).value, 0.25);
    EXPECT_EQ(std::get<SignalMessage>(parse_client_message(R"({"type":"signal","value":3})")).value, 1.0);
    EXPECT_EQ(std::get<SignalMessage>(parse_client_message(R"({"type":"signal","value":-1})")).value, 0.0);
}

TEST(Live, RejectsMalformedMessages) {
    for (const char* text : {
             "", "pose", "[1,2]", R"({"index":1})", R"({"type":7})", R"({"type":"zoom"})",
             R"({"type":"pose","left":[0,0,1],"right":[0,0,0,1]})", R"({"type":"pose","left":[0,0,0,1]})",
             R"({"type":"pose","left":[0,0,0,0],"right":[0,0,0,1]})", R"({"type":"pose","left":[0,0,"a",1],"right":[0,0,0,1]})",
             R"({"type":"scene","index":-1})", R"({"type":"scene","index":1.5})", R"({"type":"scene"})",
             R"({"type":"signal","value":"loud"})", R"({"type":"signal"})"}) {
        EXPECT_THROW(parse_client_message(text), MessageError) << text;
    }
}

TEST(Live, FramePayload) {
    script::Frame f;
    f.index = 0x01020304;
    f.rgb = {9, 8, 7};
    EXPECT_EQ(frame_payload(f), std::string("\x04\x03\x02\x01\x09\x08\x07", 7));
}

namespace {

const Fixture& small_fixture() {
    static const Fixture f = build_fixture(catalog().cell24(), {4, 4, 7});
    return f;
}

script::Sequencer small_sequencer(const std::string& text) {
    return script::Sequencer(*script::parse(text).program, small_fixture(), catalog().cell24(), catalog());
}

bool black(const script::Frame& f) {
    return std::all_of(f.rgb.begin(), f.rgb.end(), [](std::uint8_t b) { return b == 0; });
}

}  // namespace

TEST(Live, PlaybackStepsAndWraps) {
    const auto seq = small_sequencer(R"(scene "a" duration 1s { group = full24; } scene "b" duration 0.5s { group = rings; })");
    const auto sig = script::Signal::constant(1.0);
    Playback p(seq, sig, 10);
    for (int k = 0; k < 15; ++k) {
        const auto f = p.next();
        EXPECT_EQ(f.index, static_cast<std::size_t>(k));
        EXPECT_DOUBLE_EQ(f.time, k / 10.0);
        EXPECT_EQ(f.rgb, seq.evaluate(k / 10.0, sig, static_cast<std::size_t>(k)).rgb);
    }
    EXPECT_DOUBLE_EQ(p.time(), 0.0);
    EXPECT_EQ(p.next().index, 15u);
}

TEST(Live, SceneSelectTakesEffectNextFrame) {
    std::ifstream in(std::string(FOURDLO_SOURCE_DIR) + "/data/demo.4dlo");
    std::stringstream ss;
    ss << in.rdbuf();
    const auto seq = small_sequencer(ss.str());
    const auto sig = script::Signal::constant(1.0);
    Playback p(seq, sig, 30);
    p.next();
    p.apply(SceneMessage{1});
    EXPECT_EQ(p.scene(), 1u);
    const auto f = p.next();
    EXPECT_DOUBLE_EQ(f.time, 10.0);
    EXPECT_EQ(f.rgb, seq.evaluate_scene(1, 0, 1.0).rgb);
    EXPECT_THROW(p.apply(SceneMessage{3}), MessageError);
}

TEST(Live, AmplitudeZeroDarkens) {
    const auto seq = small_sequencer(R"(scene "a" duration 2s { group = full24; brightness = mul(0.8, signal); })");
    const auto sig = script::Signal::constant(1.0);
    Playback p(seq, sig, 30);
    EXPECT_FALSE(black(p.next()));
    p.apply(SignalMessage{0});
    for (int k = 0; k < 90; ++k) EXPECT_TRUE(black(p.next()));
    p.apply(SignalMessage{1});
    EXPECT_FALSE(black(p.next()));
}

TEST(Live, PoseIsKeptAndArcsFollow) {
    const auto seq = small_sequencer(R"(scene "a" duration 1s { group = full24; })");
    const auto sig = script::Signal::constant(1.0);
    Playback p(seq, sig, 30);
    p.next();
    const ViewPose pose = ViewPose::normalized({0.5, 0.5, 0.5, 0.5}, Quat4::identity());
    p.apply(PoseMessage{pose});
    EXPECT_EQ(p.pose().left, pose.left);
    const nlohmann::json msg = arcs_message(pose, project_arcs(catalog().cell24(), pose));
    EXPECT_EQ(msg.at("type"), "arcs");
    EXPECT_EQ(msg.at("arcs").size(), 96u);
    EXPECT_NE(msg.at("arcs").get<std::vector<GeometryExport::Arc>>(), identity_export().arcs);
    // Colours do not depend on the pose.
    Playback q(seq, sig, 30);
    q.next();
    EXPECT_EQ(p.next().rgb, q.next().rgb);
}
