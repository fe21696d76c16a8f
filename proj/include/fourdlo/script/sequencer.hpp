#pragma once

// Turns a resolved program into frames of LED bytes on a fixture.
//
// Each scene's group is cut down to the rotations that keep the fixture's
// edge set, edges are grouped into its orbits (ids by smallest edge), and
// the per-scene tables are built once. evaluate() is then a single pass over
// the LEDs.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fourdlo/fixture.hpp"
#include "fourdlo/script/program.hpp"
#include "fourdlo/script/signal.hpp"
#include "fourdlo/symmetry.hpp"

namespace fourdlo::script {

struct Frame {
    std::size_t index = 0;
    double time = 0;
    std::vector<std::uint8_t> rgb;  ///< 3 bytes per LED, in LED index order

    friend bool operator==(const Frame&, const Frame&) = default;
};

/// Precomputed tables for one scene.
struct SceneState {
    ExactGroup group;               ///< selector intersected with the edge-set stabilizer
    Partition orbits;               ///< edge orbits under `group`
    std::vector<std::vector<int>> sweep_items;  ///< edge lists lit one at a time
    std::vector<std::complex<double>> led_fiber;  ///< fiber coordinate of each LED, for slides
};

/// Width of the chase highlight, as a fraction of an edge.
inline constexpr double kChaseWidth = 0.15;

/// Number of frames covering `duration` seconds at `fps`: ceil(duration * fps),
/// with products that are integers up to rounding treated as integers.
inline std::size_t frame_count(double duration, double fps) {
    if (!(fps > 0)) throw std::invalid_argument("frame_count: fps must be > 0");
    const double x = duration * fps;
    const double r = std::round(x);
    if (std::abs(x - r) < 1e-9 * std::max(1.0, x)) return static_cast<std::size_t>(r);
    return static_cast<std::size_t>(std::ceil(x));
}

namespace detail {

inline Vec3 axis_vector(int axis) {
    return {axis == 0 ? 1.0 : 0.0, axis == 1 ? 1.0 : 0.0, axis == 2 ? 1.0 : 0.0};
}

/// Complex coordinate that turns by e^(i theta) when x moves theta along its
/// fiber. Writes x = z1 + z2 p (left) or z1 + p z2 (right) with z1, z2 in
/// span(1, q) and p perpendicular to q; both parts turn by theta, so any fixed
/// combination z1 + c z2 does too. |result| <= 1 on the unit sphere.
inline std::complex<double> fiber_coordinate(const Quat4& x, int axis, Side side) {
    static const std::complex<double> c = std::polar(0.6, 0.7);
    const Vec3 q = axis_vector(axis);
    const Vec3 p = axis_vector((axis + 1) % 3);
    const Vec3 im{x.x, x.y, x.z};
    const std::complex<double> z1(x.w, dot(im, q));
    const std::complex<double> z2(dot(im, p), (side == Side::Left ? 1 : -1) * dot(im, cross(q, p)));
    return (z1 + c * z2) / std::sqrt(1 + std::norm(c));
}

inline std::vector<std::vector<int>> cube_edges(const CellComplex& complex, const Compound& tesseracts) {
    std::vector<std::vector<int>> out;
    for (const auto& comp : tesseracts.components) {
        for (const auto& cell : comp.cells) {
            std::vector<int> edges;
            for (int e : comp.edges_within(cell)) {
                const auto [a, b] = comp.edges[static_cast<std::size_t>(e)];
                const int ga = complex.vertices.find(comp.vertices.points[a]);
                const int gb = complex.vertices.find(comp.vertices.points[b]);
                const int id = ga < 0 || gb < 0 ? -1 : complex.find_edge(ga, gb);
                if (id < 0) throw std::invalid_argument("sweep(cubes) needs the 24-cell fixture");
                edges.push_back(id);
            }
            std::sort(edges.begin(), edges.end());
            out.push_back(std::move(edges));
        }
    }
    return out;
}

}  // namespace detail

class Sequencer {
public:
    Sequencer(Program program, const Fixture& fixture, const CellComplex& complex, GroupCatalog& catalog)
        : program_(std::move(program)), fixture_(&fixture), complex_(&complex) {
        if (program_.scenes.empty()) throw std::invalid_argument("Sequencer: program has no scenes");
        if (fixture.arcs.size() != complex.edges.size())
            throw std::invalid_argument("Sequencer: fixture was not built from this complex");
        double start = 0;
        for (const auto& sc : program_.scenes) {
            starts_.push_back(start);
            start += sc.duration;
            states_.push_back(prepare(sc, catalog));
        }
        total_ = start;
    }

    const Program& program() const { return program_; }
    const Fixture& fixture() const { return *fixture_; }
    const CellComplex& complex() const { return *complex_; }
    const SceneState& state(std::size_t scene) const { return states_.at(scene); }
    double total_duration() const { return total_; }
    double scene_start(std::size_t scene) const { return starts_.at(scene); }

    /// Scene playing at t, over half-open intervals [start, end).
    std::size_t scene_at(double t) const {
        if (!(t >= 0 && t < total_)) throw std::out_of_range("evaluate: t outside [0, total duration)");
        std::size_t i = 0;
        while (i + 1 < starts_.size() && t >= starts_[i + 1]) ++i;
        return i;
    }

    /// Frame at program time t.
    Frame evaluate(double t, const Signal& signal, std::size_t index = 0) const {
        const std::size_t s = scene_at(t);
        return evaluate_scene(s, t - starts_[s], signal.at(t), index, t);
    }

    /// Frame of scene `s` at local time `local`, with a given signal amplitude.
    Frame evaluate_scene(std::size_t s, double local, double amplitude, std::size_t index = 0, double stamp = 0) const {
        const Scene& sc = program_.scenes.at(s);
        const SceneState& st = states_[s];
        const int orbit_count = static_cast<int>(st.orbits.orbits.size());
        const double level = std::clamp(sc.brightness.eval(local, amplitude), 0.0, 1.0);

        std::vector<Rgb> edge_color(complex_->edges.size());
        for (std::size_t e = 0; e < edge_color.size(); ++e)
            edge_color[e] = sc.color.at(st.orbits.orbit_of[e], orbit_count, local, amplitude) * level;

        std::vector<char> lit;
        if (sc.animate.kind == Animation::Kind::Sweep) {
            lit.assign(edge_color.size(), 0);
            const auto& items = st.sweep_items;
            const auto k = static_cast<std::size_t>(std::floor(local / sc.animate.step)) % items.size();
            for (int e : items[k]) lit[static_cast<std::size_t>(e)] = 1;
        }
        const double head = sc.animate.speed * local;

        Frame f;
        f.index = index;
        f.time = stamp;
        f.rgb.resize(fixture_->size() * 3);
        for (std::size_t i = 0; i < fixture_->size(); ++i) {
            const LedRecord& led = fixture_->leds[i];
            double gain = 1;
            switch (sc.animate.kind) {
                case Animation::Kind::None: break;
                case Animation::Kind::Sweep: gain = lit[static_cast<std::size_t>(led.edge)]; break;
                case Animation::Kind::Slide: {
                    const double c = 0.5 * (1 + std::real(st.led_fiber[i] * std::polar(1.0, -2 * M_PI * head)));
                    gain = c * c;
                    break;
                }
                case Animation::Kind::Chase: {
                    double d = std::abs(led.t - (head - std::floor(head)));
                    d = std::min(d, 1 - d);
                    gain = std::max(0.0, 1 - d / kChaseWidth);
                    break;
                }
            }
            const Rgb c = edge_color[static_cast<std::size_t>(led.edge)] * gain;
            f.rgb[3 * i] = to_byte(c.r);
            f.rgb[3 * i + 1] = to_byte(c.g);
            f.rgb[3 * i + 2] = to_byte(c.b);
        }
        return f;
    }

    std::size_t frame_count(double fps) const { return script::frame_count(total_, fps); }

    /// Emits frames k = 0 .. ceil(duration * fps) - 1 at times k / fps, in order.
    void render(double fps, const Signal& signal, const std::function<void(const Frame&)>& sink) const {
        const std::size_t n = frame_count(fps);
        for (std::size_t k = 0; k < n; ++k) sink(evaluate(static_cast<double>(k) / fps, signal, k));
    }

    /// Same frames as render(), evaluated in batches on `threads` workers and
    /// handed to `sink` in index order.
    void render_parallel(double fps, const Signal& signal, const std::function<void(const Frame&)>& sink,
                         unsigned threads = std::thread::hardware_concurrency()) const {
        threads = std::max(1u, threads);
        const std::size_t n = frame_count(fps);
        const std::size_t batch = 8 * std::size_t{threads};
        std::vector<Frame> frames(batch);
        for (std::size_t first = 0; first < n; first += batch) {
            const std::size_t count = std::min(batch, n - first);
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < threads; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t k = w; k < count; k += threads)
                        frames[k] = evaluate(static_cast<double>(first + k) / fps, signal, first + k);
                });
            }
            for (auto& t : pool) t.join();
            for (std::size_t k = 0; k < count; ++k) sink(frames[k]);
        }
    }

private:
    const ExactGroup& selected(const GroupSelector& g, GroupCatalog& catalog) const {
        using K = GroupSelector::Kind;
        switch (g.kind) {
            case K::Full24: return catalog.full24();
            case K::DualPair: return catalog.dual_pair();
            case K::Tess: return catalog.tesseract(g.index);
            case K::Directed24: return catalog.directed24();
            case K::Sixteen: return catalog.sixteen(g.index);
            case K::Rings: return catalog.rings();
            case K::Trivial: return catalog.trivial();
        }
        return catalog.trivial();
    }

    SceneState prepare(const Scene& sc, GroupCatalog& catalog) const {
        SceneState st;
        st.group = stabilizer(selected(sc.group, catalog), structure_of(*complex_), StabilizerMode::Edges,
                              sc.group.to_string());
        st.orbits = edge_orbits(st.group, *complex_);
        const Animation& a = sc.animate;
        if (a.kind == Animation::Kind::Sweep) {
            switch (a.target) {
                case SweepTarget::Cells:
                    for (const auto& cell : complex_->cells) st.sweep_items.push_back(complex_->edges_within(cell));
                    break;
                case SweepTarget::Cubes: st.sweep_items = detail::cube_edges(*complex_, catalog.three_tesseracts()); break;
                case SweepTarget::Rings:
                    for (const auto& r : edge_rings(*complex_).rings) st.sweep_items.push_back(r.edges);
                    break;
                case SweepTarget::Edges:
                    for (std::size_t e = 0; e < complex_->edges.size(); ++e) st.sweep_items.push_back({static_cast<int>(e)});
                    break;
            }
            if (st.sweep_items.empty()) throw std::invalid_argument(std::string("sweep(") + to_string(a.target) + "): nothing to sweep");
        }
        if (a.kind == Animation::Kind::Slide) {
            st.led_fiber.reserve(fixture_->size());
            for (const auto& led : fixture_->leds) st.led_fiber.push_back(detail::fiber_coordinate(led.position4, a.axis, a.side));
        }
        return st;
    }

    Program program_;
    const Fixture* fixture_;
    const CellComplex* complex_;
    std::vector<SceneState> states_;
    std::vector<double> starts_;
    double total_ = 0;
};

}  // namespace fourdlo::script
