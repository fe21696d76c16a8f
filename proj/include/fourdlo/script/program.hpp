#pragma once

// Resolved program: every name in a script bound to a group selector,
// colour rule, animation or brightness expression.

#include <cmath>
#include <string>
#include <vector>

#include "fourdlo/script/palette.hpp"
#include "fourdlo/symmetry.hpp"

namespace fourdlo::script {

struct GroupSelector {
    enum class Kind { Full24, DualPair, Tess, Directed24, Sixteen, Rings, Trivial };
    Kind kind = Kind::Trivial;
    int index = 0;  ///< component for tess(k) / sixteen(k)

    std::string to_string() const {
        switch (kind) {
            case Kind::Full24: return "full24";
            case Kind::DualPair: return "dualpair";
            case Kind::Tess: return "tess(" + std::to_string(index) + ")";
            case Kind::Directed24: return "directed24";
            case Kind::Sixteen: return "sixteen(" + std::to_string(index) + ")";
            case Kind::Rings: return "rings";
            case Kind::Trivial: return "trivial";
        }
        return {};
    }
    friend bool operator==(const GroupSelector&, const GroupSelector&) = default;
};

/// Scalar expression over the signal amplitude and the time since scene start.
struct NumExpr {
    enum class Op { Const, Signal, Time, Mul, Add, Sub, Min, Max, Osc };
    Op op = Op::Const;
    double value = 0;  ///< constant, or period for osc
    std::vector<NumExpr> args;

    static NumExpr constant(double v) { return {Op::Const, v, {}}; }
    static NumExpr signal() { return {Op::Signal, 0, {}}; }

    double eval(double time, double signal) const {
        switch (op) {
            case Op::Const: return value;
            case Op::Signal: return signal;
            case Op::Time: return time;
            case Op::Osc: return 0.5 * (1 + std::sin(2 * M_PI * time / value));
            default: break;
        }
        double acc = args.front().eval(time, signal);
        for (std::size_t i = 1; i < args.size(); ++i) {
            const double x = args[i].eval(time, signal);
            switch (op) {
                case Op::Mul: acc *= x; break;
                case Op::Add: acc += x; break;
                case Op::Sub: acc -= x; break;
                case Op::Min: acc = std::min(acc, x); break;
                case Op::Max: acc = std::max(acc, x); break;
                default: break;
            }
        }
        return acc;
    }
};

struct ColorRule {
    enum class Kind { Solid, Orbit, HueShift };
    Kind kind = Kind::Solid;
    Rgb solid{1, 1, 1};
    const Palette* palette = nullptr;
    std::vector<ColorRule> inner;  ///< the shifted rule, for HueShift
    NumExpr shift;

    /// Colour of an edge in orbit `orbit` of `orbit_count`.
    Rgb at(int orbit, int orbit_count, double time, double signal) const {
        switch (kind) {
            case Kind::Solid: return solid;
            case Kind::Orbit: return palette->sample(static_cast<double>(orbit) / orbit_count);
            case Kind::HueShift: return hue_shift(inner.front().at(orbit, orbit_count, time, signal), shift.eval(time, signal));
        }
        return {};
    }
};

enum class SweepTarget { Cells, Cubes, Rings, Edges };

inline const char* to_string(SweepTarget t) {
    switch (t) {
        case SweepTarget::Cells: return "cells";
        case SweepTarget::Cubes: return "cubes";
        case SweepTarget::Rings: return "rings";
        case SweepTarget::Edges: return "edges";
    }
    return "?";
}

struct Animation {
    enum class Kind { None, Sweep, Slide, Chase };
    Kind kind = Kind::None;
    SweepTarget target = SweepTarget::Cells;
    double step = 1;       ///< seconds per sweep item
    int axis = 0;          ///< fiber axis 0, 1, 2 for i, j, k
    Side side = Side::Left;
    double speed = 0;      ///< turns per second (slide) or edge lengths per second (chase)

    /// True when every LED of an edge shows the edge's orbit colour unchanged.
    bool orbit_constant() const { return kind == Kind::None; }
};

struct Scene {
    std::string name;
    double duration = 0;
    GroupSelector group;
    ColorRule color;
    Animation animate;
    NumExpr brightness = NumExpr::signal();
};

struct Program {
    std::vector<Scene> scenes;

    double total_duration() const {
        double t = 0;
        for (const auto& s : scenes) t += s.duration;
        return t;
    }
};

}  // namespace fourdlo::script
