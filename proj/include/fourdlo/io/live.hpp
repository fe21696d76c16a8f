#pragma once

// Live playback state for the frame stream, and the viewer message format.
//
// Client to server (text, JSON):
//   {"type":"pose","left":[x,y,z,w],"right":[x,y,z,w]}
//   {"type":"scene","index":n}
//   {"type":"signal","value":v}
// Server to client: binary frames (u32 little-endian frame index, then
// LED-count x 3 bytes of R, G, B), plus text messages "hello" on connect and
// "arcs" after each pose change.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

#include "fourdlo/io/geometry.hpp"
#include "fourdlo/script/sequencer.hpp"

namespace fourdlo::io {

struct MessageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PoseMessage {
    ViewPose pose;
};
struct SceneMessage {
    std::size_t index = 0;
};
struct SignalMessage {
    double value = 0;
};
using ClientMessage = std::variant<PoseMessage, SceneMessage, SignalMessage>;

namespace detail {

inline Quat4 quat_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw MessageError(std::string("pose: missing '") + key + "'");
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 4) throw MessageError(std::string("pose: '") + key + "' must be 4 numbers");
    double v[4];
    for (std::size_t k = 0; k < 4; ++k) {
        if (!a[k].is_number()) throw MessageError(std::string("pose: '") + key + "' must be 4 numbers");
        v[k] = a[k].get<double>();
        if (!std::isfinite(v[k])) throw MessageError("pose: non-finite component");
    }
    const Quat4 q{v[0], v[1], v[2], v[3]};
    if (norm(q) < 1e-12) throw MessageError(std::string("pose: '") + key + "' is zero");
    return q;
}

}  // namespace detail

/// Parses one client message; throws MessageError with a short reason.
inline ClientMessage parse_client_message(std::string_view text) {
    const nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw MessageError("not JSON");
    if (!j.is_object()) throw MessageError("not a JSON object");
    if (!j.contains("type") || !j.at("type").is_string()) throw MessageError("missing 'type'");
    const std::string type = j.at("type").get<std::string>();
    if (type == "pose") return PoseMessage{ViewPose::normalized(detail::quat_field(j, "left"), detail::quat_field(j, "right"))};
    if (type == "scene") {
        if (!j.contains("index") || !j.at("index").is_number_integer() || j.at("index").get<long long>() < 0)
            throw MessageError("scene: 'index' must be a non-negative integer");
        return SceneMessage{j.at("index").get<std::size_t>()};
    }
    if (type == "signal") {
        if (!j.contains("value") || !j.at("value").is_number()) throw MessageError("signal: 'value' must be a number");
        const double v = j.at("value").get<double>();
        if (!std::isfinite(v)) throw MessageError("signal: non-finite value");
        return SignalMessage{std::clamp(v, 0.0, 1.0)};
    }
    throw MessageError("unknown type '" + type + "'");
}

/// Binary payload: u32 LE index, then the frame bytes.
inline std::string frame_payload(const script::Frame& f) {
    std::string out(4 + f.rgb.size(), '\0');
    const auto idx = static_cast<std::uint32_t>(f.index);
    for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(k)] = static_cast<char>((idx >> (8 * k)) & 0xff);
    std::copy(f.rgb.begin(), f.rgb.end(), out.begin() + 4);
    return out;
}

inline nlohmann::json arcs_message(const ViewPose& pose, const std::vector<GeometryExport::Arc>& arcs) {
    return {{"type", "arcs"},
            {"pose", {{"left", pose.left.as_array()}, {"right", pose.right.as_array()}}},
            {"arcs", arcs}};
}

/// Looping playback of a program at a fixed frame rate. Messages take effect
/// on the next frame.
class Playback {
public:
    Playback(const script::Sequencer& seq, const script::Signal& signal, double fps)
        : seq_(&seq), signal_(&signal), fps_(fps) {
        if (!(fps > 0)) throw std::invalid_argument("Playback: fps must be > 0");
    }

    /// Applies a message; throws MessageError for a scene index out of range.
    void apply(const ClientMessage& m) {
        if (const auto* p = std::get_if<PoseMessage>(&m)) {
            pose_ = p->pose;
        } else if (const auto* s = std::get_if<SceneMessage>(&m)) {
            if (s->index >= seq_->program().scenes.size())
                throw MessageError("scene: index " + std::to_string(s->index) + " out of range");
            base_ = seq_->scene_start(s->index);
            steps_ = 0;
        } else if (const auto* g = std::get_if<SignalMessage>(&m)) {
            amplitude_ = g->value;
        }
    }

    double time() const { return base_ + static_cast<double>(steps_) / fps_; }
    std::size_t scene() const { return seq_->scene_at(time()); }
    const ViewPose& pose() const { return pose_; }
    std::optional<double> amplitude_override() const { return amplitude_; }

    /// Frame at the current time, then advances one frame (wrapping to 0).
    script::Frame next() {
        const double t = time();
        const std::size_t s = seq_->scene_at(t);
        const double amp = amplitude_ ? *amplitude_ : signal_->at(t);
        script::Frame f = seq_->evaluate_scene(s, t - seq_->scene_start(s), amp, index_++, t);
        ++steps_;
        if (time() >= seq_->total_duration()) {
            base_ = 0;
            steps_ = 0;
        }
        return f;
    }

private:
    const script::Sequencer* seq_;
    const script::Signal* signal_;
    double fps_;
    double base_ = 0;
    std::size_t steps_ = 0;
    std::size_t index_ = 0;
    std::optional<double> amplitude_;
    ViewPose pose_;
};

}  // namespace fourdlo::io
