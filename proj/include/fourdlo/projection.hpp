#pragma once

// Stereographic projection from -1 onto the hyperplane w = 0, and the
// projected images of great-circle edge arcs.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

#include "fourdlo/quat4.hpp"

namespace fourdlo {

/// The image of the projection pole -1.
struct AtInfinity {
    friend bool operator==(AtInfinity, AtInfinity) { return true; }
};

using StereoPoint = std::variant<Vec3, AtInfinity>;

inline constexpr double kUnitTolerance = 1e-9;
inline constexpr double kStraightTolerance = 1e-9;
inline constexpr double kDefaultClipRadius = 10.0;

/// pi(p) = (x, y, z)/(1 + w).
inline StereoPoint stereo(const Quat4& p) {
    if (std::abs(norm(p) - 1) > kUnitTolerance) throw std::invalid_argument("stereo: point is not on the unit sphere");
    if (p.w == -1.0) return AtInfinity{};
    return p.im() / (1 + p.w);
}

inline bool is_infinite(const StereoPoint& s) { return std::holds_alternative<AtInfinity>(s); }

/// x -> left x right, applied before projection.
struct ViewPose {
    Quat4 left = Quat4::identity();
    Quat4 right = Quat4::identity();

    static ViewPose identity() { return {}; }

    /// Normalizes both sides; throws on a zero quaternion.
    static ViewPose normalized(Quat4 l, Quat4 r) {
        if (norm(l) == 0 || norm(r) == 0) throw std::invalid_argument("ViewPose: zero quaternion");
        return {fourdlo::normalized(l), fourdlo::normalized(r)};
    }

    void validate() const {
        if (std::abs(norm(left) - 1) > 1e-12 || std::abs(norm(right) - 1) > 1e-12)
            throw std::invalid_argument("ViewPose: pose quaternions must be unit");
    }

    bool is_identity() const { return left == Quat4::identity() && right == Quat4::identity(); }

    Quat4 apply(const Quat4& x) const { return left * x * right; }

    friend bool operator==(const ViewPose&, const ViewPose&) = default;
};

enum class ArcKind { Circular, Straight };

inline const char* to_string(ArcKind k) { return k == ArcKind::Circular ? "circular" : "straight"; }

/// Image of the minor great-circle arc from p to r.
///
/// Circular arcs run counterclockwise about `normal` from `start` to `end`
/// through `sweep` radians. A great circle through -1 also passes through 1,
/// so a straight arc lies on a line through the origin: its points are
/// tan(t/2) * direction for t running from t_start to t_end, and t = +-pi is
/// the point at infinity. Straight arcs are clipped to `clip_radius`.
struct ProjectedArc {
    ArcKind kind = ArcKind::Circular;
    int edge_id = -1;
    Quat4 p4, r4;          ///< posed 4D endpoints
    double angle4 = 0;     ///< 4D angle between p4 and r4
    StereoPoint start, end;

    Vec3 center;
    double radius = 0;
    Vec3 normal;
    double sweep = 0;  ///< circular: 3D sweep; straight: the 4D angle (the t range)

    Vec3 direction;
    double t_start = 0, t_end = 0;
    double clip_radius = kDefaultClipRadius;

    /// Point at fraction s of the 4D arc length (clipped for straight arcs).
    Vec3 point_at(double s) const {
        if (kind == ArcKind::Circular) {
            const StereoPoint q = stereo(fourdlo::normalized(slerp(p4, r4, s)));
            return std::get<Vec3>(q);
        }
        const double t = t_start + s * (t_end - t_start);
        auto line_coord = [](double tt) { return std::tan(std::remainder(tt, 2 * std::numbers::pi) / 2); };
        double u = line_coord(t);
        if (std::abs(u) > clip_radius) {
            // at or beyond the clip sphere: keep the side the arc approaches from
            const double inward = t + (0.5 * (t_start + t_end) - t) * 1e-6;
            u = std::copysign(clip_radius, line_coord(inward));
        }
        return direction * u;
    }
};

/// The projected arc of edge p -> r after the pose.
inline ProjectedArc project_edge(const Quat4& p_in, const Quat4& r_in, const ViewPose& pose = {}, int edge_id = -1,
                                 double clip_radius = kDefaultClipRadius) {
    const Quat4 p = pose.apply(p_in);
    const Quat4 r = pose.apply(r_in);
    if (std::abs(norm(p) - 1) > kUnitTolerance || std::abs(norm(r) - 1) > kUnitTolerance)
        throw std::invalid_argument("project_edge: endpoints must be unit");
    const double c = std::clamp(dot(p, r), -1.0, 1.0);
    if (std::abs(c) > 1 - 1e-12) throw std::invalid_argument("project_edge: endpoints equal or antipodal");

    ProjectedArc arc;
    arc.edge_id = edge_id;
    arc.p4 = p;
    arc.r4 = r;
    arc.angle4 = std::acos(c);
    auto project_endpoint = [](const Quat4& x) -> StereoPoint {
        if (1 + x.w < 1e-12) return AtInfinity{};
        return stereo(x);
    };
    arc.start = project_endpoint(p);
    arc.end = project_endpoint(r);
    arc.clip_radius = clip_radius;

    // orthonormal basis (p, u) of the circle's plane
    const Quat4 u = fourdlo::normalized(r - p * c);
    // nearest approach of the circle to -1: |projection of e_w onto the plane|
    const double reach = std::hypot(p.w, u.w);
    if (std::abs(reach - 1) < kStraightTolerance) {
        arc.kind = ArcKind::Straight;
        // the plane contains +-1, so the imaginary parts of its points are parallel
        const Vec3 ip = p.im(), ir = r.im();
        arc.direction = normalized(norm(ip) >= norm(ir) ? ip : ir);
        auto angle_of = [&](const Quat4& x) { return std::atan2(dot(x.im(), arc.direction), x.w); };
        arc.t_start = angle_of(p);
        arc.t_end = arc.t_start + std::remainder(angle_of(r) - arc.t_start, 2 * std::numbers::pi);
        arc.sweep = arc.angle4;
        arc.center = {};
        arc.radius = INFINITY;
        arc.normal = {};
        return arc;
    }

    arc.kind = ArcKind::Circular;
    const Vec3 a = std::get<Vec3>(arc.start);
    const Vec3 b = std::get<Vec3>(stereo(fourdlo::normalized(slerp(p, r, 0.5))));
    const Vec3 cc = std::get<Vec3>(arc.end);
    // circumcircle of a, b, cc
    const Vec3 ab = b - a, ac = cc - a;
    const Vec3 n = cross(ab, ac);
    const double n2 = dot(n, n);
    const Vec3 center = a + (cross(n, ab) * dot(ac, ac) + cross(ac, n) * dot(ab, ab)) / (2 * n2);
    arc.center = center;
    arc.radius = norm(a - center);
    arc.normal = normalized(n);
    // counterclockwise angle about the normal from a to cc; a -> b -> cc is ccw
    const Vec3 x0 = normalized(a - center);
    const Vec3 y0 = cross(arc.normal, x0);
    const Vec3 ce = cc - center;
    double ang = std::atan2(dot(ce, y0), dot(ce, x0));
    if (ang <= 0) ang += 2 * std::numbers::pi;
    arc.sweep = ang;
    return arc;
}

/// n points at equal steps of the 4D arc parameter, both endpoints included.
inline std::vector<Vec3> sample_arc(const ProjectedArc& arc, int n) {
    if (n < 2) throw std::invalid_argument("sample_arc: need at least 2 samples");
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out.push_back(arc.point_at(static_cast<double>(k) / (n - 1)));
    return out;
}

}  // namespace fourdlo
