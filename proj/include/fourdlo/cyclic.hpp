#pragma once

// Symbolic elements of a cyclic quaternion group exp(pi * angle * u).
//
// cos(pi/n) leaves Q(sqrt 2) for most n (n = 6, 11, ...), but products of
// powers of one generator never leave the cyclic group, so the group
// bookkeeping only needs the rational angle and the axis direction.

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourdlo/exactnum.hpp"

namespace fourdlo {

class CyclicQuat {
public:
    /// The identity (angle 0, no axis).
    CyclicQuat() = default;

    /// exp(pi * angle * d/|d|) for an exact nonzero imaginary direction d.
    CyclicQuat(QuatEx direction, mpq_class angle) : dir_(std::move(direction)), angle_(std::move(angle)) {
        if (!dir_.re().is_zero()) throw std::invalid_argument("CyclicQuat: direction must be imaginary");
        if (dir_.is_zero()) throw std::invalid_argument("CyclicQuat: direction must be nonzero");
        canonicalize();
    }

    static CyclicQuat one() { return {}; }

    /// exp(pi/n * u): generates the binary lift of C_n, a cyclic group of order 2n.
    static CyclicQuat generator(const QuatEx& direction, long n) {
        if (n <= 0) throw std::invalid_argument("CyclicQuat: order must be positive");
        return {direction, mpq_class(mpz_class(1), mpz_class(n))};
    }

    /// All 2n elements of the lift of C_n about `direction`, ordered by power.
    static std::vector<CyclicQuat> lift(const QuatEx& direction, long n) {
        std::vector<CyclicQuat> out;
        const CyclicQuat g = generator(direction, n);
        CyclicQuat cur;
        for (long k = 0; k < 2 * n; ++k) {
            out.push_back(cur);
            cur = cur * g;
        }
        return out;
    }

    /// Angle in units of pi, in [0, 2).
    const mpq_class& angle() const { return angle_; }
    /// Scaled direction (first nonzero coordinate +1); zero for +-1.
    const QuatEx& direction() const { return dir_; }

    CyclicQuat inverse() const {
        CyclicQuat r = *this;
        r.angle_ = -r.angle_;
        r.canonicalize();
        return r;
    }

    CyclicQuat operator-() const {
        CyclicQuat r = *this;
        r.angle_ += 1;
        r.canonicalize();
        return r;
    }

    friend CyclicQuat operator*(const CyclicQuat& a, const CyclicQuat& b) {
        CyclicQuat r;
        if (a.dir_.is_zero()) {
            r.dir_ = b.dir_;
        } else if (b.dir_.is_zero() || a.dir_ == b.dir_) {
            r.dir_ = a.dir_;
        } else {
            throw std::domain_error("CyclicQuat: product of elements on different axes");
        }
        r.angle_ = a.angle_ + b.angle_;
        r.canonicalize();
        return r;
    }

    CyclicQuat pow(long k) const {
        CyclicQuat r = *this;
        r.angle_ *= k;
        r.canonicalize();
        return r;
    }

    /// Sign representative: exactly one of q, -q has angle in [0, 1).
    bool has_positive_sign() const { return angle_ < 1; }

    Quat4 to_float() const {
        const double t = M_PI * angle_.get_d();
        if (dir_.is_zero()) return {0, 0, 0, std::cos(t)};
        const Quat4 d = dir_.to_float();
        const double s = std::sin(t) / norm(d);
        return {d.x * s, d.y * s, d.z * s, std::cos(t)};
    }

    /// Exact value when cos(pi a) and sin(pi a) times the unit axis both lie
    /// in Q(sqrt 2). Only angles with denominator 1, 2, 3, 4 or 6 can qualify;
    /// for those cos^2 is one of 1, 0, 1/4, 1/2, 3/4.
    std::optional<QuatEx> to_exact() const {
        long cos_sq_num = 0;
        switch (angle_.get_den().get_si()) {
            case 1: cos_sq_num = 4; break;
            case 2: cos_sq_num = 0; break;
            case 3: cos_sq_num = 1; break;
            case 4: cos_sq_num = 2; break;
            case 6: cos_sq_num = 3; break;
            default: return std::nullopt;
        }
        const QSqrt2 cos_sq = QSqrt2::rational(cos_sq_num, 4);
        auto c = cos_sq.sqrt();
        if (!c) return std::nullopt;
        if (std::cos(M_PI * angle_.get_d()) < 0) *c = -*c;
        if (dir_.is_zero()) return QuatEx::scalar(*c);
        // sin(pi a) u = t d with t = sin(pi a) / |d|
        auto t = ((QSqrt2(1) - cos_sq) / dir_.norm2()).sqrt();
        if (!t) return std::nullopt;
        if (angle_ > 1) *t = -*t;
        return QuatEx::scalar(*c) + dir_ * *t;
    }

    std::string to_string() const {
        if (dir_.is_zero()) return angle_ == 0 ? "1" : "-1";
        return "exp(" + angle_.get_str() + "pi*[" + dir_.to_string() + "])";
    }

    friend bool operator==(const CyclicQuat&, const CyclicQuat&) = default;
    friend std::strong_ordering operator<=>(const CyclicQuat& a, const CyclicQuat& b) {
        const int c = cmp(a.angle_, b.angle_);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        return a.dir_ <=> b.dir_;
    }

private:
    void canonicalize() {
        angle_.canonicalize();
        // reduce into [0, 2)
        mpz_class two_den = angle_.get_den() * 2;
        mpz_class num = angle_.get_num() % two_den;
        if (num < 0) num += two_den;
        angle_ = mpq_class(num, angle_.get_den());
        angle_.canonicalize();
        if (angle_ == 0 || angle_ == 1) {
            dir_ = QuatEx{};
            return;
        }
        if (dir_.is_zero()) throw std::logic_error("CyclicQuat: non-real element without an axis");
        for (const QSqrt2* c : {&dir_.x(), &dir_.y(), &dir_.z()}) {
            if (c->is_zero()) continue;
            const QSqrt2 lead = *c;
            dir_ = dir_ * QSqrt2(lead.sign() < 0 ? -1 : 1) * (lead.sign() < 0 ? -lead : lead).inverse();
            if (lead.sign() < 0) angle_ = 2 - angle_;
            break;
        }
    }

    QuatEx dir_;
    mpq_class angle_{0};
};

}  // namespace fourdlo

template <>
struct std::hash<fourdlo::CyclicQuat> {
    std::size_t operator()(const fourdlo::CyclicQuat& q) const noexcept {
        std::size_t seed = fourdlo::detail::hash_mpq(q.angle());
        fourdlo::detail::hash_combine(seed, std::hash<fourdlo::QuatEx>{}(q.direction()));
        return seed;
    }
};
