#pragma once

// Exact arithmetic in Q(sqrt 2) and exact quaternions over that field.

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fourdlo/quat4.hpp"

namespace fourdlo {

namespace detail {

inline std::size_t hash_mpq(const mpq_class& q) {
    auto limb = [](const mpz_class& z) -> std::size_t {
        if (z == 0) return 0;
        const std::size_t v = static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0));
        return z < 0 ? ~v : v;
    };
    const std::size_t n = limb(q.get_num());
    const std::size_t d = limb(q.get_den());
    return n * 0x9E3779B97F4A7C15ull ^ (d + 0x7F4A7C15ull + (n << 6) + (n >> 2));
}

inline void hash_combine(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9E3779B97F4A7C15ull + (seed << 6) + (seed >> 2);
}

/// Largest exact rational square root, if q is the square of a rational.
inline std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return mpq_class(0);
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
        return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    mpq_class r(n, d);
    r.canonicalize();
    return r;
}

}  // namespace detail

/// A number a + b*sqrt(2) with rational a, b.
///
/// GMP keeps both rationals in lowest terms with a positive denominator, so
/// componentwise equality is value equality.
class QSqrt2 {
public:
    QSqrt2() = default;
    QSqrt2(long a) : a_(a), b_(0) {}  // NOLINT(google-explicit-constructor)
    QSqrt2(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
        a_.canonicalize();
        b_.canonicalize();
    }

    static QSqrt2 rational(long num, long den = 1) {
        if (den == 0) throw std::domain_error("QSqrt2: zero denominator");
        mpq_class q{mpz_class(num), mpz_class(den)};
        q.canonicalize();
        return {std::move(q), mpq_class(0)};
    }
    static QSqrt2 sqrt2() { return {mpq_class(0), mpq_class(1)}; }
    /// 1/sqrt(2) = sqrt(2)/2
    static QSqrt2 inv_sqrt2() { return {mpq_class(0), mpq_class(1, 2)}; }

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_rational() const { return sgn(b_) == 0; }

    /// Sign of the real value.
    int sign() const {
        const int sa = sgn(a_);
        const int sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 against 2 b^2
        const int c = cmp(mpq_class(a_ * a_), mpq_class(2 * b_ * b_));
        if (c == 0) return 0;  // unreachable for rational a, b (sqrt 2 is irrational)
        return c > 0 ? sa : sb;
    }

    /// Galois conjugate a - b*sqrt(2).
    QSqrt2 galois() const { return {a_, -b_}; }
    /// Field norm a^2 - 2 b^2 (rational).
    mpq_class field_norm() const { return a_ * a_ - 2 * b_ * b_; }

    QSqrt2 inverse() const {
        const mpq_class n = field_norm();
        if (sgn(n) == 0) throw std::domain_error("QSqrt2: division by zero");
        return {a_ / n, -b_ / n};
    }

    /// Exact square root when it exists in Q(sqrt 2) and the value is >= 0.
    std::optional<QSqrt2> sqrt() const {
        if (sign() < 0) return std::nullopt;
        if (is_zero()) return QSqrt2{};
        if (is_rational()) {
            if (auto r = detail::rational_sqrt(a_)) return QSqrt2{*r, 0};
            if (auto r = detail::rational_sqrt(mpq_class(a_ / 2))) return QSqrt2{0, *r};
            return std::nullopt;
        }
        // (c + d sqrt2)^2 = a + b sqrt2  =>  c^2 + 2 d^2 = a,  2 c d = b.
        const auto disc = detail::rational_sqrt(field_norm());
        if (!disc) return std::nullopt;
        for (const mpq_class& c2 : {mpq_class((a_ + *disc) / 2), mpq_class((a_ - *disc) / 2)}) {
            const auto c = detail::rational_sqrt(c2);
            if (!c || sgn(*c) == 0) continue;
            QSqrt2 cand{*c, mpq_class(b_ / (2 * *c))};
            if (cand.sign() < 0) cand = -cand;
            if (cand * cand == *this) return cand;
        }
        return std::nullopt;
    }

    double to_double() const { return a_.get_d() + b_.get_d() * M_SQRT2; }

    /// "(a/b) + (c/d)√2", always with explicit denominators.
    std::string to_string() const {
        auto frac = [](const mpq_class& q) {
            return "(" + q.get_num().get_str() + "/" + q.get_den().get_str() + ")";
        };
        return frac(a_) + " + " + frac(b_) + "√2";
    }

    /// Inverse of to_string(); throws std::invalid_argument on malformed text.
    static QSqrt2 parse(std::string_view text);

    friend QSqrt2 operator+(const QSqrt2& u, const QSqrt2& v) { return {u.a_ + v.a_, u.b_ + v.b_}; }
    friend QSqrt2 operator-(const QSqrt2& u, const QSqrt2& v) { return {u.a_ - v.a_, u.b_ - v.b_}; }
    friend QSqrt2 operator*(const QSqrt2& u, const QSqrt2& v) {
        return {u.a_ * v.a_ + 2 * u.b_ * v.b_, u.a_ * v.b_ + u.b_ * v.a_};
    }
    friend QSqrt2 operator/(const QSqrt2& u, const QSqrt2& v) { return u * v.inverse(); }
    QSqrt2 operator-() const { return {-a_, -b_}; }
    QSqrt2& operator+=(const QSqrt2& v) { return *this = *this + v; }
    QSqrt2& operator-=(const QSqrt2& v) { return *this = *this - v; }
    QSqrt2& operator*=(const QSqrt2& v) { return *this = *this * v; }

    friend bool operator==(const QSqrt2& u, const QSqrt2& v) { return u.a_ == v.a_ && u.b_ == v.b_; }
    /// Numeric order of the real values.
    friend std::strong_ordering operator<=>(const QSqrt2& u, const QSqrt2& v) {
        const int s = (u - v).sign();
        return s < 0 ? std::strong_ordering::less
               : s > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const QSqrt2& q) { return os << q.to_string(); }

private:
    mpq_class a_{0};
    mpq_class b_{0};
};

inline QSqrt2 QSqrt2::parse(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("malformed QSqrt2 literal: " + std::string(text)); };
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    auto expect = [&](std::string_view s) {
        skip_ws();
        if (text.substr(pos, s.size()) != s) fail();
        pos += s.size();
    };
    auto read_frac = [&]() -> mpq_class {
        expect("(");
        const auto close = text.find(')', pos);
        if (close == std::string_view::npos) fail();
        const std::string body(text.substr(pos, close - pos));
        pos = close + 1;
        const auto slash = body.find('/');
        if (slash == std::string::npos) fail();
        mpz_class num, den;
        if (num.set_str(body.substr(0, slash), 10) != 0 || den.set_str(body.substr(slash + 1), 10) != 0)
            fail();
        if (den == 0) fail();
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    };
    mpq_class a = read_frac();
    expect("+");
    mpq_class b = read_frac();
    expect("√2");
    skip_ws();
    if (pos != text.size()) fail();
    return {std::move(a), std::move(b)};
}

enum class QfOp { Add, Sub, Mul, Div, Neg };

/// Field operation by tag; Neg ignores v. Throws std::domain_error on division by zero.
inline QSqrt2 qf_arith(QfOp op, const QSqrt2& u, const QSqrt2& v = {}) {
    switch (op) {
        case QfOp::Add: return u + v;
        case QfOp::Sub: return u - v;
        case QfOp::Mul: return u * v;
        case QfOp::Div: return u / v;
        case QfOp::Neg: return -u;
    }
    throw std::invalid_argument("qf_arith: unknown op");
}

/// Exact quaternion x i + y j + z k + w 1 with coordinates in Q(sqrt 2).
class QuatEx {
public:
    QuatEx() = default;
    QuatEx(QSqrt2 x, QSqrt2 y, QSqrt2 z, QSqrt2 w)
        : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), w_(std::move(w)) {}

    static QuatEx one() { return {0, 0, 0, 1}; }
    static QuatEx i() { return {1, 0, 0, 0}; }
    static QuatEx j() { return {0, 1, 0, 0}; }
    static QuatEx k() { return {0, 0, 1, 0}; }
    static QuatEx scalar(QSqrt2 s) { return {0, 0, 0, std::move(s)}; }

    const QSqrt2& x() const { return x_; }
    const QSqrt2& y() const { return y_; }
    const QSqrt2& z() const { return z_; }
    const QSqrt2& w() const { return w_; }
    /// Real part.
    const QSqrt2& re() const { return w_; }
    QuatEx im() const { return {x_, y_, z_, 0}; }

    QSqrt2 norm2() const { return x_ * x_ + y_ * y_ + z_ * z_ + w_ * w_; }
    bool is_unit() const { return norm2() == QSqrt2(1); }
    bool is_zero() const { return x_.is_zero() && y_.is_zero() && z_.is_zero() && w_.is_zero(); }

    QuatEx conj() const { return {-x_, -y_, -z_, w_}; }
    QuatEx inverse() const {
        const QSqrt2 n = norm2();
        if (n.is_zero()) throw std::domain_error("QuatEx: inverse of zero quaternion");
        if (n == QSqrt2(1)) return conj();
        const QSqrt2 s = n.inverse();
        return conj() * s;
    }

    /// Euclidean inner product, equal to re(p * conj(q)).
    friend QSqrt2 dot(const QuatEx& p, const QuatEx& q) {
        return p.x_ * q.x_ + p.y_ * q.y_ + p.z_ * q.z_ + p.w_ * q.w_;
    }

    /// True when the first nonzero coordinate in the order (w, x, y, z) is positive.
    bool has_positive_sign() const {
        for (const QSqrt2* c : {&w_, &x_, &y_, &z_}) {
            const int s = c->sign();
            if (s != 0) return s > 0;
        }
        return true;
    }

    Quat4 to_float() const { return {x_.to_double(), y_.to_double(), z_.to_double(), w_.to_double()}; }

    std::string to_string() const;

    friend QuatEx operator+(const QuatEx& p, const QuatEx& q) {
        return {p.x_ + q.x_, p.y_ + q.y_, p.z_ + q.z_, p.w_ + q.w_};
    }
    friend QuatEx operator-(const QuatEx& p, const QuatEx& q) {
        return {p.x_ - q.x_, p.y_ - q.y_, p.z_ - q.z_, p.w_ - q.w_};
    }
    QuatEx operator-() const { return {-x_, -y_, -z_, -w_}; }
    friend QuatEx operator*(const QuatEx& q, const QSqrt2& s) { return {q.x_ * s, q.y_ * s, q.z_ * s, q.w_ * s}; }
    friend QuatEx operator*(const QSqrt2& s, const QuatEx& q) { return q * s; }

    /// Hamilton product with ij = k, jk = i, ki = j.
    friend QuatEx operator*(const QuatEx& p, const QuatEx& q) {
        return {
            p.w_ * q.x_ + p.x_ * q.w_ + p.y_ * q.z_ - p.z_ * q.y_,
            p.w_ * q.y_ - p.x_ * q.z_ + p.y_ * q.w_ + p.z_ * q.x_,
            p.w_ * q.z_ + p.x_ * q.y_ - p.y_ * q.x_ + p.z_ * q.w_,
            p.w_ * q.w_ - p.x_ * q.x_ - p.y_ * q.y_ - p.z_ * q.z_,
        };
    }

    friend bool operator==(const QuatEx&, const QuatEx&) = default;
    /// Lexicographic on (x, y, z, w), each compared numerically.
    friend std::strong_ordering operator<=>(const QuatEx& p, const QuatEx& q) {
        if (auto c = p.x_ <=> q.x_; c != 0) return c;
        if (auto c = p.y_ <=> q.y_; c != 0) return c;
        if (auto c = p.z_ <=> q.z_; c != 0) return c;
        return p.w_ <=> q.w_;
    }

    friend std::ostream& operator<<(std::ostream& os, const QuatEx& q) { return os << q.to_string(); }

private:
    QSqrt2 x_, y_, z_, w_;
};

namespace detail {

inline std::string short_form(const QSqrt2& v) {
    auto rat = [](const mpq_class& q) { return q.get_str(); };
    if (v.is_rational()) return rat(v.a());
    std::string s = sgn(v.a()) == 0 ? "" : rat(v.a()) + (sgn(v.b()) > 0 ? "+" : "");
    if (v.b() == 1) return s + "√2";
    if (v.b() == -1) return s + "-√2";
    return s + rat(v.b()) + "√2";
}

}  // namespace detail

/// Compact human-readable form such as "1/2i+1/2j+1/2k+1/2".
inline std::string QuatEx::to_string() const {
    std::string out;
    auto term = [&](const QSqrt2& c, const char* unit) {
        if (c.is_zero()) return;
        std::string t = detail::short_form(c);
        const bool compound = !c.is_rational() && sgn(c.a()) != 0;
        if (compound) t = "(" + t + ")";
        if (!out.empty() && t.front() != '-') out += "+";
        out += t + unit;
    };
    term(x_, "i");
    term(y_, "j");
    term(z_, "k");
    term(w_, "");
    return out.empty() ? "0" : out;
}

/// Normalize p exactly; nullopt when the norm is not in Q(sqrt 2).
inline std::optional<QuatEx> normalized_exact(const QuatEx& p) {
    const QSqrt2 n2 = p.norm2();
    if (n2.is_zero()) return std::nullopt;
    const auto n = n2.sqrt();
    if (!n) return std::nullopt;
    return p * n->inverse();
}

}  // namespace fourdlo

template <>
struct std::hash<fourdlo::QSqrt2> {
    std::size_t operator()(const fourdlo::QSqrt2& v) const noexcept {
        std::size_t seed = fourdlo::detail::hash_mpq(v.a());
        fourdlo::detail::hash_combine(seed, fourdlo::detail::hash_mpq(v.b()));
        return seed;
    }
};

template <>
struct std::hash<fourdlo::QuatEx> {
    std::size_t operator()(const fourdlo::QuatEx& q) const noexcept {
        std::hash<fourdlo::QSqrt2> h;
        std::size_t seed = h(q.x());
        fourdlo::detail::hash_combine(seed, h(q.y()));
        fourdlo::detail::hash_combine(seed, h(q.z()));
        fourdlo::detail::hash_combine(seed, h(q.w()));
        return seed;
    }
};
