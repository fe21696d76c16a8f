#pragma once

// 4D isometries as quaternion pairs and finite groups of them.

#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "fourdlo/cyclic.hpp"
#include "fourdlo/exactnum.hpp"

namespace fourdlo {

/// A unit quaternion type usable as one side of an isometry.
template <class Q>
concept UnitQuaternion = std::regular<Q> && requires(const Q& a, const Q& b) {
    { a * b } -> std::same_as<Q>;
    { -a } -> std::same_as<Q>;
    { a.inverse() } -> std::same_as<Q>;
    { a.has_positive_sign() } -> std::convertible_to<bool>;
    { a.to_float() } -> std::same_as<Quat4>;
    { a <=> b };
    { Q::one() } -> std::same_as<Q>;
    { std::hash<Q>{}(a) } -> std::convertible_to<std::size_t>;
};

/// x -> l x r, or x -> l conj(x) r when `reflect` is set.
///
/// (l, r) and (-l, -r) act identically; the stored pair always has l with a
/// positive leading coordinate. Reflections require both sides to share one
/// quaternion type since composing them swaps factors between the sides.
template <UnitQuaternion L, UnitQuaternion R = L>
class Isometry {
public:
    static constexpr bool kSameSides = std::is_same_v<L, R>;

    Isometry() : left_(L::one()), right_(R::one()) {}
    Isometry(L l, R r, bool reflect = false) : left_(std::move(l)), right_(std::move(r)), reflect_(reflect) {
        if constexpr (!kSameSides) {
            if (reflect_) throw std::invalid_argument("Isometry: reflections need matching side types");
        }
        if (!left_.has_positive_sign()) {
            left_ = -left_;
            right_ = -right_;
        }
    }

    static Isometry identity() { return {}; }
    static Isometry left_mult(L a) { return {std::move(a), R::one()}; }
    static Isometry right_mult(R b) { return {L::one(), std::move(b)}; }
    /// x -> conj(x)
    static Isometry conjugation() requires kSameSides { return {L::one(), R::one(), true}; }

    const L& left() const { return left_; }
    const R& right() const { return right_; }
    bool reflects() const { return reflect_; }

    /// Composition: (g * h)(x) = g(h(x)).
    friend Isometry operator*(const Isometry& g, const Isometry& h) {
        if (!g.reflect_) {
            return {g.left_ * h.left_, h.right_ * g.right_, h.reflect_};
        }
        if constexpr (kSameSides) {
            // g(h(x)) = gl conj(hl x' hr) gr = (gl conj(hr)) conj(x') (conj(hl) gr)
            return {g.left_ * h.right_.inverse(), h.left_.inverse() * g.right_, !h.reflect_};
        } else {
            throw std::logic_error("Isometry: unreachable mixed-side reflection");
        }
    }

    Isometry inverse() const {
        if (!reflect_) return {left_.inverse(), right_.inverse(), false};
        if constexpr (kSameSides) {
            // y = l conj(x) r  =>  x = r conj(y) l   (unit l, r)
            return {right_, left_, true};
        } else {
            throw std::logic_error("Isometry: unreachable mixed-side reflection");
        }
    }

    /// Exact image of x.
    QuatEx apply(const QuatEx& x) const requires(std::is_same_v<L, QuatEx> && std::is_same_v<R, QuatEx>) {
        return left_ * (reflect_ ? x.conj() : x) * right_;
    }

    Quat4 apply(const Quat4& x) const {
        return left_.to_float() * (reflect_ ? x.conj() : x) * right_.to_float();
    }

    std::string to_string() const {
        std::string s = "(" + left_.to_string() + ", " + right_.to_string() + ")";
        return reflect_ ? s + "*conj" : s;
    }

    friend bool operator==(const Isometry&, const Isometry&) = default;
    friend auto operator<=>(const Isometry& a, const Isometry& b) {
        if (a.reflect_ != b.reflect_) return a.reflect_ ? std::strong_ordering::greater : std::strong_ordering::less;
        if (auto c = a.left_ <=> b.left_; c != 0) return c;
        return a.right_ <=> b.right_;
    }

private:
    L left_;
    R right_;
    bool reflect_ = false;
};

using ExactIsometry = Isometry<QuatEx, QuatEx>;

/// Free-function form of Isometry::apply.
template <UnitQuaternion L, UnitQuaternion R>
auto apply(const Isometry<L, R>& g, const auto& x) {
    return g.apply(x);
}

struct GroupTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAGroup : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fourdlo

template <fourdlo::UnitQuaternion L, fourdlo::UnitQuaternion R>
struct std::hash<fourdlo::Isometry<L, R>> {
    std::size_t operator()(const fourdlo::Isometry<L, R>& g) const noexcept {
        std::size_t seed = std::hash<L>{}(g.left());
        fourdlo::detail::hash_combine(seed, std::hash<R>{}(g.right()));
        fourdlo::detail::hash_combine(seed, g.reflects() ? 1u : 0u);
        return seed;
    }
};

namespace fourdlo {

template <UnitQuaternion L, UnitQuaternion R>
class SymGroup;

inline constexpr std::size_t kDefaultGroupCap = 20000;

template <UnitQuaternion L, UnitQuaternion R>
SymGroup<L, R> generate_group(const std::vector<Isometry<L, R>>& generators, std::size_t cap = kDefaultGroupCap,
                              std::string name = {});

/// A finite set of isometries closed under composition and inverse.
template <UnitQuaternion L, UnitQuaternion R = L>
class SymGroup {
public:
    using Element = Isometry<L, R>;

    SymGroup() : SymGroup(std::vector<Element>{Element::identity()}, {}, "trivial") {}

    /// Wraps a ready element list; throws NotAGroup unless it is closed with identity.
    static SymGroup from_elements(std::vector<Element> elements, std::vector<Element> generators = {},
                                  std::string name = {}) {
        SymGroup g(std::move(elements), std::move(generators), std::move(name));
        g.verify_closed();
        return g;
    }

    const std::vector<Element>& elements() const { return elements_; }
    const std::vector<Element>& generators() const { return generators_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    std::size_t order() const { return elements_.size(); }

    bool contains(const Element& g) const { return index_.contains(g); }
    std::optional<std::size_t> index_of(const Element& g) const {
        auto it = index_.find(g);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool is_subgroup_of(const SymGroup& other) const {
        for (const auto& e : elements_)
            if (!other.contains(e)) return false;
        return true;
    }

    /// Left factors of all elements, deduplicated (signs of both lifts).
    std::vector<L> left_projection() const {
        std::vector<L> out;
        std::unordered_map<L, int, std::hash<L>> seen;
        for (const auto& e : elements_) {
            for (const L& l : {e.left(), -e.left()})
                if (seen.emplace(l, 0).second) out.push_back(l);
        }
        return out;
    }
    std::vector<R> right_projection() const {
        std::vector<R> out;
        std::unordered_map<R, int, std::hash<R>> seen;
        for (const auto& e : elements_) {
            for (const R& r : {e.right(), -e.right()})
                if (seen.emplace(r, 0).second) out.push_back(r);
        }
        return out;
    }

    /// The stored generators, or else a greedy pick: each element not yet
    /// spanned by the earlier picks joins the set.
    std::vector<Element> generating_set() const {
        if (!generators_.empty() || elements_.size() == 1) return generators_;
        if (!spanning_.empty()) return spanning_;
        std::vector<Element> gens;
        std::optional<SymGroup> span;
        for (const auto& e : elements_) {
            if (e == Element::identity() || (span && span->contains(e))) continue;
            gens.push_back(e);
            span = generate_group(gens, elements_.size() + 1, name_);
        }
        spanning_ = gens;
        return gens;
    }

    /// Closure check: greedily picks generators from the element list, regenerates
    /// the closure and requires it to reproduce exactly this element set.
    void verify_closed() const {
        if (!contains(Element::identity())) throw NotAGroup("group '" + name_ + "' lacks the identity");
        std::vector<Element> gens;
        std::optional<SymGroup> span;
        for (const auto& e : elements_) {
            if (span && span->contains(e)) continue;
            if (e == Element::identity()) continue;
            gens.push_back(e);
            try {
                span = generate_group(gens, elements_.size() + 1, name_);
            } catch (const GroupTooLarge&) {
                throw NotAGroup("group '" + name_ + "' is not closed under composition");
            }
            for (const auto& x : span->elements())
                if (!contains(x)) throw NotAGroup("group '" + name_ + "' is not closed under composition");
        }
        spanning_ = std::move(gens);
    }

private:
    SymGroup(std::vector<Element> elements, std::vector<Element> generators, std::string name)
        : elements_(std::move(elements)), generators_(std::move(generators)), name_(std::move(name)) {
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            if (!index_.emplace(elements_[i], i).second)
                throw NotAGroup("duplicate element " + elements_[i].to_string());
        }
    }

    template <UnitQuaternion L2, UnitQuaternion R2>
    friend SymGroup<L2, R2> generate_group(const std::vector<Isometry<L2, R2>>& generators, std::size_t cap,
                                           std::string name);

    std::vector<Element> elements_;
    std::vector<Element> generators_;
    std::string name_;
    mutable std::vector<Element> spanning_;  ///< generators found by verify_closed or generating_set
    std::unordered_map<Element, std::size_t, std::hash<Element>> index_;
};

using ExactGroup = SymGroup<QuatEx, QuatEx>;

/// Closure of `generators` by breadth-first worklist; element order is the
/// discovery order, so it is deterministic for a fixed generator list.
template <UnitQuaternion L, UnitQuaternion R>
SymGroup<L, R> generate_group(const std::vector<Isometry<L, R>>& generators, std::size_t cap, std::string name) {
    using Element = Isometry<L, R>;
    std::vector<Element> elements{Element::identity()};
    std::unordered_map<Element, std::size_t, std::hash<Element>> index{{elements.front(), 0}};
    std::vector<Element> steps = generators;
    for (const auto& g : generators) steps.push_back(g.inverse());
    for (std::size_t head = 0; head < elements.size(); ++head) {
        for (const auto& s : steps) {
            Element next = elements[head] * s;
            if (index.contains(next)) continue;
            if (elements.size() >= cap)
                throw GroupTooLarge("group closure exceeded cap of " + std::to_string(cap) + " elements");
            index.emplace(next, elements.size());
            elements.push_back(std::move(next));
        }
    }
    SymGroup<L, R> g(std::move(elements), generators, std::move(name));
    return g;
}

namespace detail {

template <UnitQuaternion Q>
void require_closed_set(const std::vector<Q>& set, const char* which) {
    std::unordered_map<Q, int, std::hash<Q>> members;
    for (const auto& q : set) members.emplace(q, 0);
    for (const auto& a : set) {
        if (!members.contains(-a))
            throw NotAGroup(std::string("product_group: ") + which + " set not closed under negation");
        for (const auto& b : set)
            if (!members.contains(a * b))
                throw NotAGroup(std::string("product_group: ") + which + " set not closed under multiplication");
    }
}

}  // namespace detail

/// The group of maps x -> a x b, a in leftG, b in rightG (both binary lifts,
/// hence closed under negation). Its order is |leftG| |rightG| / 2.
template <UnitQuaternion L, UnitQuaternion R>
SymGroup<L, R> product_group(const std::vector<L>& leftG, const std::vector<R>& rightG, std::string name = {}) {
    detail::require_closed_set(leftG, "left");
    detail::require_closed_set(rightG, "right");
    using Element = Isometry<L, R>;
    std::vector<Element> elements{Element::identity()};
    std::unordered_map<Element, std::size_t, std::hash<Element>> seen{{elements.front(), 0}};
    for (const auto& a : leftG) {
        for (const auto& b : rightG) {
            Element e(a, b);
            if (seen.emplace(e, elements.size()).second) elements.push_back(std::move(e));
        }
    }
    return SymGroup<L, R>::from_elements(std::move(elements), {}, std::move(name));
}

}  // namespace fourdlo
