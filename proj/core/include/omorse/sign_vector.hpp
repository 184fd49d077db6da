#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace omorse {

// Subset of a ground set {0..n-1}, n <= 32.
using ElementSet = std::uint32_t;

inline bool contains(ElementSet s, std::size_t e) { return (s >> e) & 1u; }
inline ElementSet singleton(std::size_t e) { return ElementSet{1} << e; }
inline ElementSet full_set(std::size_t n) { return n >= 32 ? ~ElementSet{0} : (ElementSet{1} << n) - 1; }
inline bool is_subset(ElementSet a, ElementSet b) { return (a & ~b) == 0; }
int popcount(ElementSet s);
std::vector<int> elements_of(ElementSet s);
ElementSet set_of(const std::vector<int>& elems);
// "{0,2}" style rendering, zero-based.
std::string format_set(ElementSet s);

enum class Sign : std::int8_t { Neg = -1, Zero = 0, Pos = 1 };

inline Sign negate(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }
char sign_char(Sign s);

class SignVector {
public:
    SignVector() = default;
    explicit SignVector(std::size_t n);
    static SignVector from_masks(std::size_t n, ElementSet pos, ElementSet neg);
    // Characters '+', '-', '0'. Throws InputError on anything else.
    static SignVector parse(std::string_view text);

    std::size_t size() const { return n_; }
    Sign operator[](std::size_t e) const {
        return contains(pos_, e) ? Sign::Pos : contains(neg_, e) ? Sign::Neg : Sign::Zero;
    }
    void set(std::size_t e, Sign s);

    ElementSet pos() const { return pos_; }
    ElementSet neg() const { return neg_; }
    ElementSet support() const { return pos_ | neg_; }
    ElementSet zero_set() const { return full_set(n_) & ~support(); }
    bool is_zero() const { return support() == 0; }
    bool full_support() const { return support() == full_set(n_); }

    SignVector operator-() const { return from_masks(n_, neg_, pos_); }
    // Zero out the coordinates in `s`.
    SignVector zeroed(ElementSet s) const { return from_masks(n_, pos_ & ~s, neg_ & ~s); }
    SignVector flipped(std::size_t e) const;
    // Keep the listed coordinates, in the listed order.
    SignVector project(const std::vector<int>& coords) const;

    std::string str() const;

    bool operator==(const SignVector& o) const = default;
    // Canonical order: lexicographic, coordinate 0 most significant, - < 0 < +.
    std::strong_ordering operator<=>(const SignVector& o) const;

private:
    std::uint8_t n_ = 0;
    ElementSet pos_ = 0;
    ElementSet neg_ = 0;
};

// (X o Y)_e = X_e if X_e != 0, else Y_e.
SignVector compose(const SignVector& x, const SignVector& y);
// {e : X_e = -Y_e != 0}.
ElementSet separation_set(const SignVector& x, const SignVector& y);
// supp X within supp Y and X agrees with Y where nonzero.
bool face_leq(const SignVector& x, const SignVector& y);
// Coordinatewise T_F = F o T; membership of F is checked by OrientedMatroid.
SignVector push_into_face(const SignVector& tope, const SignVector& face);

struct SignVectorHash {
    std::size_t operator()(const SignVector& v) const noexcept {
        std::uint64_t h = (std::uint64_t{v.pos()} << 32) ^ v.neg() ^ (std::uint64_t{v.size()} << 58);
        return std::hash<std::uint64_t>{}(h);
    }
};

}  // namespace omorse
