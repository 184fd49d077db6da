#include "omorse/sign_vector.hpp"

#include <bit>

#include "omorse/error.hpp"
#include "omorse/limits.hpp"

namespace omorse {

int popcount(ElementSet s) { return std::popcount(s); }

std::vector<int> elements_of(ElementSet s) {
    std::vector<int> out;
    while (s) {
        int e = std::countr_zero(s);
        out.push_back(e);
        s &= s - 1;
    }
    return out;
}

ElementSet set_of(const std::vector<int>& elems) {
    ElementSet s = 0;
    for (int e : elems) s |= singleton(static_cast<std::size_t>(e));
    return s;
}

std::string format_set(ElementSet s) {
    std::string out = "{";
    bool first = true;
    for (int e : elements_of(s)) {
        if (!first) out += ",";
        out += std::to_string(e);
        first = false;
    }
    return out + "}";
}

char sign_char(Sign s) { return s == Sign::Pos ? '+' : s == Sign::Neg ? '-' : '0'; }

SignVector::SignVector(std::size_t n) {
    if (n > kMaxGroundSize) throw LimitExceeded("ground set larger than " + std::to_string(kMaxGroundSize));
    n_ = static_cast<std::uint8_t>(n);
}

SignVector SignVector::from_masks(std::size_t n, ElementSet pos, ElementSet neg) {
    SignVector v(n);
    ElementSet mask = full_set(n);
    v.pos_ = pos & mask;
    v.neg_ = neg & mask & ~v.pos_;
    return v;
}

SignVector SignVector::parse(std::string_view text) {
    SignVector v(text.size());
    for (std::size_t e = 0; e < text.size(); ++e) {
        switch (text[e]) {
            case '+': v.pos_ |= singleton(e); break;
            case '-': v.neg_ |= singleton(e); break;
            case '0': break;
            default: throw InputError("invalid sign character '" + std::string(1, text[e]) + "' in '" + std::string(text) + "'");
        }
    }
    return v;
}

void SignVector::set(std::size_t e, Sign s) {
    if (e >= n_) throw DimensionError("coordinate " + std::to_string(e) + " out of range");
    pos_ &= ~singleton(e);
    neg_ &= ~singleton(e);
    if (s == Sign::Pos) pos_ |= singleton(e);
    if (s == Sign::Neg) neg_ |= singleton(e);
}

SignVector SignVector::flipped(std::size_t e) const {
    SignVector v = *this;
    v.set(e, negate((*this)[e]));
    return v;
}

SignVector SignVector::project(const std::vector<int>& coords) const {
    SignVector v(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) v.set(i, (*this)[static_cast<std::size_t>(coords[i])]);
    return v;
}

std::string SignVector::str() const {
    std::string s(n_, '0');
    for (std::size_t e = 0; e < n_; ++e) s[e] = sign_char((*this)[e]);
    return s;
}

std::strong_ordering SignVector::operator<=>(const SignVector& o) const {
    if (n_ != o.n_) return n_ <=> o.n_;
    for (std::size_t e = 0; e < n_; ++e) {
        int a = static_cast<int>((*this)[e]), b = static_cast<int>(o[e]);
        if (a != b) return a <=> b;
    }
    return std::strong_ordering::equal;
}

namespace {
void check_lengths(const SignVector& x, const SignVector& y) {
    if (x.size() != y.size())
        throw DimensionError("sign vector lengths differ: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
}
}  // namespace

SignVector compose(const SignVector& x, const SignVector& y) {
    check_lengths(x, y);
    ElementSet free = ~x.support();
    return SignVector::from_masks(x.size(), x.pos() | (y.pos() & free), x.neg() | (y.neg() & free));
}

ElementSet separation_set(const SignVector& x, const SignVector& y) {
    check_lengths(x, y);
    return (x.pos() & y.neg()) | (x.neg() & y.pos());
}

bool face_leq(const SignVector& x, const SignVector& y) {
    check_lengths(x, y);
    return is_subset(x.pos(), y.pos()) && is_subset(x.neg(), y.neg());
}

SignVector push_into_face(const SignVector& tope, const SignVector& face) { return compose(face, tope); }

}  // namespace omorse
