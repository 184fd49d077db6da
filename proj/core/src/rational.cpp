#include "omorse/rational.hpp"

#include <cctype>

#include "omorse/error.hpp"

namespace omorse {

namespace {

bool is_integer_token(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& token) {
    auto slash = token.find('/');
    std::string num = token.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : token.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den) || den[0] == '-' || den[0] == '+')
        throw InputError("malformed rational '" + token + "'");
    if (num[0] == '+') num.erase(0, 1);
    boost::multiprecision::mpz_int n(num), d(den);
    if (d == 0) throw InputError("zero denominator in '" + token + "'");
    return Rational(n, d);
}

std::string format_rational(const Rational& q) {
    auto n = boost::multiprecision::numerator(q);
    auto d = boost::multiprecision::denominator(q);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

int sign(const Rational& q) { return q.sign(); }

Rational dot(const RVector& a, const RVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
    return s;
}

RMatrix row_echelon_basis(const RMatrix& rows) {
    RMatrix m = rows;
    if (m.empty()) return m;
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    m.resize(r);
    return m;
}

std::size_t rank(const RMatrix& rows) { return row_echelon_basis(rows).size(); }

RMatrix kernel_basis(const RMatrix& rows, std::size_t dim) {
    RMatrix e = row_echelon_basis(rows);
    std::vector<int> pivot_of_col(dim, -1);
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t c = 0; c < dim; ++c)
            if (e[i][c] != 0) {
                pivot_of_col[c] = static_cast<int>(i);
                break;
            }
    RMatrix basis;
    for (std::size_t free = 0; free < dim; ++free) {
        if (pivot_of_col[free] >= 0) continue;
        RVector v(dim, Rational(0));
        v[free] = 1;
        for (std::size_t c = 0; c < dim; ++c)
            if (pivot_of_col[c] >= 0) v[c] = -e[pivot_of_col[c]][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool in_row_space(const RMatrix& rows, const RVector& v) {
    RMatrix ext = rows;
    ext.push_back(v);
    return rank(ext) == rank(rows);
}

bool same_row_space(const RMatrix& a, const RMatrix& b) {
    // RREF is canonical, so equal spaces give identical bases.
    return row_echelon_basis(a) == row_echelon_basis(b);
}

RVector normalize_leading(const RVector& v) {
    for (const auto& x : v) {
        if (x == 0) continue;
        Rational s = abs(x);
        RVector out = v;
        for (auto& y : out) y /= s;
        return out;
    }
    return v;
}

}  // namespace omorse
