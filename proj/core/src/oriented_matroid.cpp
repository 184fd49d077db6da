#include "omorse/oriented_matroid.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "omorse/error.hpp"
#include "omorse/limits.hpp"

namespace omorse {

AxiomReport validate_axioms(const std::vector<SignVector>& covectors) {
    AxiomReport r;
    std::unordered_set<SignVector, SignVectorHash> set(covectors.begin(), covectors.end());
    std::vector<SignVector> v(set.begin(), set.end());
    std::sort(v.begin(), v.end());
    if (v.empty()) {
        r.zero = false;
        r.failures.push_back({1, {}, {}, -1, -1, "empty covector set"});
        return r;
    }
    const std::size_t n = v.front().size();
    for (const auto& x : v)
        if (x.size() != n) throw DimensionError("covectors of different lengths");

    if (!set.count(SignVector(n))) {
        r.zero = false;
        r.failures.push_back({1, SignVector(n), {}, -1, -1, "zero vector missing"});
    }
    for (const auto& x : v)
        if (!set.count(-x)) {
            r.negation = false;
            r.failures.push_back({2, x, -x, -1, -1, "negation of " + x.str() + " missing"});
            break;
        }
    for (std::size_t i = 0; i < v.size() && r.composition; ++i)
        for (std::size_t j = 0; j < v.size(); ++j) {
            SignVector c = compose(v[i], v[j]);
            if (!set.count(c)) {
                r.composition = false;
                r.failures.push_back({3, v[i], v[j], -1, -1, v[i].str() + " o " + v[j].str() + " = " + c.str() + " missing"});
                break;
            }
        }
    // Elimination: for each unordered pair, collect which f are realised for each e.
    for (std::size_t i = 0; i < v.size() && r.elimination; ++i)
        for (std::size_t j = i + 1; j < v.size() && r.elimination; ++j) {
            const auto &x = v[i], &y = v[j];
            ElementSet sep = separation_set(x, y);
            if (!sep) continue;
            ElementSet allowed_pos = x.pos() | y.pos(), allowed_neg = x.neg() | y.neg();
            ElementSet need = (x.support() | y.support()) & ~sep;
            std::vector<ElementSet> got(n, 0);
            for (const auto& z : v) {
                if (!is_subset(z.pos(), allowed_pos) || !is_subset(z.neg(), allowed_neg)) continue;
                ElementSet zeros = sep & ~z.support();
                for (int e : elements_of(zeros)) got[static_cast<std::size_t>(e)] |= z.support();
            }
            for (int e : elements_of(sep)) {
                ElementSet missing = need & ~got[static_cast<std::size_t>(e)];
                if (missing) {
                    int f = elements_of(missing).front();
                    r.elimination = false;
                    r.failures.push_back({4, x, y, e, f,
                                          "no elimination of " + std::to_string(e) + " between " + x.str() + " and " +
                                              y.str() + " keeping " + std::to_string(f)});
                    break;
                }
            }
        }
    return r;
}

OrientedMatroid::OrientedMatroid(std::size_t ground_size, std::vector<SignVector> covectors) : n_(ground_size) {
    if (n_ > kMaxGroundSize) throw LimitExceeded("ground set too large");
    for (const auto& c : covectors)
        if (c.size() != n_) throw DimensionError("covector " + c.str() + " has length " + std::to_string(c.size()) +
                                                 ", expected " + std::to_string(n_));
    std::sort(covectors.begin(), covectors.end());
    covectors.erase(std::unique(covectors.begin(), covectors.end()), covectors.end());
    covectors_ = std::move(covectors);
    ElementSet all = 0;
    for (std::size_t i = 0; i < covectors_.size(); ++i) {
        lookup_.emplace(covectors_[i], static_cast<int>(i));
        all |= covectors_[i].support();
    }
    for (const auto& c : covectors_)
        if (c.support() == all) topes_.push_back(c);

    std::unordered_set<ElementSet> zs;
    for (const auto& c : covectors_) zs.insert(c.zero_set());
    flats_.assign(zs.begin(), zs.end());
    std::sort(flats_.begin(), flats_.end());
    // Geometric lattice: rank = length of the longest chain from the bottom.
    std::vector<std::size_t> by_size(flats_.size());
    for (std::size_t i = 0; i < by_size.size(); ++i) by_size[i] = i;
    std::stable_sort(by_size.begin(), by_size.end(),
                     [&](std::size_t a, std::size_t b) { return popcount(flats_[a]) < popcount(flats_[b]); });
    std::vector<int> rk(flats_.size(), 0);
    for (std::size_t a = 0; a < by_size.size(); ++a)
        for (std::size_t b = 0; b < a; ++b) {
            std::size_t i = by_size[a], j = by_size[b];
            if (flats_[j] != flats_[i] && is_subset(flats_[j], flats_[i])) rk[i] = std::max(rk[i], rk[j] + 1);
        }
    flat_covers_.assign(flats_.size(), {});
    for (std::size_t i = 0; i < flats_.size(); ++i) {
        flat_rank_.emplace(flats_[i], rk[i]);
        rank_ = std::max(rank_, rk[i]);
        for (std::size_t j = 0; j < flats_.size(); ++j)
            if (rk[j] == rk[i] + 1 && is_subset(flats_[i], flats_[j])) flat_covers_[i].push_back(static_cast<int>(j));
    }
}

OrientedMatroid OrientedMatroid::parse(std::istream& in) {
    std::vector<SignVector> vs;
    std::string line;
    std::optional<std::size_t> n;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        auto e = line.find_last_not_of(" \t\r");
        std::string tok = line.substr(b, e - b + 1);
        SignVector v = SignVector::parse(tok);
        if (n && *n != v.size())
            throw InputError("covector line " + std::to_string(lineno) + " has length " + std::to_string(v.size()) +
                             ", expected " + std::to_string(*n));
        n = v.size();
        vs.push_back(v);
    }
    if (!n) throw InputError("covector file contains no sign vectors");
    AxiomReport rep = validate_axioms(vs);
    if (!rep.ok()) throw InputError("covector set violates axiom (" + std::to_string(rep.failures.front().axiom) +
                                    "): " + rep.failures.front().message);
    return OrientedMatroid(*n, std::move(vs));
}

OrientedMatroid OrientedMatroid::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open covector file '" + path + "'");
    return parse(in);
}

int OrientedMatroid::index_of(const SignVector& v) const {
    auto it = lookup_.find(v);
    return it == lookup_.end() ? -1 : it->second;
}

bool OrientedMatroid::is_tope(const SignVector& t) const {
    return std::binary_search(topes_.begin(), topes_.end(), t);
}

bool OrientedMatroid::is_flat(ElementSet s) const { return std::binary_search(flats_.begin(), flats_.end(), s); }

int OrientedMatroid::flat_rank(ElementSet flat) const {
    auto it = flat_rank_.find(flat);
    if (it == flat_rank_.end()) throw DomainError(format_set(flat) + " is not a flat");
    return it->second;
}

ElementSet OrientedMatroid::closure(ElementSet s) const {
    ElementSet c = full_set(n_);
    for (ElementSet f : flats_)
        if (is_subset(s, f)) c &= f;
    return c;
}

ElementSet OrientedMatroid::loops() const { return flats_.empty() ? 0 : closure(0); }

bool OrientedMatroid::is_simple() const {
    if (loops()) return false;
    for (std::size_t e = 0; e < n_; ++e)
        if (closure(singleton(e)) != singleton(e)) return false;
    return true;
}

SignVector OrientedMatroid::push_into_face(const SignVector& tope, const SignVector& face) const {
    if (!is_covector(face)) throw DomainError(face.str() + " is not a covector");
    if (!is_tope(tope)) throw DomainError(tope.str() + " is not a tope");
    return omorse::push_into_face(tope, face);
}

std::vector<SignVector> OrientedMatroid::face_coatoms(const SignVector& v) const {
    std::vector<SignVector> out;
    auto it = std::lower_bound(flats_.begin(), flats_.end(), v.zero_set());
    if (it == flats_.end() || *it != v.zero_set()) throw DomainError(v.str() + " is not a covector");
    for (int g : flat_covers_[static_cast<std::size_t>(it - flats_.begin())]) {
        SignVector c = v.zeroed(flats_[static_cast<std::size_t>(g)]);
        if (is_covector(c)) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

OrientedMatroid OrientedMatroid::restrict_to(const std::vector<int>& coords) const {
    std::vector<SignVector> out;
    out.reserve(covectors_.size());
    for (const auto& c : covectors_) out.push_back(c.project(coords));
    return OrientedMatroid(coords.size(), std::move(out));
}

std::string OrientedMatroid::str() const {
    std::string s;
    for (const auto& c : covectors_) s += c.str() + "\n";
    return s;
}

SignVector Contraction::lift(const SignVector& v, std::size_t original_size) const {
    SignVector out(original_size);
    for (std::size_t i = 0; i < index_map.size(); ++i) out.set(static_cast<std::size_t>(index_map[i]), v[i]);
    return out;
}

Contraction contraction(const OrientedMatroid& m, ElementSet x) {
    if (!m.is_flat(x)) throw DomainError(format_set(x) + " is not a flat");
    Contraction c;
    for (std::size_t e = 0; e < m.ground_size(); ++e)
        if (!contains(x, e)) c.index_map.push_back(static_cast<int>(e));
    std::vector<SignVector> vs;
    for (const auto& v : m.covectors())
        if ((v.support() & x) == 0) vs.push_back(v.project(c.index_map));
    c.om = OrientedMatroid(c.index_map.size(), std::move(vs));
    return c;
}

SignVector Simplification::compress(const SignVector& v) const { return v.project(representative); }

SignVector Simplification::expand(const SignVector& v, std::size_t original_size) const {
    SignVector out(original_size);
    for (std::size_t e = 0; e < original_size; ++e) {
        int c = class_of[e];
        if (c < 0) continue;
        Sign s = v[static_cast<std::size_t>(c)];
        out.set(e, orientation[e] > 0 ? s : negate(s));
    }
    return out;
}

Simplification simplify(const OrientedMatroid& m) {
    Simplification s;
    const std::size_t n = m.ground_size();
    s.class_of.assign(n, -1);
    s.orientation.assign(n, 1);
    std::map<std::vector<int>, int> classes;
    for (std::size_t e = 0; e < n; ++e) {
        std::vector<int> sig;
        int lead = 0;
        for (const auto& v : m.covectors()) {
            int x = static_cast<int>(v[e]);
            if (!lead && x) lead = x;
            sig.push_back(x);
        }
        if (!lead) continue;  // loop
        for (int& x : sig) x *= lead;
        auto [it, fresh] = classes.emplace(sig, static_cast<int>(s.representative.size()));
        if (fresh) s.representative.push_back(static_cast<int>(e));
        s.class_of[e] = it->second;
        // Orientation relative to the representative's own leading sign.
        int rep_lead = 0;
        for (const auto& v : m.covectors()) {
            int x = static_cast<int>(v[static_cast<std::size_t>(s.representative[static_cast<std::size_t>(it->second)])]);
            if (x) {
                rep_lead = x;
                break;
            }
        }
        s.orientation[e] = lead * rep_lead;
    }
    std::vector<SignVector> vs;
    for (const auto& v : m.covectors()) vs.push_back(s.compress(v));
    s.om = OrientedMatroid(s.representative.size(), std::move(vs));
    return s;
}

FacePoset face_poset(const OrientedMatroid& m) {
    FacePoset fp;
    fp.covectors = m.covectors();
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> covers;
    for (std::size_t i = 0; i < fp.covectors.size(); ++i) {
        labels.push_back(fp.covectors[i].str());
        for (const auto& c : m.face_coatoms(fp.covectors[i])) covers.emplace_back(static_cast<int>(i), m.index_of(c));
    }
    fp.poset = FinitePoset(std::move(labels), std::move(covers));
    return fp;
}

}  // namespace omorse
