#include "omorse/arrangement.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "omorse/error.hpp"

namespace omorse {

Arrangement::Arrangement(std::size_t dim, RMatrix normals) : dim_(dim), normals_(std::move(normals)) {
    if (normals_.size() > kMaxGroundSize) throw LimitExceeded("more than " + std::to_string(kMaxGroundSize) + " hyperplanes");
    for (std::size_t i = 0; i < normals_.size(); ++i) {
        if (normals_[i].size() != dim_)
            throw DimensionError("normal " + std::to_string(i) + " has " + std::to_string(normals_[i].size()) +
                                 " entries, expected " + std::to_string(dim_));
        if (std::all_of(normals_[i].begin(), normals_[i].end(), [](const Rational& x) { return x == 0; }))
            throw InputError("normal " + std::to_string(i) + " is zero");
    }
}

Arrangement Arrangement::parse(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::vector<std::string> toks;
        for (std::string t; ss >> t;) toks.push_back(t);
        if (!toks.empty()) rows.push_back(std::move(toks));
    }
    if (rows.empty() || rows[0].size() != 2) throw InputError("arrangement file must start with 'n d'");
    long n = 0, d = 0;
    try {
        n = std::stol(rows[0][0]);
        d = std::stol(rows[0][1]);
    } catch (const std::exception&) {
        throw InputError("arrangement header 'n d' is not numeric");
    }
    if (n < 1 || d < 1) throw InputError("arrangement needs n >= 1 and d >= 1");
    if (rows.size() != static_cast<std::size_t>(n) + 1)
        throw InputError("expected " + std::to_string(n) + " normal rows, found " + std::to_string(rows.size() - 1));
    RMatrix normals;
    for (long i = 1; i <= n; ++i) {
        if (rows[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(d))
            throw InputError("row " + std::to_string(i - 1) + " has " + std::to_string(rows[static_cast<std::size_t>(i)].size()) +
                             " entries, expected " + std::to_string(d));
        RVector v;
        for (const auto& t : rows[static_cast<std::size_t>(i)]) v.push_back(parse_rational(t));
        normals.push_back(std::move(v));
    }
    return Arrangement(static_cast<std::size_t>(d), std::move(normals));
}

Arrangement Arrangement::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open arrangement file '" + path + "'");
    return parse(in);
}

RMatrix Arrangement::normals_of(ElementSet s) const {
    RMatrix out;
    for (int e : elements_of(s)) out.push_back(normals_[static_cast<std::size_t>(e)]);
    return out;
}

bool Arrangement::is_simple() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (rank({normals_[i], normals_[j]}) < 2) return false;
    return true;
}

bool Arrangement::is_essential() const { return rank(normals_) == dim_; }

void Arrangement::validate() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (rank({normals_[i], normals_[j]}) < 2)
                throw InputError("arrangement is not simple: normals " + std::to_string(i) + " and " + std::to_string(j) +
                                 " are parallel");
    std::size_t r = rank(normals_);
    if (r != dim_)
        throw InputError("arrangement is not essential: normals span dimension " + std::to_string(r) + " of " +
                         std::to_string(dim_) + "; project onto their span first");
}

void Arrangement::check_limits(const Limits& limits) const {
    if (size() > limits.max_n)
        throw LimitExceeded(std::to_string(size()) + " hyperplanes exceed the limit of " + std::to_string(limits.max_n));
    if (dim_ > limits.max_d)
        throw LimitExceeded("dimension " + std::to_string(dim_) + " exceeds the limit of " + std::to_string(limits.max_d));
}

Arrangement random_arrangement(std::size_t n, std::size_t d, int bound, std::mt19937_64& rng) {
    if (n < d || d == 0) throw DomainError("need 1 <= d <= n for an essential arrangement");
    std::uniform_int_distribution<int> entry(-bound, bound);
    for (;;) {
        RMatrix rows(n, RVector(d));
        bool zero_row = false;
        for (auto& r : rows) {
            for (auto& x : r) x = entry(rng);
            zero_row |= std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
        }
        if (zero_row) continue;
        Arrangement a(d, std::move(rows));
        if (a.is_simple() && a.is_essential()) return a;
    }
}

Arrangement Arrangement::select(const std::vector<int>& idx) const {
    RMatrix out;
    for (int i : idx) out.push_back(normals_.at(static_cast<std::size_t>(i)));
    return Arrangement(dim_, std::move(out));
}

Arrangement essentialize(const Arrangement& a) {
    RMatrix e = row_echelon_basis(a.normals());
    if (e.size() == a.dim()) return a;
    // In RREF coordinates a vector of the row space is read off at the pivots.
    std::vector<std::size_t> pivots;
    for (const auto& row : e)
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c] != 0) {
                pivots.push_back(c);
                break;
            }
    RMatrix out;
    for (const auto& v : a.normals()) {
        RVector w;
        for (std::size_t p : pivots) w.push_back(v[p]);
        out.push_back(std::move(w));
    }
    return Arrangement(e.size(), std::move(out));
}

std::string Arrangement::str() const {
    std::string s = std::to_string(size()) + " " + std::to_string(dim_) + "\n";
    for (const auto& v : normals_) {
        for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + format_rational(v[k]);
        s += "\n";
    }
    return s;
}

namespace {

void reduce_rows(RMatrix& rows) {
    for (auto& r : rows) r = normalize_leading(r);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

bool has_zero_row(const RMatrix& rows) {
    for (const auto& r : rows)
        if (std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; })) return true;
    return false;
}

}  // namespace

std::optional<RVector> solve_strict(const RMatrix& input, std::size_t dim) {
    RMatrix rows = input;
    reduce_rows(rows);
    if (has_zero_row(rows)) return std::nullopt;
    // Systems before each elimination, kept for back-substitution.
    std::vector<std::pair<std::size_t, RMatrix>> stages;
    std::vector<char> alive(dim, 1);
    for (std::size_t step = 0; step < dim; ++step) {
        // Eliminate the variable with the smallest pair product.
        std::size_t best = dim, best_cost = 0;
        for (std::size_t v = 0; v < dim; ++v) {
            if (!alive[v]) continue;
            std::size_t p = 0, q = 0;
            for (const auto& r : rows) p += r[v] > 0, q += r[v] < 0;
            if (best == dim || p * q < best_cost) best = v, best_cost = p * q;
        }
        std::size_t v = best;
        stages.emplace_back(v, rows);
        alive[v] = 0;
        RMatrix next, pos, neg;
        for (const auto& r : rows) (r[v] > 0 ? pos : r[v] < 0 ? neg : next).push_back(r);
        for (const auto& p : pos)
            for (const auto& q : neg) {
                RVector c(dim);
                Rational a = -q[v], b = p[v];
                for (std::size_t k = 0; k < dim; ++k) c[k] = a * p[k] + b * q[k];
                c[v] = 0;
                next.push_back(std::move(c));
            }
        reduce_rows(next);
        if (has_zero_row(next)) return std::nullopt;
        rows = std::move(next);
        if (rows.empty()) break;
    }
    if (!rows.empty()) return std::nullopt;
    RVector y(dim, Rational(0));
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        std::size_t v = it->first;
        std::optional<Rational> lo, hi;
        for (const auto& r : it->second) {
            if (r[v] == 0) continue;
            Rational rest = 0;
            for (std::size_t k = 0; k < dim; ++k)
                if (k != v) rest += r[k] * y[k];
            Rational bound = -rest / r[v];
            if (r[v] > 0) {
                if (!lo || bound > *lo) lo = bound;
            } else if (!hi || bound < *hi) {
                hi = bound;
            }
        }
        if (lo && hi) y[v] = (*lo + *hi) / 2;
        else if (lo) y[v] = *lo + 1;
        else if (hi) y[v] = *hi - 1;
        else y[v] = 0;
    }
    return y;
}

std::optional<RVector> witness(const Arrangement& a, const SignVector& pattern, ElementSet constrained) {
    if (pattern.size() != a.size()) throw DimensionError("pattern length differs from arrangement size");
    RMatrix eq, strict;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!contains(constrained, i)) continue;
        Sign s = pattern[i];
        if (s == Sign::Zero) {
            eq.push_back(a.normal(i));
        } else {
            RVector r = a.normal(i);
            if (s == Sign::Neg)
                for (auto& x : r) x = -x;
            strict.push_back(std::move(r));
        }
    }
    RMatrix basis = kernel_basis(eq, a.dim());
    if (basis.empty()) {
        if (!strict.empty()) return std::nullopt;
        return RVector(a.dim(), Rational(0));
    }
    RMatrix reduced;
    for (const auto& r : strict) {
        RVector w;
        for (const auto& b : basis) w.push_back(dot(r, b));
        reduced.push_back(std::move(w));
    }
    auto y = solve_strict(reduced, basis.size());
    if (!y) return std::nullopt;
    RVector x(a.dim(), Rational(0));
    for (std::size_t t = 0; t < basis.size(); ++t)
        for (std::size_t k = 0; k < a.dim(); ++k) x[k] += (*y)[t] * basis[t][k];
    return x;
}

bool feasible_partial(const Arrangement& a, const SignVector& pattern, ElementSet constrained) {
    return witness(a, pattern, constrained).has_value();
}

bool feasible(const Arrangement& a, const SignVector& pattern) {
    return feasible_partial(a, pattern, full_set(a.size()));
}

IntersectionLattice::IntersectionLattice(std::vector<Flat> flats) : flats_(std::move(flats)) {
    std::sort(flats_.begin(), flats_.end(), [](const Flat& x, const Flat& y) {
        return x.codim != y.codim ? x.codim < y.codim : x.support < y.support;
    });
    for (std::size_t i = 0; i < flats_.size(); ++i) index_.emplace(flats_[i].support, static_cast<int>(i));
}

int IntersectionLattice::index_of(ElementSet support) const {
    auto it = index_.find(support);
    if (it == index_.end()) throw DomainError(format_set(support) + " is not a flat");
    return it->second;
}

bool IntersectionLattice::leq(int i, int j) const {
    return is_subset(flats_[static_cast<std::size_t>(i)].support, flats_[static_cast<std::size_t>(j)].support);
}

int IntersectionLattice::join(int i, int j) const {
    ElementSet u = flats_[static_cast<std::size_t>(i)].support | flats_[static_cast<std::size_t>(j)].support;
    ElementSet c = flats_.back().support;
    for (const auto& f : flats_)
        if (is_subset(u, f.support)) c &= f.support;
    return index_of(c);
}

int IntersectionLattice::meet(int i, int j) const {
    return index_of(flats_[static_cast<std::size_t>(i)].support & flats_[static_cast<std::size_t>(j)].support);
}

std::vector<std::pair<int, int>> IntersectionLattice::covers() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < flats_.size(); ++i)
        for (std::size_t j = 0; j < flats_.size(); ++j)
            if (flats_[j].codim == flats_[i].codim + 1 && is_subset(flats_[i].support, flats_[j].support))
                out.emplace_back(static_cast<int>(j), static_cast<int>(i));
    return out;
}

ElementSet closure(const Arrangement& a, ElementSet s) {
    RMatrix rows = a.normals_of(s);
    std::size_t r = rank(rows);
    ElementSet c = s;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (contains(s, j)) continue;
        RMatrix ext = rows;
        ext.push_back(a.normal(j));
        if (rank(ext) == r) c |= singleton(j);
    }
    return c;
}

int rank_of(const Arrangement& a, ElementSet s) { return static_cast<int>(rank(a.normals_of(s))); }

IntersectionLattice build_lattice(const Arrangement& a) {
    a.validate();
    std::set<ElementSet> seen;
    std::vector<Flat> flats;
    // Every flat is reached by adding one hyperplane at a time to a smaller flat.
    std::vector<ElementSet> frontier{closure(a, 0)};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<ElementSet> next;
        for (ElementSet f : frontier) {
            flats.push_back({f, rank_of(a, f)});
            for (std::size_t e = 0; e < a.size(); ++e) {
                if (contains(f, e)) continue;
                ElementSet g = closure(a, f | singleton(e));
                if (seen.insert(g).second) next.push_back(g);
            }
        }
        frontier = std::move(next);
    }
    return IntersectionLattice(std::move(flats));
}

OrientedMatroid enumerate_covectors(const Arrangement& a) {
    IntersectionLattice lattice = build_lattice(a);
    const std::size_t n = a.size();
    std::vector<SignVector> out;
    for (const auto& flat : lattice.flats()) {
        RMatrix basis = kernel_basis(a.normals_of(flat.support), a.dim());
        std::vector<int> free = elements_of(full_set(n) & ~flat.support);
        if (basis.empty()) {
            out.push_back(SignVector(n));
            continue;
        }
        RMatrix w;
        for (int j : free) {
            RVector r;
            for (const auto& b : basis) r.push_back(dot(a.normal(static_cast<std::size_t>(j)), b));
            w.push_back(std::move(r));
        }
        // Depth-first over signs of the free hyperplanes; a witness point of the
        // current cell often decides one branch without elimination.
        RMatrix system;
        SignVector cur(n);
        std::function<void(std::size_t, const RVector&)> rec = [&](std::size_t k, const RVector& pt) {
            if (k == free.size()) {
                out.push_back(cur);
                return;
            }
            int side = sign(dot(w[k], pt));
            for (int s : {1, -1}) {
                RVector row = w[k];
                if (s < 0)
                    for (auto& x : row) x = -x;
                system.push_back(row);
                std::optional<RVector> next;
                if (side == s) next = pt;
                else next = solve_strict(system, basis.size());
                if (next) {
                    cur.set(static_cast<std::size_t>(free[k]), s > 0 ? Sign::Pos : Sign::Neg);
                    rec(k + 1, *next);
                    cur.set(static_cast<std::size_t>(free[k]), Sign::Zero);
                }
                system.pop_back();
            }
        };
        RVector origin(basis.size(), Rational(0));
        origin[0] = 0;
        rec(0, origin);
    }
    return OrientedMatroid(n, std::move(out));
}

std::vector<SignVector> sweep_covectors(const Arrangement& a) {
    const std::size_t n = a.size();
    std::vector<SignVector> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        SignVector v(n);
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i, c /= 3) v.set(i, static_cast<Sign>(static_cast<int>(c % 3) - 1));
        if (feasible(a, v)) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_topes_by_sweep(const Arrangement& a) {
    const std::size_t n = a.size();
    std::size_t count = 0;
    for (ElementSet neg = 0; neg <= full_set(n); ++neg) {
        if (feasible(a, SignVector::from_masks(n, full_set(n) & ~neg, neg))) ++count;
        if (neg == full_set(n)) break;
    }
    return count;
}

std::map<ElementSet, std::size_t> covector_counts_by_sweep(const Arrangement& a, const IntersectionLattice& l) {
    const std::size_t n = a.size();
    std::map<ElementSet, std::size_t> out;
    for (const auto& flat : l.flats()) {
        ElementSet free = full_set(n) & ~flat.support;
        std::size_t count = 0;
        // Enumerate all subsets of `free` as the negative part.
        for (ElementSet neg = free;; neg = (neg - 1) & free) {
            if (feasible(a, SignVector::from_masks(n, free & ~neg, neg))) ++count;
            if (neg == 0) break;
        }
        out[flat.support] = count;
    }
    return out;
}

ElementSet walls(const Arrangement& a, const SignVector& tope) {
    if (tope.size() != a.size()) throw DimensionError("tope length differs from arrangement size");
    if (!tope.full_support() || !feasible(a, tope)) throw DomainError(tope.str() + " is not a chamber");
    ElementSet w = 0;
    for (std::size_t e = 0; e < a.size(); ++e)
        if (feasible(a, tope.flipped(e))) w |= singleton(e);
    return w;
}

Restriction restriction(const Arrangement& a, ElementSet support) {
    if (closure(a, support) != support) throw DomainError(format_set(support) + " is not a flat of the arrangement");
    Restriction r;
    r.basis = kernel_basis(a.normals_of(support), a.dim());
    const std::size_t k = r.basis.size();
    if (k == 0) {
        r.arrangement = Arrangement(0, {});
        return r;
    }
    RMatrix normals;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (contains(support, j)) continue;
        RVector w;
        for (const auto& b : r.basis) w.push_back(dot(a.normal(j), b));
        bool dup = false;
        for (const auto& seen : normals)
            if (same_row_space({seen}, {w})) dup = true;
        if (dup) continue;
        normals.push_back(std::move(w));
        r.labels.push_back(static_cast<int>(j));
    }
    r.arrangement = Arrangement(k, std::move(normals));
    return r;
}

SignVector project_tope(ElementSet support, const SignVector& tope) { return tope.project(elements_of(support)); }

std::string lattice_json(const IntersectionLattice& l) {
    nlohmann::json j;
    j["flats"] = nlohmann::json::array();
    for (const auto& f : l.flats()) j["flats"].push_back({{"codim", f.codim}, {"support", elements_of(f.support)}});
    j["covers"] = nlohmann::json::array();
    for (auto [u, d] : l.covers()) j["covers"].push_back({u, d});
    j["rank"] = l.rank();
    return j.dump(2);
}

std::string covectors_json(const OrientedMatroid& m) {
    nlohmann::json j;
    j["ground_size"] = m.ground_size();
    j["rank"] = m.rank();
    j["covectors"] = nlohmann::json::array();
    for (const auto& c : m.covectors()) j["covectors"].push_back(c.str());
    j["topes"] = nlohmann::json::array();
    for (const auto& t : m.topes()) j["topes"].push_back(t.str());
    return j.dump(2);
}

}  // namespace omorse
