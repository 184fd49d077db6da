#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "omorse/limits.hpp"
#include "omorse/oriented_matroid.hpp"
#include "omorse/rational.hpp"
#include "omorse/sign_vector.hpp"

namespace omorse {

// n linear hyperplanes H_i = ker <v_i, .> in Q^d, in the given order.
class Arrangement {
public:
    Arrangement() = default;
    // Checks shapes and that every normal is nonzero. Simplicity and
    // essentiality are checked by validate().
    Arrangement(std::size_t dim, RMatrix normals);

    // First line "n d", then n rows of d rationals; '#' starts a comment.
    static Arrangement parse(std::istream& in);
    static Arrangement load(const std::string& path);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return normals_.size(); }
    const RVector& normal(std::size_t i) const { return normals_[i]; }
    const RMatrix& normals() const { return normals_; }
    RMatrix normals_of(ElementSet s) const;

    bool is_simple() const;
    bool is_essential() const;
    // Throws InputError naming the offending normals.
    void validate() const;
    void check_limits(const Limits& limits) const;

    // Sub-arrangement on the listed hyperplanes, in that order.
    Arrangement select(const std::vector<int>& idx) const;

    std::string str() const;

private:
    std::size_t dim_ = 0;
    RMatrix normals_;
};

// Rejection sampling of a simple essential arrangement with integer
// entries in [-bound, bound]. Throws DomainError if n < d.
Arrangement random_arrangement(std::size_t n, std::size_t d, int bound, std::mt19937_64& rng);

// Same oriented matroid, rewritten in coordinates of the span of the normals.
Arrangement essentialize(const Arrangement& a);

// Exact decision of: exists x with sign <v_i, x> = pattern_i for all i.
bool feasible(const Arrangement& a, const SignVector& pattern);
// Only coordinates in `constrained` are imposed.
bool feasible_partial(const Arrangement& a, const SignVector& pattern, ElementSet constrained);
// A point realising the pattern, if any.
std::optional<RVector> witness(const Arrangement& a, const SignVector& pattern, ElementSet constrained);

// Fourier-Motzkin for homogeneous strict systems rows . y > 0. Returns a solution.
std::optional<RVector> solve_strict(const RMatrix& rows, std::size_t dim);

struct Flat {
    ElementSet support = 0;
    int codim = 0;
    bool operator==(const Flat& o) const = default;
};

class IntersectionLattice {
public:
    IntersectionLattice() = default;
    explicit IntersectionLattice(std::vector<Flat> flats);

    // Flats sorted by (codim, support).
    const std::vector<Flat>& flats() const { return flats_; }
    std::size_t size() const { return flats_.size(); }
    int index_of(ElementSet support) const;
    const Flat& bottom() const { return flats_.front(); }
    const Flat& top() const { return flats_.back(); }
    int rank() const { return flats_.back().codim; }
    bool leq(int i, int j) const;
    // Computed on demand from the flat list.
    int join(int i, int j) const;
    int meet(int i, int j) const;
    std::vector<std::pair<int, int>> covers() const;  // (upper, lower)

private:
    std::vector<Flat> flats_;
    std::map<ElementSet, int> index_;
};

ElementSet closure(const Arrangement& a, ElementSet s);
int rank_of(const Arrangement& a, ElementSet s);

// Closure of every subset, deduplicated. Validates `a`.
IntersectionLattice build_lattice(const Arrangement& a);

// Flat by flat: for each flat, a sign search with pruning inside its subspace.
OrientedMatroid enumerate_covectors(const Arrangement& a);
// Independent oracles without pruning or lattice: all 3^n (resp. 2^n) patterns.
std::vector<SignVector> sweep_covectors(const Arrangement& a);
std::size_t count_topes_by_sweep(const Arrangement& a);
// Per flat support: number of covectors with exactly that zero set, by a full
// 2^(n - |support|) sweep.
std::map<ElementSet, std::size_t> covector_counts_by_sweep(const Arrangement& a, const IntersectionLattice& l);

// {e : flipping e in C stays feasible}. Throws DomainError if C is not a tope.
ElementSet walls(const Arrangement& a, const SignVector& tope);

struct Restriction {
    Arrangement arrangement;  // coordinates in `basis`
    std::vector<int> labels;  // hyperplane i of the restriction -> smallest original index
    RMatrix basis;            // basis of the flat's subspace, as vectors of Q^d
};

// A^Y. Throws DomainError unless `support` is closed.
Restriction restriction(const Arrangement& a, ElementSet support);

// The coordinates of C on `support`, ascending.
SignVector project_tope(ElementSet support, const SignVector& tope);

std::string lattice_json(const IntersectionLattice& l);
std::string covectors_json(const OrientedMatroid& m);

}  // namespace omorse
