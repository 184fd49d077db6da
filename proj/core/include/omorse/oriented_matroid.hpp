#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "omorse/poset.hpp"
#include "omorse/sign_vector.hpp"

namespace omorse {

struct AxiomFailure {
    int axiom = 0;  // 1 zero, 2 negation, 3 composition, 4 elimination
    SignVector x, y;
    int e = -1, f = -1;
    std::string message;
};

struct AxiomReport {
    bool zero = true;
    bool negation = true;
    bool composition = true;
    bool elimination = true;
    std::vector<AxiomFailure> failures;  // first witness per failing axiom
    bool ok() const { return zero && negation && composition && elimination; }
};

// Brute-force check of the covector axioms. Elimination: for X, Y, e with
// X_e = -Y_e != 0 and f outside S(X,Y) with X_f or Y_f nonzero, some Z has
// Z_e = 0, Z_f != 0 and Z_i in {0, X_i, Y_i}.
AxiomReport validate_axioms(const std::vector<SignVector>& covectors);

class OrientedMatroid {
public:
    OrientedMatroid() = default;
    // Deduplicates and sorts; checks lengths. Axioms are not checked here.
    OrientedMatroid(std::size_t ground_size, std::vector<SignVector> covectors);

    // One sign vector per line, '#' comments. Runs validate_axioms.
    static OrientedMatroid parse(std::istream& in);
    static OrientedMatroid load(const std::string& path);

    std::size_t ground_size() const { return n_; }
    const std::vector<SignVector>& covectors() const { return covectors_; }
    std::size_t size() const { return covectors_.size(); }
    bool is_covector(const SignVector& v) const { return lookup_.count(v) > 0; }
    // Index in covectors(), or -1.
    int index_of(const SignVector& v) const;

    const std::vector<SignVector>& topes() const { return topes_; }
    bool is_tope(const SignVector& t) const;
    SignVector zero() const { return SignVector(n_); }

    // Rank of the matroid = height of the face poset.
    int rank() const { return rank_; }
    // Flats are the zero sets of covectors; sorted ascending.
    const std::vector<ElementSet>& flats() const { return flats_; }
    bool is_flat(ElementSet s) const;
    int flat_rank(ElementSet flat) const;
    // Smallest flat containing s.
    ElementSet closure(ElementSet s) const;
    int set_rank(ElementSet s) const { return flat_rank(closure(s)); }
    // Height in the face poset: rank - rank(z(v)).
    int height(const SignVector& v) const { return rank_ - flat_rank(v.zero_set()); }

    ElementSet loops() const;
    bool is_simple() const;

    // T_F = F o T with membership checks. Throws DomainError.
    SignVector push_into_face(const SignVector& tope, const SignVector& face) const;

    // Coatoms of v in the face poset, ascending canonical order.
    std::vector<SignVector> face_coatoms(const SignVector& v) const;

    // Covectors restricted to `coords` (in that order): the deletion of the rest.
    OrientedMatroid restrict_to(const std::vector<int>& coords) const;

    std::string str() const;

private:
    std::size_t n_ = 0;
    std::vector<SignVector> covectors_;
    std::unordered_map<SignVector, int, SignVectorHash> lookup_;
    std::vector<SignVector> topes_;
    std::vector<ElementSet> flats_;
    std::unordered_map<ElementSet, int> flat_rank_;
    std::vector<std::vector<int>> flat_covers_;  // flats covering flats_[i]
    int rank_ = 0;
};

struct Contraction {
    OrientedMatroid om;
    std::vector<int> index_map;  // new coordinate -> original element
    // Lift a sign vector of the contraction back to the original ground set (zeros on X).
    SignVector lift(const SignVector& v, std::size_t original_size) const;
};

// M/X. Throws DomainError if X is not a flat.
Contraction contraction(const OrientedMatroid& m, ElementSet x);

struct Simplification {
    OrientedMatroid om;
    std::vector<int> representative;  // new coordinate -> original element (smallest of its class)
    std::vector<int> class_of;        // original element -> new coordinate, or -1 for loops
    std::vector<int> orientation;     // original element -> +1/-1 relative to its representative
    SignVector compress(const SignVector& v) const;
    SignVector expand(const SignVector& v, std::size_t original_size) const;
};

// Removes loops and merges parallel classes into their smallest element.
Simplification simplify(const OrientedMatroid& m);

struct FacePoset {
    FinitePoset poset;                  // element i is covector i of the matroid
    std::vector<SignVector> covectors;  // same indexing
};

// F(M), labels are sign strings.
FacePoset face_poset(const OrientedMatroid& m);

}  // namespace omorse
