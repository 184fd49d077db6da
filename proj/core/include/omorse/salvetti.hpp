#pragma once

#include <string>
#include <map>
#include <utility>
#include <vector>

#include "omorse/oriented_matroid.hpp"
#include "omorse/poset.hpp"
#include "omorse/shelling.hpp"
#include "omorse/zonotope.hpp"

namespace omorse {

struct SalvettiCell {
    SignVector face;
    SignVector tope;
    std::string label() const { return face.str() + "|" + tope.str(); }
};

struct SalvettiComplex {
    std::vector<SalvettiCell> cells;  // by face (canonical), then tope
    std::vector<int> dim;             // rank of |F|; vertices are <T,T>
    FinitePoset poset;                // cells first, then the optional bottom
    int bottom = -1;
    FacePoset faces;

    int index_of(const SignVector& face, const SignVector& tope) const;
    std::size_t cell_count() const { return cells.size(); }

    std::map<std::pair<SignVector, SignVector>, int> lookup;
};

// All <F,T> with F <= T, ordered by <F,T> < <F',T'> iff F > F' and T = F o T'.
SalvettiComplex build_salvetti(const OrientedMatroid& m, bool with_bottom = false);

// Flats X with X meeting S(C,K) for every K before C in the extension.
std::vector<ElementSet> j_set(const OrientedMatroid& m, const TopeOrder& extension, const SignVector& c);
// min J(C); asserts J(C) is the principal upper ideal it generates.
ElementSet compute_xc(const OrientedMatroid& m, const TopeOrder& extension, const SignVector& c);
// Independent characterisation by the two conditions of the technical lemma.
ElementSet xc_by_conditions(const OrientedMatroid& m, const TopeOrder& extension, const SignVector& c);
// C with the coordinates of X zeroed; asserts it is a covector.
SignVector distinguished_face(const OrientedMatroid& m, const SignVector& c, ElementSet x);

struct Stratum {
    SignVector tope;
    ElementSet flat = 0;  // X_C as a zero set
    int codim = 0;
    SignVector face;      // F_C
    std::vector<int> cells;
};

struct Stratification {
    std::vector<Stratum> strata;  // extension order
    std::vector<int> stratum_of;  // per cell
};

// N(C) = cells first reached by C. With `check`, each stratum is compared with
// the opposite face poset of M/X_C (TheoremViolation "contr" on mismatch).
Stratification stratify(const OrientedMatroid& m, const SalvettiComplex& s, const TopeOrder& extension,
                        bool check = true);

struct SalvettiMatching {
    Matching matching;
    std::vector<CriticalCell> critical;  // one per stratum, extension order; dim = cell dimension
};

// Per stratum: matching of F(M/X_C) with base -C, transported to N(C) and
// pasted. Asserts acyclicity and one critical cell <F_C, C> per stratum.
SalvettiMatching patchwork_matching(const OrientedMatroid& m, const SalvettiComplex& s, const Stratification& st);

std::string salvetti_json(const SalvettiComplex& s, const Stratification* st = nullptr,
                          const SalvettiMatching* sm = nullptr);

}  // namespace omorse
