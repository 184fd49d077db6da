#pragma once

#include <map>
#include <string>
#include <vector>

#include "omorse/arrangement.hpp"
#include "omorse/oriented_matroid.hpp"
#include "omorse/salvetti.hpp"

namespace omorse {

// Minimal dependent sets, by increasing size then value. n <= 16.
std::vector<ElementSet> circuits(const Arrangement& a);
std::vector<ElementSet> circuits(const OrientedMatroid& m);

// Subsets containing no circuit minus its earliest element (earliest in `ordering`).
std::vector<ElementSet> nbc_sets(const std::vector<ElementSet>& circuits, std::size_t n, const std::vector<int>& ordering);
std::vector<ElementSet> nbc_complex(const Arrangement& a, const std::vector<int>& ordering);

struct EtaTable {
    SignVector base;
    std::vector<int> ordering;
    std::map<SignVector, ElementSet> eta;  // hyperplane sets in original indices
    ElementSet of(const SignVector& c) const;
};

struct RestrictionCheck {
    bool ok = true;
    std::size_t checked = 0;  // cut chambers compared over all recursion levels
    std::string witness;
};

// Recursion over deletion and restriction of the last hyperplane of the
// ordering. Throws DomainError unless the ordering has the cut property
// for `base`; TheoremViolation "cut_restriction" when the last hyperplane
// of some sub-arrangement met in the recursion is not a wall of that
// level's base chamber; "jobij" unless eta is a bijection onto nbc
// sets with eta(B) empty. `restriction` (optional) collects the intersection
// lemma comparisons made at every level.
EtaTable eta(const Arrangement& a, const SignVector& base, const std::vector<int>& ordering,
             RestrictionCheck* restriction = nullptr);

RestrictionCheck verify_restriction_lemma(const Arrangement& a, const SignVector& base, const std::vector<int>& ordering);

struct CorrespRow {
    SignVector tope;
    std::vector<int> sigma;
    ElementSet eta = 0;
    ElementSet eta_flat = 0;  // closure of eta(C)
    ElementSet xc = 0;
    bool equal = false;
};

// X_C (lex extension) against the flat spanned by eta(C). Throws
// TheoremViolation "corresp" on the first mismatch unless `report_only`.
std::vector<CorrespRow> verify_corresp(const Arrangement& a, const SignVector& base, const std::vector<int>& ordering,
                                       bool report_only = false);

// <F, C> with F = C zeroed on the flat of eta(C), one per chamber in lex
// order. With `check`, compared with the patchwork matching's critical cells.
std::vector<SalvettiCell> critical_cells_via_nbc(const Arrangement& a, const SignVector& base,
                                                 const std::vector<int>& ordering, bool check = true);

struct LexCompatibility {
    bool deletion = true;     // order pulled back to A' is lex on A'
    bool restriction = true;  // order pulled back to A'' is lex on A''
};
// Compatibility of the lex extension with deleting and restricting to the last hyperplane.
LexCompatibility lex_compatibility(const Arrangement& a, const SignVector& base, const std::vector<int>& ordering);

}  // namespace omorse
