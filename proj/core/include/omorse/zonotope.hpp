#pragma once

#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "omorse/arrangement.hpp"
#include "omorse/oriented_matroid.hpp"
#include "omorse/poset.hpp"
#include "omorse/shelling.hpp"

namespace omorse {

// A total order on the topes, smallest first.
using TopeOrder = std::vector<SignVector>;

struct TopePoset {
    SignVector base;
    std::vector<SignVector> topes;  // canonical order; poset element i is topes[i]
    FinitePoset poset;
    std::vector<int> rank;  // |S(B, T)|
    int index_of(const SignVector& t) const;
};

// T1 <= T2 iff S(B,T1) within S(B,T2). Throws DomainError if B is not a tope.
TopePoset tope_poset(const OrientedMatroid& m, const SignVector& base);

// Bit i of the array is 1 iff C and B differ on ordering[i].
std::vector<int> sigma(const SignVector& c, const SignVector& base, const std::vector<int>& ordering);
TopeOrder lex_extension(const OrientedMatroid& m, const SignVector& base, const std::vector<int>& ordering);
std::vector<int> identity_ordering(std::size_t n);

bool is_linear_extension(const TopePoset& tp, const TopeOrder& order);
std::vector<TopeOrder> all_linear_extensions(const TopePoset& tp, std::size_t limit = 100000);
TopeOrder random_linear_extension(const TopePoset& tp, std::mt19937_64& rng);
// One tope per line; must list every tope once and extend the tope poset.
TopeOrder parse_extension(std::istream& in, const TopePoset& tp);

struct CutCheck {
    bool ok = true;
    int failing_position = -1;  // position j in the ordering whose hyperplane fails to cut
};

// Each ordering[j] meets the open cone where ordering[0..j-1] keep B's signs.
CutCheck cut_property_check(const Arrangement& a, const SignVector& base, const std::vector<int>& ordering);
CutCheck cut_property_check(const OrientedMatroid& m, const SignVector& base, const std::vector<int>& ordering);
// Reads a maximal chain B -> -B built greedily (smallest admissible wall first).
std::vector<int> generate_cut_ordering(const OrientedMatroid& m, const SignVector& base);

// The ordering oracle of the face poset induced by a linear extension: walls of
// each face are ordered by first crossing along a canonical chain of topes of
// the contraction at that face.
class Rem0Oracle : public OrderingOracle, public OrderingSource {
public:
    Rem0Oracle(const OrientedMatroid& m, const FacePoset& fp, SignVector base, TopeOrder extension);

    LinearOrder top_order() const;
    std::vector<int> order(int p, const std::vector<int>& prefix, int parent) override;
    RcoFrame root() override;
    RcoFrame child(const RcoFrame& parent, int coatom, const std::vector<int>& prefix) override;

    struct Chain {
        std::vector<SignVector> steps;    // covectors sharing one zero set
        std::vector<ElementSet> crossed;  // crossed[i] flips steps[i] to steps[i+1]
    };
    // from -> via -> -from, each leg crossing the smallest admissible class first.
    Chain canonical_chain(const SignVector& from, const SignVector& via) const;

private:
    std::vector<int> order_from_chain(int p, const Chain& chain, const std::vector<int>& prefix) const;
    SignVector seed_for(const Chain& parent_chain, const SignVector& parent, const SignVector& child) const;
    int chain_index(const SignVector& from, const SignVector& via);

    const OrientedMatroid& m_;
    const FacePoset& fp_;
    SignVector base_;
    TopeOrder extension_;
    std::vector<Chain> chains_;
    std::vector<int> context_of_;  // chain used when p was expanded by order()
    std::map<std::pair<SignVector, SignVector>, int> memo_;
};

struct FaceMatching {
    FacePoset faces;
    ShellingTypeOrdering ordering;
    Matching matching;
    std::vector<CriticalCell> critical;
};

// The whole pipeline on F(M). Throws InputError if M is not simple or the
// order is not a linear extension, TheoremViolation unless the matching is
// acyclic with -B as its only critical element. `verify` also runs verify_rco.
FaceMatching face_poset_matching(const OrientedMatroid& m, const SignVector& base, const TopeOrder& extension,
                                 bool verify = false);

}  // namespace omorse
