#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "omorse/poset.hpp"

namespace omorse {

// Supplies the order of coat(p) used when p is expanded. `parent` is the
// first parent q_p (-1 for maximal elements); `prefix` must come first.
class OrderingOracle {
public:
    virtual ~OrderingOracle() = default;
    virtual std::vector<int> order(int p, const std::vector<int>& prefix, int parent) = 0;
};

// Prefix first, then the remaining coatoms by element index.
class CanonicalOracle : public OrderingOracle {
public:
    explicit CanonicalOracle(const FinitePoset& p) : p_(p) {}
    std::vector<int> order(int p, const std::vector<int>& prefix, int parent) override;

private:
    const FinitePoset& p_;
};

// Lets verify_rco query an oracle on every interval it reaches.
class OracleSource : public OrderingSource {
public:
    OracleSource(LinearOrder top_order, OrderingOracle& oracle) : top_(std::move(top_order)), oracle_(oracle) {}
    RcoFrame root() override;
    RcoFrame child(const RcoFrame& parent, int coatom, const std::vector<int>& prefix) override;

private:
    LinearOrder top_;
    OrderingOracle& oracle_;
};

struct ShellingTypeOrdering {
    Heights heights;
    std::optional<int> bottom;            // unique minimum, if any
    std::vector<LinearOrder> levels;      // levels[i] is P_i in the order of its level
    LinearOrder global;                   // the order over all elements
    std::vector<int> pi;                  // pi[q]: last coatom of q in the next level, or -1
    std::vector<int> first_parent;        // q_p, -1 for maximal elements
    std::vector<std::vector<int>> prefix; // B_p
    std::unordered_map<int, LinearOrder> coatom_orders;  // the order of coat(p) from the oracle
    LinearOrder facet_order;              // maximal elements in the order they occur globally
    std::size_t overlaps = 0;             // new coatoms already placed by an earlier block

    std::vector<int> position_in_level() const;
    std::vector<int> position_in_global() const;
};

struct ShellingOptions {
    // Throw instead of letting the first block win when blocks overlap.
    bool strict_partition = false;
};

// Throws StructuralError on bad input, and on an oracle breaking its contract.
ShellingTypeOrdering build_shelling_type_ordering(const FinitePoset& p, const LinearOrder& top_order,
                                                  OrderingOracle& oracle, ShellingOptions options = {});

// Greedy: level by level, pair p with pi(p) when neither is taken yet.
Matching matching_from_ordering(const FinitePoset& p, const ShellingTypeOrdering& s, bool include_bottom = true);

// Facets each of whose coatoms lies below an earlier facet.
std::vector<int> homology_facets(const FinitePoset& p, const LinearOrder& facet_order);

struct CriticalCell {
    int element = -1;
    int dim = 0;  // height, shifted down by one when a bottom element is present
};

// Unmatched elements with dimensions. If `s` is given, the matching includes
// the bottom and `rco` (or a source built from the ordering) certifies a
// recursive coatom ordering of a CW poset, the critical elements are checked
// against the homology facets; a mismatch throws TheoremViolation.
std::vector<CriticalCell> critical_cells(const FinitePoset& p, const Matching& m,
                                         const ShellingTypeOrdering* s = nullptr, OrderingSource* rco = nullptr);

std::string ordering_json(const FinitePoset& p, const ShellingTypeOrdering& s);

}  // namespace omorse
