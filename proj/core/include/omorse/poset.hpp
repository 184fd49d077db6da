#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace omorse {

using Bitset = boost::dynamic_bitset<>;
// A permutation of poset element indices.
using LinearOrder = std::vector<int>;

class FinitePoset {
public:
    FinitePoset() = default;
    // `covers` holds (upper, lower) index pairs. Checks acyclicity and
    // duplicate labels; transitive covers are rejected by validate().
    FinitePoset(std::vector<std::string> labels, std::vector<std::pair<int, int>> covers);

    // Builds covers from a strict order predicate by transitive reduction (O(N^3)).
    static FinitePoset from_relation(std::vector<std::string> labels,
                                     const std::function<bool(int, int)>& less);
    // Lines "p > q" (q covered by p), '#' comments; labels in order of first appearance.
    static FinitePoset parse(std::istream& in);
    static FinitePoset load(const std::string& path);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(int p) const { return labels_[static_cast<std::size_t>(p)]; }
    const std::vector<std::string>& labels() const { return labels_; }
    int index_of(const std::string& label) const;
    std::optional<int> find(const std::string& label) const;

    // Elements covered by p, ascending index.
    const std::vector<int>& coatoms(int p) const { return down_[static_cast<std::size_t>(p)]; }
    // Elements covering p, ascending index.
    const std::vector<int>& parents(int p) const { return up_[static_cast<std::size_t>(p)]; }
    bool covers(int upper, int lower) const;
    std::vector<std::pair<int, int>> cover_pairs() const;

    std::vector<int> maximal() const;
    std::vector<int> minimal() const;
    std::optional<int> bottom() const;

    // Reachability, computed lazily on first use.
    bool less(int p, int q) const;
    bool leq(int p, int q) const { return p == q || less(p, q); }
    // {x : x <= p}.
    const Bitset& down_closed(int p) const;

    // Throws StructuralError if some cover is implied by a longer chain.
    void validate() const;

    FinitePoset opposite() const;
    // Induced subposet on `keep` (covers recomputed by reduction of the induced order).
    FinitePoset induced(const std::vector<int>& keep) const;

private:
    void ensure_reach() const;

    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> down_;
    std::vector<std::vector<int>> up_;
    mutable std::shared_ptr<std::vector<Bitset>> reach_;
};

struct Heights {
    std::vector<int> h;
    int height = 0;  // h(P)
    // levels[i] = P_i = {p : h(p) = h(P) - i}, ascending index.
    std::vector<std::vector<int>> levels;
    int level_of(int p) const { return height - h[static_cast<std::size_t>(p)]; }
};

// Throws StructuralError naming a witness if some lower ideal isn't graded.
Heights heights(const FinitePoset& p);
bool is_locally_ranked(const FinitePoset& p);

class Matching {
public:
    Matching() = default;
    explicit Matching(std::size_t n) : mate_(n, -1) {}
    // Throws StructuralError if either element is already matched.
    void add(int upper, int lower);
    bool matched(int p) const { return mate_[static_cast<std::size_t>(p)] >= 0; }
    int mate(int p) const { return mate_[static_cast<std::size_t>(p)]; }
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    std::size_t universe() const { return mate_.size(); }
    std::vector<int> unmatched() const;

private:
    std::vector<int> mate_;
    std::vector<std::pair<int, int>> pairs_;
};

// Throws StructuralError unless every pair is a cover of `p`.
void check_matching(const Matching& m, const FinitePoset& p);

struct AcyclicityResult {
    bool acyclic = true;
    // On failure: the alternating cycle q1, p1, q2, p2, ... (matched pairs (p_i, q_i)
    // upward, then down along a cover). Empty when acyclic.
    std::vector<int> cycle;
};
AcyclicityResult is_acyclic(const Matching& m, const FinitePoset& p);

// A linear extension (smaller elements first) in which each matched pair
// (upper p, lower q) appears as q immediately followed by p. Empty if none exists.
LinearOrder adjacent_linear_extension(const Matching& m, const FinitePoset& p);
bool is_linear_extension(const FinitePoset& p, const LinearOrder& order);

// All linear extensions, lexicographically by index; stops after `limit`.
std::vector<LinearOrder> linear_extensions(const FinitePoset& p, std::size_t limit = 100000);
LinearOrder random_linear_extension(const FinitePoset& p, std::mt19937_64& rng);

// One interval [0, top] of a recursive coatom ordering, with the order on coat(top).
// top == -1 stands for the virtual top element above all maximal elements.
struct RcoFrame {
    int top = -1;
    std::vector<int> order;
    std::string key;
    int context = -1;  // opaque to the checker; sources may use it
};

class OrderingSource {
public:
    virtual ~OrderingSource() = default;
    virtual RcoFrame root() = 0;
    // Frame for [0, coatom] inside `parent`; `prefix` is the set of coatoms of
    // coatom that must come first (those shared with earlier siblings).
    virtual RcoFrame child(const RcoFrame& parent, int coatom, const std::vector<int>& prefix) = 0;
};

// Context-free source: one fixed coatom order per element.
class MapOrderingSource : public OrderingSource {
public:
    MapOrderingSource(LinearOrder top_order, std::unordered_map<int, LinearOrder> orders)
        : top_(std::move(top_order)), orders_(std::move(orders)) {}
    RcoFrame root() override;
    RcoFrame child(const RcoFrame& parent, int coatom, const std::vector<int>& prefix) override;

private:
    LinearOrder top_;
    std::unordered_map<int, LinearOrder> orders_;
};

struct RcoResult {
    bool ok = true;
    int condition = 0;        // 1 or 2 on failure
    std::vector<int> chain;   // tops of the nested intervals down to the failure
    std::vector<int> witness; // (p, q, y) for condition 2; offending coatom for condition 1
    std::string message;
};

// Checks Definition conditions (1) and (2) on every interval reached.
// Requires a unique minimum. Throws StructuralError for malformed frames.
RcoResult verify_rco(const FinitePoset& p, OrderingSource& source);

// Every length-2 interval has four elements and lower ideals are graded.
// Without a unique minimum a virtual one is placed below the minimal elements.
bool is_cw_poset(const FinitePoset& p);

// JSON: {"pairs": [[upper, lower], ...], "critical": [...]} with labels.
std::string matching_json(const Matching& m, const FinitePoset& p);

}  // namespace omorse
