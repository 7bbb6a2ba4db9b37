#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpic/cluster.hpp"
#include "cpic/numbers.hpp"

namespace cpic {

// Leaf permutation: leaf i goes to perm[i].
using Permutation = std::vector<std::size_t>;

struct ClusterOrbitData {
    Int stab_index;                     // [C : Stab(s)], the orbit length of s
    Int child_orbit_len;                // common orbit length of non-orphan children under Stab(s); 0 if uneven
    std::optional<ClusterId> orphan;    // the unique child fixed by Stab(s)
};

// A cyclic group acting on the picture, described by its generator.
struct TameAction {
    Permutation generator;
    Int order;
    std::vector<ClusterOrbitData> clusters;  // indexed by ClusterId; proper fields unused for leaves

    const ClusterOrbitData& operator[](ClusterId s) const { return clusters.at(s); }
};

Permutation compose(const Permutation& outer, const Permutation& inner);
Permutation perm_power(const Permutation& perm, const Int& k);
std::vector<std::vector<std::size_t>> cycles(const Permutation& perm);
// "(r1,r5,r9)(r4,r8)"; fixed points omitted, "()" for the identity.
std::string format_cycles(const Permutation& perm);
Int perm_order(const Permutation& perm);

// Image of a cluster, or nothing when the leaf image is not a cluster.
std::optional<ClusterId> cluster_image(const ClusterPicture& pic, const Permutation& perm, ClusterId s);

// Orbit data read off the generator. The generator must map clusters to clusters.
TameAction describe_action(const ClusterPicture& pic, const Permutation& generator);

// lcm of depth denominators over proper clusters.
Int required_order(const ClusterPicture& pic);

struct ActionSearch {
    std::optional<TameAction> action;
    std::string failure;                // why no action exists
    std::vector<std::string> warnings;
};

// Searches for an action with the orbit, orphan and stabilizer structure.
// With a prime p, throws WildError when p divides the required order.
ActionSearch find_action(const ClusterPicture& pic, const std::optional<Int>& p = std::nullopt);

// Orphans of an action, keyed by parent cluster.
std::vector<std::pair<ClusterId, ClusterId>> orphans(const ClusterPicture& pic, const TameAction& action);

enum class DepthMode { absolute, relative };

struct ActionCheck {
    std::string condition;  // permutation | automorphism | orbit-length | stabilizer-index | group-order
    std::optional<ClusterId> cluster;
    bool passed = true;
    std::string expected;
    std::string actual;
};

struct ActionReport {
    bool all_passed = true;
    Int order = 0;
    std::vector<ActionCheck> checks;
};

// Checks a generator against the conditions; DepthMode::relative swaps in relative depths.
ActionReport check_action(const ClusterPicture& pic, const Permutation& generator,
                          DepthMode mode = DepthMode::absolute);
nlohmann::json report_to_json(const ClusterPicture& pic, const ActionReport& report);

// Every action on a shape (depths ignored), with the orphan and orbit conventions of find_action.
std::vector<TameAction> enumerate_actions(const ClusterPicture& shape, std::size_t limit = 100000);

// Denominators b with b / gcd(b, n) = orbit_len.
std::vector<Int> denominator_candidates(const Int& stab_index, const Int& orbit_len);

struct DenominatorCandidates {
    std::vector<ClusterId> representatives;  // one proper cluster per orbit, preorder
    std::vector<std::vector<Int>> candidates;
    std::vector<std::vector<Int>> tuples;    // over representatives, lcm equal to the group order
};

DenominatorCandidates enumerate_denominators(const ClusterPicture& shape, const TameAction& action);

}  // namespace cpic
