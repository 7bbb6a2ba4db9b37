#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cpic/numbers.hpp"

namespace cpic {

// Clusters are addressed by index. Leaves 0..n-1 are the singletons; proper
// clusters follow in preorder, the top cluster first.
using ClusterId = std::size_t;

struct Cluster {
    std::vector<std::size_t> leaves;  // increasing
    std::vector<ClusterId> children;  // display order
    std::optional<ClusterId> parent;
    Rational depth;                   // proper clusters only
    std::size_t level = 0;            // distance from the top cluster
};

// A proper cluster given by its leaf set and depth.
struct ClusterSpec {
    std::vector<std::size_t> members;
    Rational depth;
};

class ClusterPicture {
public:
    // Nested description used by the parser and by code that builds pictures.
    struct Node {
        std::vector<Node> children;  // empty for a leaf
        Rational depth;
        std::string label;
        bool is_leaf() const { return children.empty(); }
    };

    // Leaves are numbered in left-to-right order.
    static ClusterPicture from_tree(const Node& root);
    // Singletons are implicit; the full leaf set must be among the specs.
    static ClusterPicture from_sets(std::size_t leaf_count, std::vector<ClusterSpec> proper,
                                    std::vector<std::string> labels = {});

    std::size_t leaf_count() const { return leaf_count_; }
    std::size_t cluster_count() const { return clusters_.size(); }
    ClusterId top() const { return leaf_count_; }
    const Cluster& operator[](ClusterId s) const { return clusters_.at(s); }

    bool is_proper(ClusterId s) const { return s >= leaf_count_; }
    std::size_t size(ClusterId s) const { return clusters_.at(s).leaves.size(); }
    const Rational& depth(ClusterId s) const;
    std::optional<ClusterId> parent(ClusterId s) const { return clusters_.at(s).parent; }
    const std::vector<ClusterId>& children(ClusterId s) const { return clusters_.at(s).children; }
    const std::string& leaf_label(std::size_t leaf) const { return labels_.at(leaf); }

    // Proper clusters in preorder.
    std::vector<ClusterId> proper_clusters() const;
    bool contains(ClusterId s, std::size_t leaf) const;
    // Smallest cluster containing both.
    ClusterId wedge(ClusterId a, ClusterId b) const;
    // The cluster whose leaf set is exactly `leaves`, if any.
    std::optional<ClusterId> find(const std::vector<std::size_t>& leaves) const;
    // Same tree with new depths for proper clusters (indexed by ClusterId).
    ClusterPicture with_depths(const std::vector<Rational>& depths) const;
    std::vector<ClusterSpec> specs() const;

private:
    std::size_t leaf_count_ = 0;
    std::vector<Cluster> clusters_;
    std::vector<std::string> labels_;
};

ClusterPicture parse_picture(std::string_view text);
std::string format_picture(const ClusterPicture& pic);

nlohmann::json picture_to_json(const ClusterPicture& pic);
ClusterPicture picture_from_json(const nlohmann::json& j);

// Sum over leaves outside s of the depth of the smallest cluster containing the leaf and s.
Rational mu(const ClusterPicture& pic, ClusterId s);
// d_s - d_parent, or d_s for the top cluster.
Rational relative_depth(const ClusterPicture& pic, ClusterId s);
std::vector<ClusterId> odd_children(const ClusterPicture& pic, ClusterId s);
bool is_odd(const ClusterPicture& pic, ClusterId s);
bool is_ubereven(const ClusterPicture& pic, ClusterId s);

// Canonical string of the subtree at s: children sorted by (size, depth, string).
// Without depths this is the shape of the subtree.
std::string canonical_form(const ClusterPicture& pic, ClusterId s, bool with_depths = true);
std::vector<std::string> canonical_forms(const ClusterPicture& pic, bool with_depths = true);
// Children of s in canonical order; ties keep display order.
std::vector<ClusterId> canonical_children(const ClusterPicture& pic, ClusterId s,
                                         const std::vector<std::string>& forms, bool with_depths = true);
// Leaves of s in canonical traversal order.
std::vector<std::size_t> canonical_leaf_order(const ClusterPicture& pic, ClusterId s,
                                              bool with_depths = true);
std::vector<std::size_t> canonical_leaf_order(const ClusterPicture& pic, ClusterId s,
                                              const std::vector<std::string>& forms, bool with_depths = true);

// A depth-preserving leaf bijection a -> b inducing a bijection on clusters.
std::optional<std::vector<std::size_t>> isomorphic(const ClusterPicture& a, const ClusterPicture& b);

}  // namespace cpic
