#pragma once

#include <vector>

#include <json.hpp>

#include "cpic/cluster.hpp"
#include "cpic/inertia.hpp"
#include "cpic/numbers.hpp"
#include "cpic/repn.hpp"

namespace cpic {

// Sign attached to characters of order e for residue field size q.
int w_factor(const Int& q, const Int& e);

// Parity of the number of quadratic characters in the toric part, read off the depths.
int toric_quadratic_parity(const ClusterPicture& pic, const TameAction& action);

struct RootFactor {
    Int e;
    int value = 1;
    Int exponent;
    bool toric = false;  // the quadratic toric factor rather than a character pair count
};

struct RootNumberResult {
    int sign = 1;              // product of the traced factors
    bool ambiguous = false;    // the split/nonsplit sign is not determined by the picture
    std::vector<RootFactor> factors;
};

// Pair counts per character order in the abelian part.
std::vector<std::pair<Int, Int>> pair_counts(const RhoSum& ab);

RootNumberResult root_number(const InertiaRep& rep, const Int& q, int toric_parity);
nlohmann::json root_number_to_json(const RootNumberResult& r);

}  // namespace cpic
