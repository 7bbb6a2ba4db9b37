#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpic/cluster.hpp"
#include "cpic/numbers.hpp"

namespace cpic {

// Fixed pictures exercised by every sweep.
const std::vector<std::string>& corpus_pictures();

// A random picture of polynomial type: random tree, random action on it,
// random admissible denominators and numerators. Group order <= max_order.
ClusterPicture random_tame_picture(std::mt19937_64& rng, std::size_t max_roots, const Int& max_order);

struct SweepMismatch {
    std::string picture;
    std::string cluster;
    std::string formula;
    std::string oracle;
};

struct SweepReport {
    std::uint64_t seed = 0;
    std::size_t corpus = 0;
    std::size_t random = 0;
    std::size_t clusters = 0;       // ind_V comparisons
    std::size_t dimension_checks = 0;
    Int largest_order = 1;
    std::size_t largest_roots = 0;
    std::vector<SweepMismatch> mismatches;
    std::vector<std::string> dimension_failures;
    std::vector<std::string> errors;  // pictures that threw

    bool ok() const { return mismatches.empty() && dimension_failures.empty() && errors.empty(); }
};

struct SweepOptions {
    std::uint64_t seed = 20240611;
    std::size_t count = 500;
    std::size_t max_roots = 12;
    Int max_order = 60;
    bool include_corpus = true;
};

// Compares ind_V with the character oracle on every orbit representative
// and checks dim H1_ab + 2 dim H1_t = 2g.
void sweep_picture(const ClusterPicture& pic, SweepReport& report);
SweepReport oracle_sweep(const SweepOptions& opts);
nlohmann::json sweep_to_json(const SweepReport& r);

}  // namespace cpic
