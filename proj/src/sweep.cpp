#include "cpic/sweep.hpp"

#include <algorithm>
#include <map>

#include "cpic/errors.hpp"
#include "cpic/inertia.hpp"
#include "cpic/repn.hpp"

namespace cpic {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Series-reduced tree on k leaves; depth placeholders are the level.
ClusterPicture::Node random_tree(std::mt19937_64& rng, std::size_t k, long level) {
    ClusterPicture::Node node;
    if (k == 1) return node;
    node.depth = Rational(level);
    std::size_t parts = uniform(rng, 2, k);
    // Random composition of k into `parts` positive pieces.
    std::vector<std::size_t> cuts;
    std::vector<std::size_t> pool(k - 1);
    for (std::size_t i = 0; i < k - 1; ++i) pool[i] = i + 1;
    std::shuffle(pool.begin(), pool.end(), rng);
    cuts.assign(pool.begin(), pool.begin() + (parts - 1));
    std::sort(cuts.begin(), cuts.end());
    std::size_t prev = 0;
    cuts.push_back(k);
    for (auto c : cuts) {
        node.children.push_back(random_tree(rng, c - prev, level + 1));
        prev = c;
    }
    return node;
}

std::string cluster_name(const ClusterPicture& pic, ClusterId s) {
    std::string out = "{";
    for (std::size_t i = 0; i < pic[s].leaves.size(); ++i) {
        if (i) out += ",";
        out += "r" + std::to_string(pic[s].leaves[i] + 1);
    }
    return out + "}";
}

}  // namespace

const std::vector<std::string>& corpus_pictures() {
    static const std::vector<std::string> pics = {
        "((r r r r)4/9 (r r r r)4/9 (r r r r)4/9 (r r r r)1/2)1/3",
        "(((r r r)4/3 (r r r)4/3)3/4 ((r r r)4/3 (r r r)4/3)3/4)1/2",
        "(r r (r r r)2/3)1/2",
        "(r r r)1/2",
        "(r r r)0",
        "(r r r)1",
        "(r r r)1/3",
        "(r r r)2/3",
        "(r r r)4/3",
        "(r r r)5/3",
        "(r r r)3/2",
        "(r r r)-7/3",
        "((r r)1 r)0",
        "((r r)3 r)1",
        "((r r)1/2 (r r)1/2 r)-1/2",
        "(r r r r r)0",
        "(r r r r r)2/5",
        "((r r r)1 (r r r)1)1/2",
        "((r r r r)5/4 (r r)3/2)1",
    };
    return pics;
}

ClusterPicture random_tame_picture(std::mt19937_64& rng, std::size_t max_roots, const Int& max_order) {
    if (max_roots < 3) throw InputError("max roots must be at least 3");
    for (;;) {
        std::size_t n = uniform(rng, 3, max_roots);
        ClusterPicture shape = ClusterPicture::from_tree(random_tree(rng, n, 0));
        std::vector<TameAction> actions;
        try {
            actions = enumerate_actions(shape, 5000);
        } catch (const InputError&) {
            continue;
        }
        std::erase_if(actions, [&](const TameAction& a) { return a.order > max_order; });
        if (actions.empty()) continue;
        // Uniform over group orders first; small orders dominate the raw list.
        std::vector<Int> orders;
        for (const auto& a : actions)
            if (std::find(orders.begin(), orders.end(), a.order) == orders.end()) orders.push_back(a.order);
        Int order = orders[uniform(rng, 0, orders.size() - 1)];
        std::erase_if(actions, [&](const TameAction& a) { return a.order != order; });
        const TameAction& action = actions[uniform(rng, 0, actions.size() - 1)];
        auto dc = enumerate_denominators(shape, action);
        if (dc.tuples.empty()) continue;
        const auto& tuple = dc.tuples[uniform(rng, 0, dc.tuples.size() - 1)];

        std::map<ClusterId, Rational> base;
        for (std::size_t i = 0; i < dc.representatives.size(); ++i) {
            const Int& b = tuple[i];
            std::vector<Int> nums;
            for (Int a = 0; a < 2 * b; ++a)
                if (gcd(a, b) == 1) nums.push_back(a);
            Rational d(nums[uniform(rng, 0, nums.size() - 1)], b);
            ClusterId s = dc.representatives[i];
            // one offset per orbit
            d += Rational(2 * static_cast<long>(uniform(rng, 0, 1)));
            if (s == shape.top()) d -= 2;
            ClusterId t = s;
            do {
                base[t] = d;
                t = *cluster_image(shape, action.generator, t);
            } while (t != s);
        }
        std::vector<Rational> depth(shape.cluster_count());
        for (auto s : shape.proper_clusters()) {
            Rational d = base.at(s);
            if (auto par = shape.parent(s))
                while (d <= depth[*par]) d += 2;
            depth[s] = d;
        }
        return shape.with_depths(depth);
    }
}

void sweep_picture(const ClusterPicture& pic, SweepReport& report) {
    std::string text = format_picture(pic);
    try {
        auto found = find_action(pic);
        if (!found.action) {
            report.errors.push_back(text + ": no action: " + found.failure);
            return;
        }
        const TameAction& action = *found.action;
        report.largest_order = std::max(report.largest_order, action.order);
        report.largest_roots = std::max(report.largest_roots, pic.leaf_count());
        for (auto s : representative_clusters(pic, action)) {
            RhoSum formula = ind_V(pic, action, s);
            std::vector<Int> units = {1};
            Int t = gamma_order(pic, action, s);
            if (t > 2) units.push_back(t - 1);
            for (const auto& u : units) {
                RhoSum oracle = oracle_ind_V(pic, action, s, std::nullopt, u);
                ++report.clusters;
                if (!(formula == oracle))
                    report.mismatches.push_back({text, cluster_name(pic, s), formula.str(), oracle.str()});
            }
        }
        if (pic.leaf_count() >= 3) {
            InertiaRep rep = assemble_H1(pic, action);
            Rational dim = rep.h1_ab.dim() + Rational(2) * rep.h1_t.dim();
            Rational expected(2 * static_cast<long>((pic.leaf_count() - 1) / 2));
            ++report.dimension_checks;
            if (dim != expected)
                report.dimension_failures.push_back(text + ": dimension " + dim.str() + ", expected " +
                                                    expected.str());
        }
    } catch (const Error& e) {
        report.errors.push_back(text + ": " + e.what());
    }
}

SweepReport oracle_sweep(const SweepOptions& opts) {
    SweepReport report;
    report.seed = opts.seed;
    if (opts.include_corpus) {
        for (const auto& text : corpus_pictures()) {
            sweep_picture(parse_picture(text), report);
            ++report.corpus;
        }
    }
    std::mt19937_64 rng(opts.seed);
    for (std::size_t i = 0; i < opts.count; ++i) {
        sweep_picture(random_tame_picture(rng, opts.max_roots, opts.max_order), report);
        ++report.random;
    }
    return report;
}

nlohmann::json sweep_to_json(const SweepReport& r) {
    nlohmann::json mismatches = nlohmann::json::array();
    for (const auto& m : r.mismatches)
        mismatches.push_back({{"picture", m.picture}, {"cluster", m.cluster}, {"formula", m.formula},
                              {"oracle", m.oracle}});
    return {{"seed", r.seed},
            {"corpus_pictures", r.corpus},
            {"random_pictures", r.random},
            {"comparisons", r.clusters},
            {"dimension_checks", r.dimension_checks},
            {"largest_order", r.largest_order.get_str()},
            {"largest_roots", r.largest_roots},
            {"mismatches", mismatches},
            {"dimension_failures", r.dimension_failures},
            {"errors", r.errors},
            {"ok", r.ok()}};
}

}  // namespace cpic
