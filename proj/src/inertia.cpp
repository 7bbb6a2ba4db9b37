#include "cpic/inertia.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "cpic/errors.hpp"

namespace cpic {

Permutation compose(const Permutation& outer, const Permutation& inner) {
    Permutation out(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer.at(inner[i]);
    return out;
}

std::vector<std::vector<std::size_t>> cycles(const Permutation& perm) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::vector<std::size_t> cyc;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            cyc.push_back(j);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

Permutation perm_power(const Permutation& perm, const Int& k) {
    Permutation out(perm.size());
    for (const auto& cyc : cycles(perm)) {
        Int len = static_cast<unsigned long>(cyc.size());
        Int shift = k % len;
        if (shift < 0) shift += len;
        std::size_t s = to_ulong(shift);
        for (std::size_t i = 0; i < cyc.size(); ++i) out[cyc[i]] = cyc[(i + s) % cyc.size()];
    }
    return out;
}

std::string format_cycles(const Permutation& perm) {
    std::string out;
    for (const auto& cyc : cycles(perm)) {
        if (cyc.size() < 2) continue;
        out += "(";
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            if (i) out += ",";
            out += "r" + std::to_string(cyc[i] + 1);
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

Int perm_order(const Permutation& perm) {
    Int e = 1;
    for (const auto& cyc : cycles(perm)) e = lcm(e, Int(static_cast<unsigned long>(cyc.size())));
    return e;
}

std::optional<ClusterId> cluster_image(const ClusterPicture& pic, const Permutation& perm, ClusterId s) {
    std::vector<std::size_t> img;
    for (auto r : pic[s].leaves) img.push_back(perm.at(r));
    return pic.find(img);
}

TameAction describe_action(const ClusterPicture& pic, const Permutation& generator) {
    TameAction act;
    act.generator = generator;
    act.order = perm_order(generator);
    act.clusters.resize(pic.cluster_count());
    std::map<Int, Permutation> powers;
    for (ClusterId s = 0; s < pic.cluster_count(); ++s) {
        unsigned long len = 0;
        ClusterId t = s;
        do {
            auto img = cluster_image(pic, generator, t);
            if (!img) throw InputError("generator does not map clusters to clusters");
            t = *img;
            ++len;
        } while (t != s);
        act.clusters[s].stab_index = len;
        if (!pic.is_proper(s)) continue;

        auto it = powers.find(act.clusters[s].stab_index);
        if (it == powers.end()) it = powers.emplace(act.clusters[s].stab_index,
                                                    perm_power(generator, act.clusters[s].stab_index)).first;
        const Permutation& stab = it->second;
        const auto& kids = pic.children(s);
        std::vector<ClusterId> fixed;
        std::vector<unsigned long> lens;
        std::vector<bool> done(kids.size(), false);
        for (std::size_t i = 0; i < kids.size(); ++i) {
            if (done[i]) continue;
            unsigned long l = 0;
            ClusterId c = kids[i];
            do {
                auto pos = std::find(kids.begin(), kids.end(), c) - kids.begin();
                done[pos] = true;
                c = *cluster_image(pic, stab, c);
                ++l;
            } while (c != kids[i]);
            if (l == 1) fixed.push_back(kids[i]);
            lens.push_back(l);
        }
        auto& d = act.clusters[s];
        if (fixed.size() == 1) {
            d.orphan = fixed.front();
            lens.erase(std::find(lens.begin(), lens.end(), 1UL));
        }
        bool even = std::all_of(lens.begin(), lens.end(), [&](unsigned long l) { return l == lens.front(); });
        d.child_orbit_len = (even && !lens.empty()) ? Int(lens.front()) : Int(0);
    }
    return act;
}

Int required_order(const ClusterPicture& pic) {
    Int e = 1;
    for (auto s : pic.proper_clusters()) e = lcm(e, denom(pic.depth(s)));
    return e;
}

std::vector<std::pair<ClusterId, ClusterId>> orphans(const ClusterPicture& pic, const TameAction& action) {
    std::vector<std::pair<ClusterId, ClusterId>> out;
    for (auto s : pic.proper_clusters())
        if (action[s].orphan) out.emplace_back(s, *action[s].orphan);
    return out;
}

namespace {

// How the children of one cluster split into orbits under its stabilizer.
struct ChildPlan {
    std::optional<ClusterId> orphan;
    std::vector<std::vector<ClusterId>> orbits;  // each of length L, excluding the orphan
};

std::optional<ChildPlan> plan_children(const ClusterPicture& pic, ClusterId s, std::size_t L,
                                       const std::vector<std::string>& forms, std::string* why) {
    const auto& kids = pic.children(s);
    std::vector<std::vector<ClusterId>> classes;
    std::map<std::string, std::size_t> index;
    for (auto c : kids) {
        auto [it, fresh] = index.emplace(forms[c], classes.size());
        if (fresh) classes.emplace_back();
        classes[it->second].push_back(c);
    }
    auto fail = [&](const std::string& msg) -> std::optional<ChildPlan> {
        if (why) *why = msg;
        return std::nullopt;
    };
    ChildPlan plan;
    std::size_t k = kids.size();
    if (L > 1) {
        if (k % L == 1) {
            std::vector<std::size_t> odd;
            for (std::size_t i = 0; i < classes.size(); ++i)
                if (classes[i].size() % L == 1) odd.push_back(i);
            if (odd.size() != 1) return fail("no single class of children can supply the orphan");
            plan.orphan = classes[odd.front()].back();
            classes[odd.front()].pop_back();
        } else if (k % L != 0) {
            return fail(std::to_string(k) + " children cannot form orbits of length " + std::to_string(L));
        }
        for (const auto& cl : classes)
            if (cl.size() % L != 0)
                return fail("children of differing shape would have to be conjugate under orbit length " +
                            std::to_string(L));
    }
    for (const auto& cl : classes)
        for (std::size_t i = 0; i < cl.size(); i += L)
            plan.orbits.emplace_back(cl.begin() + static_cast<long>(i), cl.begin() + static_cast<long>(i + L));
    return plan;
}

// Writes into sigma the action on one orbit A0..A_{L-1}, given the stabilizer action tau on A0.
void realize_orbit(const ClusterPicture& pic, const std::vector<ClusterId>& orbit, const Permutation& tau,
                   const std::vector<std::string>& forms, bool with_depths, Permutation& sigma) {
    std::vector<std::vector<std::size_t>> order;
    for (auto a : orbit) order.push_back(canonical_leaf_order(pic, a, forms, with_depths));
    std::size_t L = orbit.size();
    for (std::size_t j = 0; j < order[0].size(); ++j) {
        for (std::size_t i = 0; i + 1 < L; ++i) sigma[order[i][j]] = order[i + 1][j];
        sigma[order[L - 1][j]] = tau[order[0][j]];
    }
}

std::string describe_cluster(const ClusterPicture& pic, ClusterId s) {
    std::string out = "{";
    for (std::size_t i = 0; i < pic[s].leaves.size(); ++i) {
        if (i) out += ",";
        out += "r" + std::to_string(pic[s].leaves[i] + 1);
    }
    return out + "}";
}

}  // namespace

ActionSearch find_action(const ClusterPicture& pic, const std::optional<Int>& p) {
    ActionSearch res;
    Int e = required_order(pic);
    if (p) {
        if (*p < 3 || !is_prime(*p)) throw InputError("p must be an odd prime, got " + p->get_str());
        if (e % *p == 0)
            throw WildError("p = " + p->get_str() + " divides the inertia order " + e.get_str() + " (wild)");
        if (*p <= static_cast<unsigned long>(pic.leaf_count()))
            res.warnings.push_back("p = " + p->get_str() + " does not exceed the number of roots; the residue field "
                                   "may be too small for a witness polynomial");
    }
    auto forms = canonical_forms(pic, true);
    std::function<std::optional<Permutation>(ClusterId, const Int&)> build =
        [&](ClusterId s, const Int& n) -> std::optional<Permutation> {
        Permutation sigma(pic.leaf_count());
        std::iota(sigma.begin(), sigma.end(), 0);
        if (!pic.is_proper(s)) return sigma;
        Int L = denom(pic.depth(s) * Rational(n));
        if (L > static_cast<unsigned long>(pic.children(s).size())) {
            res.failure = "cluster " + describe_cluster(pic, s) + ": orbit length " + L.get_str() +
                          " exceeds its number of children";
            return std::nullopt;
        }
        std::string why;
        auto plan = plan_children(pic, s, to_ulong(L), forms, &why);
        if (!plan) {
            res.failure = "cluster " + describe_cluster(pic, s) + ": " + why;
            return std::nullopt;
        }
        if (plan->orphan) {
            auto tau = build(*plan->orphan, n);
            if (!tau) return std::nullopt;
            realize_orbit(pic, {*plan->orphan}, *tau, forms, true, sigma);
        }
        for (const auto& orbit : plan->orbits) {
            auto tau = build(orbit.front(), n * L);
            if (!tau) return std::nullopt;
            realize_orbit(pic, orbit, *tau, forms, true, sigma);
        }
        return sigma;
    };
    auto gen = build(pic.top(), 1);
    if (!gen) return res;
    auto report = check_action(pic, *gen);
    if (!report.all_passed) throw IntegrityError("constructed action fails its own check");
    res.action = describe_action(pic, *gen);
    return res;
}

ActionReport check_action(const ClusterPicture& pic, const Permutation& generator, DepthMode mode) {
    ActionReport rep;
    auto add = [&](ActionCheck c) {
        if (!c.passed) rep.all_passed = false;
        rep.checks.push_back(std::move(c));
    };
    std::size_t n = pic.leaf_count();
    {
        std::vector<bool> hit(n, false);
        bool ok = generator.size() == n;
        for (std::size_t i = 0; ok && i < n; ++i) {
            if (generator[i] >= n || hit[generator[i]]) ok = false;
            else hit[generator[i]] = true;
        }
        add({"permutation", std::nullopt, ok, "bijection of " + std::to_string(n) + " leaves",
             ok ? "bijection" : "not a bijection"});
        if (!ok) return rep;
    }
    bool auto_ok = true;
    for (auto s : pic.proper_clusters()) {
        auto img = cluster_image(pic, generator, s);
        ActionCheck c{"automorphism", s, true, "cluster of depth " + pic.depth(s).str(), ""};
        if (!img) {
            c.passed = false;
            c.actual = "image is not a cluster";
        } else if (pic.depth(*img) != pic.depth(s)) {
            c.passed = false;
            c.actual = "cluster of depth " + pic.depth(*img).str();
        } else {
            c.actual = c.expected;
        }
        if (!c.passed) {
            auto_ok = false;
            add(c);
        }
    }
    if (!auto_ok) return rep;
    add({"automorphism", std::nullopt, true, "clusters map to clusters of equal depth", "yes"});

    TameAction act = describe_action(pic, generator);
    rep.order = act.order;
    auto D = [&](ClusterId s) { return mode == DepthMode::absolute ? pic.depth(s) : relative_depth(pic, s); };

    Int want = 1;
    for (auto s : pic.proper_clusters()) want = lcm(want, denom(D(s)));
    add({"group-order", std::nullopt, want == act.order, want.get_str(), act.order.get_str()});

    std::map<Int, Permutation> powers;
    for (auto s : pic.proper_clusters()) {
        const Int& ns = act[s].stab_index;
        Int expected = denom(D(s) * Rational(ns));
        auto it = powers.find(ns);
        if (it == powers.end()) it = powers.emplace(ns, perm_power(generator, ns)).first;
        std::string actual;
        bool ok = true;
        for (auto c : pic.children(s)) {
            if (act[s].orphan && *act[s].orphan == c) continue;
            unsigned long l = 0;
            ClusterId t = c;
            do {
                t = *cluster_image(pic, it->second, t);
                ++l;
            } while (t != c);
            if (!actual.empty()) actual += ",";
            actual += std::to_string(l);
            if (expected != l) ok = false;
        }
        add({"orbit-length", s, ok, expected.get_str(), actual});
    }

    for (ClusterId s = 0; s < pic.cluster_count(); ++s) {
        if (s == pic.top()) continue;
        Int expected = 1;
        ClusterId child = s;
        for (auto a = pic.parent(s); a; child = *a, a = pic.parent(*a)) {
            bool orphan_step = act[*a].orphan && *act[*a].orphan == child;
            if (!orphan_step) expected = lcm(expected, denom(D(*a)));
        }
        add({"stabilizer-index", s, expected == act[s].stab_index, expected.get_str(),
             act[s].stab_index.get_str()});
    }
    return rep;
}

nlohmann::json report_to_json(const ClusterPicture& pic, const ActionReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        nlohmann::json j = {{"condition", c.condition}, {"passed", c.passed},
                            {"expected", c.expected}, {"actual", c.actual}};
        if (c.cluster) {
            nlohmann::json members = nlohmann::json::array();
            for (auto r : pic[*c.cluster].leaves) members.push_back(r + 1);
            j["cluster"] = members;
        }
        checks.push_back(j);
    }
    return {{"hypothesis_h", report.all_passed}, {"order", report.order.get_str()}, {"checks", checks}};
}

std::vector<TameAction> enumerate_actions(const ClusterPicture& shape, std::size_t limit) {
    auto forms = canonical_forms(shape, false);
    std::function<std::vector<Permutation>(ClusterId, const Int&)> build_all =
        [&](ClusterId s, const Int& n) -> std::vector<Permutation> {
        Permutation id(shape.leaf_count());
        std::iota(id.begin(), id.end(), 0);
        if (!shape.is_proper(s)) return {id};
        std::vector<Permutation> results;
        std::size_t k = shape.children(s).size();
        for (std::size_t L = 1; L <= k; ++L) {
            auto plan = plan_children(shape, s, L, forms, nullptr);
            if (!plan) continue;
            // Units: the orphan (stabilizer index n) then each orbit (index n*L).
            std::vector<std::vector<ClusterId>> units;
            std::vector<std::vector<Permutation>> options;
            if (plan->orphan) {
                units.push_back({*plan->orphan});
                options.push_back(build_all(*plan->orphan, n));
            }
            for (const auto& orbit : plan->orbits) {
                units.push_back(orbit);
                options.push_back(build_all(orbit.front(), n * Int(static_cast<unsigned long>(L))));
            }
            std::vector<std::size_t> pick(units.size(), 0);
            if (std::any_of(options.begin(), options.end(), [](const auto& o) { return o.empty(); })) continue;
            for (;;) {
                Permutation sigma = id;
                for (std::size_t u = 0; u < units.size(); ++u)
                    realize_orbit(shape, units[u], options[u][pick[u]], forms, false, sigma);
                results.push_back(std::move(sigma));
                if (results.size() > limit) throw InputError("action enumeration exceeds its limit");
                std::size_t u = 0;
                while (u < units.size() && ++pick[u] == options[u].size()) pick[u++] = 0;
                if (u == units.size()) break;
            }
        }
        return results;
    };
    std::vector<TameAction> out;
    for (auto& g : build_all(shape.top(), 1)) out.push_back(describe_action(shape, g));
    return out;
}

std::vector<Int> denominator_candidates(const Int& stab_index, const Int& orbit_len) {
    Int g = gcd_inf(stab_index, orbit_len);
    std::vector<Int> out;
    for (const auto& m : divisors(stab_index / g)) out.push_back(orbit_len * g * m);
    return out;
}

DenominatorCandidates enumerate_denominators(const ClusterPicture& shape, const TameAction& action) {
    DenominatorCandidates out;
    std::vector<bool> covered(shape.cluster_count(), false);
    for (auto s : shape.proper_clusters()) {
        if (covered[s]) continue;
        ClusterId t = s;
        do {
            covered[t] = true;
            t = *cluster_image(shape, action.generator, t);
        } while (t != s);
        out.representatives.push_back(s);
        if (action[s].child_orbit_len == 0) throw IntegrityError("uneven child orbits; not a valid action");
        out.candidates.push_back(denominator_candidates(action[s].stab_index, action[s].child_orbit_len));
    }
    std::vector<std::size_t> pick(out.candidates.size(), 0);
    for (;;) {
        std::vector<Int> tuple;
        Int l = 1;
        for (std::size_t i = 0; i < pick.size(); ++i) {
            tuple.push_back(out.candidates[i][pick[i]]);
            l = lcm(l, tuple.back());
        }
        if (l == action.order) out.tuples.push_back(std::move(tuple));
        std::size_t u = 0;
        while (u < pick.size() && ++pick[u] == out.candidates[u].size()) pick[u++] = 0;
        if (u == pick.size()) break;
    }
    return out;
}

}  // namespace cpic
