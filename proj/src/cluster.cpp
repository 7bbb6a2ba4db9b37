#include "cpic/cluster.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "cpic/errors.hpp"

namespace cpic {

namespace {

std::string describe(const std::vector<std::size_t>& leaves) {
    std::string s = "{";
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (i) s += ",";
        s += "r" + std::to_string(leaves[i] + 1);
    }
    return s + "}";
}

bool subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) ++i; else ++j;
    }
    return true;
}

}  // namespace

ClusterPicture ClusterPicture::from_sets(std::size_t leaf_count, std::vector<ClusterSpec> proper,
                                         std::vector<std::string> labels) {
    if (leaf_count < 2) throw InputError("a picture needs at least two leaves");
    if (!labels.empty() && labels.size() != leaf_count) throw InputError("label count mismatch");
    for (auto& sp : proper) {
        std::sort(sp.members.begin(), sp.members.end());
        if (std::adjacent_find(sp.members.begin(), sp.members.end()) != sp.members.end())
            throw InputError("repeated leaf in cluster " + describe(sp.members));
        if (!sp.members.empty() && sp.members.back() >= leaf_count)
            throw InputError("leaf index out of range in cluster " + describe(sp.members));
        if (sp.members.size() < 2)
            throw InputError("singleton " + describe(sp.members) + " cannot carry a depth");
    }
    // Largest first so that parents precede children.
    std::stable_sort(proper.begin(), proper.end(), [](const ClusterSpec& a, const ClusterSpec& b) {
        return a.members.size() > b.members.size();
    });
    if (proper.empty() || proper[0].members.size() != leaf_count)
        throw InputError("axiom (i): the full leaf set must be a cluster");
    for (std::size_t i = 0; i < proper.size(); ++i)
        for (std::size_t j = i + 1; j < proper.size(); ++j) {
            const auto& a = proper[i].members;
            const auto& b = proper[j].members;
            if (a == b) throw InputError("cluster " + describe(a) + " listed twice");
            if (!subset(b, a) && !disjoint(a, b))
                throw InputError("axiom (ii): clusters " + describe(a) + " and " + describe(b) +
                                 " overlap without nesting");
        }

    std::size_t k = proper.size();
    std::vector<std::optional<std::size_t>> par(k);
    for (std::size_t j = 1; j < k; ++j)
        for (std::size_t i = j; i-- > 0;)
            if (subset(proper[j].members, proper[i].members) &&
                (!par[j] || proper[i].members.size() < proper[*par[j]].members.size()))
                par[j] = i;
    for (std::size_t j = 0; j < k; ++j) {
        if (!par[j]) continue;
        const auto& s = proper[j];
        const auto& t = proper[*par[j]];
        if (!(s.depth > t.depth))
            throw InputError("axiom (iii): cluster " + describe(s.members) + " has depth " + s.depth.str() +
                             " not exceeding its parent " + describe(t.members) + " depth " + t.depth.str());
    }

    // Children of each spec (proper ones and singleton leaves), ordered by smallest leaf.
    std::vector<std::vector<std::pair<std::size_t, long>>> kids(k);  // (min leaf, spec index or -1-leaf)
    std::vector<std::size_t> leaf_parent(leaf_count, 0);
    std::vector<std::size_t> leaf_size(leaf_count, leaf_count + 1);
    for (std::size_t j = 0; j < k; ++j)
        for (auto r : proper[j].members)
            if (proper[j].members.size() < leaf_size[r]) {
                leaf_size[r] = proper[j].members.size();
                leaf_parent[r] = j;
            }
    for (std::size_t j = 1; j < k; ++j) kids[*par[j]].push_back({proper[j].members.front(), static_cast<long>(j)});
    for (std::size_t r = 0; r < leaf_count; ++r) kids[leaf_parent[r]].push_back({r, -1 - static_cast<long>(r)});
    for (auto& v : kids) std::sort(v.begin(), v.end());

    ClusterPicture pic;
    pic.leaf_count_ = leaf_count;
    pic.labels_ = labels.empty() ? std::vector<std::string>(leaf_count) : std::move(labels);
    pic.clusters_.resize(leaf_count + k);
    for (std::size_t r = 0; r < leaf_count; ++r) pic.clusters_[r].leaves = {r};

    std::size_t next = leaf_count;
    std::function<ClusterId(std::size_t, std::optional<ClusterId>, std::size_t)> place =
        [&](std::size_t j, std::optional<ClusterId> parent, std::size_t level) {
            ClusterId id = next++;
            Cluster& c = pic.clusters_[id];
            c.leaves = proper[j].members;
            c.depth = proper[j].depth;
            c.parent = parent;
            c.level = level;
            for (auto [minleaf, tag] : kids[j]) {
                ClusterId child;
                if (tag < 0) {
                    child = static_cast<ClusterId>(-1 - tag);
                    pic.clusters_[child].parent = id;
                    pic.clusters_[child].level = level + 1;
                } else {
                    child = place(static_cast<std::size_t>(tag), id, level + 1);
                }
                pic.clusters_[id].children.push_back(child);
            }
            return id;
        };
    place(0, std::nullopt, 0);
    return pic;
}

ClusterPicture ClusterPicture::from_tree(const Node& root) {
    if (root.is_leaf()) throw InputError("a picture needs a proper top cluster");
    std::vector<ClusterSpec> specs;
    std::vector<std::string> labels;
    std::function<std::vector<std::size_t>(const Node&)> walk = [&](const Node& n) {
        if (n.is_leaf()) {
            labels.push_back(n.label);
            return std::vector<std::size_t>{labels.size() - 1};
        }
        if (n.children.size() < 2)
            throw InputError("a proper cluster needs at least two children (it would coincide with its child)");
        std::vector<std::size_t> members;
        for (const auto& c : n.children) {
            auto m = walk(c);
            members.insert(members.end(), m.begin(), m.end());
        }
        specs.push_back({members, n.depth});
        return members;
    };
    walk(root);
    std::size_t n = labels.size();
    return from_sets(n, std::move(specs), std::move(labels));
}

const Rational& ClusterPicture::depth(ClusterId s) const {
    if (!is_proper(s)) throw InputError("singletons have no depth");
    return clusters_.at(s).depth;
}

std::vector<ClusterId> ClusterPicture::proper_clusters() const {
    std::vector<ClusterId> v(clusters_.size() - leaf_count_);
    std::iota(v.begin(), v.end(), leaf_count_);
    return v;
}

bool ClusterPicture::contains(ClusterId s, std::size_t leaf) const {
    const auto& l = clusters_.at(s).leaves;
    return std::binary_search(l.begin(), l.end(), leaf);
}

ClusterId ClusterPicture::wedge(ClusterId a, ClusterId b) const {
    while (clusters_.at(a).level > clusters_.at(b).level) a = *clusters_[a].parent;
    while (clusters_.at(b).level > clusters_.at(a).level) b = *clusters_[b].parent;
    while (a != b) {
        a = *clusters_[a].parent;
        b = *clusters_[b].parent;
    }
    return a;
}

std::optional<ClusterId> ClusterPicture::find(const std::vector<std::size_t>& leaves) const {
    if (leaves.empty()) return std::nullopt;
    std::vector<std::size_t> sorted = leaves;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.back() >= leaf_count_) return std::nullopt;
    ClusterId c = sorted.front();
    while (clusters_[c].leaves.size() < sorted.size()) {
        if (!clusters_[c].parent) return std::nullopt;
        c = *clusters_[c].parent;
    }
    if (clusters_[c].leaves == sorted) return c;
    return std::nullopt;
}

std::vector<ClusterSpec> ClusterPicture::specs() const {
    std::vector<ClusterSpec> out;
    for (auto s : proper_clusters()) out.push_back({clusters_[s].leaves, clusters_[s].depth});
    return out;
}

ClusterPicture ClusterPicture::with_depths(const std::vector<Rational>& depths) const {
    auto sp = specs();
    for (std::size_t i = 0; i < sp.size(); ++i) sp[i].depth = depths.at(leaf_count_ + i);
    return from_sets(leaf_count_, std::move(sp), labels_);
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view t) : t_(t) {}

    ClusterPicture::Node picture() {
        skip_ws();
        if (peek() != '(') fail("expected '('");
        auto n = cluster();
        skip_ws();
        if (pos_ != t_.size()) fail("unexpected trailing input");
        return n;
    }

private:
    char peek() const { return pos_ < t_.size() ? t_[pos_] : '\0'; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    void skip_ws() {
        while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }

    ClusterPicture::Node cluster() {
        ++pos_;  // '('
        ClusterPicture::Node n;
        skip_ws();
        n.children.push_back(item());
        for (;;) {
            std::size_t before = pos_;
            skip_ws();
            if (peek() == ')') break;
            if (before == pos_) fail("expected ' ' or ')'");
            n.children.push_back(item());
        }
        ++pos_;  // ')'
        std::size_t start = pos_;
        if (peek() == '-') ++pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '/') {
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        if (start == pos_) fail("expected a depth after ')'");
        try {
            n.depth = Rational::parse(t_.substr(start, pos_ - start));
        } catch (const InputError& e) {
            throw ParseError(e.what(), start);
        }
        return n;
    }

    ClusterPicture::Node item() {
        if (peek() == '(') return cluster();
        if (peek() != 'r') fail("expected 'r' or '('");
        ++pos_;
        ClusterPicture::Node leaf;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') leaf.label += t_[pos_++];
        return leaf;
    }

    std::string_view t_;
    std::size_t pos_ = 0;
};

}  // namespace

ClusterPicture parse_picture(std::string_view text) {
    return ClusterPicture::from_tree(Parser(text).picture());
}

std::string format_picture(const ClusterPicture& pic) {
    std::function<std::string(ClusterId)> fmt = [&](ClusterId s) {
        if (!pic.is_proper(s)) return "r" + pic.leaf_label(s);
        std::string out = "(";
        bool first = true;
        for (auto c : pic.children(s)) {
            if (!first) out += " ";
            first = false;
            out += fmt(c);
        }
        return out + ")" + pic.depth(s).str();
    };
    return fmt(pic.top());
}

nlohmann::json picture_to_json(const ClusterPicture& pic) {
    nlohmann::json cl = nlohmann::json::array();
    for (auto s : pic.proper_clusters()) {
        nlohmann::json members = nlohmann::json::array();
        for (auto r : pic[s].leaves) members.push_back(r + 1);
        cl.push_back({{"members", members}, {"depth", pic.depth(s).str()}});
    }
    return {{"leaves", pic.leaf_count()}, {"clusters", cl}};
}

ClusterPicture picture_from_json(const nlohmann::json& j) {
    try {
        std::size_t n = j.at("leaves").get<std::size_t>();
        std::vector<ClusterSpec> specs;
        for (const auto& c : j.at("clusters")) {
            ClusterSpec sp;
            for (const auto& m : c.at("members")) {
                auto r = m.get<std::size_t>();
                if (r == 0 || r > n) throw InputError("member " + std::to_string(r) + " out of range");
                sp.members.push_back(r - 1);
            }
            sp.depth = Rational::parse(c.at("depth").get<std::string>());
            specs.push_back(std::move(sp));
        }
        return ClusterPicture::from_sets(n, std::move(specs));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed picture JSON: ") + e.what());
    }
}

Rational mu(const ClusterPicture& pic, ClusterId s) {
    if (!pic.is_proper(s)) throw InputError("mu is defined for proper clusters");
    Rational total;
    for (std::size_t r = 0; r < pic.leaf_count(); ++r)
        if (!pic.contains(s, r)) total += pic.depth(pic.wedge(r, s));
    return total;
}

Rational relative_depth(const ClusterPicture& pic, ClusterId s) {
    if (!pic.is_proper(s)) throw InputError("relative depth is defined for proper clusters");
    auto p = pic.parent(s);
    return p ? pic.depth(s) - pic.depth(*p) : pic.depth(s);
}

std::vector<ClusterId> odd_children(const ClusterPicture& pic, ClusterId s) {
    std::vector<ClusterId> out;
    for (auto c : pic.children(s))
        if (pic.size(c) % 2 == 1) out.push_back(c);
    return out;
}

bool is_odd(const ClusterPicture& pic, ClusterId s) { return pic.size(s) % 2 == 1; }

bool is_ubereven(const ClusterPicture& pic, ClusterId s) {
    if (!pic.is_proper(s)) return false;
    for (auto c : pic.children(s))
        if (pic.size(c) % 2 == 1) return false;
    return true;
}

std::vector<ClusterId> canonical_children(const ClusterPicture& pic, ClusterId s,
                                         const std::vector<std::string>& forms, bool with_depths) {
    std::vector<ClusterId> kids = pic.children(s);
    std::stable_sort(kids.begin(), kids.end(), [&](ClusterId a, ClusterId b) {
        if (pic.size(a) != pic.size(b)) return pic.size(a) < pic.size(b);
        if (with_depths && pic.is_proper(a) && pic.depth(a) != pic.depth(b)) return pic.depth(a) < pic.depth(b);
        return forms[a] < forms[b];
    });
    return kids;
}

std::vector<std::string> canonical_forms(const ClusterPicture& pic, bool with_depths) {
    std::vector<std::string> forms(pic.cluster_count());
    for (std::size_t r = 0; r < pic.leaf_count(); ++r) forms[r] = "r";
    auto proper = pic.proper_clusters();
    for (auto it = proper.rbegin(); it != proper.rend(); ++it) {
        ClusterId s = *it;
        std::string out = "(";
        bool first = true;
        for (auto c : canonical_children(pic, s, forms, with_depths)) {
            if (!first) out += " ";
            first = false;
            out += forms[c];
        }
        out += ")";
        if (with_depths) out += pic.depth(s).str();
        forms[s] = std::move(out);
    }
    return forms;
}

std::string canonical_form(const ClusterPicture& pic, ClusterId s, bool with_depths) {
    return canonical_forms(pic, with_depths).at(s);
}

std::vector<std::size_t> canonical_leaf_order(const ClusterPicture& pic, ClusterId s, bool with_depths) {
    return canonical_leaf_order(pic, s, canonical_forms(pic, with_depths), with_depths);
}

std::vector<std::size_t> canonical_leaf_order(const ClusterPicture& pic, ClusterId s,
                                              const std::vector<std::string>& forms, bool with_depths) {
    std::vector<std::size_t> out;
    std::function<void(ClusterId)> walk = [&](ClusterId c) {
        if (!pic.is_proper(c)) {
            out.push_back(c);
            return;
        }
        for (auto k : canonical_children(pic, c, forms, with_depths)) walk(k);
    };
    walk(s);
    return out;
}

std::optional<std::vector<std::size_t>> isomorphic(const ClusterPicture& a, const ClusterPicture& b) {
    if (a.leaf_count() != b.leaf_count()) return std::nullopt;
    if (canonical_form(a, a.top()) != canonical_form(b, b.top())) return std::nullopt;
    auto la = canonical_leaf_order(a, a.top());
    auto lb = canonical_leaf_order(b, b.top());
    std::vector<std::size_t> map(a.leaf_count());
    for (std::size_t i = 0; i < la.size(); ++i) map[la[i]] = lb[i];
    return map;
}

}  // namespace cpic
