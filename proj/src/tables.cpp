#include "cpic/tables.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "cpic/errors.hpp"

namespace cpic {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

// Named tree as parsed, before it becomes a picture.
struct NamedNode {
    std::vector<NamedNode> children;
    std::string name;
};

class ShapeParser {
public:
    explicit ShapeParser(std::string_view t) : t_(t) {}

    NamedNode run() {
        skip();
        auto n = node();
        skip();
        if (i_ != t_.size()) fail("trailing text");
        if (n.children.empty()) fail("expected a proper cluster");
        return n;
    }

private:
    NamedNode node() {
        skip();
        if (i_ < t_.size() && t_[i_] == 'r') {
            ++i_;
            return {};
        }
        if (i_ >= t_.size() || t_[i_] != '(') fail("expected 'r' or '('");
        ++i_;
        NamedNode n;
        for (;;) {
            skip();
            if (i_ < t_.size() && t_[i_] == ')') break;
            n.children.push_back(node());
        }
        ++i_;
        std::size_t start = i_;
        while (i_ < t_.size() && std::isalnum(static_cast<unsigned char>(t_[i_]))) ++i_;
        n.name = std::string(t_.substr(start, i_ - start));
        if (n.name.empty()) fail("a proper cluster needs a name");
        if (n.children.size() < 2) fail("a proper cluster needs at least two children");
        return n;
    }

    void skip() {
        while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
    }
    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, i_); }

    std::string_view t_;
    std::size_t i_ = 0;
};

ClusterPicture::Node to_node(const NamedNode& n, long level) {
    ClusterPicture::Node out;
    out.depth = Rational(level);
    for (const auto& c : n.children) out.children.push_back(to_node(c, level + 1));
    return out;
}

// Shape picture with every depth equal to the level.
ClusterPicture level_picture(const ClusterPicture& pic) {
    std::vector<Rational> d(pic.cluster_count());
    for (auto s : pic.proper_clusters()) d[s] = Rational(static_cast<long>(pic[s].level));
    return pic.with_depths(d);
}

std::string shape_key(const ClusterPicture& pic) { return canonical_form(pic, pic.top(), false); }

// 2 | x in the sense of a positive 2-adic valuation; zero counts as divisible.
bool two_divides(const Rational& x) {
    if (x.is_zero()) return true;
    if (x.den() % 2 == 0) return false;
    return x.num() % 2 == 0;
}

Rational eval_terms(const std::vector<Condition::Term>& terms, const std::vector<Rational>& d) {
    Rational e;
    for (const auto& t : terms) {
        Rational prod(t.coeff);
        for (auto f : t.factors) prod *= d.at(f);
        e += prod;
    }
    return e;
}

std::string depth_list(const NamedShape& shape, const std::vector<Rational>& d) {
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) out += ", ";
        out += "d" + shape.names[i] + "=" + d[i].str();
    }
    return out;
}

}  // namespace

std::size_t NamedShape::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    throw InputError("unknown cluster name '" + name + "'");
}

std::string NamedShape::str() const {
    std::function<std::string(ClusterId)> fmt = [&](ClusterId s) -> std::string {
        if (!picture.is_proper(s)) return "r";
        std::string out = "(";
        bool first = true;
        for (auto c : picture.children(s)) {
            if (!first) out += " ";
            first = false;
            out += fmt(c);
        }
        auto it = std::find(order.begin(), order.end(), s);
        return out + ")" + names[static_cast<std::size_t>(it - order.begin())];
    };
    return fmt(picture.top());
}

std::string NamedShape::key() const { return shape_key(picture); }

NamedShape parse_named_shape(std::string_view text) {
    NamedNode root = ShapeParser(text).run();
    NamedShape out;
    out.picture = ClusterPicture::from_tree(to_node(root, 0));
    // Walk again, collecting leaf ranges to locate each named cluster.
    std::vector<std::pair<std::string, ClusterId>> named;
    std::size_t next_leaf = 0;
    std::function<std::vector<std::size_t>(const NamedNode&)> walk = [&](const NamedNode& n) {
        if (n.children.empty()) return std::vector<std::size_t>{next_leaf++};
        std::vector<std::size_t> m;
        for (const auto& c : n.children) {
            auto k = walk(c);
            m.insert(m.end(), k.begin(), k.end());
        }
        std::sort(m.begin(), m.end());
        named.emplace_back(n.name, *out.picture.find(m));
        return m;
    };
    walk(root);
    // Name order: R first, then s1, s2, ... by index, anything else alphabetically.
    auto rank = [](const std::string& name) {
        if (name == "R") return std::pair<long, std::string>(-1, name);
        if (name.size() > 1 && name[0] == 's' &&
            std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            return std::pair<long, std::string>(std::stol(name.substr(1)), name);
        return std::pair<long, std::string>(1000000, name);
    };
    std::sort(named.begin(), named.end(), [&](const auto& a, const auto& b) { return rank(a.first) < rank(b.first); });
    for (std::size_t i = 0; i < named.size(); ++i) {
        if (i && named[i].first == named[i - 1].first) throw InputError("duplicate cluster name " + named[i].first);
        out.names.push_back(named[i].first);
        out.order.push_back(named[i].second);
    }
    return out;
}

NamedShape default_names(const ClusterPicture& shape) {
    NamedShape out;
    out.picture = level_picture(shape);
    std::size_t k = 0;
    for (auto s : out.picture.proper_clusters()) {
        out.order.push_back(s);
        out.names.push_back(k++ == 0 ? "R" : "s" + std::to_string(k - 1));
    }
    return out;
}

std::vector<ClusterPicture> enumerate_shapes(std::size_t n) {
    if (n < 2) throw InputError("shapes need at least two roots");
    // trees[k]: canonical strings of all trees on k leaves, sorted.
    std::vector<std::vector<std::string>> trees(n + 1);
    trees[1] = {"r"};
    for (std::size_t k = 2; k <= n; ++k) {
        std::set<std::string> found;
        // Multisets of (size, tree) pairs, nondecreasing, at least two parts, total k.
        std::vector<std::pair<std::size_t, std::size_t>> parts;
        std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t min_size,
                                                                             std::size_t min_index) {
            if (left == 0) {
                if (parts.size() < 2) return;
                std::string s = "(";
                for (std::size_t i = 0; i < parts.size(); ++i) {
                    if (i) s += " ";
                    s += trees[parts[i].first][parts[i].second];
                }
                found.insert(s + ")");
                return;
            }
            for (std::size_t size = min_size; size <= left && size < k; ++size) {
                std::size_t start = size == min_size ? min_index : 0;
                for (std::size_t t = start; t < trees[size].size(); ++t) {
                    parts.emplace_back(size, t);
                    rec(left - size, size, t);
                    parts.pop_back();
                }
            }
        };
        rec(k, 1, 0);
        trees[k].assign(found.begin(), found.end());
    }
    std::vector<ClusterPicture> out;
    for (const auto& s : trees[n]) {
        // Give every cluster a throwaway name so the shape grammar reads it.
        std::string named;
        std::size_t k = 0;
        for (char c : s) {
            named += c;
            if (c == ')') named += "x" + std::to_string(k++);
        }
        out.push_back(parse_named_shape(named).picture);
    }
    return out;
}

std::string tuple_str(const DenomTuple& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += t[i].get_str();
    }
    return out + ")";
}

std::vector<TupleAction> enumerate_tuples(const NamedShape& shape) {
    const auto& pic = shape.picture;
    std::map<DenomTuple, TameAction> found;
    for (const auto& action : enumerate_actions(pic)) {
        auto dc = enumerate_denominators(pic, action);
        // Orbit representative of every proper cluster.
        std::map<ClusterId, std::size_t> rep_of;
        for (std::size_t i = 0; i < dc.representatives.size(); ++i) {
            ClusterId s = dc.representatives[i];
            ClusterId t = s;
            do {
                rep_of[t] = i;
                t = *cluster_image(pic, action.generator, t);
            } while (t != s);
        }
        for (const auto& tup : dc.tuples) {
            DenomTuple named;
            for (auto s : shape.order) named.push_back(tup[rep_of.at(s)]);
            found.emplace(named, action);
        }
    }
    std::vector<TupleAction> out;
    for (auto& [t, a] : found) out.push_back({t, a});
    return out;
}

bool Condition::holds(const std::vector<Rational>& depths) const {
    if (kind != Kind::atoms) return true;
    for (const auto& a : atoms)
        if (two_divides(eval_terms(a.terms, depths)) != a.divisible) return false;
    return true;
}

Condition parse_condition(std::string_view text, const NamedShape& shape) {
    Condition c;
    std::string t = trim(text);
    if (t == "-" || t.empty()) return c;
    if (t == "else") {
        c.kind = Condition::Kind::otherwise;
        return c;
    }
    c.kind = Condition::Kind::atoms;
    for (const auto& raw : split(t, ',')) {
        std::string s;
        for (char ch : raw)
            if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
        Condition::Atom atom;
        std::string expr;
        if (s.rfind("2!|", 0) == 0) {
            atom.divisible = false;
            expr = s.substr(3);
        } else if (s.rfind("2|", 0) == 0) {
            expr = s.substr(2);
        } else {
            throw InputError("condition atom must start with 2| or 2!|: '" + raw + "'");
        }
        for (const auto& term_text : split(expr, '+')) {
            Condition::Term term;
            std::size_t i = 0;
            while (i < term_text.size() && std::isdigit(static_cast<unsigned char>(term_text[i]))) ++i;
            term.coeff = i ? Int(term_text.substr(0, i)) : Int(1);
            for (const auto& f : split(term_text.substr(i), '*')) {
                if (f.size() < 2 || f[0] != 'd') throw InputError("bad depth factor '" + f + "' in '" + raw + "'");
                term.factors.push_back(shape.index_of(f.substr(1)));
            }
            atom.terms.push_back(std::move(term));
        }
        c.atoms.push_back(std::move(atom));
    }
    return c;
}

std::string format_condition(const Condition& c, const NamedShape& shape) {
    if (c.kind == Condition::Kind::always) return "-";
    if (c.kind == Condition::Kind::otherwise) return "else";
    std::string out;
    for (std::size_t i = 0; i < c.atoms.size(); ++i) {
        if (i) out += ", ";
        out += c.atoms[i].divisible ? "2|" : "2!|";
        for (std::size_t j = 0; j < c.atoms[i].terms.size(); ++j) {
            const auto& t = c.atoms[i].terms[j];
            if (j) out += "+";
            if (t.coeff != 1) out += t.coeff.get_str();
            for (std::size_t k = 0; k < t.factors.size(); ++k) {
                if (k) out += "*";
                out += "d" + shape.names[t.factors[k]];
            }
        }
    }
    return out;
}

RhoSum parse_rho_text(std::string_view text) {
    RhoSum r;
    std::string t = trim(text);
    if (t == "0") return r;
    for (const auto& part : split(t, '+')) {
        auto pos = part.find("rho");
        if (pos == std::string::npos || pos + 3 >= part.size())
            throw InputError("bad representation term '" + part + "'");
        Rational mult = pos ? Rational::parse(part.substr(0, pos)) : Rational(1);
        r.add(Int(part.substr(pos + 3)), mult);
    }
    return r;
}

std::string rho_text(const RhoSum& r) {
    if (r.is_zero()) return "0";
    std::string out;
    for (const auto& [d, m] : r.terms()) {
        if (!out.empty()) out += " + ";
        if (m != 1) out += m.str();
        out += "rho" + d.get_str();
    }
    return out;
}

std::size_t Classification::tuple_count() const {
    std::size_t n = 0;
    for (const auto& s : shapes) n += s.tuples.size();
    return n;
}

std::size_t Classification::row_count() const {
    std::size_t n = 0;
    for (const auto& s : shapes)
        for (const auto& t : s.tuples) n += t.cases.size();
    return n;
}

std::vector<GoldenShape> parse_golden(std::string_view text) {
    std::vector<GoldenShape> out;
    std::size_t roots = 0;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    auto fail = [&](const std::string& what) -> void {
        throw InputError("golden table line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.rfind("roots ", 0) == 0) {
            roots = std::stoul(t.substr(6));
            continue;
        }
        if (t.rfind("shape ", 0) == 0) {
            GoldenShape g;
            g.roots = roots;
            try {
                g.shape = parse_named_shape(t.substr(6));
            } catch (const InputError& e) {
                fail(e.what());
            }
            if (g.shape.picture.leaf_count() != roots) fail("shape has the wrong number of roots");
            out.push_back(std::move(g));
            continue;
        }
        if (out.empty()) fail("row before any shape");
        std::optional<std::string> printed;
        std::string reason;
        if (t[0] == '=') {
            if (out.back().rows.empty() || out.back().rows.back().printed) fail("correction without a row");
            auto hash = t.find('#');
            if (hash != std::string::npos) reason = trim(t.substr(hash + 1));
            t = trim(t.substr(1, hash == std::string::npos ? std::string::npos : hash - 1));
            const auto& prev = out.back().rows.back();
            printed = tuple_str(prev.tuple) + "; " + prev.condition_text + "; " + rho_text(prev.h1_ab) + "; " +
                      rho_text(prev.h1_t);
            out.back().rows.pop_back();
        }
        auto cells = split(t, ';');
        if (cells.size() != 4) fail("expected four ';'-separated cells");
        GoldenRow row;
        row.line = line_no;
        std::string tup = cells[0];
        if (tup.size() < 2 || tup.front() != '(' || tup.back() != ')') fail("bad tuple");
        for (const auto& x : split(tup.substr(1, tup.size() - 2), ',')) row.tuple.push_back(Int(x));
        if (row.tuple.size() != out.back().shape.names.size()) fail("tuple length differs from the cluster count");
        try {
            row.condition_text = cells[1];
            row.condition = parse_condition(cells[1], out.back().shape);
            row.h1_ab = parse_rho_text(cells[2]);
            row.h1_t = parse_rho_text(cells[3]);
        } catch (const InputError& e) {
            fail(e.what());
        }
        row.printed = std::move(printed);
        row.correction_reason = std::move(reason);
        out.back().rows.push_back(std::move(row));
    }
    return out;
}

ClusterPicture with_named_depths(const NamedShape& shape, const std::vector<Rational>& depths) {
    std::vector<Rational> d(shape.picture.cluster_count());
    for (std::size_t i = 0; i < shape.order.size(); ++i) d[shape.order[i]] = depths.at(i);
    return shape.picture.with_depths(d);
}

std::vector<std::vector<Rational>> depth_samples(const NamedShape& shape, const TupleAction& ta) {
    const auto& pic = shape.picture;
    std::size_t k = shape.order.size();
    std::map<ClusterId, std::size_t> index;
    for (std::size_t i = 0; i < k; ++i) index[shape.order[i]] = i;
    // Free numerators live on one cluster per orbit; the first in name order.
    std::vector<std::size_t> rep(k);
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < k; ++i) {
        rep[i] = i;
        ClusterId t = shape.order[i];
        do {
            rep[i] = std::min(rep[i], index.at(t));
            t = *cluster_image(pic, ta.action.generator, t);
        } while (t != shape.order[i]);
        if (rep[i] == i) free.push_back(i);
    }
    std::vector<std::vector<Int>> numerators;
    for (auto i : free) {
        const Int& b = ta.tuple[i];
        std::vector<Int> opts;
        for (Int a = 0; a < 2 * b; ++a)
            if (gcd(a, b) == 1) opts.push_back(a);
        numerators.push_back(std::move(opts));
    }
    std::vector<std::vector<Rational>> out;
    std::vector<std::size_t> pick(free.size(), 0);
    for (;;) {
        std::vector<Rational> base(k);
        for (std::size_t j = 0; j < free.size(); ++j)
            base[free[j]] = Rational(numerators[j][pick[j]], ta.tuple[free[j]]);
        std::vector<Rational> depth(pic.cluster_count());
        for (auto s : pic.proper_clusters()) {
            Rational d = base[rep[index.at(s)]];
            if (auto par = pic.parent(s))
                while (d <= depth[*par]) d += 2;
            depth[s] = d;
        }
        std::vector<Rational> named(k);
        for (std::size_t i = 0; i < k; ++i) named[i] = depth[shape.order[i]];
        out.push_back(std::move(named));
        std::size_t u = 0;
        while (u < pick.size() && ++pick[u] == numerators[u].size()) pick[u++] = 0;
        if (u == pick.size()) break;
    }
    return out;
}

namespace {

struct Literal {
    Condition::Atom atom;
    std::vector<bool> truth;  // per sample
};

// Conditions separating the cases of one tuple, as conjunctions of parity atoms.
void describe_cases(const NamedShape& shape, const std::vector<std::size_t>& free,
                    std::vector<TableCase>& cases) {
    if (cases.size() == 1) {
        cases[0].condition = "-";
        return;
    }
    std::vector<std::vector<Rational>> all;
    std::vector<std::size_t> owner;
    for (std::size_t c = 0; c < cases.size(); ++c)
        for (const auto& s : cases[c].samples) {
            all.push_back(s);
            owner.push_back(c);
        }
    // Sums of one, two or three free depths, both polarities; constant atoms dropped.
    std::vector<Literal> lits;
    std::vector<std::vector<std::size_t>> subsets;
    for (std::size_t a = 0; a < free.size(); ++a) subsets.push_back({free[a]});
    for (std::size_t a = 0; a < free.size(); ++a)
        for (std::size_t b = a + 1; b < free.size(); ++b) subsets.push_back({free[a], free[b]});
    for (std::size_t a = 0; a < free.size(); ++a)
        for (std::size_t b = a + 1; b < free.size(); ++b)
            for (std::size_t c = b + 1; c < free.size(); ++c) subsets.push_back({free[a], free[b], free[c]});
    for (const auto& sub : subsets) {
        for (bool div : {true, false}) {
            Literal l;
            l.atom.divisible = div;
            for (auto i : sub) l.atom.terms.push_back({Int(1), {i}});
            bool any = false, all_true = true;
            for (const auto& s : all) {
                bool v = two_divides(eval_terms(l.atom.terms, s)) == div;
                l.truth.push_back(v);
                any = any || v;
                all_true = all_true && v;
            }
            if (any && !all_true) lits.push_back(std::move(l));
        }
    }
    auto exact = [&](std::size_t c, const std::vector<const Literal*>& conj) {
        for (std::size_t s = 0; s < all.size(); ++s) {
            bool v = true;
            for (auto* l : conj) v = v && l->truth[s];
            if (v != (owner[s] == c)) return false;
        }
        return true;
    };
    std::vector<bool> done(cases.size(), false);
    for (std::size_t c = 0; c < cases.size(); ++c) {
        std::vector<const Literal*> best;
        for (std::size_t i = 0; i < lits.size() && best.empty(); ++i)
            if (exact(c, {&lits[i]})) best = {&lits[i]};
        for (std::size_t i = 0; i < lits.size() && best.empty(); ++i)
            for (std::size_t j = i + 1; j < lits.size() && best.empty(); ++j)
                if (exact(c, {&lits[i], &lits[j]})) best = {&lits[i], &lits[j]};
        for (std::size_t i = 0; i < lits.size() && best.empty(); ++i)
            for (std::size_t j = i + 1; j < lits.size() && best.empty(); ++j)
                for (std::size_t m = j + 1; m < lits.size() && best.empty(); ++m)
                    if (exact(c, {&lits[i], &lits[j], &lits[m]})) best = {&lits[i], &lits[j], &lits[m]};
        if (best.empty()) continue;
        Condition cond;
        cond.kind = Condition::Kind::atoms;
        for (auto* l : best) cond.atoms.push_back(l->atom);
        cases[c].condition = format_condition(cond, shape);
        done[c] = true;
    }
    std::size_t missing = static_cast<std::size_t>(std::count(done.begin(), done.end(), false));
    for (std::size_t c = 0; c < cases.size(); ++c) {
        if (done[c]) continue;
        if (missing == 1) {
            cases[c].condition = "else";
        } else {
            // No short description: list the depth numerators of the first sample.
            cases[c].condition = "like " + depth_list(shape, cases[c].samples.front());
        }
    }
}

}  // namespace

ShapeTable classify_shape(const NamedShape& shape) {
    ShapeTable table;
    table.shape = shape;
    for (const auto& ta : enumerate_tuples(shape)) {
        TableTuple tt;
        tt.tuple = ta.tuple;
        for (const auto& depths : depth_samples(shape, ta)) {
            ClusterPicture pic = with_named_depths(shape, depths);
            auto found = find_action(pic);
            if (!found.action)
                throw IntegrityError("no action for " + shape.str() + " tuple " + tuple_str(ta.tuple) + " at " +
                                     depth_list(shape, depths) + ": " + found.failure);
            InertiaRep rep;
            try {
                rep = assemble_H1(pic, *found.action);
            } catch (const IntegrityError& e) {
                throw IntegrityError(std::string(e.what()) + " [" + shape.str() + " tuple " + tuple_str(ta.tuple) +
                                     " at " + depth_list(shape, depths) + "]");
            }
            auto it = std::find_if(tt.cases.begin(), tt.cases.end(), [&](const TableCase& c) {
                return c.h1_ab == rep.h1_ab && c.h1_t == rep.h1_t;
            });
            if (it == tt.cases.end()) {
                tt.cases.push_back({"", rep.h1_ab, rep.h1_t, {}});
                it = tt.cases.end() - 1;
            }
            it->samples.push_back(depths);
        }
        std::vector<std::size_t> free;
        std::map<ClusterId, std::size_t> index;
        for (std::size_t i = 0; i < shape.order.size(); ++i) index[shape.order[i]] = i;
        for (std::size_t i = 0; i < shape.order.size(); ++i) {
            bool first = true;
            ClusterId t = shape.order[i];
            do {
                if (index.at(t) < i) first = false;
                t = *cluster_image(shape.picture, ta.action.generator, t);
            } while (t != shape.order[i]);
            if (first && ta.tuple[i] % 2 == 1) free.push_back(i);
        }
        describe_cases(shape, free, tt.cases);
        table.tuples.push_back(std::move(tt));
    }
    return table;
}

Classification classify_all(std::size_t n, const std::vector<GoldenShape>& naming) {
    Classification out;
    out.roots = n;
    std::vector<ClusterPicture> shapes = enumerate_shapes(n);
    std::vector<bool> used(shapes.size(), false);
    std::vector<std::string> keys;
    for (const auto& s : shapes) keys.push_back(shape_key(s));
    for (const auto& g : naming) {
        if (g.roots != n) continue;
        auto key = g.shape.key();
        for (std::size_t i = 0; i < shapes.size(); ++i) {
            if (!used[i] && keys[i] == key) {
                used[i] = true;
                out.shapes.push_back(classify_shape(g.shape));
                break;
            }
        }
    }
    for (std::size_t i = 0; i < shapes.size(); ++i)
        if (!used[i]) out.shapes.push_back(classify_shape(default_names(shapes[i])));
    return out;
}

std::size_t GoldenDiff::count_for(const std::string& shape) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [&](const DiffEntry& e) { return e.shape == shape; }));
}

GoldenDiff compare_golden(const Classification& computed, const std::vector<GoldenShape>& golden) {
    GoldenDiff diff;
    std::size_t n = computed.roots;
    std::vector<bool> golden_used(golden.size(), false);
    for (const auto& table : computed.shapes) {
        const NamedShape& shape = table.shape;
        std::string shape_text = shape.str();
        const GoldenShape* g = nullptr;
        for (std::size_t i = 0; i < golden.size(); ++i) {
            if (golden_used[i] || golden[i].roots != n || golden[i].shape.key() != shape.key()) continue;
            golden_used[i] = true;
            g = &golden[i];
            break;
        }
        std::size_t before = diff.entries.size();
        auto add = [&](DiffEntry e) {
            e.roots = n;
            e.shape = shape_text;
            diff.entries.push_back(std::move(e));
        };
        if (!g) {
            for (const auto& t : table.tuples)
                for (const auto& c : t.cases)
                    add({"extra-tuple", 0, "", tuple_str(t.tuple), c.condition, "",
                         rho_text(c.h1_ab) + "; " + rho_text(c.h1_t), "", 0});
            continue;
        }
        if (g->shape.str() != shape_text)
            add({"renamed-shape", 0, "", "", "", g->shape.str(), shape_text, "", 0});
        std::map<DenomTuple, std::vector<const GoldenRow*>> grows;
        for (const auto& r : g->rows) {
            grows[r.tuple].push_back(&r);
            if (r.printed)
                diff.corrections.push_back({"correction", n, shape_text, tuple_str(r.tuple), r.correction_reason,
                                            *r.printed,
                                            tuple_str(r.tuple) + "; " + r.condition_text + "; " + rho_text(r.h1_ab) +
                                                "; " + rho_text(r.h1_t),
                                            "", r.line});
        }
        std::set<DenomTuple> ours;
        for (const auto& t : table.tuples) {
            ours.insert(t.tuple);
            auto it = grows.find(t.tuple);
            if (it == grows.end()) {
                for (const auto& c : t.cases)
                    add({"extra-tuple", 0, "", tuple_str(t.tuple), c.condition, "",
                         rho_text(c.h1_ab) + "; " + rho_text(c.h1_t), "", 0});
                continue;
            }
            const auto& rows = it->second;
            std::vector<std::size_t> hits(rows.size(), 0);
            std::vector<bool> reported(rows.size(), false);
            for (const auto& c : t.cases) {
                for (const auto& s : c.samples) {
                    std::vector<std::size_t> match;
                    std::optional<std::size_t> fallback;
                    for (std::size_t r = 0; r < rows.size(); ++r) {
                        if (rows[r]->condition.kind == Condition::Kind::otherwise) fallback = r;
                        else if (rows[r]->condition.holds(s)) match.push_back(r);
                    }
                    if (match.empty() && fallback) match.push_back(*fallback);
                    std::string got = rho_text(c.h1_ab) + "; " + rho_text(c.h1_t);
                    if (match.empty()) {
                        add({"uncovered", 0, "", tuple_str(t.tuple), "", "", got, depth_list(shape, s), 0});
                        continue;
                    }
                    if (match.size() > 1) {
                        std::string conds;
                        for (auto r : match) conds += (conds.empty() ? "" : " | ") + rows[r]->condition_text;
                        add({"ambiguous", 0, "", tuple_str(t.tuple), conds, "", got, depth_list(shape, s),
                             rows[match[0]]->line});
                        continue;
                    }
                    std::size_t r = match[0];
                    ++hits[r];
                    if (rows[r]->h1_ab == c.h1_ab && rows[r]->h1_t == c.h1_t) continue;
                    if (reported[r]) continue;
                    reported[r] = true;
                    add({"mismatch", 0, "", tuple_str(t.tuple), rows[r]->condition_text,
                         rho_text(rows[r]->h1_ab) + "; " + rho_text(rows[r]->h1_t), got, depth_list(shape, s),
                         rows[r]->line});
                }
            }
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (hits[r] == 0)
                    add({"vacuous", 0, "", tuple_str(t.tuple), rows[r]->condition_text,
                         rho_text(rows[r]->h1_ab) + "; " + rho_text(rows[r]->h1_t), "", "", rows[r]->line});
        }
        for (const auto& [tup, rows] : grows)
            if (!ours.count(tup))
                for (auto* r : rows)
                    add({"missing-tuple", 0, "", tuple_str(tup), r->condition_text,
                         rho_text(r->h1_ab) + "; " + rho_text(r->h1_t), "", "", r->line});
        if (diff.entries.size() == before) diff.matched_shapes.push_back(shape_text);
    }
    for (std::size_t i = 0; i < golden.size(); ++i) {
        if (golden_used[i] || golden[i].roots != n) continue;
        DiffEntry e{"missing-shape", n, golden[i].shape.str(), "", "", "", "", "", 0};
        if (!golden[i].rows.empty()) e.line = golden[i].rows.front().line;
        diff.entries.push_back(std::move(e));
    }
    return diff;
}

nlohmann::json classification_to_json(const Classification& c) {
    nlohmann::json shapes = nlohmann::json::array();
    for (const auto& s : c.shapes) {
        nlohmann::json tuples = nlohmann::json::array();
        for (const auto& t : s.tuples) {
            nlohmann::json tup = nlohmann::json::array();
            for (const auto& d : t.tuple) tup.push_back(d.get_str());
            nlohmann::json cases = nlohmann::json::array();
            for (const auto& k : t.cases)
                cases.push_back({{"condition", k.condition},
                                 {"h1_ab", k.h1_ab.to_json()},
                                 {"h1_t", k.h1_t.to_json()},
                                 {"samples", k.samples.size()}});
            tuples.push_back({{"tuple", tup}, {"cases", cases}});
        }
        nlohmann::json names = s.shape.names;
        shapes.push_back({{"shape", s.shape.str()}, {"names", names}, {"tuples", tuples}});
    }
    return {{"roots", c.roots},
            {"shape_count", c.shapes.size()},
            {"tuple_count", c.tuple_count()},
            {"row_count", c.row_count()},
            {"shapes", shapes}};
}

std::string classification_text(const Classification& c) {
    std::ostringstream out;
    out << "# " << c.shapes.size() << " shapes, " << c.tuple_count() << " tuples, " << c.row_count() << " rows\n";
    for (const auto& s : c.shapes) {
        out << "\nroots " << c.roots << "\nshape " << s.shape.str() << "\n";
        for (const auto& t : s.tuples)
            for (const auto& k : t.cases)
                out << tuple_str(t.tuple) << "; " << k.condition << "; " << rho_text(k.h1_ab) << "; "
                    << rho_text(k.h1_t) << "\n";
    }
    return out.str();
}

nlohmann::json diff_to_json(const GoldenDiff& d) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : d.entries) {
        nlohmann::json j = {{"kind", e.kind}, {"roots", e.roots}, {"shape", e.shape}};
        if (!e.tuple.empty()) j["tuple"] = e.tuple;
        if (!e.condition.empty()) j["condition"] = e.condition;
        if (!e.expected.empty()) j["expected"] = e.expected;
        if (!e.actual.empty()) j["actual"] = e.actual;
        if (!e.depths.empty()) j["depths"] = e.depths;
        if (e.line) j["golden_line"] = e.line;
        entries.push_back(std::move(j));
    }
    nlohmann::json corrections = nlohmann::json::array();
    for (const auto& e : d.corrections)
        corrections.push_back({{"shape", e.shape},
                               {"roots", e.roots},
                               {"printed", e.expected},
                               {"corrected", e.actual},
                               {"reason", e.condition},
                               {"golden_line", e.line}});
    return {{"match", d.empty()},
            {"matched_shapes", d.matched_shapes},
            {"entries", entries},
            {"corrections", corrections}};
}

std::string diff_text(const GoldenDiff& d) {
    std::ostringstream out;
    for (const auto& e : d.corrections)
        out << "corrected roots=" << e.roots << " shape=" << e.shape << " printed=[" << e.expected << "] used=["
            << e.actual << "] (golden line " << e.line << "): " << e.condition << "\n";
    for (const auto& e : d.entries) {
        out << e.kind << " roots=" << e.roots << " shape=" << e.shape;
        if (!e.tuple.empty()) out << " tuple=" << e.tuple;
        if (!e.condition.empty()) out << " condition=[" << e.condition << "]";
        if (!e.expected.empty()) out << " expected=[" << e.expected << "]";
        if (!e.actual.empty()) out << " actual=[" << e.actual << "]";
        if (!e.depths.empty()) out << " at " << e.depths;
        if (e.line) out << " (golden line " << e.line << ")";
        out << "\n";
    }
    return out.str();
}

}  // namespace cpic
