#include "cpic/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpic/cluster.hpp"
#include "cpic/elliptic.hpp"
#include "cpic/errors.hpp"
#include "cpic/inertia.hpp"
#include "cpic/numbers.hpp"
#include "cpic/repn.hpp"
#include "cpic/rootnum.hpp"
#include "cpic/sweep.hpp"
#include "cpic/tables.hpp"
#include "cpic/witness.hpp"

namespace cpic {

namespace {

using nlohmann::json;

// Thrown for bad option values that CLI11 cannot see, e.g. two picture sources.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string picture;
    std::string file;
    std::string format = "json";
    std::string p, q;
    std::vector<int> roots;
    bool check = false;
    std::uint64_t seed = SweepOptions{}.seed;
    std::size_t max_roots = SweepOptions{}.max_roots;
    std::size_t count = SweepOptions{}.count;
    long max_order = 60;
};

std::string read_source(const Options& o) {
    bool inline_given = !o.picture.empty();
    bool file_given = !o.file.empty();
    if (inline_given == file_given) throw UsageError("give exactly one picture: inline text or --file");
    if (inline_given) return o.picture;
    std::ifstream in(o.file);
    if (!in) throw UsageError("cannot read " + o.file);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    return text;
}

ClusterPicture load_picture(const Options& o) {
    std::string text = read_source(o);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw InputError(std::string("picture JSON: ") + e.what());
        }
        return picture_from_json(j);
    }
    return parse_picture(text);
}

Int parse_prime(const std::string& text, const char* flag, bool odd) {
    Int v;
    if (text.empty() || v.set_str(text, 10) != 0) throw UsageError(std::string(flag) + " needs an integer");
    if (v < 2 || !is_prime(v)) throw InputError(std::string(flag) + " = " + text + " is not prime");
    if (odd && v == 2) throw InputError(std::string(flag) + " must be an odd prime");
    return v;
}

std::optional<Int> optional_prime(const std::string& text, const char* flag) {
    if (text.empty()) return std::nullopt;
    return parse_prime(text, flag, false);
}

// R for the top, s1, s2, ... for the other proper clusters in preorder, r1.. for leaves.
std::map<ClusterId, std::string> cluster_names(const ClusterPicture& pic) {
    std::map<ClusterId, std::string> names;
    for (std::size_t i = 0; i < pic.leaf_count(); ++i) names[i] = "r" + std::to_string(i + 1);
    std::size_t k = 0;
    for (auto s : pic.proper_clusters()) names[s] = s == pic.top() ? "R" : "s" + std::to_string(++k);
    return names;
}

json members(const ClusterPicture& pic, ClusterId s) {
    json m = json::array();
    for (auto r : pic[s].leaves) m.push_back(r + 1);
    return m;
}

TameAction require_action(const ClusterPicture& pic, const std::optional<Int>& p) {
    auto found = find_action(pic, p);
    if (!found.action) throw NotPolynomialType("not of polynomial type: " + found.failure);
    return *found.action;
}

void emit(std::ostream& out, const Options& o, const json& j, const std::string& text) {
    if (o.format == "json")
        out << j.dump(2) << "\n";
    else
        out << text;
}

json orphan_list(const ClusterPicture& pic, const TameAction& action, const std::map<ClusterId, std::string>& names) {
    json list = json::array();
    for (const auto& [parent, child] : orphans(pic, action))
        list.push_back({{"parent", names.at(parent)}, {"orphan", names.at(child)}});
    return list;
}

int cmd_validate(const Options& o, std::ostream& out) {
    ClusterPicture pic = load_picture(o);
    std::size_t proper = pic.proper_clusters().size();
    json j = {{"valid", true},
              {"picture", format_picture(pic)},
              {"leaves", pic.leaf_count()},
              {"proper_clusters", proper},
              {"structure", picture_to_json(pic)}};
    std::ostringstream t;
    t << "valid: " << format_picture(pic) << " (" << pic.leaf_count() << " leaves, " << proper
      << " proper clusters)\n";
    emit(out, o, j, t.str());
    return exit_ok;
}

int cmd_analyze(const Options& o, std::ostream& out) {
    ClusterPicture pic = load_picture(o);
    auto p = optional_prime(o.p, "--p");
    auto found = find_action(pic, p);
    if (!found.action) throw NotPolynomialType("not of polynomial type: " + found.failure);
    const TameAction& action = *found.action;
    auto names = cluster_names(pic);
    ActionReport report = check_action(pic, action.generator);

    json clusters = json::array();
    std::ostringstream t;
    t << "order " << action.order.get_str() << "\n"
      << "generator " << format_cycles(action.generator) << "\n";
    for (auto s : pic.proper_clusters()) {
        const auto& d = action[s];
        json c = {{"name", names.at(s)},
                  {"members", members(pic, s)},
                  {"depth", pic.depth(s).str()},
                  {"stab_index", d.stab_index.get_str()},
                  {"child_orbit_length", d.child_orbit_len.get_str()},
                  {"orphan", d.orphan ? json(names.at(*d.orphan)) : json(nullptr)}};
        clusters.push_back(c);
        t << names.at(s) << " depth " << pic.depth(s).str() << " index " << d.stab_index.get_str()
          << " child orbits " << d.child_orbit_len.get_str();
        if (d.orphan) t << " orphan " << names.at(*d.orphan);
        t << "\n";
    }
    json leaves = json::array();
    for (std::size_t r = 0; r < pic.leaf_count(); ++r)
        leaves.push_back({{"leaf", names.at(r)}, {"stab_index", action[r].stab_index.get_str()}});

    // The printed picture must re-parse to the same action data.
    ClusterPicture again = parse_picture(format_picture(pic));
    auto redo = find_action(again, p);
    bool round_trip = redo.action && redo.action->order == action.order &&
                      orphans(again, *redo.action) == orphans(pic, action) &&
                      check_action(again, redo.action->generator).all_passed == report.all_passed;
    if (!round_trip) throw IntegrityError("analysis does not survive re-parsing the picture");
    if (!report.all_passed) throw IntegrityError("found action fails its own check");

    json j = {{"picture", format_picture(pic)},
              {"order", action.order.get_str()},
              {"generator", format_cycles(action.generator)},
              {"cycles", json::array()},
              {"clusters", clusters},
              {"leaves", leaves},
              {"orphans", orphan_list(pic, action, names)},
              {"check", report_to_json(pic, report)},
              {"warnings", found.warnings},
              {"round_trip", round_trip}};
    for (const auto& c : cycles(action.generator)) {
        if (c.size() < 2) continue;
        json cyc = json::array();
        for (auto r : c) cyc.push_back(r + 1);
        j["cycles"].push_back(cyc);
    }
    emit(out, o, j, t.str());
    return exit_ok;
}

int cmd_denoms(const Options& o, std::ostream& out) {
    ClusterPicture pic = load_picture(o);
    TameAction action = require_action(pic, optional_prime(o.p, "--p"));
    auto names = cluster_names(pic);
    auto dc = enumerate_denominators(pic, action);
    json clusters = json::array();
    std::ostringstream t;
    for (std::size_t i = 0; i < dc.representatives.size(); ++i) {
        ClusterId s = dc.representatives[i];
        json cands = json::array();
        t << names.at(s) << " {";
        for (std::size_t k = 0; k < dc.candidates[i].size(); ++k) {
            cands.push_back(dc.candidates[i][k].get_str());
            t << (k ? "," : "") << dc.candidates[i][k].get_str();
        }
        t << "} actual " << denom(pic.depth(s)).get_str() << "\n";
        clusters.push_back({{"name", names.at(s)},
                            {"members", members(pic, s)},
                            {"actual", denom(pic.depth(s)).get_str()},
                            {"candidates", cands}});
    }
    json tuples = json::array();
    for (const auto& tup : dc.tuples) {
        json a = json::array();
        for (const auto& d : tup) a.push_back(d.get_str());
        tuples.push_back(a);
    }
    json j = {{"order", action.order.get_str()}, {"clusters", clusters}, {"tuples", tuples}};
    emit(out, o, j, t.str());
    return exit_ok;
}

int cmd_construct(const Options& o, std::ostream& out) {
    ClusterPicture pic = load_picture(o);
    Int p = parse_prime(o.p, "--p", false);
    TameAction action = require_action(pic, p);
    Witness w = construct_witness(pic, action, p);
    CyclotomicRing ring(to_ulong(w.e));
    ClusterPicture recovered = recover_picture(w);
    bool ok = round_trip(pic, w);
    if (!ok) throw IntegrityError("witness recovers " + format_picture(recovered) + ", not the input picture");
    json j = witness_to_json(w, ring);
    j["degree"] = w.polynomial.size() - 1;
    j["recovered"] = format_picture(recovered);
    j["round_trip"] = ok;
    std::ostringstream t;
    t << "f = " << format_poly(w.polynomial) << "\n";
    for (const auto& f : w.factors) t << "factor " << format_poly(f) << "\n";
    t << "recovered " << format_picture(recovered) << " (round trip ok)\n";
    emit(out, o, j, t.str());
    return exit_ok;
}

json detail_json(const ClusterPicture& pic, ClusterId s, const std::string& name, const IndVDetail& d,
                 const RhoSum& eps) {
    const auto& c = d.data;
    json terms = json::array();
    for (const auto& r : d.terms) {
        json n1 = json::array();
        for (const auto& x : r.n1) n1.push_back(x.get_str());
        terms.push_back({{"d", r.d.get_str()},
                         {"t", r.t.get_str()},
                         {"s", r.s.get_str()},
                         {"alpha", r.alpha.str()},
                         {"beta", r.beta.str()},
                         {"g", r.g.get_str()},
                         {"n1", n1}});
    }
    Int eps_order = c.epsilon == EpsilonKind::order_two ? 2 : (c.epsilon == EpsilonKind::trivial ? 1 : 0);
    return {{"name", name},
            {"members", members(pic, s)},
            {"n", c.n.get_str()},
            {"n_prime", c.n_prime.get_str()},
            {"odd_children", c.odd_count.get_str()},
            {"floor", c.floor_ratio.get_str()},
            {"orphan", c.has_orphan},
            {"mu", c.mu.str()},
            {"lambda", c.lambda.str()},
            {"gamma_order", c.t.get_str()},
            {"epsilon", to_string(c.epsilon)},
            {"epsilon_order", eps_order.get_str()},
            {"terms", terms},
            {"line1", d.line1.to_json()},
            {"line2", d.line2.to_json()},
            {"line3", d.line3.to_json()},
            {"ind_V", d.result.to_json()},
            {"ind_epsilon", eps.to_json()}};
}

int cmd_repn(const Options& o, std::ostream& out) {
    ClusterPicture pic = load_picture(o);
    auto p = optional_prime(o.p, "--p");
    TameAction action = require_action(pic, p);
    InertiaRep rep = assemble_H1(pic, action, p);
    auto names = cluster_names(pic);
    json j = rep_to_json(rep);
    json clusters = json::array();
    std::ostringstream t;
    for (auto s : rep.representatives) {
        ClusterRepData data = cluster_rep_data(pic, action, s, p);
        IndVDetail d = ind_V_detail(data);
        RhoSum eps = ind_epsilon(data.epsilon, data.n);
        clusters.push_back(detail_json(pic, s, names.at(s), d, eps));
        t << names.at(s) << ": n=" << data.n.get_str() << " n'=" << data.n_prime.get_str()
          << " |odd|=" << data.odd_count.get_str() << " t=" << data.t.get_str() << " eps=" << to_string(data.epsilon)
          << "  Ind V = " << d.result.str() << "  Ind eps = " << eps.str() << "\n";
    }
    j["clusters"] = clusters;
    j["genus"] = (pic.leaf_count() - 1) / 2;
    t << "H1_ab = " << rep.h1_ab.str() << "\n"
      << "H1_t  = " << rep.h1_t.str() << (rep.h1_t.is_zero() ? "" : " (tensor sp(2))") << "\n";
    emit(out, o, j, t.str());
    return exit_ok;
}

int cmd_rootnumber(const Options& o, std::ostream& out) {
    ClusterPicture pic = load_picture(o);
    Int q = parse_prime(o.q, "--q", true);
    TameAction action = require_action(pic, q);
    InertiaRep rep = assemble_H1(pic, action, q);
    int parity = toric_quadratic_parity(pic, action);
    RootNumberResult r = root_number(rep, q, parity);
    json j = root_number_to_json(r);
    j["q"] = q.get_str();
    j["toric_quadratic_parity"] = parity;
    j["h1"] = rep_to_json(rep);
    std::ostringstream t;
    t << "W = " << (r.sign > 0 ? "+1" : "-1");
    if (r.ambiguous) t << " times the undetermined toric sign";
    t << "\n";
    for (const auto& f : r.factors)
        t << (f.toric ? "toric " : "") << "e=" << f.e.get_str() << " W=" << f.value << " m=" << f.exponent.get_str()
          << "\n";
    emit(out, o, j, t.str());
    return exit_ok;
}

int cmd_kodaira(const Options& o, std::ostream& out) {
    ClusterPicture pic = load_picture(o);
    Int q = parse_prime(o.q, "--q", true);
    EllipticClassification c = classify_elliptic(pic, q);
    json j = elliptic_to_json(c);
    j["q"] = q.get_str();
    std::ostringstream t;
    t << to_string(c.reduction) << " " << c.kodaira.str() << "  H1_ab = " << c.rep.h1_ab.str()
      << "  H1_t = " << c.rep.h1_t.str() << "  W = " << (c.root.sign > 0 ? "+1" : "-1")
      << (c.root.ambiguous ? " (up to split/nonsplit)" : "") << "\n";
    emit(out, o, j, t.str());
    return exit_ok;
}

int cmd_tables(const Options& o, std::ostream& out) {
    std::vector<int> roots = o.roots.empty() ? std::vector<int>{5, 6} : o.roots;
    auto golden = parse_golden(embedded_golden_text());
    std::vector<Classification> computed;
    for (int n : roots) computed.push_back(classify_all(static_cast<std::size_t>(n), golden));

    if (o.check) {
        json reports = json::array();
        std::string text;
        bool clean = true;
        for (const auto& c : computed) {
            std::vector<GoldenShape> subset;
            for (const auto& g : golden)
                if (g.roots == c.roots) subset.push_back(g);
            GoldenDiff diff = compare_golden(c, subset);
            clean = clean && diff.empty();
            json r = diff_to_json(diff);
            r["roots"] = c.roots;
            reports.push_back(r);
            text += "roots " + std::to_string(c.roots) + "\n" + diff_text(diff);
        }
        emit(out, o, json{{"match", clean}, {"reports", reports}}, text);
        return clean ? exit_ok : exit_rejected;
    }

    std::size_t shapes = 0, tuples = 0, rows = 0;
    json tables = json::array();
    std::string text;
    for (const auto& c : computed) {
        shapes += c.shapes.size();
        tuples += c.tuple_count();
        rows += c.row_count();
        tables.push_back(classification_to_json(c));
        text += classification_text(c);
    }
    json j = {{"shape_count", shapes}, {"tuple_count", tuples}, {"row_count", rows}, {"tables", tables}};
    emit(out, o, j, text);
    return exit_ok;
}

int cmd_selftest(const Options& o, std::ostream& out) {
    SweepOptions so;
    so.seed = o.seed;
    so.max_roots = o.max_roots;
    so.count = o.count;
    so.max_order = o.max_order;
    SweepReport r = oracle_sweep(so);
    std::ostringstream t;
    t << "seed " << r.seed << ": " << r.corpus << " corpus + " << r.random << " random pictures, " << r.clusters
      << " comparisons, " << r.mismatches.size() << " mismatches, " << r.dimension_failures.size()
      << " dimension failures, " << r.errors.size() << " errors\n";
    for (const auto& m : r.mismatches)
        t << "mismatch " << m.picture << " " << m.cluster << ": " << m.formula << " vs " << m.oracle << "\n";
    for (const auto& f : r.dimension_failures) t << "dimension " << f << "\n";
    for (const auto& e : r.errors) t << "error " << e << "\n";
    emit(out, o, sweep_to_json(r), t.str());
    return r.ok() ? exit_ok : exit_integrity;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"cluster pictures of hyperelliptic curves with tame inertia", "cpic"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto add_picture = [&](CLI::App* sub) {
        sub->add_option("picture", o.picture, "picture text, e.g. \"((r r)1/2 r)0\", or its JSON form");
        sub->add_option("--file", o.file, "read the picture from a file");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    };

    std::map<CLI::App*, std::function<int(const Options&, std::ostream&)>> handlers;
    auto sub = [&](const std::string& name, const std::string& help, auto handler) {
        CLI::App* s = app.add_subcommand(name, help);
        handlers[s] = handler;
        return s;
    };

    add_picture(sub("validate", "check the picture grammar and the cluster axioms", cmd_validate));
    auto* analyze = sub("analyze", "inertia action, orbit data and orphans", cmd_analyze);
    add_picture(analyze);
    analyze->add_option("--p", o.p, "residue characteristic; rejects wild pictures");
    auto* denoms = sub("denoms", "denominators compatible with the action on the shape", cmd_denoms);
    add_picture(denoms);
    denoms->add_option("--p", o.p, "residue characteristic");
    auto* construct = sub("construct", "integer polynomial with this picture", cmd_construct);
    add_picture(construct);
    construct->add_option("--p", o.p, "prime")->required();
    auto* repn = sub("repn", "inertia representation on H1", cmd_repn);
    add_picture(repn);
    repn->add_option("--p", o.p, "residue characteristic");
    auto* rootnumber = sub("rootnumber", "computable part of the local root number", cmd_rootnumber);
    add_picture(rootnumber);
    rootnumber->add_option("--q", o.q, "odd residue characteristic")->required();
    auto* kodaira = sub("kodaira", "elliptic curves: Kodaira type, H1 and root number", cmd_kodaira);
    add_picture(kodaira);
    kodaira->add_option("--q", o.q, "odd residue characteristic")->required();

    CLI::App* elliptic = app.add_subcommand("elliptic", "elliptic curve tools");
    elliptic->require_subcommand(1);
    CLI::App* classify = elliptic->add_subcommand("classify", "same as kodaira");
    handlers[classify] = cmd_kodaira;
    add_picture(classify);
    classify->add_option("--q", o.q, "odd residue characteristic")->required();

    auto* tables = sub("gen2-tables", "genus 2 classification by denominators", cmd_tables);
    tables->add_option("--roots", o.roots, "5 or 6; both when omitted")->check(CLI::IsMember({5, 6}));
    tables->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    tables->add_flag("--check", o.check, "compare with the embedded golden tables; exit 1 on a difference");

    auto* self = sub("selftest", "closed formula against the character oracle on random pictures", cmd_selftest);
    self->add_option("--seed", o.seed, "random seed");
    self->add_option("--max-roots", o.max_roots, "largest number of roots")->check(CLI::Range(3, 40));
    self->add_option("--count", o.count, "number of random pictures");
    self->add_option("--max-order", o.max_order, "largest inertia order")->check(CLI::Range(1L, 100000L));
    self->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << "\n";
        return exit_usage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    if (chosen == elliptic) chosen = elliptic->get_subcommands().front();
    try {
        return handlers.at(chosen)(o, out);
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << "\n";
        return exit_usage;
    } catch (const IntegrityError& e) {
        err << "integrity error: " << e.what() << "\n";
        return exit_integrity;
    } catch (const InputError& e) {
        err << "rejected: " << e.what() << "\n";
        return exit_rejected;
    }
}

}  // namespace cpic
