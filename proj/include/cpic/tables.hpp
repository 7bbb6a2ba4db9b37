#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cpic/cluster.hpp"
#include "cpic/inertia.hpp"
#include "cpic/numbers.hpp"
#include "cpic/repn.hpp"

namespace cpic {

// A cluster topology whose proper clusters carry names (R, s1, s2, ...).
// Depths are placeholders equal to the level, so the picture stays valid.
struct NamedShape {
    ClusterPicture picture;
    std::vector<ClusterId> order;     // proper clusters in name order
    std::vector<std::string> names;   // parallel to order

    std::size_t index_of(const std::string& name) const;
    std::string str() const;          // "((r r)s1 r r r)R"
    std::string key() const;          // shape up to isomorphism
};

NamedShape parse_named_shape(std::string_view text);
// R for the top cluster, then s1, s2, ... in preorder.
NamedShape default_names(const ClusterPicture& shape);

// Rooted trees on n leaves, every internal node with >= 2 children, one per isomorphism class.
std::vector<ClusterPicture> enumerate_shapes(std::size_t n);

// Denominators in name order.
using DenomTuple = std::vector<Int>;
std::string tuple_str(const DenomTuple& t);

struct TupleAction {
    DenomTuple tuple;
    TameAction action;  // an action on the shape realizing the tuple
};

// Labelled tuples admitting an action, sorted lexicographically. Tuples that differ
// only by a shape automorphism are kept apart; the orphan convention of find_action applies.
std::vector<TupleAction> enumerate_tuples(const NamedShape& shape);

// Mod-2 conditions on depths: atoms "2|E" or "2!|E" with E an integer combination
// of products of named depths. "-" always holds; "else" is resolved against sibling rows.
struct Condition {
    struct Term {
        Int coeff;
        std::vector<std::size_t> factors;  // name indices
    };
    struct Atom {
        bool divisible = true;
        std::vector<Term> terms;
    };
    enum class Kind { always, otherwise, atoms };

    Kind kind = Kind::always;
    std::vector<Atom> atoms;

    // For Kind::otherwise the caller decides.
    bool holds(const std::vector<Rational>& depths) const;
};

Condition parse_condition(std::string_view text, const NamedShape& shape);
std::string format_condition(const Condition& c, const NamedShape& shape);

// "2rho1 + rho4", "0".
RhoSum parse_rho_text(std::string_view text);
std::string rho_text(const RhoSum& r);

struct TableCase {
    std::string condition;
    RhoSum h1_ab, h1_t;
    std::vector<std::vector<Rational>> samples;  // depths in name order
};

struct TableTuple {
    DenomTuple tuple;
    std::vector<TableCase> cases;
};

struct ShapeTable {
    NamedShape shape;
    std::vector<TableTuple> tuples;
};

struct Classification {
    std::size_t roots = 0;
    std::vector<ShapeTable> shapes;

    std::size_t tuple_count() const;
    std::size_t row_count() const;
};

struct GoldenRow {
    DenomTuple tuple;
    std::string condition_text;
    Condition condition;
    RhoSum h1_ab, h1_t;
    std::size_t line = 0;
    // Set when a correction line replaced the printed row.
    std::optional<std::string> printed;
    std::string correction_reason;
};

struct GoldenShape {
    std::size_t roots = 0;
    NamedShape shape;
    std::vector<GoldenRow> rows;
};

std::string_view embedded_golden_text();
std::vector<GoldenShape> parse_golden(std::string_view text);

// Depth representatives for one tuple: numerators modulo twice the denominator,
// coprime to it, lifted by even integers so depths grow inwards.
std::vector<std::vector<Rational>> depth_samples(const NamedShape& shape, const TupleAction& ta);
ClusterPicture with_named_depths(const NamedShape& shape, const std::vector<Rational>& depths);

// Shapes come in the order and naming of `naming` where a shape matches; the rest follow.
Classification classify_all(std::size_t n, const std::vector<GoldenShape>& naming = {});
ShapeTable classify_shape(const NamedShape& shape);

struct DiffEntry {
    std::string kind;  // missing-shape renamed-shape missing-tuple extra-tuple mismatch uncovered ambiguous vacuous
    std::size_t roots = 0;
    std::string shape;
    std::string tuple;
    std::string condition;
    std::string expected;
    std::string actual;
    std::string depths;
    std::size_t line = 0;
};

struct GoldenDiff {
    std::vector<DiffEntry> entries;
    std::vector<std::string> matched_shapes;  // shapes with no entries
    std::vector<DiffEntry> corrections;       // golden rows compared in corrected form

    bool empty() const { return entries.empty(); }
    std::size_t count_for(const std::string& shape) const;
};

GoldenDiff compare_golden(const Classification& computed, const std::vector<GoldenShape>& golden);

nlohmann::json classification_to_json(const Classification& c);
std::string classification_text(const Classification& c);
nlohmann::json diff_to_json(const GoldenDiff& d);
std::string diff_text(const GoldenDiff& d);

}  // namespace cpic
