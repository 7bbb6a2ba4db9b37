#include "cpic/elliptic.hpp"

#include "cpic/errors.hpp"
#include "cpic/inertia.hpp"

namespace cpic {

std::string to_string(Reduction r) {
    return r == Reduction::potentially_good ? "potentially good" : "potentially multiplicative";
}

std::string KodairaType::str() const {
    switch (tag) {
        case Tag::I0: return "I0";
        case Tag::II: return "II";
        case Tag::III: return "III";
        case Tag::IV: return "IV";
        case Tag::I0s: return "I0*";
        case Tag::IVs: return "IV*";
        case Tag::IIIs: return "III*";
        case Tag::IIs: return "II*";
        case Tag::In: return "I" + n.get_str();
        case Tag::Ins: return "I" + n.get_str() + "*";
    }
    return "?";
}

Reduction potential_reduction(const ClusterPicture& pic) {
    if (pic.leaf_count() != 3) throw InputError("an elliptic curve picture has exactly 3 roots");
    return pic.proper_clusters().size() == 1 ? Reduction::potentially_good : Reduction::potentially_multiplicative;
}

namespace {

// x mod 2 in [0, 2).
Rational mod_two(const Rational& x) {
    Rational half = x / Rational(2);
    return x - Rational(2) * Rational(floor(half));
}

}  // namespace

EllipticClassification classify_elliptic(const ClusterPicture& pic, const Int& q) {
    EllipticClassification c;
    c.reduction = potential_reduction(pic);
    if (q < 3 || !is_prime(q)) throw InputError("q must be an odd prime, got " + q.get_str());
    const Rational dR = pic.depth(pic.top());
    c.normalized_top_depth = mod_two(dR);
    using Tag = KodairaType::Tag;

    if (c.reduction == Reduction::potentially_good) {
        if (q < 5) throw InputError("potentially good reduction needs q >= 5");
        const Rational& d = c.normalized_top_depth;
        const std::pair<Rational, Tag> table[] = {
            {Rational(0), Tag::I0},         {Rational(1, 3), Tag::II},  {Rational(1, 2), Tag::III},
            {Rational(2, 3), Tag::IV},      {Rational(1), Tag::I0s},    {Rational(4, 3), Tag::IVs},
            {Rational(3, 2), Tag::IIIs},    {Rational(5, 3), Tag::IIs}};
        bool found = false;
        for (const auto& [r, tag] : table)
            if (r == d) {
                c.kodaira.tag = tag;
                found = true;
            }
        if (!found) throw NotPolynomialType("depth " + dR.str() + " is not the depth of an elliptic curve picture");
    } else {
        if (!dR.is_integer()) throw NotPolynomialType("the top depth of a two-cluster picture must be an integer");
        ClusterId inner = pic.proper_clusters().at(1);
        Int n = (Rational(2) * relative_depth(pic, inner)).num();
        if (!(Rational(2) * relative_depth(pic, inner)).is_integer())
            throw NotPolynomialType("relative depth of the pair must lie in (1/2)Z");
        c.multiplicative = c.normalized_top_depth.is_zero();
        c.kodaira.tag = c.multiplicative ? Tag::In : Tag::Ins;
        c.kodaira.n = n;
    }

    auto search = find_action(pic, q);
    if (!search.action) throw NotPolynomialType(search.failure);
    c.rep = assemble_H1(pic, *search.action, q);
    c.root = root_number(c.rep, q, toric_quadratic_parity(pic, *search.action));
    return c;
}

nlohmann::json elliptic_to_json(const EllipticClassification& c) {
    nlohmann::json j = {{"reduction", to_string(c.reduction)},
                        {"normalized_depth", c.normalized_top_depth.str()},
                        {"kodaira", c.kodaira.str()},
                        {"h1", rep_to_json(c.rep)},
                        {"root_number", root_number_to_json(c.root)}};
    if (c.reduction == Reduction::potentially_multiplicative) j["multiplicative"] = c.multiplicative;
    return j;
}

}  // namespace cpic
