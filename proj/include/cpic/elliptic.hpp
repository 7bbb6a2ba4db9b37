#pragma once

#include <string>

#include <json.hpp>

#include "cpic/cluster.hpp"
#include "cpic/numbers.hpp"
#include "cpic/repn.hpp"
#include "cpic/rootnum.hpp"

namespace cpic {

enum class Reduction { potentially_good, potentially_multiplicative };
std::string to_string(Reduction r);

struct KodairaType {
    enum class Tag { I0, II, III, IV, I0s, IVs, IIIs, IIs, In, Ins };
    Tag tag = Tag::I0;
    Int n = 0;  // index of I_n and I_n*

    std::string str() const;
    friend bool operator==(const KodairaType& a, const KodairaType& b) { return a.tag == b.tag && a.n == b.n; }
};

Reduction potential_reduction(const ClusterPicture& pic);

struct EllipticClassification {
    Reduction reduction = Reduction::potentially_good;
    bool multiplicative = false;  // only for potentially multiplicative pictures
    Rational normalized_top_depth;  // d_R moved into [0, 2) by an even integer
    KodairaType kodaira;
    InertiaRep rep;
    RootNumberResult root;
};

// q is the residue characteristic; potentially good pictures need q >= 5.
EllipticClassification classify_elliptic(const ClusterPicture& pic, const Int& q);
nlohmann::json elliptic_to_json(const EllipticClassification& c);

}  // namespace cpic
