#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpic/cluster.hpp"
#include "cpic/inertia.hpp"
#include "cpic/numbers.hpp"

namespace cpic {

// Formal sum of rho_d, the direct sum of all characters of exact order d.
class RhoSum {
public:
    RhoSum() = default;
    static RhoSum rho(const Int& d, const Rational& mult = 1);

    void add(const Int& d, const Rational& mult);
    Rational multiplicity(const Int& d) const;
    const std::map<Int, Rational>& terms() const { return terms_; }

    // Sum of multiplicity * phi(d).
    Rational dim() const;
    bool is_zero() const { return terms_.empty(); }
    bool nonnegative() const;
    bool integral() const;

    std::string str() const;
    nlohmann::json to_json() const;

    RhoSum& operator+=(const RhoSum& o);
    RhoSum& operator-=(const RhoSum& o);
    friend RhoSum operator+(RhoSum a, const RhoSum& b) { return a += b; }
    friend RhoSum operator-(RhoSum a, const RhoSum& b) { return a -= b; }
    friend RhoSum operator*(const Rational& k, const RhoSum& r);
    friend bool operator==(const RhoSum& a, const RhoSum& b) { return a.terms_ == b.terms_; }

private:
    std::map<Int, Rational> terms_;
};

enum class EpsilonKind { zero, trivial, order_two };
std::string to_string(EpsilonKind k);

struct ClusterRepData {
    ClusterId cluster = 0;
    Int n = 1;             // [I : I_s]
    Int n_prime = 1;       // denom(d_s * n)
    Int odd_count = 0;     // |s^odd|
    Int floor_ratio = 0;   // floor(|s^odd| / n')
    bool has_orphan = false;
    Rational mu;
    Rational lambda;
    Int t = 1;             // order of gamma
    EpsilonKind epsilon = EpsilonKind::zero;
};

Rational lambda(const ClusterPicture& pic, const TameAction& action, ClusterId s);
// Prime-to-p part of denom(lambda); without p every prime counts.
Int gamma_order(const ClusterPicture& pic, const TameAction& action, ClusterId s,
                const std::optional<Int>& p = std::nullopt);
EpsilonKind epsilon_kind(const ClusterPicture& pic, const TameAction& action, ClusterId s);
ClusterRepData cluster_rep_data(const ClusterPicture& pic, const TameAction& action, ClusterId s,
                                const std::optional<Int>& p = std::nullopt);

// Orders s appearing when twisting rho_d by a character of order t.
std::vector<Int> twist_orders(const Int& d, const Int& t);
Rational twist_coefficient(const Int& d, const Int& t, const Int& s);
Rational induction_coefficient(const Int& n, const Int& s);  // g phi(s) / phi(g s), g = gcd_inf(n, s)

RhoSum twist(const Int& t, const Int& d);
RhoSum induce(const RhoSum& r, const Int& n);
RhoSum ind_epsilon(EpsilonKind kind, const Int& n);

// One (d, t, s) row of the first line of the closed formula.
struct IndVTerm {
    Int d, t, s;
    Int g;                  // gcd_inf(n, s)
    Rational alpha, beta;
    std::vector<Int> n1;    // divisors of n / g
    std::vector<Int> orders;  // s * g * n1
};

struct IndVDetail {
    ClusterRepData data;
    std::vector<IndVTerm> terms;
    RhoSum line1, line2, line3;  // result = line1 + line2 - line3
    RhoSum result;
};

IndVDetail ind_V_detail(const ClusterRepData& data);
RhoSum ind_V(const ClusterPicture& pic, const TameAction& action, ClusterId s,
             const std::optional<Int>& p = std::nullopt);

// Same quantity by explicit character arithmetic on a finite cyclic quotient of inertia.
// gamma_unit picks the order-t character (must be coprime to t).
RhoSum oracle_ind_V(const ClusterPicture& pic, const TameAction& action, ClusterId s,
                    const std::optional<Int>& p = std::nullopt, const Int& gamma_unit = 1);

struct InertiaRep {
    RhoSum h1_ab;
    RhoSum h1_t;  // tensored with sp(2)
    Int e = 1;
    std::vector<ClusterId> representatives;  // proper non-ubereven clusters, one per orbit
};

// Proper non-ubereven clusters, first in preorder within each orbit.
std::vector<ClusterId> representative_clusters(const ClusterPicture& pic, const TameAction& action);
InertiaRep assemble_H1(const ClusterPicture& pic, const TameAction& action,
                       const std::optional<Int>& p = std::nullopt);
nlohmann::json rep_to_json(const InertiaRep& rep);

}  // namespace cpic
