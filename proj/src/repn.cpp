#include "cpic/repn.hpp"

#include <algorithm>
#include <sstream>

#include "cpic/errors.hpp"

namespace cpic {

RhoSum RhoSum::rho(const Int& d, const Rational& mult) {
    RhoSum r;
    r.add(d, mult);
    return r;
}

void RhoSum::add(const Int& d, const Rational& mult) {
    if (d < 1) throw IntegrityError("rho order must be positive, got " + d.get_str());
    if (mult.is_zero()) return;
    auto [it, fresh] = terms_.emplace(d, mult);
    if (!fresh) {
        it->second += mult;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rational RhoSum::multiplicity(const Int& d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational RhoSum::dim() const {
    Rational s;
    for (const auto& [d, m] : terms_) s += m * Rational(euler_phi(d));
    return s;
}

bool RhoSum::nonnegative() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.sign() > 0; });
}

bool RhoSum::integral() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_integer(); });
}

std::string RhoSum::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, m] : terms_) {
        Rational a = m;
        if (first) {
            if (a.sign() < 0) os << "-";
        } else {
            os << (a.sign() < 0 ? " ⊖ " : " ⊕ ");
        }
        if (a.sign() < 0) a = -a;
        if (a != Rational(1)) os << (a.is_integer() ? a.str() : "(" + a.str() + ")");
        os << "ρ" << d.get_str();
        first = false;
    }
    return os.str();
}

nlohmann::json RhoSum::to_json() const {
    nlohmann::json rho = nlohmann::json::object();
    for (const auto& [d, m] : terms_) rho[d.get_str()] = m.str();
    return {{"rho", rho}};
}

RhoSum& RhoSum::operator+=(const RhoSum& o) {
    for (const auto& [d, m] : o.terms_) add(d, m);
    return *this;
}

RhoSum& RhoSum::operator-=(const RhoSum& o) {
    for (const auto& [d, m] : o.terms_) add(d, -m);
    return *this;
}

RhoSum operator*(const Rational& k, const RhoSum& r) {
    RhoSum out;
    for (const auto& [d, m] : r.terms_) out.add(d, k * m);
    return out;
}

std::string to_string(EpsilonKind k) {
    switch (k) {
        case EpsilonKind::zero: return "zero";
        case EpsilonKind::trivial: return "trivial";
        case EpsilonKind::order_two: return "order-two";
    }
    return "?";
}

Rational lambda(const ClusterPicture& pic, const TameAction& action, ClusterId s) {
    if (!pic.is_proper(s)) throw InputError("lambda needs a proper cluster");
    Rational odd(static_cast<long>(odd_children(pic, s).size()));
    return Rational(1, 2) * Rational(action[s].stab_index) * (mu(pic, s) + pic.depth(s) * odd);
}

Int gamma_order(const ClusterPicture& pic, const TameAction& action, ClusterId s, const std::optional<Int>& p) {
    Rational l = lambda(pic, action, s);
    if (l.is_zero()) return 1;
    Int t = denom(l);
    if (p) {
        if (!is_prime(*p)) throw InputError("p must be prime, got " + p->get_str());
        while (t % *p == 0) t /= *p;
    }
    return t;
}

EpsilonKind epsilon_kind(const ClusterPicture& pic, const TameAction& action, ClusterId s) {
    if (!pic.is_proper(s)) throw InputError("epsilon needs a proper cluster");
    if (pic.size(s) % 2 == 1) return EpsilonKind::zero;
    Valuation v = v_q(2, Rational(action[s].stab_index) * mu(pic, s));
    return v >= Valuation(Rational(1)) ? EpsilonKind::trivial : EpsilonKind::order_two;
}

ClusterRepData cluster_rep_data(const ClusterPicture& pic, const TameAction& action, ClusterId s,
                                const std::optional<Int>& p) {
    ClusterRepData d;
    d.cluster = s;
    d.n = action[s].stab_index;
    d.n_prime = denom(pic.depth(s) * Rational(d.n));
    d.odd_count = static_cast<unsigned long>(odd_children(pic, s).size());
    d.floor_ratio = d.odd_count / d.n_prime;
    d.has_orphan = action[s].orphan.has_value();
    d.mu = mu(pic, s);
    d.lambda = lambda(pic, action, s);
    d.t = gamma_order(pic, action, s, p);
    d.epsilon = epsilon_kind(pic, action, s);
    if (action[s].child_orbit_len != 0 && action[s].child_orbit_len != d.n_prime)
        throw IntegrityError("child orbit length " + action[s].child_orbit_len.get_str() +
                             " differs from denom(d_s n_s) = " + d.n_prime.get_str());
    return d;
}

namespace {

// Primes q with v_q(d) = v_q(t) > 0, with that common exponent.
std::vector<std::pair<Int, unsigned long>> matched_primes(const Int& d, const Int& t) {
    std::vector<std::pair<Int, unsigned long>> out;
    for (const auto& [q, k] : factorize(t))
        if (multiplicity(q, d) == k) out.emplace_back(q, k);
    return out;
}

}  // namespace

std::vector<Int> twist_orders(const Int& d, const Int& t) {
    std::vector<Int> out{lcm(d, t)};
    for (const auto& [q, k] : matched_primes(d, t)) {
        std::vector<Int> next;
        for (const auto& s : out) {
            Int x = s;
            for (unsigned long m = 0; m <= k; ++m) {
                next.push_back(x);
                x /= q;
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Rational twist_coefficient(const Int& d, const Int& t, const Int& s) {
    Rational a(euler_phi(d), euler_phi(lcm(d, t)));
    for (const auto& [q, k] : matched_primes(d, t))
        if (multiplicity(q, s) == k) a *= Rational(q - 2, q - 1);
    return a;
}

Rational induction_coefficient(const Int& n, const Int& s) {
    Int g = gcd_inf(n, s);
    return Rational(g * euler_phi(s), euler_phi(g * s));
}

RhoSum twist(const Int& t, const Int& d) {
    RhoSum out;
    for (const auto& s : twist_orders(d, t)) out.add(s, twist_coefficient(d, t, s));
    return out;
}

RhoSum induce(const RhoSum& r, const Int& n) {
    if (n < 1) throw InputError("induction index must be positive");
    RhoSum out;
    for (const auto& [d, m] : r.terms()) {
        Int g = gcd_inf(n, d);
        Rational b = induction_coefficient(n, d);
        for (const auto& n1 : divisors(n / g)) out.add(d * g * n1, m * b);
    }
    return out;
}

RhoSum ind_epsilon(EpsilonKind kind, const Int& n) {
    RhoSum out;
    if (kind == EpsilonKind::trivial) {
        for (const auto& m : divisors(n)) out.add(m, 1);
    } else if (kind == EpsilonKind::order_two) {
        for (const auto& m : divisors(2 * n))
            if (n % m != 0) out.add(m, 1);
    }
    return out;
}

IndVDetail ind_V_detail(const ClusterRepData& data) {
    IndVDetail out;
    out.data = data;
    const Int& n = data.n;
    const Int& t = data.t;
    for (const auto& d : divisors(data.n_prime)) {
        for (const auto& s : twist_orders(d, t)) {
            IndVTerm row;
            row.d = d;
            row.t = t;
            row.s = s;
            row.g = gcd_inf(n, s);
            row.alpha = twist_coefficient(d, t, s);
            row.beta = induction_coefficient(n, s);
            row.n1 = divisors(n / row.g);
            for (const auto& n1 : row.n1) {
                row.orders.push_back(s * row.g * n1);
                out.line1.add(s * row.g * n1, Rational(data.floor_ratio) * row.alpha * row.beta);
            }
            out.terms.push_back(std::move(row));
        }
    }
    Int rest = data.odd_count - data.n_prime * data.floor_ratio - 1;
    if (rest != 0) {
        Int g = gcd_inf(n, t);
        Rational c = Rational(rest) * induction_coefficient(n, t) / Rational(euler_phi(t));
        for (const auto& n2 : divisors(n / g)) out.line2.add(t * n2 * g, c);
    }
    out.line3 = ind_epsilon(data.epsilon, n);
    out.result = out.line1 + out.line2 - out.line3;
    return out;
}

RhoSum ind_V(const ClusterPicture& pic, const TameAction& action, ClusterId s, const std::optional<Int>& p) {
    return ind_V_detail(cluster_rep_data(pic, action, s, p)).result;
}

RhoSum oracle_ind_V(const ClusterPicture& pic, const TameAction& action, ClusterId s,
                    const std::optional<Int>& p, const Int& gamma_unit) {
    if (!pic.is_proper(s)) throw InputError("oracle needs a proper cluster");
    const Int n = action[s].stab_index;
    const Int t = gamma_order(pic, action, s, p);
    if (gcd(gamma_unit, t) != 1) throw InputError("gamma_unit must be coprime to the order of gamma");

    // Characters of C_E are indexed by Z/E; the subgroup generated by g^n has order m = E/n.
    const Int E = lcm(action.order, 2 * n * t);
    const unsigned long m = to_ulong(E / n);
    std::vector<Int> count(m, 0);

    Permutation h = perm_power(action.generator, n);
    std::vector<ClusterId> odd = odd_children(pic, s);
    std::vector<bool> seen(odd.size(), false);
    for (std::size_t i = 0; i < odd.size(); ++i) {
        if (seen[i]) continue;
        unsigned long len = 0;
        ClusterId c = odd[i];
        do {
            auto pos = std::find(odd.begin(), odd.end(), c);
            if (pos == odd.end()) throw IntegrityError("stabilizer moves an odd child outside the cluster");
            seen[pos - odd.begin()] = true;
            auto img = cluster_image(pic, h, c);
            if (!img) throw IntegrityError("stabilizer does not act on children");
            c = *img;
            ++len;
        } while (c != odd[i]);
        if (m % len != 0) throw IntegrityError("orbit length does not divide the stabilizer order");
        for (unsigned long k = 0; k < len; ++k) count[k * (m / len)] += 1;
    }
    count[0] -= 1;

    unsigned long shift = to_ulong((Int(m) / t * gamma_unit) % Int(m));
    std::vector<Int> twisted(m, 0);
    for (unsigned long j = 0; j < m; ++j) twisted[(j + shift) % m] = count[j];

    switch (epsilon_kind(pic, action, s)) {
        case EpsilonKind::zero: break;
        case EpsilonKind::trivial: twisted[0] -= 1; break;
        case EpsilonKind::order_two: twisted[m / 2] -= 1; break;
    }

    // A character of the subgroup induces to the sum of all characters restricting to it.
    std::map<Int, Int> by_order;
    const unsigned long En = to_ulong(E);
    for (unsigned long j = 0; j < m; ++j) {
        if (twisted[j] == 0) continue;
        for (unsigned long J = j; J < En; J += m) by_order[E / gcd(Int(J), E)] += twisted[j];
    }
    RhoSum out;
    for (const auto& [d, c] : by_order) out.add(d, Rational(c, euler_phi(d)));
    return out;
}

std::vector<ClusterId> representative_clusters(const ClusterPicture& pic, const TameAction& action) {
    std::vector<ClusterId> out;
    std::vector<bool> covered(pic.cluster_count(), false);
    for (auto s : pic.proper_clusters()) {
        if (covered[s]) continue;
        ClusterId c = s;
        do {
            covered[c] = true;
            c = *cluster_image(pic, action.generator, c);
        } while (c != s);
        if (!is_ubereven(pic, s)) out.push_back(s);
    }
    return out;
}

InertiaRep assemble_H1(const ClusterPicture& pic, const TameAction& action, const std::optional<Int>& p) {
    if (pic.leaf_count() < 3) throw InputError("a hyperelliptic curve needs at least 3 roots");
    InertiaRep rep;
    rep.e = action.order;
    rep.representatives = representative_clusters(pic, action);
    for (auto s : rep.representatives) {
        RhoSum v = ind_V(pic, action, s, p);
        if (!v.integral() || !v.nonnegative())
            throw IntegrityError("induced representation of a cluster is " + v.str());
        rep.h1_ab += v;
        rep.h1_t += ind_epsilon(epsilon_kind(pic, action, s), action[s].stab_index);
    }
    rep.h1_t -= ind_epsilon(epsilon_kind(pic, action, pic.top()), 1);
    if (!rep.h1_ab.nonnegative() || !rep.h1_t.nonnegative() || !rep.h1_t.integral())
        throw IntegrityError("negative multiplicity in H1: ab = " + rep.h1_ab.str() + ", t = " + rep.h1_t.str());
    Rational two_g(2 * static_cast<long>((pic.leaf_count() - 1) / 2));
    if (rep.h1_ab.dim() + Rational(2) * rep.h1_t.dim() != two_g)
        throw IntegrityError("dimension of H1 is not 2g: ab = " + rep.h1_ab.str() + ", t = " + rep.h1_t.str());
    return rep;
}

nlohmann::json rep_to_json(const InertiaRep& rep) {
    return {{"e", rep.e.get_str()},
            {"h1_ab", rep.h1_ab.to_json()},
            {"h1_t", rep.h1_t.to_json()},
            {"sp2_factor", !rep.h1_t.is_zero()}};
}

}  // namespace cpic
