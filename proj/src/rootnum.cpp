#include "cpic/rootnum.hpp"

#include "cpic/errors.hpp"

namespace cpic {

int w_factor(const Int& q, const Int& e) {
    if (q < 3 || !is_prime(q)) throw InputError("q must be an odd prime, got " + q.get_str());
    if (e < 1) throw InputError("character order must be positive");
    auto symbol = [&](const Int& a, const Int& prime) {
        int s = legendre(a, prime);
        if (s == 0) throw InputError("q = " + q.get_str() + " is not coprime to the character order " + e.get_str());
        return s;
    };
    if (e == 1) return 1;
    auto fac = factorize(e);
    if (fac.size() == 1 && fac[0].first != 2) return symbol(q, fac[0].first);
    if (e == 2) return symbol(-1, q);
    if (fac.size() == 2 && fac[0].first == 2 && fac[0].second == 1 && fac[1].first % 4 == 3) return symbol(-1, q);
    if (e == 4) return symbol(-2, q);
    if (fac.size() == 1 && fac[0].second >= 3) return symbol(2, q);
    return 1;
}

int toric_quadratic_parity(const ClusterPicture& pic, const TameAction& action) {
    Int count = 0;
    for (auto s : representative_clusters(pic, action)) {
        if (pic.size(s) % 2 != 0) continue;
        if (v_q(2, Rational(action[s].stab_index) * mu(pic, s)) >= Valuation(Rational(1))) count += 1;
        count += action[s].stab_index;
    }
    return mpz_odd_p(count.get_mpz_t()) ? 1 : 0;
}

std::vector<std::pair<Int, Int>> pair_counts(const RhoSum& ab) {
    std::vector<std::pair<Int, Int>> out;
    for (const auto& [d, a] : ab.terms()) {
        if (!a.is_integer() || a.sign() < 0)
            throw IntegrityError("abelian part has multiplicity " + a.str() + " at order " + d.get_str());
        Int chars = a.num() * euler_phi(d);
        if (d <= 2 && mpz_odd_p(chars.get_mpz_t()))
            throw IntegrityError("odd number of characters of order " + d.get_str() + " in the abelian part");
        out.emplace_back(d, chars / 2);
    }
    return out;
}

RootNumberResult root_number(const InertiaRep& rep, const Int& q, int toric_parity) {
    RootNumberResult r;
    for (const auto& [d, m] : pair_counts(rep.h1_ab)) {
        RootFactor f{d, w_factor(q, d), m, false};
        if (f.value < 0 && mpz_odd_p(m.get_mpz_t())) r.sign = -r.sign;
        r.factors.push_back(f);
    }
    if (toric_parity != 0) {
        RootFactor f{2, w_factor(q, 2), toric_parity, true};
        if (f.value < 0) r.sign = -r.sign;
        r.factors.push_back(f);
    }
    r.ambiguous = !rep.h1_t.is_zero();
    return r;
}

nlohmann::json root_number_to_json(const RootNumberResult& r) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : r.factors)
        factors.push_back({{"e", f.e.get_str()}, {"value", f.value}, {"mult", f.exponent.get_str()}, {"toric", f.toric}});
    return {{"sign", r.sign}, {"ambiguous", r.ambiguous}, {"factors", factors}};
}

}  // namespace cpic
