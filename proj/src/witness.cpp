#include "cpic/witness.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "cpic/errors.hpp"

namespace cpic {

namespace {

using ZPoly = std::vector<Int>;

void trim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Exact quotient by a monic divisor.
ZPoly divide_exact(ZPoly num, const ZPoly& den) {
    std::size_t dn = den.size() - 1;
    if (num.size() < den.size()) throw IntegrityError("cyclotomic division degree mismatch");
    ZPoly q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        Int c = num[i];
        q[i - dn] = c;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    trim(num);
    if (!num.empty()) throw IntegrityError("cyclotomic division left a remainder");
    return q;
}

ZPoly cyclotomic_polynomial(unsigned long e) {
    ZPoly f(e + 1, 0);
    f[0] = -1;
    f[e] = 1;
    for (const auto& d : divisors(Int(e)))
        if (d < e) f = divide_exact(f, cyclotomic_polynomial(to_ulong(d)));
    return f;
}

unsigned long mod_ul(const Int& a, unsigned long p) {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), p);
    return r.get_ui();
}

unsigned long mulm(unsigned long a, unsigned long b, unsigned long p) {
    return static_cast<unsigned long>((static_cast<unsigned __int128>(a) * b) % p);
}

unsigned long powm(unsigned long a, unsigned long k, unsigned long p) {
    unsigned long r = 1 % p;
    while (k) {
        if (k & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        k >>= 1;
    }
    return r;
}

using FPoly = std::vector<unsigned long>;

void ftrim(FPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FPoly fmod_poly(FPoly a, const FPoly& m, unsigned long p) {
    ftrim(a);
    std::size_t dm = m.size() - 1;
    unsigned long inv = powm(m.back(), p - 2, p);
    while (a.size() > dm) {
        unsigned long c = mulm(a.back(), inv, p);
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = (a[shift + j] + p - mulm(c, m[j], p)) % p;
        ftrim(a);
    }
    return a;
}

FPoly fgcd(FPoly a, FPoly b, unsigned long p) {
    ftrim(a);
    ftrim(b);
    while (!b.empty()) {
        FPoly r = fmod_poly(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

FPoly fmulmod(const FPoly& a, const FPoly& b, const FPoly& m, unsigned long p) {
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulm(a[i], b[j], p)) % p;
    return fmod_poly(std::move(r), m, p);
}

bool irreducible(const FPoly& h, unsigned long p) {
    std::size_t f = h.size() - 1;
    FPoly x{0, 1};
    FPoly xp = fmod_poly(x, h, p);
    for (std::size_t i = 1; i <= f / 2; ++i) {
        FPoly base = xp;
        FPoly acc{1};
        for (unsigned long k = p; k; k >>= 1) {
            if (k & 1) acc = fmulmod(acc, base, h, p);
            base = fmulmod(base, base, h, p);
        }
        xp = acc;
        FPoly diff = xp;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        FPoly g = fgcd(h, diff, p);
        if (g.size() > 1) return false;
    }
    return true;
}

// Counter over F_p^f digit vectors; false when it wraps.
bool next_digits(FPoly& v, unsigned long p) {
    for (auto& d : v) {
        if (++d < p) return true;
        d = 0;
    }
    return false;
}

}  // namespace

CyclotomicRing::CyclotomicRing(unsigned long e) : e_(e) {
    if (e == 0) throw InputError("cyclotomic order must be positive");
    modulus_ = cyclotomic_polynomial(e);
    powers_.reserve(e);
    for (unsigned long k = 0; k < e; ++k) {
        std::vector<Int> mono(k + 1, 0);
        mono[k] = 1;
        powers_.push_back(reduce(std::move(mono)));
    }
}

CyclotomicInt CyclotomicRing::reduce(std::vector<Int> poly) const {
    std::size_t dm = degree();
    for (std::size_t i = poly.size(); i-- > dm;) {
        if (poly[i] == 0) continue;
        Int c = poly[i];
        for (std::size_t j = 0; j <= dm; ++j) poly[i - dm + j] -= c * modulus_[j];
    }
    poly.resize(dm, 0);
    return poly;
}

CyclotomicInt CyclotomicRing::constant(const Int& c) const {
    CyclotomicInt a = zero();
    a[0] = c;
    return a;
}

CyclotomicInt CyclotomicRing::zeta(long k) const {
    long r = k % static_cast<long>(e_);
    if (r < 0) r += static_cast<long>(e_);
    return powers_[static_cast<std::size_t>(r)];
}

CyclotomicInt CyclotomicRing::add(const CyclotomicInt& a, const CyclotomicInt& b) const {
    CyclotomicInt r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

CyclotomicInt CyclotomicRing::sub(const CyclotomicInt& a, const CyclotomicInt& b) const {
    CyclotomicInt r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

CyclotomicInt CyclotomicRing::mul(const CyclotomicInt& a, const CyclotomicInt& b) const {
    std::vector<Int> r(2 * degree(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return reduce(std::move(r));
}

CyclotomicInt CyclotomicRing::galois(const CyclotomicInt& a, unsigned long k) const {
    if (gcd(Int(k), Int(e_)) != 1) throw InputError("galois exponent must be coprime to the order");
    CyclotomicInt r = zero();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        const CyclotomicInt& z = powers_[(i * k) % e_];
        for (std::size_t j = 0; j < r.size(); ++j) r[j] += a[i] * z[j];
    }
    return r;
}

bool CyclotomicRing::is_zero(const CyclotomicInt& a) const {
    return std::all_of(a.begin(), a.end(), [](const Int& c) { return c == 0; });
}

std::optional<Int> CyclotomicRing::as_integer(const CyclotomicInt& a) const {
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] != 0) return std::nullopt;
    return a.empty() ? Int(0) : a[0];
}

std::string CyclotomicRing::str(const CyclotomicInt& a) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Int c = a[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        if (c < 0) c = -c;
        if (i == 0) os << c.get_str();
        else {
            if (c != 1) os << c.get_str() << "*";
            os << "z" << (i > 1 ? "^" + std::to_string(i) : "");
        }
        first = false;
    }
    return first ? "0" : os.str();
}

PiAdicElement pa_add(const CyclotomicRing& ring, const PiAdicElement& a, const PiAdicElement& b) {
    PiAdicElement r = a;
    for (const auto& [m, c] : b.terms) {
        auto it = r.terms.find(m);
        if (it == r.terms.end()) r.terms.emplace(m, c);
        else {
            it->second = ring.add(it->second, c);
            if (ring.is_zero(it->second)) r.terms.erase(it);
        }
    }
    return r;
}

PiAdicElement pa_sub(const CyclotomicRing& ring, const PiAdicElement& a, const PiAdicElement& b) {
    PiAdicElement neg;
    for (const auto& [m, c] : b.terms) neg.terms.emplace(m, ring.sub(ring.zero(), c));
    return pa_add(ring, a, neg);
}

PiAdicElement pa_mul(const CyclotomicRing& ring, const PiAdicElement& a, const PiAdicElement& b) {
    PiAdicElement r;
    for (const auto& [m1, c1] : a.terms)
        for (const auto& [m2, c2] : b.terms) {
            PiAdicElement t;
            t.terms.emplace(m1 + m2, ring.mul(c1, c2));
            r = pa_add(ring, r, t);
        }
    return r;
}

PiAdicElement conjugate(const CyclotomicRing& ring, const PiAdicElement& a, long k) {
    PiAdicElement r;
    const long e = static_cast<long>(ring.order());
    const long kk = ((k % e) + e) % e;
    for (const auto& [m, c] : a.terms)
        r.terms.emplace(m, ring.mul(c, ring.zeta(kk * static_cast<long>(m % ring.order()) % e)));
    return r;
}

std::string pa_str(const CyclotomicRing& ring, const PiAdicElement& a) {
    if (a.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : a.terms) {
        if (!first) os << " + ";
        os << "(" << ring.str(c) << ")*u^" << m;
        first = false;
    }
    return os.str();
}

nlohmann::json pa_to_json(const PiAdicElement& a) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [m, c] : a.terms) {
        nlohmann::json cs = nlohmann::json::array();
        for (const auto& x : c) cs.push_back(x.get_str());
        out.push_back({{"exponent", m}, {"coefficients", cs}});
    }
    return out;
}

ResidueField::ResidueField(const Int& p, unsigned long e) : p_(p), e_(e) {
    if (p < 3 || !is_prime(p)) throw InputError("residue characteristic must be an odd prime, got " + p.get_str());
    if (!p.fits_ulong_p() || p > Int(1UL << 62)) throw InputError("prime too large for the residue field");
    if (e % p == 0) throw WildError("p = " + p.get_str() + " divides the group order " + std::to_string(e));
    pl_ = p.get_ui();

    std::size_t f = 1;
    for (unsigned long q = pl_ % e; q != 1 % e; q = mulm(q, pl_, e)) ++f;

    modulus_.assign(f + 1, 0);
    modulus_[f] = 1;
    if (f > 1) {
        FPoly low(f, 0);
        do {
            if (low[0] == 0) continue;
            std::copy(low.begin(), low.end(), modulus_.begin());
            if (irreducible(modulus_, pl_)) break;
        } while (next_digits(low, pl_));
    }

    Int group = power(p, f) - 1;
    Int cofactor = group / e;
    auto primes = factorize(Int(e));
    FPoly z(f, 0);
    while (next_digits(z, pl_)) {
        FPoly w = powmod(z, cofactor);
        bool exact = true;
        for (const auto& [q, k] : primes) {
            FPoly t = powmod(w, Int(e) / q);
            ftrim(t);
            if (t.size() == 1 && t[0] == 1) exact = false;
        }
        if (exact) {
            omega_ = w;
            break;
        }
    }
    if (omega_.empty() && e > 1) throw IntegrityError("no element of order " + std::to_string(e) + " found");
    omega_powers_.push_back(FPoly{1});
    for (unsigned long j = 1; j < e; ++j) omega_powers_.push_back(mulmod(omega_powers_.back(), omega_));
}

ResidueField::Poly ResidueField::mulmod(const Poly& a, const Poly& b) const {
    return fmulmod(a, b, modulus_, pl_);
}

ResidueField::Poly ResidueField::powmod(Poly a, Int k) const {
    Poly r{1};
    a = fmod_poly(a, modulus_, pl_);
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = mulmod(r, a);
        a = mulmod(a, a);
        k >>= 1;
    }
    return fmod_poly(r, modulus_, pl_);
}

std::vector<unsigned long> ResidueField::reduce(const CyclotomicInt& a) const {
    Poly acc;
    for (std::size_t i = 0; i < a.size(); ++i) {
        unsigned long c = mod_ul(a[i], pl_);
        if (c == 0) continue;
        const Poly& w = omega_powers_[i % e_];
        if (acc.size() < w.size()) acc.resize(w.size(), 0);
        for (std::size_t j = 0; j < w.size(); ++j) acc[j] = (acc[j] + mulm(c, w[j], pl_)) % pl_;
    }
    ftrim(acc);
    return acc;
}

bool ResidueField::is_unit(const CyclotomicInt& a) const { return !reduce(a).empty(); }

bool ResidueField::coincide(const Int& a, unsigned long j, const Int& b) const {
    Poly w = omega_powers_[j % e_];
    unsigned long bb = mod_ul(b, pl_);
    for (auto& x : w) x = mulm(x, bb, pl_);
    if (w.empty()) w.push_back(0);
    w[0] = (w[0] + p_.get_ui() - mod_ul(a, pl_)) % pl_;
    ftrim(w);
    return w.empty();
}

Rational valuation_of_difference(const PiAdicElement& a, const PiAdicElement& b,
                                 const CyclotomicRing& ring, const ResidueField& field) {
    PiAdicElement d = pa_sub(ring, a, b);
    if (d.terms.empty()) throw InputError("valuation of the difference of equal elements");
    const auto& [m, c] = *d.terms.begin();
    if (!field.is_unit(c))
        throw IntegrityError("leading coefficient " + ring.str(c) + " of a difference is not a unit");
    return Rational(Int(m), Int(ring.order()));
}

std::pair<unsigned long, std::vector<Int>> conjugate_difference_denominators(
    const PiAdicElement& root, const CyclotomicRing& ring, const ResidueField& field) {
    unsigned long len = 1;
    while (len < ring.order() && !(conjugate(ring, root, static_cast<long>(len)) == root)) ++len;
    if (len == ring.order() && !(conjugate(ring, root, static_cast<long>(len)) == root))
        throw IntegrityError("conjugation orbit longer than the group order");
    std::vector<Int> dens;
    for (unsigned long k = 1; k < len; ++k)
        dens.push_back(denom(valuation_of_difference(root, conjugate(ring, root, static_cast<long>(k)), ring, field)));
    return {len, dens};
}

std::vector<std::size_t> choose_representatives(const ClusterPicture& pic, const TameAction& action) {
    std::vector<std::size_t> reps;
    std::vector<ClusterId> active{pic.top()};
    while (!active.empty()) {
        ClusterId s = active.back();
        active.pop_back();
        if (!pic.is_proper(s)) {
            reps.push_back(s);
            continue;
        }
        Permutation stab = perm_power(action.generator, action[s].stab_index);
        const auto& kids = pic.children(s);
        std::vector<bool> seen(kids.size(), false);
        std::vector<ClusterId> chosen;
        for (std::size_t i = 0; i < kids.size(); ++i) {
            if (seen[i]) continue;
            chosen.push_back(kids[i]);
            ClusterId c = kids[i];
            do {
                seen[std::find(kids.begin(), kids.end(), c) - kids.begin()] = true;
                c = *cluster_image(pic, stab, c);
            } while (c != kids[i]);
        }
        for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) active.push_back(*it);
    }
    return reps;
}

Int CoefficientTable::at(const ClusterPicture& pic, std::size_t leaf, ClusterId s) const {
    ClusterId child = leaf;
    while (pic.parent(child) && *pic.parent(child) != s) child = *pic.parent(child);
    if (!pic.parent(child)) return 0;
    auto it = values.find({child, s});
    if (it == values.end()) throw IntegrityError("missing coefficient for a representative");
    return it->second;
}

CoefficientTable assign_coefficients(const ClusterPicture& pic, const TameAction& action,
                                     const std::vector<std::size_t>& representatives,
                                     const ResidueField& field) {
    CoefficientTable table;
    table.representatives = representatives;
    std::vector<bool> meets(pic.cluster_count(), false);
    for (auto y : representatives)
        for (std::optional<ClusterId> c = y; c; c = pic.parent(*c)) meets[*c] = true;

    const Int e = action.order;
    const Int p = field.characteristic();
    for (auto s : pic.proper_clusters()) {
        std::vector<ClusterId> slots;
        for (auto c : pic.children(s)) {
            if (!meets[c]) continue;
            if (action[s].orphan == c) table.values[{c, s}] = 0;
            else slots.push_back(c);
        }
        Rational scaled = pic.depth(s) * Rational(e);
        if (!scaled.is_integer()) throw InputError("depth denominator does not divide the group order");
        Int step = gcd(scaled.num() * action[s].stab_index, e);
        std::vector<unsigned long> twists;
        for (Int j = 0; j < e; j += step) twists.push_back(j.get_ui());

        std::vector<Int> vals(slots.size(), 0);
        std::function<bool(std::size_t)> fill = [&](std::size_t i) {
            if (i == slots.size()) return true;
            for (Int v = 1; v < p; ++v) {
                bool ok = true;
                for (std::size_t k = 0; k < i && ok; ++k)
                    for (auto j : twists)
                        if (field.coincide(v, j, vals[k])) {
                            ok = false;
                            break;
                        }
                if (!ok) continue;
                vals[i] = v;
                if (fill(i + 1)) return true;
            }
            return false;
        };
        if (!fill(0))
            throw InputError("p = " + p.get_str() + " is too small: a cluster needs " +
                             std::to_string(slots.size()) + " coefficients with distinct residues up to " +
                             std::to_string(twists.size()) + " twists");
        for (std::size_t i = 0; i < slots.size(); ++i) table.values[{slots[i], s}] = vals[i];
    }
    return table;
}

std::vector<PiAdicElement> build_roots(const ClusterPicture& pic, const TameAction& action,
                                       const CoefficientTable& table, const CyclotomicRing& ring) {
    const Int e(ring.order());
    std::vector<PiAdicElement> roots(pic.leaf_count());
    std::vector<bool> done(pic.leaf_count(), false);
    for (auto y : table.representatives) {
        PiAdicElement alpha;
        for (std::optional<ClusterId> s = pic.parent(y); s; s = pic.parent(*s)) {
            Int a = table.at(pic, y, *s);
            if (a == 0) continue;
            Rational m = pic.depth(*s) * Rational(e);
            if (!m.is_integer() || m.sign() < 0)
                throw IntegrityError("depth " + pic.depth(*s).str() + " is negative or not in (1/e)Z");
            PiAdicElement term;
            term.terms.emplace(to_ulong(m.num()), ring.constant(a));
            alpha = pa_add(ring, alpha, term);
        }
        std::size_t x = y;
        long k = 0;
        do {
            if (done[x]) throw IntegrityError("two representatives share an orbit");
            done[x] = true;
            roots[x] = conjugate(ring, alpha, k);
            x = action.generator[x];
            ++k;
        } while (x != y);
        if (!(conjugate(ring, alpha, k) == alpha))
            throw IntegrityError("root of leaf " + std::to_string(y + 1) + " is not fixed by its stabilizer");
    }
    if (!std::all_of(done.begin(), done.end(), [](bool b) { return b; }))
        throw IntegrityError("representatives do not cover every orbit");
    return roots;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::string format_poly(const IntPoly& f) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = f.size(); i-- > 0;) {
        Int c = f[i];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        if (c < 0) c = -c;
        if (c != 1 || i == 0) os << c.get_str();
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return first ? "0" : os.str();
}

std::pair<ClusterPicture, Int> shift_depths(const ClusterPicture& pic) {
    Rational lowest = pic.depth(pic.top());
    Int m = lowest.sign() < 0 ? ceil(-lowest) : Int(0);
    std::vector<Rational> depths(pic.cluster_count());
    for (auto s : pic.proper_clusters()) depths[s] = pic.depth(s) + Rational(m);
    return {pic.with_depths(depths), m};
}

IntPoly expand_orbit(const std::vector<PiAdicElement>& roots, const Int& p, const CyclotomicRing& ring) {
    std::vector<PiAdicElement> poly(1);
    poly[0].terms.emplace(0, ring.constant(1));
    for (const auto& r : roots) {
        std::vector<PiAdicElement> next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = pa_add(ring, next[i + 1], poly[i]);
            next[i] = pa_sub(ring, next[i], pa_mul(ring, poly[i], r));
        }
        poly = std::move(next);
    }
    const unsigned long e = ring.order();
    IntPoly out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        Int value = 0;
        for (const auto& [m, c] : poly[i].terms) {
            auto k = ring.as_integer(c);
            if (m % e != 0 || !k)
                throw IntegrityError("coefficient of x^" + std::to_string(i) + " does not descend: " +
                                     pa_str(ring, poly[i]));
            value += *k * power(p, m / e);
        }
        out.push_back(value);
    }
    return out;
}

Witness construct_witness(const ClusterPicture& pic, const TameAction& action, const Int& p) {
    for (auto s : pic.proper_clusters())
        if (action.order % denom(pic.depth(s)) != 0)
            throw InputError("depth " + pic.depth(s).str() + " has a denominator not dividing the group order");
    Witness w;
    w.p = p;
    w.e = action.order;
    auto [shifted, m] = shift_depths(pic);
    w.shift = m;
    CyclotomicRing ring(to_ulong(w.e));
    ResidueField field(p, to_ulong(w.e));
    w.table = assign_coefficients(shifted, action, choose_representatives(shifted, action), field);
    w.roots = build_roots(shifted, action, w.table, ring);
    w.shifted = {1};
    for (auto y : w.table.representatives) {
        std::vector<PiAdicElement> orbit;
        std::size_t x = y;
        do {
            orbit.push_back(w.roots[x]);
            x = action.generator[x];
        } while (x != y);
        w.factors.push_back(expand_orbit(orbit, p, ring));
        w.shifted = poly_mul(w.shifted, w.factors.back());
    }
    Int scale = 1;
    Int step = power(p, to_ulong(m));
    for (const auto& c : w.shifted) {
        w.polynomial.push_back(c * scale);
        scale *= step;
    }
    return w;
}

ClusterPicture recover_picture(const Witness& w) {
    CyclotomicRing ring(to_ulong(w.e));
    ResidueField field(w.p, to_ulong(w.e));
    const std::size_t n = w.roots.size();
    std::vector<std::vector<Rational>> v(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            v[i][j] = v[j][i] = valuation_of_difference(w.roots[i], w.roots[j], ring, field) - Rational(w.shift);
    std::map<std::vector<std::size_t>, Rational> balls;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<std::size_t> ball;
            for (std::size_t k = 0; k < n; ++k)
                if (k == i || v[i][k] >= v[i][j]) ball.push_back(k);
            Rational depth = v[i][j];
            for (auto a : ball)
                for (auto b : ball)
                    if (a != b && v[a][b] < depth) depth = v[a][b];
            balls.emplace(std::move(ball), depth);
        }
    }
    std::vector<ClusterSpec> specs;
    for (auto& [members, depth] : balls) specs.push_back({members, depth});
    return ClusterPicture::from_sets(n, std::move(specs));
}

bool round_trip(const ClusterPicture& pic, const Witness& w) {
    return isomorphic(pic, recover_picture(w)).has_value();
}

nlohmann::json witness_to_json(const Witness& w, const CyclotomicRing& ring) {
    auto poly_json = [](const IntPoly& f) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& c : f) a.push_back(c.get_str());
        return a;
    };
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : w.factors) factors.push_back({{"coefficients", poly_json(f)}, {"text", format_poly(f)}});
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [key, a] : w.table.values)
        coeffs.push_back({{"child", key.first}, {"parent", key.second}, {"value", a.get_str()}});
    nlohmann::json reps = nlohmann::json::array();
    for (auto y : w.table.representatives) reps.push_back(y + 1);
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : w.roots) roots.push_back(pa_to_json(r));
    (void)ring;
    return {{"p", w.p.get_str()},
            {"e", w.e.get_str()},
            {"shift", w.shift.get_str()},
            {"coefficients", poly_json(w.polynomial)},
            {"text", format_poly(w.polynomial)},
            {"factors", factors},
            {"representatives", reps},
            {"root_coefficients", coeffs},
            {"roots", roots}};
}

}  // namespace cpic
