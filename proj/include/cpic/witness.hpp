#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cpic/cluster.hpp"
#include "cpic/inertia.hpp"
#include "cpic/numbers.hpp"

namespace cpic {

// Element of Z[zeta_e], coefficients of 1, zeta, ..., zeta^(phi(e)-1).
using CyclotomicInt = std::vector<Int>;

class CyclotomicRing {
public:
    explicit CyclotomicRing(unsigned long e);

    unsigned long order() const { return e_; }
    std::size_t degree() const { return modulus_.size() - 1; }
    // The e-th cyclotomic polynomial, ascending, monic.
    const std::vector<Int>& modulus() const { return modulus_; }

    CyclotomicInt zero() const { return CyclotomicInt(degree(), 0); }
    CyclotomicInt constant(const Int& c) const;
    CyclotomicInt zeta(long k) const;

    CyclotomicInt add(const CyclotomicInt& a, const CyclotomicInt& b) const;
    CyclotomicInt sub(const CyclotomicInt& a, const CyclotomicInt& b) const;
    CyclotomicInt mul(const CyclotomicInt& a, const CyclotomicInt& b) const;
    // zeta -> zeta^k for k coprime to e.
    CyclotomicInt galois(const CyclotomicInt& a, unsigned long k) const;

    bool is_zero(const CyclotomicInt& a) const;
    // The value when a is a rational integer.
    std::optional<Int> as_integer(const CyclotomicInt& a) const;
    std::string str(const CyclotomicInt& a) const;

private:
    CyclotomicInt reduce(std::vector<Int> poly) const;

    unsigned long e_;
    std::vector<Int> modulus_;
    std::vector<CyclotomicInt> powers_;  // zeta^k for 0 <= k < e
};

// Sum of c_m u^m with u^e = p. Exponents are kept as they are, never folded into p.
struct PiAdicElement {
    std::map<unsigned long, CyclotomicInt> terms;

    bool operator==(const PiAdicElement& o) const { return terms == o.terms; }
};

PiAdicElement pa_add(const CyclotomicRing& ring, const PiAdicElement& a, const PiAdicElement& b);
PiAdicElement pa_sub(const CyclotomicRing& ring, const PiAdicElement& a, const PiAdicElement& b);
PiAdicElement pa_mul(const CyclotomicRing& ring, const PiAdicElement& a, const PiAdicElement& b);
// Image under u -> zeta^k u.
PiAdicElement conjugate(const CyclotomicRing& ring, const PiAdicElement& a, long k);
std::string pa_str(const CyclotomicRing& ring, const PiAdicElement& a);
nlohmann::json pa_to_json(const PiAdicElement& a);

// F_p[x]/(h) for an irreducible h of degree ord_e(p), with omega of exact order e.
// Reducing zeta to omega is reduction modulo a prime above p.
class ResidueField {
public:
    ResidueField(const Int& p, unsigned long e);

    const Int& characteristic() const { return p_; }
    std::size_t degree() const { return modulus_.size() - 1; }
    const std::vector<unsigned long>& modulus() const { return modulus_; }
    const std::vector<unsigned long>& omega() const { return omega_; }

    std::vector<unsigned long> reduce(const CyclotomicInt& a) const;
    bool is_unit(const CyclotomicInt& a) const;
    // Whether a - omega^j b vanishes, for integers a, b.
    bool coincide(const Int& a, unsigned long j, const Int& b) const;

private:
    using Poly = std::vector<unsigned long>;
    Poly mulmod(const Poly& a, const Poly& b) const;
    Poly powmod(Poly a, Int k) const;

    Int p_;
    unsigned long pl_;
    unsigned long e_;
    Poly modulus_;
    Poly omega_;
    std::vector<Poly> omega_powers_;
};

// Orbit length of a root under u -> zeta u, and denom v(r - conjugate_k(r)) for 0 < k < length.
std::pair<unsigned long, std::vector<Int>> conjugate_difference_denominators(
    const PiAdicElement& root, const CyclotomicRing& ring, const ResidueField& field);

// u-adic valuation of a - b divided by e; throws IntegrityError when the leading
// coefficient is not a unit and InputError when a == b.
Rational valuation_of_difference(const PiAdicElement& a, const PiAdicElement& b,
                                 const CyclotomicRing& ring, const ResidueField& field);

// One leaf per orbit, chosen top-down so that conjugate distinct clusters never both meet it.
std::vector<std::size_t> choose_representatives(const ClusterPicture& pic, const TameAction& action);

struct CoefficientTable {
    std::vector<std::size_t> representatives;
    // (child, parent) -> coefficient shared by the representatives inside the child.
    std::map<std::pair<ClusterId, ClusterId>, Int> values;

    Int at(const ClusterPicture& pic, std::size_t leaf, ClusterId s) const;
};

CoefficientTable assign_coefficients(const ClusterPicture& pic, const TameAction& action,
                                     const std::vector<std::size_t>& representatives,
                                     const ResidueField& field);

// Conjugates of the representative roots, indexed by leaf. Depths must be non-negative.
std::vector<PiAdicElement> build_roots(const ClusterPicture& pic, const TameAction& action,
                                       const CoefficientTable& table, const CyclotomicRing& ring);

// Ascending coefficients.
using IntPoly = std::vector<Int>;
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
std::string format_poly(const IntPoly& f);

// Smallest m >= 0 with every depth + m >= 0, and the shifted picture.
std::pair<ClusterPicture, Int> shift_depths(const ClusterPicture& pic);

struct Witness {
    Int p;
    Int e;
    Int shift;                     // depths were raised by this before construction
    CoefficientTable table;
    std::vector<PiAdicElement> roots;
    std::vector<IntPoly> factors;  // one per orbit of leaves, for the shifted depths
    IntPoly shifted;               // product of the factors
    IntPoly polynomial;            // shifted(p^shift x): integer polynomial with the input depths
};

// Expands one orbit product and checks that it descends to Z.
IntPoly expand_orbit(const std::vector<PiAdicElement>& roots, const Int& p, const CyclotomicRing& ring);

Witness construct_witness(const ClusterPicture& pic, const TameAction& action, const Int& p);
// Picture of the roots, with the shift undone.
ClusterPicture recover_picture(const Witness& w);
bool round_trip(const ClusterPicture& pic, const Witness& w);
nlohmann::json witness_to_json(const Witness& w, const CyclotomicRing& ring);

}  // namespace cpic
