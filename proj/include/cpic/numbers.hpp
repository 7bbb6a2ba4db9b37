#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cpic {

using Int = mpz_class;

// Exact rational, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}
    Rational(const Int& n) : v_(n) {}
    Rational(const Int& n, const Int& d);

    // Accepts "a" or "a/b" with optional leading minus.
    static Rational parse(std::string_view text);

    const Int& num() const { return v_.get_num(); }
    const Int& den() const { return v_.get_den(); }
    bool is_integer() const { return den() == 1; }
    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    std::string str() const { return v_.get_str(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& x);

// A valuation value: a rational or +infinity (the valuation of zero).
class Valuation {
public:
    Valuation(const Rational& v) : v_(v) {}
    static Valuation infinity() { return Valuation(); }

    bool is_infinite() const { return !v_.has_value(); }
    const Rational& value() const;
    std::string str() const { return v_ ? v_->str() : "inf"; }

    friend bool operator==(const Valuation& a, const Valuation& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);

private:
    Valuation() = default;
    std::optional<Rational> v_;
};

Int denom(const Rational& x);
Int floor(const Rational& x);
Int ceil(const Rational& x);

bool is_prime(const Int& n);

// Exponent of q in the nonzero integer n.
unsigned long multiplicity(const Int& q, const Int& n);

// q-adic valuation; q must be prime.
Valuation v_q(const Int& q, const Rational& x);

// Minimal divisor g of n with gcd(n/g, d) = 1.
Int gcd_inf(const Int& n, const Int& d);

Int euler_phi(const Int& n);

// Legendre symbol (a/q) for an odd prime q.
int legendre(const Int& a, const Int& q);

Int lcm_all(const std::vector<Int>& xs);

Int power(const Int& base, unsigned long exp);

std::vector<std::pair<Int, unsigned long>> factorize(const Int& n);

// Positive divisors in increasing order.
std::vector<Int> divisors(const Int& n);

// Converts to a machine size; throws IntegrityError when it does not fit.
unsigned long to_ulong(const Int& n);

}  // namespace cpic
