#include "cpic/numbers.hpp"

#include <algorithm>
#include <cctype>

#include "cpic/errors.hpp"

namespace cpic {

Rational::Rational(const Int& n, const Int& d) {
    if (d == 0) throw InputError("zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto digits = [](std::string_view s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && s[0] == '-') i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view a = text.substr(0, slash);
    if (!digits(a, true)) throw InputError("malformed rational '" + std::string(text) + "'");
    Int n{std::string(a)};
    if (slash == std::string_view::npos) return Rational(n);
    std::string_view b = text.substr(slash + 1);
    if (!digits(b, false)) throw InputError("malformed rational '" + std::string(text) + "'");
    Int d{std::string(b)};
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(n, d);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw InputError("division by zero");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

const Rational& Valuation::value() const {
    if (!v_) throw IntegrityError("value of an infinite valuation");
    return *v_;
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() || b.is_infinite()) {
        if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
        return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return *a.v_ <=> *b.v_;
}

Int denom(const Rational& x) { return x.den(); }

Int floor(const Rational& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    return q;
}

Int ceil(const Rational& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    return q;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

unsigned long multiplicity(const Int& q, const Int& n) {
    if (n == 0) throw IntegrityError("multiplicity of a prime in zero");
    if (q < 2) throw InputError("multiplicity base must be at least 2");
    Int m = abs(n);
    unsigned long k = 0;
    while (mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) {
        m /= q;
        ++k;
    }
    return k;
}

Valuation v_q(const Int& q, const Rational& x) {
    if (!is_prime(q)) throw InputError("v_q needs a prime, got " + q.get_str());
    if (x.is_zero()) return Valuation::infinity();
    long a = static_cast<long>(multiplicity(q, x.num()));
    long b = static_cast<long>(multiplicity(q, x.den()));
    return Valuation(Rational(a - b));
}

Int gcd_inf(const Int& n, const Int& d) {
    if (n < 1 || d < 1) throw InputError("gcd_inf needs positive arguments");
    Int m = n;
    for (Int h = gcd(m, d); h > 1; h = gcd(m, d)) m /= h;
    return n / m;
}

Int euler_phi(const Int& n) {
    if (n < 1) throw InputError("euler_phi needs a positive argument");
    Int r = n;
    for (const auto& [q, k] : factorize(n)) r = r / q * (q - 1);
    return r;
}

int legendre(const Int& a, const Int& q) {
    if (q < 3 || !is_prime(q)) throw InputError("legendre needs an odd prime, got " + q.get_str());
    Int r = a % q;
    if (r < 0) r += q;
    return mpz_legendre(r.get_mpz_t(), q.get_mpz_t());
}

Int lcm_all(const std::vector<Int>& xs) {
    if (xs.empty()) throw InputError("lcm of an empty list");
    Int r = 1;
    for (const auto& x : xs) {
        if (x < 1) throw InputError("lcm_all needs positive integers");
        r = lcm(r, x);
    }
    return r;
}

Int power(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

std::vector<std::pair<Int, unsigned long>> factorize(const Int& n) {
    if (n < 1) throw InputError("factorize needs a positive argument");
    std::vector<std::pair<Int, unsigned long>> out;
    Int m = n;
    for (Int q = 2; q * q <= m; ++q) {
        if (mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) {
            unsigned long k = 0;
            while (mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) {
                m /= q;
                ++k;
            }
            out.emplace_back(q, k);
        }
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> ds{1};
    for (const auto& [q, k] : factorize(n)) {
        std::size_t base = ds.size();
        Int qp = 1;
        for (unsigned long i = 1; i <= k; ++i) {
            qp *= q;
            for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * qp);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

unsigned long to_ulong(const Int& n) {
    if (n < 0 || !n.fits_ulong_p()) throw IntegrityError("integer " + n.get_str() + " out of machine range");
    return n.get_ui();
}

}  // namespace cpic
