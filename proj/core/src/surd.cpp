#include "intquant/surd.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace intquant {

namespace {

// n = s^2 * k with k squarefree; returns (s, k)
std::pair<BigInt, BigInt> square_split(BigInt n) {
    BigInt s = 1, k = 1;
    for (BigInt p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) s *= p;
        if (e % 2 == 1) k *= p;
    }
    k *= n;  // remaining factor is 1 or a prime
    return {s, k};
}

}  // namespace

BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

Surd::Surd(Rational q) {
    if (q != 0) terms_[1] = q;
}

Surd Surd::sqrt_of(const Rational& q) {
    if (q < 0) throw std::invalid_argument("Surd::sqrt_of: negative argument");
    Surd r;
    if (q == 0) return r;
    // sqrt(a/b) = sqrt(a b) / b
    const BigInt a = boost::multiprecision::numerator(q);
    const BigInt b = boost::multiprecision::denominator(q);
    auto [s, k] = square_split(a * b);
    r.terms_[k] = Rational(s, b);
    return r;
}

void Surd::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

Surd& Surd::operator+=(const Surd& o) {
    for (const auto& [k, q] : o.terms_) terms_[k] += q;
    prune();
    return *this;
}

Surd& Surd::operator-=(const Surd& o) {
    for (const auto& [k, q] : o.terms_) terms_[k] -= q;
    prune();
    return *this;
}

Surd& Surd::operator*=(const Surd& o) {
    std::map<BigInt, Rational> out;
    for (const auto& [k1, q1] : terms_)
        for (const auto& [k2, q2] : o.terms_) {
            // sqrt(k1 k2) = g sqrt((k1/g)(k2/g)) for squarefree k1, k2
            const BigInt g = boost::multiprecision::gcd(k1, k2);
            out[(k1 / g) * (k2 / g)] += q1 * q2 * Rational(g);
        }
    terms_ = std::move(out);
    prune();
    return *this;
}

Surd Surd::operator-() const {
    Surd r = *this;
    for (auto& kv : r.terms_) kv.second = -kv.second;
    return r;
}

bool Surd::is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1); }

double Surd::to_double() const {
    double s = 0.0;
    for (const auto& [k, q] : terms_) s += q.convert_to<double>() * std::sqrt(k.convert_to<double>());
    return s;
}

std::string Surd::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, q] : terms_) {
        if (!out.empty()) out += " + ";
        out += q.str();
        if (k != 1) out += "*sqrt(" + k.str() + ")";
    }
    return out;
}

}  // namespace intquant
