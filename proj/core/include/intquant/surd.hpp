#pragma once

#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace intquant {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact real number sum_i q_i sqrt(r_i) with rational q_i and distinct squarefree
// integers r_i >= 1. Enough for factorial-ratio matrix elements.
class Surd {
public:
    Surd() = default;
    Surd(Rational q);  // NOLINT(google-explicit-constructor)
    Surd(long long q) : Surd(Rational(q)) {}  // NOLINT(google-explicit-constructor)

    // sqrt(q), q >= 0. Factorization is by trial division, which is quick for
    // numbers whose prime factors are small (factorials and their ratios).
    static Surd sqrt_of(const Rational& q);

    Surd& operator+=(const Surd& o);
    Surd& operator-=(const Surd& o);
    Surd& operator*=(const Surd& o);
    friend Surd operator+(Surd a, const Surd& b) { return a += b; }
    friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
    friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
    Surd operator-() const;
    friend bool operator==(const Surd& a, const Surd& b) { return a.terms_ == b.terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    double to_double() const;
    std::string str() const;
    const std::map<BigInt, Rational>& terms() const { return terms_; }

private:
    void prune();
    std::map<BigInt, Rational> terms_;  // radical -> coefficient
};

BigInt factorial(int n);

}  // namespace intquant
