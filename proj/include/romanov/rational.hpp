#pragma once

#include <compare>
#include <string>

#include <gmpxx.h>

namespace romanov {

using BigInt = mpz_class;

// Exact rational kept in lowest terms with a positive denominator.
class ExactRational {
public:
    ExactRational() = default;
    ExactRational(long value) : q_(value) {}
    ExactRational(const BigInt& value) : q_(value) {}
    ExactRational(const BigInt& numerator, const BigInt& denominator);
    explicit ExactRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }

    bool is_integer() const { return q_.get_den() == 1; }
    BigInt floor() const;
    double to_double() const;
    // "n" for integers, "n/d" otherwise.
    std::string to_string() const;

    const mpq_class& raw() const { return q_; }

    ExactRational& operator+=(const ExactRational& o) { q_ += o.q_; return *this; }
    ExactRational& operator-=(const ExactRational& o) { q_ -= o.q_; return *this; }
    ExactRational& operator*=(const ExactRational& o) { q_ *= o.q_; return *this; }
    ExactRational& operator/=(const ExactRational& o);

    friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
    friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
    friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
    friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b)
    {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class q_;
};

}  // namespace romanov
