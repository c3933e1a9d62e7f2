#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace gk {

// Exact Gaussian rational re + im*i. Both parts are kept canonical (reduced
// fractions, positive denominators) by GMP after every operation.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    Scalar(mpq_class re, mpq_class im = 0);

    static Scalar i();
    static Scalar fraction(long num, long den);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    Scalar conj() const;
    // Throws std::domain_error on zero.
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const;

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    // Lexicographic on (re, im); only used for canonical orderings.
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

    // "a/b+c/d i" with reduced fractions, "0" for zero, denominators of 1
    // omitted, pure imaginary values written as "c/d i".
    std::string str() const;
    // Accepts everything str() produces, plus "i", "-i", and decimal-free
    // integer or fraction forms with optional spaces around the sign.
    static Scalar parse(std::string_view text);

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace gk
