#include "gk/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

namespace gk {

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

Scalar Scalar::i() { return Scalar(0, 1); }

Scalar Scalar::fraction(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::conj() const { return Scalar(re_, -im_); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero scalar");
    mpq_class n = re_ * re_ + im_ * im_;
    return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (sgn(o.im_) == 0) {
        if (sgn(o.re_) == 0) throw std::domain_error("division by zero scalar");
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

Scalar Scalar::operator-() const { return Scalar(-re_, -im_); }

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    int c = cmp(a.re_, b.re_);
    if (c == 0) c = cmp(a.im_, b.im_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Scalar::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (sgn(re_) != 0) out = re_.get_str();
    if (sgn(im_) != 0) {
        mpq_class mag = abs(im_);
        if (!out.empty()) out += sgn(im_) < 0 ? "-" : "+";
        else if (sgn(im_) < 0) out += "-";
        out += mag.get_str();
        out += " i";
    }
    return out;
}

namespace {

mpq_class parse_rational(std::string_view t) {
    std::string s(t);
    if (s.empty()) throw std::invalid_argument("empty rational");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
            throw std::invalid_argument("bad rational '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty scalar");
    if (s.back() != 'i') return Scalar(parse_rational(s));

    s.pop_back();
    // Split "re+im" at the last sign that is not the leading character.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    }
    std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_part = split == std::string::npos ? s : s.substr(split);
    if (im_part.empty() || im_part == "+") im_part = "1";
    else if (im_part == "-") im_part = "-1";
    mpq_class re = re_part.empty() ? mpq_class(0) : parse_rational(re_part);
    return Scalar(re, parse_rational(im_part));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace gk
