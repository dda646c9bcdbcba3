#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace cyclescope {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) {
    return static_cast<double>(q);
}

inline int sign_of(const Rational& q) {
    if (q > 0) return 1;
    if (q < 0) return -1;
    return 0;
}

inline Rational rational_pow(Rational base, unsigned exp) {
    Rational acc(1);
    while (exp) {
        if (exp & 1u) acc *= base;
        base *= base;
        exp >>= 1u;
    }
    return acc;
}

// Parse "123", "1.5", "0.05e-2" style literals into an exact rational.
// Throws std::invalid_argument on garbage; the expression parser wraps this
// with position information.
inline Rational rational_from_decimal(const std::string& text) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto digits = [&](std::string& out) {
        std::size_t start = i;
        while (i < n && text[i] >= '0' && text[i] <= '9') out += text[i++];
        return i > start;
    };

    std::string ipart, fpart, epart;
    bool eneg = false;
    if (!digits(ipart)) throw std::invalid_argument("bad numeric literal: " + text);
    if (i < n && text[i] == '.') {
        ++i;
        if (!digits(fpart)) throw std::invalid_argument("bad numeric literal: " + text);
    }
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i < n && (text[i] == '+' || text[i] == '-')) eneg = (text[i++] == '-');
        if (!digits(epart)) throw std::invalid_argument("bad numeric literal: " + text);
    }
    if (i != n) throw std::invalid_argument("bad numeric literal: " + text);

    // cpp_int treats a leading zero as an octal prefix; strip them.
    std::string mantissa = ipart + fpart;
    std::size_t nz = mantissa.find_first_not_of('0');
    mantissa = nz == std::string::npos ? "0" : mantissa.substr(nz);
    BigInt num(mantissa);
    BigInt den = 1;
    for (std::size_t k = 0; k < fpart.size(); ++k) den *= 10;
    Rational q(num, den);
    if (!epart.empty()) {
        if (epart.size() > 6) throw std::invalid_argument("exponent out of range: " + text);
        unsigned e = static_cast<unsigned>(std::stoul(epart));
        Rational scale = rational_pow(Rational(10), e);
        if (eneg) q /= scale;
        else q *= scale;
    }
    return q;
}

} // namespace cyclescope
