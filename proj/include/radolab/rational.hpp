#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace rado {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;  // kept canonical: gcd 1, positive denominator

// Error taxonomy shared across the toolkit. The CLI maps these onto exit codes.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// Always "num/den", even for integral values ("4" prints as "4/1").
inline std::string rat_string(const Rational& r) {
    return rat_num(r).str() + "/" + rat_den(r).str();
}

// "num/den (= d.ddd...)" for human-facing reports.
inline std::string rat_pretty(const Rational& r) {
    double d = r.convert_to<double>();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", d);
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_string(r) + " (= " + buf + ")";
}

// Accepts "a/b" or a plain integer "a". Whitespace is not trimmed.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    Int num, den = 1;
    try {
        if (slash == std::string::npos) {
            num = Int(s);
        } else {
            num = Int(s.substr(0, slash));
            den = Int(s.substr(slash + 1));
        }
    } catch (const std::runtime_error&) {
        throw parse_error("cannot parse rational: " + s);
    }
    if (den == 0) throw parse_error("rational with zero denominator: " + s);
    return Rational(num, den);
}

// r^e for integer e (e may be negative; r must be nonzero then).
inline Rational rat_pow(const Rational& r, long e) {
    if (e < 0) {
        if (r == 0) throw validation_error("zero raised to a negative power");
        return Rational(1) / rat_pow(r, -e);
    }
    Rational acc(1), base = r;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

}  // namespace rado
