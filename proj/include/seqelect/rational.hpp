#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace seqelect {

// Exact arbitrary-precision arithmetic. cpp_rational keeps values in lowest
// terms with a positive denominator, which is exactly the invariant we need.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Raised on malformed or out-of-range user input (CLI exit code 1).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a method's stated precondition does not hold (CLI exit code 2).
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an internal invariant breaks (CLI exit code 3).
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw input_error("rational with zero denominator");
    return Rational(num) / Rational(den);
}

inline Rational make_rational(long long num, long long den = 1) {
    return make_rational(Int(num), Int(den));
}

// Renders as "p" for integers and "p/q" otherwise.
inline std::string to_fraction_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Accepts "p", "-p", "p/q" and finite decimals like "0.25" or "-1.5".
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw input_error("cannot parse rational '" + std::string(text) + "'"); };
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) fail();

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
        if (s.empty()) fail();
    }

    auto digits = [&](std::string_view d) -> Int {
        if (d.empty()) fail();
        Int v = 0;
        for (char c : d) {
            if (c < '0' || c > '9') fail();
            v = v * 10 + (c - '0');
        }
        return v;
    };

    Rational result;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Int num = digits(s.substr(0, slash));
        Int den = digits(s.substr(slash + 1));
        if (den == 0) fail();
        result = Rational(num) / Rational(den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty()) fail();
        Int num = whole.empty() ? Int(0) : digits(whole);
        Int den = 1;
        for (char c : frac) {
            if (c < '0' || c > '9') fail();
            num = num * 10 + (c - '0');
            den *= 10;
        }
        result = Rational(num) / Rational(den);
    } else {
        result = Rational(digits(s));
    }
    return negative ? -result : result;
}

}  // namespace seqelect
