#pragma once
// Exact integer/rational arithmetic used throughout the library.
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace sg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Serializes as "p/q" in lowest terms ("p" when q == 1).
inline std::string rat_str(const Rat& r) {
    Int p = boost::multiprecision::numerator(r);
    Int q = boost::multiprecision::denominator(r);
    if (q == 1) return p.str();
    return p.str() + "/" + q.str();
}

inline std::string int_str(const Int& v) { return v.str(); }

// Parses "p/q" or a plain integer string.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator");
        return Rat(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

inline double rat_double(const Rat& r) { return static_cast<double>(r); }

}  // namespace sg
