#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

// boost::rational's mixed integer comparisons recurse forever under the C++20
// reversed-operator rules; these exact overloads take precedence.
namespace boost {
#define GODEL_RATIONAL_MIXED(I)                                                                   \
    inline bool operator==(const rational<std::int64_t>& a, I b) { return a == rational<std::int64_t>(b); } \
    inline bool operator==(I b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); } \
    inline bool operator!=(const rational<std::int64_t>& a, I b) { return !(a == rational<std::int64_t>(b)); } \
    inline bool operator!=(I b, const rational<std::int64_t>& a) { return !(a == rational<std::int64_t>(b)); }
GODEL_RATIONAL_MIXED(int)
GODEL_RATIONAL_MIXED(long)
GODEL_RATIONAL_MIXED(long long)
#undef GODEL_RATIONAL_MIXED
}  // namespace boost

namespace godel {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

// Gödel residuum: x → y is 1 when x ≤ y, otherwise y.
inline Rational residuum(const Rational& x, const Rational& y) { return x <= y ? Rational(1) : y; }

}  // namespace godel
