#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "krich/error.hpp"

namespace krich {

// All coordinate arithmetic in this library is exact. Integer/Rational are
// arbitrary precision; cpp_rational keeps values reduced with a positive
// denominator, which is exactly the canonical form the file format uses.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Renders a rational in the canonical "p/q" file form (q always present,
/// q > 0, gcd(|p|,q) = 1).
inline std::string format_rational(const Rational& r) {
    return num(r).str() + "/" + den(r).str();
}

/// Display-only helper. Never feeds back into any decision.
inline double to_display(const Rational& r) {
    return static_cast<double>(r);
}

/// Strict parser for the file format: "p" or "p/q" with q > 0 and the
/// fraction already reduced. "2/4" and "1/-2" are rejected.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&](const std::string& why) -> Rational {
        throw invalid_input("malformed rational '" + std::string(text) + "': " + why);
    };
    if (text.empty()) return fail("empty");
    std::size_t pos = 0;
    bool neg = false;
    if (text[pos] == '-') {
        neg = true;
        ++pos;
    }
    std::size_t digits_start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == digits_start) return fail("expected digits");
    Integer p(std::string(text.substr(digits_start, pos - digits_start)));
    if (neg) p = -p;
    if (pos == text.size()) return Rational(p);
    if (text[pos] != '/') return fail("unexpected character");
    ++pos;
    std::size_t den_start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == den_start || pos != text.size())
        return fail("denominator must be a plain positive integer");
    Integer q(std::string(text.substr(den_start)));
    if (q == 0) return fail("zero denominator");
    if (boost::multiprecision::gcd(boost::multiprecision::abs(p), q) != 1)
        return fail("not reduced");
    Rational r(p);
    r /= q;
    return r;
}

// --- canonical byte keys ----------------------------------------------------
//
// Objects are deduplicated and sorted by a canonical byte string. The
// encoding below is lossless and injective: varint sizes, sign byte, then
// little-endian magnitude bytes.

inline void append_uvarint(std::string& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

inline void append_integer_bytes(std::string& out, const Integer& x) {
    if (x == 0) {
        out.push_back('\0');
        return;
    }
    out.push_back(x > 0 ? '\1' : '\2');
    Integer m = boost::multiprecision::abs(x);
    std::string mag;
    while (m > 0) {
        mag.push_back(static_cast<char>(static_cast<unsigned>(m & 0xff)));
        m >>= 8;
    }
    append_uvarint(out, mag.size());
    out += mag;
}

inline void append_rational_bytes(std::string& out, const Rational& r) {
    append_integer_bytes(out, num(r));
    append_integer_bytes(out, den(r));
}

// --- exact integer powers and roots ----------------------------------------

inline Integer ipow(const Integer& base, std::uint64_t e) {
    Integer acc = 1;
    Integer b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline Rational rpow(const Rational& base, std::uint64_t e) {
    return Rational(ipow(num(base), e), ipow(den(base), e));
}

/// floor(x^(1/q)) for x >= 0, q >= 1, by binary search.
inline Integer iroot(const Integer& x, std::uint64_t q) {
    detail::require(x >= 0 && q >= 1, "iroot needs x >= 0, q >= 1");
    if (x == 0 || x == 1 || q == 1) return x;
    Integer lo = 0;
    Integer hi = Integer(1) << (boost::multiprecision::msb(x) / q + 1);
    while (lo < hi) {  // invariant: lo^q <= x < (hi+1)^q
        Integer mid = (lo + hi + 1) / 2;
        if (ipow(mid, q) <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

}  // namespace krich
