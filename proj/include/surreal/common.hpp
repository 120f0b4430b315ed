#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace surreal {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Ordering { Less, Equal, Greater };

inline Ordering ordering_of(int c) {
    return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
}

// Base class for everything the engine can throw on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A cut expression whose left side is not strictly below its right side.
class CutViolation : public Error {
public:
    explicit CutViolation(const std::string& what) : Error(what) {}
};

// Input is outside the computable fragment: zero divisors, transcendental
// constants in exact mode, unsupported ordinals, g/h arguments we cannot
// resolve, malformed powers, and the like.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// A demand-driven computation ran past its work allowance before it could
// prove anything.  Distinct from DomainError: retrying with a larger budget
// may succeed.
class WorkLimitError : public Error {
public:
    explicit WorkLimitError(const std::string& what) : Error(what) {}
};

// A user-supplied term stream broke the strictly-decreasing-exponent rule.
class MalformedStream : public Error {
public:
    explicit MalformedStream(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

inline std::uint64_t hash_bigint(const BigInt& v) {
    // Cheap structural hash: low 64 bits plus sign.  Collisions are fine,
    // the maps always compare keys exactly.
    BigInt a = v < 0 ? BigInt(-v) : v;
    std::uint64_t low = static_cast<std::uint64_t>(a & 0xffffffffffffffffULL);
    return hash_mix(v < 0 ? 0x5851f42d4c957f2dULL : 0x14057b7ef767814fULL, low);
}

inline std::uint64_t hash_rational(const Rational& r) {
    return hash_mix(hash_bigint(numerator(r)), hash_bigint(denominator(r)));
}

}  // namespace surreal
