#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>

#include "cr3/errors.hpp"

namespace cr3 {

bool is_prime(std::uint64_t n);

// Implicit from an integer so call sites read like the formulas; throws
// DomainError on a composite.
class Prime {
public:
    Prime(std::uint64_t v);
    std::uint32_t value() const { return v_; }
    operator std::uint32_t() const { return v_; }

private:
    std::uint32_t v_;
};

class FactoredInteger {
public:
    using Map = std::map<std::uint32_t, std::uint32_t>;

    FactoredInteger() = default;
    explicit FactoredInteger(const Map& m);
    // {{2, 5}, {3, 2}}
    FactoredInteger(std::initializer_list<Map::value_type> il) : FactoredInteger(Map(il)) {}
    // trial division, fine for the smooth numbers seen here
    static FactoredInteger from_u64(std::uint64_t n);
    // "24103053950976000" or "2^22*3^8*5^3" / "2^22·3^8"
    static FactoredInteger parse(std::string_view s);
    static FactoredInteger prime_power(Prime p, std::uint32_t k);

    const Map& factors() const { return f_; }
    std::uint32_t exponent(std::uint32_t p) const;
    bool is_one() const { return f_.empty(); }

    // "2^5·3^2", "1" for the empty map
    std::string factored() const;
    std::string decimal(bool grouped = false) const;

    friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;

private:
    Map f_;
};

FactoredInteger fi_mul(const FactoredInteger& a, const FactoredInteger& b);
FactoredInteger fi_div_exact(const FactoredInteger& a, const FactoredInteger& b);
std::strong_ordering fi_cmp(const FactoredInteger& a, const FactoredInteger& b);
std::string fi_to_decimal(const FactoredInteger& a, bool grouped = false);

inline FactoredInteger operator*(const FactoredInteger& a, const FactoredInteger& b) { return fi_mul(a, b); }
inline std::strong_ordering operator<=>(const FactoredInteger& a, const FactoredInteger& b) { return fi_cmp(a, b); }

std::uint32_t valuation(Prime p, const FactoredInteger& a);
std::uint32_t valuation(Prime p, std::uint64_t n);
// Legendre
std::uint64_t factorial_valuation(Prime p, std::uint64_t k);

// digit grouping separator used by decimal(true): U+2009
inline constexpr std::string_view kThinSpace = "\u2009";

}  // namespace cr3
