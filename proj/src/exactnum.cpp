#include "cr3/exactnum.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>

namespace cr3 {

using boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t q = 3; q * q <= n; q += 2)
        if (n % q == 0) return false;
    return true;
}

Prime::Prime(std::uint64_t v) {
    if (v > UINT32_MAX || !is_prime(v))
        throw DomainError(std::to_string(v) + " is not a prime");
    v_ = static_cast<std::uint32_t>(v);
}

FactoredInteger::FactoredInteger(const Map& m) {
    for (auto [p, e] : m) {
        Prime{p};
        if (e) f_[p] = e;
    }
}

FactoredInteger FactoredInteger::from_u64(std::uint64_t n) {
    if (n == 0) throw DomainError("0 has no factorization");
    FactoredInteger r;
    for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        while (n % q == 0) {
            ++r.f_[static_cast<std::uint32_t>(q)];
            n /= q;
        }
    }
    if (n > 1) {
        if (n > UINT32_MAX) throw DomainError("prime factor out of range");
        ++r.f_[static_cast<std::uint32_t>(n)];
    }
    return r;
}

FactoredInteger FactoredInteger::prime_power(Prime p, std::uint32_t k) {
    FactoredInteger r;
    if (k) r.f_[p] = k;
    return r;
}

namespace {

std::uint64_t parse_u64(std::string_view s) {
    if (s.empty() || s.size() > 19) throw DomainError("bad integer '" + std::string(s) + "'");
    std::uint64_t v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw DomainError("bad integer '" + std::string(s) + "'");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

}  // namespace

FactoredInteger FactoredInteger::parse(std::string_view s) {
    std::string t;
    // accept '·' (U+00B7) and '*' as separators
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.compare(i, 2, "·") == 0) { t += '*'; ++i; }
        else if (s[i] != ' ') t += s[i];
    }
    if (t.find_first_of("*^") == std::string::npos) return from_u64(parse_u64(t));

    FactoredInteger r;
    std::size_t pos = 0;
    while (pos <= t.size()) {
        std::size_t end = t.find('*', pos);
        if (end == std::string::npos) end = t.size();
        std::string_view tok(t.data() + pos, end - pos);
        std::uint64_t base, exp = 1;
        if (auto c = tok.find('^'); c != std::string_view::npos) {
            base = parse_u64(tok.substr(0, c));
            exp = parse_u64(tok.substr(c + 1));
        } else {
            base = parse_u64(tok);
        }
        auto part = from_u64(base);
        for (auto [p, e] : part.f_) r.f_[p] += static_cast<std::uint32_t>(e * exp);
        pos = end + 1;
    }
    std::erase_if(r.f_, [](const auto& kv) { return kv.second == 0; });
    return r;
}

std::uint32_t FactoredInteger::exponent(std::uint32_t p) const {
    auto it = f_.find(p);
    return it == f_.end() ? 0 : it->second;
}

std::string FactoredInteger::factored() const {
    if (f_.empty()) return "1";
    std::string s;
    for (auto [p, e] : f_) {
        if (!s.empty()) s += "·";
        s += std::to_string(p);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

namespace {

cpp_int expand(const FactoredInteger::Map& m) {
    cpp_int r = 1;
    for (auto [p, e] : m) r *= boost::multiprecision::pow(cpp_int(p), e);
    return r;
}

}  // namespace

std::string FactoredInteger::decimal(bool grouped) const {
    std::string raw = expand(f_).str();
    // four digits stay ungrouped, as in 6048
    if (!grouped || raw.size() <= 4) return raw;
    std::string out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (i && (raw.size() - i) % 3 == 0) out += kThinSpace;
        out += raw[i];
    }
    return out;
}

FactoredInteger fi_mul(const FactoredInteger& a, const FactoredInteger& b) {
    auto m = a.factors();
    for (auto [p, e] : b.factors()) m[p] += e;
    return FactoredInteger(m);
}

FactoredInteger fi_div_exact(const FactoredInteger& a, const FactoredInteger& b) {
    auto m = a.factors();
    for (auto [p, e] : b.factors()) {
        auto it = m.find(p);
        if (it == m.end() || it->second < e)
            throw NonDivisible(b.factored() + " does not divide " + a.factored());
        it->second -= e;
    }
    return FactoredInteger(m);
}

std::strong_ordering fi_cmp(const FactoredInteger& a, const FactoredInteger& b) {
    // strip the gcd, then compare what is left
    FactoredInteger::Map ra, rb;
    for (auto [p, e] : a.factors()) {
        auto f = b.exponent(p);
        if (e > f) ra[p] = e - f;
    }
    for (auto [p, e] : b.factors()) {
        auto f = a.exponent(p);
        if (e > f) rb[p] = e - f;
    }
    if (ra.empty() && rb.empty()) return std::strong_ordering::equal;
    if (ra.empty()) return std::strong_ordering::less;
    if (rb.empty()) return std::strong_ordering::greater;
    auto x = expand(ra), y = expand(rb);
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    throw InternalInconsistency("coprime residuals compared equal");
}

std::string fi_to_decimal(const FactoredInteger& a, bool grouped) { return a.decimal(grouped); }

std::uint32_t valuation(Prime p, const FactoredInteger& a) { return a.exponent(p); }

std::uint32_t valuation(Prime p, std::uint64_t n) {
    if (n == 0) throw DomainError("valuation of 0");
    std::uint32_t k = 0;
    while (n % p.value() == 0) {
        n /= p.value();
        ++k;
    }
    return k;
}

std::uint64_t factorial_valuation(Prime p, std::uint64_t k) {
    std::uint64_t s = 0;
    for (std::uint64_t q = p; q <= k; q *= p) {
        s += k / q;
        if (q > k / p) break;
    }
    return s;
}

}  // namespace cr3
