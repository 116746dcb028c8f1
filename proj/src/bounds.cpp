#include "cr3/bounds.hpp"

#include "cr3/totient.hpp"

#include <algorithm>
#include <numeric>

namespace cr3 {

std::vector<std::uint32_t> primes_upto(std::uint64_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint64_t q = 2; q <= n; ++q)
        if (is_prime(q)) out.push_back(static_cast<std::uint32_t>(q));
    return out;
}

namespace {

// sum_{i >= 1} floor(n / (p^i * t))
std::uint64_t floor_series(std::uint64_t n, std::uint64_t p, std::uint64_t t, int first = 1) {
    std::uint64_t s = 0, q = t;
    for (int i = 0; i < first; ++i) q *= p;
    for (; q <= n; q *= p) s += n / q;
    return s;
}

void check_inv(Prime p, const CycloInvariants& inv) {
    if (inv.p != p.value()) throw DomainError("invariants belong to p=" + std::to_string(inv.p));
    if (inv.t == 0 || inv.m == 0) throw DomainError("invariants must be positive");
}

}  // namespace

std::uint64_t minkowski_exponent(std::uint64_t n, Prime p) {
    if (n == 0) throw DomainError("n must be positive");
    return floor_series(n, p, p - 1, 0);
}

FactoredInteger minkowski_bound(std::uint64_t n) {
    if (n == 0) throw DomainError("n must be positive");
    FactoredInteger r;
    for (auto p : primes_upto(n + 1)) r = r * FactoredInteger::prime_power(p, minkowski_exponent(n, p));
    return r;
}

std::uint64_t schur_exponent(std::uint64_t n, Prime p, const CycloInvariants& inv) {
    check_inv(p, inv);
    if (p != 2) return inv.m * (n / inv.t) + floor_series(n, p, inv.t);
    if (inv.xi4) return inv.m * n + floor_series(n, 2, 1);
    return n + inv.m * (n / 2) + floor_series(n, 2, 1, 2);
}

FactoredInteger schur_bound(std::uint64_t n, const ExactCyclotomic& K) {
    if (n == 0) throw DomainError("n must be positive");
    FactoredInteger r;
    for (auto p : primes_upto(n * K.degree() + 1))
        r = r * FactoredInteger::prime_power(p, schur_exponent(n, p, all_invariants(K, p)));
    return r;
}

std::uint64_t serre_exponent(std::uint64_t n, Prime p, const CycloInvariants& inv) {
    check_inv(p, inv);
    if (n < 2) throw DomainError("Serre value needs n >= 2");
    return inv.m * ((n - 1) / euler_phi(inv.t)) + factorial_valuation(p, n - 1);
}

std::uint64_t serre_prime_cutoff(std::uint64_t n, std::uint64_t d) {
    // phi(t_p) <= n-1 forces t_p <= invphi_max(n-1), and t_p >= (p-1)/d
    return std::max(d * invphi_max(n - 1) + 1, n - 1);
}

FactoredInteger serre_bound(std::uint64_t n, const ExactCyclotomic& K) {
    if (n < 2) throw DomainError("Serre bound needs n >= 2");
    FactoredInteger r;
    for (auto p : primes_upto(serre_prime_cutoff(n, K.degree())))
        r = r * FactoredInteger::prime_power(p, serre_exponent(n, p, all_invariants(K, p)));
    return r;
}

std::uint64_t rough_exponent(std::uint64_t n, std::uint64_t d, Prime p) {
    if (n == 0 || d == 0) throw DomainError("n and d must be positive");
    if (p == 2) {
        if (d % 2 == 0) return n * (valuation(2, d) + 1) + floor_series(n, 2, 1);
        return n + 2 * (n / 2) + floor_series(n, 2, 1, 2);
    }
    const std::uint64_t t = (p - 1) / std::gcd(std::uint64_t{p} - 1, d);
    return (valuation(p, d) + 1) * (n / t) + floor_series(n, p, 1);
}

FactoredInteger rough_bound(std::uint64_t n, std::uint64_t d) {
    FactoredInteger r;
    for (auto p : primes_upto(n * d + 1)) r = r * FactoredInteger::prime_power(p, rough_exponent(n, d, p));
    return r;
}

std::string TableRow::rendered() const {
    std::string s = factored + " = " + decimal;
    const auto digits = value.decimal().size();
    if (digits >= 5) s += " < 10^" + std::to_string(digits);
    return s;
}

std::vector<TableRow> table(std::uint64_t n, std::uint64_t d_max) {
    std::vector<TableRow> rows;
    for (std::uint64_t d = 1; d <= d_max; ++d) {
        auto v = rough_bound(n, d);
        rows.push_back({d, v, v.factored(), v.decimal(true)});
    }
    return rows;
}

std::uint64_t GroupFamily::order() const {
    switch (kind) {
        case Kind::Cyclic: return m;
        case Kind::Dihedral: return 2 * m;
        case Kind::A4: return 12;
        case Kind::S4: return 24;
        case Kind::A5: return 60;
    }
    return 0;
}

std::string GroupFamily::name() const {
    switch (kind) {
        case Kind::Cyclic: return "μ" + std::to_string(m);
        case Kind::Dihedral: return "D" + std::to_string(2 * m);
        case Kind::A4: return "A4";
        case Kind::S4: return "S4";
        case Kind::A5: return "A5";
    }
    return "?";
}

namespace {

bool admits(Tristate t) { return t != Tristate::No; }

}  // namespace

Pgl2Result pgl2_admissible(const FieldSpec& K) {
    const std::uint64_t d = field_degree(K);
    std::vector<std::uint64_t> ms;
    FieldFlags flags;
    if (auto* ex = std::get_if<ExactCyclotomic>(&K)) {
        const auto N = ex->conductor.value();
        for (std::uint64_t m = 2; m <= invphi_max(2 * d); ++m)
            if (real_cyclo_member(m, ex->conductor)) ms.push_back(m);
        flags.minus1_sum_two_squares = N % 4 == 0 ? Tristate::Yes : N == 1 ? Tristate::No : Tristate::Unknown;
        flags.contains_sqrt5 = N % 5 == 0 ? Tristate::Yes : Tristate::No;
    } else {
        const auto& deg = std::get<DegreeOnly>(K);
        for (std::uint64_t m = 2; m <= invphi_max(2 * d); ++m)
            if (m <= 2 || semicyclic_degree(m) <= d) ms.push_back(m);
        flags = deg.flags;
        if (d == 1) flags.minus1_sum_two_squares = flags.contains_sqrt5 = Tristate::No;
    }

    Pgl2Result r;
    using K_ = GroupFamily::Kind;
    for (auto m : ms) r.families.push_back({K_::Cyclic, m});
    for (auto m : ms) r.families.push_back({K_::Dihedral, m});
    if (admits(flags.minus1_sum_two_squares)) {
        r.families.push_back({K_::A4});
        r.families.push_back({K_::S4});
        if (admits(flags.contains_sqrt5)) r.families.push_back({K_::A5});
    }
    std::uint64_t best = 1;
    for (const auto& g : r.families) best = std::max(best, g.order());
    r.max_order = FactoredInteger::from_u64(best);
    return r;
}

FactoredInteger pgl2_max_order(const FieldSpec& K) { return pgl2_admissible(K).max_order; }

FactoredInteger gl2_max_order(std::uint64_t d) {
    if (d == 0) throw DomainError("degree must be positive");
    DegreeOnly K{d};
    // no quadratic field has both sqrt5 and -1 as a sum of two squares
    if (d == 2) K.flags.contains_sqrt5 = Tristate::No;
    return FactoredInteger::from_u64(invphi_max(d)) * pgl2_max_order(K);
}

std::uint64_t max_basket_points(Rational budget, Rational per_point) {
    if (!budget.num || !budget.den || !per_point.num || !per_point.den)
        throw DomainError("budget and per-point weight must be positive");
    return (budget.num * per_point.den - 1) / (per_point.num * budget.den);
}

}  // namespace cr3
