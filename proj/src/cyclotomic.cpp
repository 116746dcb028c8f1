#include "cr3/cyclotomic.hpp"

#include "cr3/totient.hpp"

#include <numeric>
#include <string>

namespace cr3 {

namespace {

constexpr std::uint64_t kMaxDepth = 64;

std::uint64_t pow_u64(std::uint64_t b, std::uint64_t k) {
    std::uint64_t r = 1;
    while (k--) r *= b;
    return r;
}

}  // namespace

Conductor::Conductor(std::uint64_t n) {
    if (n == 0) throw DomainError("conductor must be positive");
    n_ = (n % 4 == 2) ? n / 2 : n;
}

std::uint64_t Conductor::degree() const { return euler_phi(n_); }

Conductor canonical_conductor(std::uint64_t n) { return Conductor(n); }

std::uint64_t field_degree(const FieldSpec& K) {
    return std::visit([](const auto& k) { return k.degree(); }, K);
}

bool contains_root_of_unity(const Conductor& N, std::uint64_t k) {
    return N.value() % Conductor(k).value() == 0;
}

bool real_cyclo_member(std::uint64_t m, const Conductor& N) {
    if (m <= 2) return true;
    const std::uint64_t n = N.value();
    const std::uint64_t L = std::lcm(n, m);
    // a = 1 + kN runs over the kernel of (Z/L)^x -> (Z/N)^x
    for (std::uint64_t a = 1; a < L; a += n) {
        if (std::gcd(a, L) != 1) continue;
        std::uint64_t r = a % m;
        if (r != 1 && r != m - 1) return false;
    }
    return true;
}

std::uint64_t cyclo_t_p(const ExactCyclotomic& K, Prime p) {
    const std::uint64_t n = K.conductor.value();
    const std::uint64_t L = Conductor(std::lcm(n, p == 2 ? 4u : p.value())).value();
    return euler_phi(L) / euler_phi(n);
}

std::uint64_t cyclo_m_p(const ExactCyclotomic& K, Prime p) {
    const std::uint64_t n = K.conductor.value();
    std::uint64_t k = 1;
    if (p != 2) {
        Conductor Kp(std::lcm(n, std::uint64_t{p}));
        while (contains_root_of_unity(Kp, pow_u64(p, k + 1))) {
            if (++k > kMaxDepth) throw InternalInconsistency("m_p search did not terminate");
        }
        return k;
    }
    const bool xi4 = contains_root_of_unity(K.conductor, 4);
    k = 2;
    while (xi4 ? contains_root_of_unity(K.conductor, pow_u64(2, k + 1))
               : real_cyclo_member(pow_u64(2, k + 1), K.conductor)) {
        if (++k > kMaxDepth) throw InternalInconsistency("m_2 search did not terminate");
    }
    return k;
}

std::uint64_t cyclo_e_p(const ExactCyclotomic& K, Prime p) {
    const std::uint64_t t = cyclo_t_p(K, p);
    const std::uint64_t m = cyclo_m_p(K, p);
    if (p == 2) {
        // [K(xi_4) : Q(xi_{2^m} + xi_{2^m}^-1)]
        const std::uint64_t top = K.degree() * t;
        const std::uint64_t sub = semicyclic_degree(pow_u64(2, m));
        if (top % sub) throw InternalInconsistency("e_2 is not an integer");
        return top / sub;
    }
    const std::uint64_t num = K.degree() * t;
    const std::uint64_t den = pow_u64(p, m - 1) * (p - 1);
    if (num % den)
        throw InternalInconsistency("p^(m-1)(p-1) does not divide d*t for p=" + std::to_string(p.value()));
    return num / den;
}

CycloInvariants all_invariants(const ExactCyclotomic& K, Prime p) {
    CycloInvariants inv{p, cyclo_t_p(K, p), cyclo_m_p(K, p), cyclo_e_p(K, p),
                        contains_root_of_unity(K.conductor, 4)};
    if (p != 2 && pow_u64(p, inv.m - 1) * (p - 1) * inv.e != K.degree() * inv.t)
        throw InternalInconsistency("standard relation fails");
    if (p == 2 && (inv.m < 2 || inv.xi4 != (inv.t == 1)))
        throw InternalInconsistency("2-invariants inconsistent");
    return inv;
}

std::uint64_t m2_upper_from_ep(std::uint64_t e_p, bool xi4_in_K) {
    if (e_p == 0) throw DomainError("e_p must be positive");
    return valuation(2, e_p) + (xi4_in_K ? 1 : 2);
}

std::uint64_t tq_lower_from_gcd(Prime q, std::uint64_t d, std::uint64_t e_p) {
    if (q == 2) throw DomainError("tq_lower_from_gcd needs an odd prime");
    const std::uint64_t g = std::gcd(std::gcd(std::uint64_t{q} - 1, d), e_p);
    return (q - 1) / g;
}

}  // namespace cr3
