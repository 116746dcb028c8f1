#include "cr3/totient.hpp"

#include "cr3/errors.hpp"
#include "cr3/exactnum.hpp"

#include <string>

namespace cr3 {

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw DomainError("phi(0)");
    std::uint64_t r = 1;
    const auto f = FactoredInteger::from_u64(n);
    for (auto [p, e] : f.factors()) {
        r *= p - 1;
        for (std::uint32_t i = 1; i < e; ++i) r *= p;
    }
    return r;
}

std::vector<std::uint64_t> invphi_all(std::uint64_t B) {
    if (B == 0) throw DomainError("invphi needs B >= 1");
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 1; n <= 2 * B * B; ++n)
        if (euler_phi(n) <= B) out.push_back(n);
    return out;
}

std::uint64_t invphi_max(std::uint64_t B) { return invphi_all(B).back(); }

std::uint64_t semicyclic_degree(std::uint64_t n) {
    if (n <= 2) throw DomainError("semicyclic degree needs n > 2, got " + std::to_string(n));
    return euler_phi(n) / 2;
}

}  // namespace cr3
