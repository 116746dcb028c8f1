#pragma once

#include <cstdint>
#include <vector>

namespace cr3 {

std::uint64_t euler_phi(std::uint64_t n);
// max{n : phi(n) <= B}, scanning n <= 2B^2 (phi(n) >= sqrt(n/2))
std::uint64_t invphi_max(std::uint64_t B);
std::vector<std::uint64_t> invphi_all(std::uint64_t B);
// [Q(xi_n + xi_n^-1) : Q] = phi(n)/2, n > 2
std::uint64_t semicyclic_degree(std::uint64_t n);

}  // namespace cr3
