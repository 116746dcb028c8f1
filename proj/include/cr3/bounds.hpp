#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cr3/cyclotomic.hpp"
#include "cr3/exactnum.hpp"

namespace cr3 {

std::uint64_t minkowski_exponent(std::uint64_t n, Prime p);
FactoredInteger minkowski_bound(std::uint64_t n);

std::uint64_t schur_exponent(std::uint64_t n, Prime p, const CycloInvariants& inv);
FactoredInteger schur_bound(std::uint64_t n, const ExactCyclotomic& K);

std::uint64_t serre_exponent(std::uint64_t n, Prime p, const CycloInvariants& inv);
FactoredInteger serre_bound(std::uint64_t n, const ExactCyclotomic& K);
// primes beyond this contribute nothing to serre_bound(n, K) for [K:Q] = d
std::uint64_t serre_prime_cutoff(std::uint64_t n, std::uint64_t d);

std::uint64_t rough_exponent(std::uint64_t n, std::uint64_t d, Prime p);
FactoredInteger rough_bound(std::uint64_t n, std::uint64_t d);

struct TableRow {
    std::uint64_t d;
    FactoredInteger value;
    std::string factored;
    std::string decimal;
    // "2^7·3^4·5·7 = 362 880 < 10^6"
    std::string rendered() const;
};
std::vector<TableRow> table(std::uint64_t n, std::uint64_t d_max);

struct GroupFamily {
    enum class Kind { Cyclic, Dihedral, A4, S4, A5 };
    Kind kind;
    std::uint64_t m = 0;  // Cyclic: mu_m, Dihedral: D_2m
    std::uint64_t order() const;
    std::string name() const;
    friend bool operator==(const GroupFamily&, const GroupFamily&) = default;
};

struct Pgl2Result {
    std::vector<GroupFamily> families;
    FactoredInteger max_order;
};

Pgl2Result pgl2_admissible(const FieldSpec& K);
FactoredInteger pgl2_max_order(const FieldSpec& K);
FactoredInteger gl2_max_order(std::uint64_t d);

struct Rational {
    std::uint64_t num;
    std::uint64_t den = 1;
};
// largest N with per_point * N < budget
std::uint64_t max_basket_points(Rational budget, Rational per_point);

std::vector<std::uint32_t> primes_upto(std::uint64_t n);

}  // namespace cr3
