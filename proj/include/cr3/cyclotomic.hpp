#pragma once

#include <cstdint>
#include <variant>

#include "cr3/exactnum.hpp"

namespace cr3 {

// N = 1 or N >= 3 with N != 2 mod 4
class Conductor {
public:
    explicit Conductor(std::uint64_t n);
    std::uint64_t value() const { return n_; }
    std::uint64_t degree() const;
    friend bool operator==(const Conductor&, const Conductor&) = default;

private:
    std::uint64_t n_;
};

Conductor canonical_conductor(std::uint64_t n);

enum class Tristate { No, Yes, Unknown };

struct FieldFlags {
    Tristate xi4_in_K = Tristate::Unknown;
    Tristate minus1_sum_two_squares = Tristate::Unknown;
    Tristate contains_sqrt5 = Tristate::Unknown;
};

struct ExactCyclotomic {
    Conductor conductor;
    std::uint64_t degree() const { return conductor.degree(); }
};

struct DegreeOnly {
    std::uint64_t d;
    FieldFlags flags{};
    std::uint64_t degree() const { return d; }
};

using FieldSpec = std::variant<ExactCyclotomic, DegreeOnly>;

std::uint64_t field_degree(const FieldSpec& K);

struct CycloInvariants {
    std::uint32_t p;
    std::uint64_t t;
    std::uint64_t m;
    std::uint64_t e;
    bool xi4;
};

bool contains_root_of_unity(const Conductor& N, std::uint64_t k);
bool real_cyclo_member(std::uint64_t m, const Conductor& N);

std::uint64_t cyclo_t_p(const ExactCyclotomic& K, Prime p);
std::uint64_t cyclo_m_p(const ExactCyclotomic& K, Prime p);
std::uint64_t cyclo_e_p(const ExactCyclotomic& K, Prime p);
CycloInvariants all_invariants(const ExactCyclotomic& K, Prime p);

// upper bound on m_2 given some e_p; a result < 2 means the case is impossible
std::uint64_t m2_upper_from_ep(std::uint64_t e_p, bool xi4_in_K);
// t_q >= (q-1)/gcd(q-1, d, e_p), q odd
std::uint64_t tq_lower_from_gcd(Prime q, std::uint64_t d, std::uint64_t e_p);

}  // namespace cr3
