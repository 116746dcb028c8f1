#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cr3/cyclotomic.hpp"
#include "cr3/exactnum.hpp"

namespace cr3 {

// p^(m-1) (p-1) e = d t
struct EquationSolution {
    std::uint64_t m, e, t;
    friend bool operator==(const EquationSolution&, const EquationSolution&) = default;
    friend auto operator<=>(const EquationSolution&, const EquationSolution&) = default;
};

struct SolutionConstraints {
    std::uint64_t e_min = 1;
    std::uint64_t e_max = 0;  // 0: unbounded
    std::uint64_t t_min = 1;
    std::uint64_t t_max = 0;  // 0: n in max_schur_exponent; required by solve_standard_equation
    std::uint64_t m_max = 0;  // 0: unbounded
    std::function<bool(const EquationSolution&)> extra;
};

std::vector<EquationSolution> solve_standard_equation(Prime p, std::uint64_t d, const SolutionConstraints& c);

struct SchurMax {
    std::uint64_t exponent = 0;
    std::vector<EquationSolution> solutions;
};

// xi4 only matters for p = 2, which this does not handle
SchurMax max_schur(Prime p, std::uint64_t n, std::uint64_t d, SolutionConstraints c);
std::uint64_t max_schur_exponent(Prime p, std::uint64_t n, std::uint64_t d, const SolutionConstraints& c,
                                 Tristate xi4 = Tristate::Unknown);

std::vector<EquationSolution> brute_solutions(Prime p, std::uint64_t d, std::uint64_t m_max, std::uint64_t e_max,
                                              std::uint64_t t_max);

}  // namespace cr3
