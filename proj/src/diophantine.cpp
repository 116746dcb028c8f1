#include "cr3/diophantine.hpp"

#include "cr3/bounds.hpp"

#include <algorithm>

namespace cr3 {

std::vector<EquationSolution> solve_standard_equation(Prime p, std::uint64_t d, const SolutionConstraints& c) {
    if (p == 2) throw DomainError("the standard equation is for odd p");
    if (d == 0 || c.t_max == 0) throw DomainError("d and t_max must be positive");
    std::vector<EquationSolution> out;
    for (std::uint64_t t = std::max<std::uint64_t>(c.t_min, 1); t <= c.t_max; ++t) {
        const std::uint64_t rhs = d * t;
        std::uint64_t den = p - 1;
        for (std::uint64_t m = 1; den <= rhs; ++m, den *= p) {
            if (c.m_max && m > c.m_max) break;
            if (rhs % den) continue;
            EquationSolution s{m, rhs / den, t};
            if (s.e < c.e_min || (c.e_max && s.e > c.e_max)) continue;
            if (c.extra && !c.extra(s)) continue;
            out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SchurMax max_schur(Prime p, std::uint64_t n, std::uint64_t d, SolutionConstraints c) {
    if (c.t_max == 0) c.t_max = n;
    SchurMax r;
    if (c.t_min > c.t_max) return r;
    r.solutions = solve_standard_equation(p, d, c);
    for (const auto& s : r.solutions)
        r.exponent = std::max(r.exponent, schur_exponent(n, p, {p, s.t, s.m, s.e, false}));
    return r;
}

std::uint64_t max_schur_exponent(Prime p, std::uint64_t n, std::uint64_t d, const SolutionConstraints& c,
                                 Tristate) {
    return max_schur(p, n, d, c).exponent;
}

std::vector<EquationSolution> brute_solutions(Prime p, std::uint64_t d, std::uint64_t m_max, std::uint64_t e_max,
                                              std::uint64_t t_max) {
    std::vector<EquationSolution> out;
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        std::uint64_t pm = 1;
        for (std::uint64_t i = 1; i < m; ++i) pm *= p;
        for (std::uint64_t e = 1; e <= e_max; ++e)
            for (std::uint64_t t = 1; t <= t_max; ++t)
                if (pm * (p - 1) * e == d * t) out.push_back({m, e, t});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cr3
