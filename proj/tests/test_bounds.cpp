#include <doctest.h>

#include "cr3/bounds.hpp"
#include "cr3/totient.hpp"
#include "oracles.hpp"

#include <algorithm>

using namespace cr3;
using FI = FactoredInteger;

namespace {

const ExactCyclotomic Q{Conductor(1)};

std::uint64_t mink_oracle(std::uint64_t n, std::uint64_t p) {
    std::uint64_t s = 0;
    for (std::uint64_t q = p - 1; q <= n; q *= p) s += n / q;
    return s;
}

std::vector<std::string> golden_rows(const char* name) {
    std::vector<std::string> out;
    for (auto& l : oracle::lines(oracle::slurp(std::string(CR3_GOLDEN_DIR) + "/" + name)))
        out.push_back(l.substr(l.find('\t') + 1));
    return out;
}

}  // namespace

TEST_CASE("Minkowski exponents and bounds") {
    CHECK(minkowski_exponent(11, 2) == 19);
    CHECK(minkowski_exponent(11, 3) == 6);
    CHECK(minkowski_exponent(4, 7) == 0);
    CHECK(minkowski_exponent(12, 13) == 1);
    CHECK(minkowski_bound(1).decimal() == "2");
    CHECK(minkowski_bound(2).decimal() == "24");
    CHECK(minkowski_bound(3).decimal() == "48");
    CHECK(minkowski_bound(4).decimal() == "5760");
    CHECK(minkowski_bound(11).decimal() == "735746457600");
    CHECK(minkowski_bound(12).decimal() == "24103053950976000");
    CHECK(minkowski_bound(12) == FI({{2, 22}, {3, 8}, {5, 3}, {7, 2}, {11, 1}, {13, 1}}));
    CHECK_THROWS_AS(minkowski_bound(0), DomainError);
    for (std::uint64_t n = 1; n <= 30; ++n) {
        mpz_class want = 1;
        for (std::uint64_t p = 2; p <= n + 1; ++p)
            if (oracle::prime(p)) {
                mpz_class t;
                mpz_pow_ui(t.get_mpz_t(), mpz_class(unsigned(p)).get_mpz_t(), mink_oracle(n, p));
                want *= t;
            }
        CHECK(minkowski_bound(n).decimal() == want.get_str());
    }
}

TEST_CASE("Schur exponents over Q") {
    CHECK(schur_exponent(4, 2, all_invariants(Q, 2)) == 9);
    CHECK(schur_exponent(3, 5, all_invariants(Q, 5)) == 0);
    // the literal floor series gives 2 + floor(4/6) = 2, matching Minkowski
    CHECK(schur_exponent(4, 3, all_invariants(Q, 3)) == 2);
    CHECK(schur_bound(3, Q).decimal() == "96");
    CHECK(schur_bound(4, Q).decimal() == "23040");
    CHECK_THROWS_AS(schur_exponent(4, 3, all_invariants(Q, 5)), DomainError);
}

TEST_CASE("Schur = Minkowski for odd p over Q, p = 2 slack floor(n/2)") {
    for (std::uint64_t n = 1; n <= 14; ++n) {
        for (auto p : primes_upto(n + 1)) {
            auto s = schur_exponent(n, p, all_invariants(Q, p));
            if (p == 2) CHECK(s == minkowski_exponent(n, 2) + n / 2);
            else CHECK(s == minkowski_exponent(n, p));
        }
    }
}

TEST_CASE("Schur over Q(i) within the d = 2 rough bound") {
    ExactCyclotomic Qi{Conductor(4)};
    auto s = schur_bound(3, Qi);
    CHECK(s <= FI::from_u64(362880));
    CHECK(s.decimal() == "384");
}

TEST_CASE("Serre exponents and bounds over Q") {
    CHECK(serre_exponent(5, 2, all_invariants(Q, 2)) == 11);
    CHECK(serre_exponent(3, 13, all_invariants(Q, 13)) == 0);
    CHECK(serre_exponent(4, 3, all_invariants(Q, 3)) == 4);
    CHECK(serre_bound(3, Q).decimal() == "10080");
    CHECK(serre_bound(4, Q).decimal() == "362880");
    CHECK(serre_bound(5, Q).decimal() == "87178291200");
    CHECK(serre_bound(5, Q) == FI({{2, 11}, {3, 5}, {5, 2}, {7, 2}, {11, 1}, {13, 1}}));
    CHECK_THROWS_AS(serre_bound(1, Q), DomainError);
}

TEST_CASE("rough exponents and bounds") {
    CHECK(rough_exponent(3, 2, 2) == 7);
    CHECK(rough_exponent(4, 6, 3) == 9);
    CHECK(rough_exponent(3, 1, 11) == 0);
    CHECK(rough_bound(3, 12).decimal() == "148299010973568000");
    CHECK(rough_bound(4, 7).decimal() == "2004480");
    CHECK(rough_bound(3, 1).decimal() == "288");
    CHECK_THROWS_AS(rough_exponent(0, 1, 2), DomainError);
}

TEST_CASE("tables match the published rows") {
    auto t1 = table(3, 15);
    auto g1 = golden_rows("table1.txt");
    REQUIRE(t1.size() == 15);
    REQUIRE(g1.size() == 15);
    for (std::size_t i = 0; i < 15; ++i) {
        CHECK(t1[i].d == i + 1);
        CHECK(t1[i].rendered() == g1[i]);
    }
    auto t2 = table(4, 7);
    auto g2 = golden_rows("table2.txt");
    REQUIRE(g2.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) CHECK(t2[i].rendered() == g2[i]);
    auto t3 = table(3, 1);
    REQUIRE(t3.size() == 1);
    CHECK(t3[0].decimal == "288");
}

TEST_CASE("Schur dominated by rough bound over cyclotomic fields, conductor <= 48") {
    for (std::uint64_t N = 1; N <= 48; ++N) {
        if (N % 4 == 2) continue;
        ExactCyclotomic K{Conductor(N)};
        const auto d = K.degree();
        for (std::uint64_t n : {3, 4}) {
            INFO("N=" << N << " n=" << n);
            auto s = schur_bound(n, K);
            auto r = rough_bound(n, d);
            CHECK(s <= r);
            for (auto [p, e] : s.factors()) CHECK(e <= r.exponent(p));
            // nothing beyond the cutoffs
            for (auto p : primes_upto(3 * (n * d + 1))) {
                auto inv = all_invariants(K, p);
                if (p > n * d + 1) {
                    CHECK(schur_exponent(n, p, inv) == 0);
                    CHECK(rough_exponent(n, d, p) == 0);
                }
                if (p > serre_prime_cutoff(n, d)) CHECK(serre_exponent(n, p, inv) == 0);
            }
        }
    }
}

TEST_CASE("PGL2 over Q") {
    auto r = pgl2_admissible(Q);
    std::vector<std::string> names;
    for (auto& g : r.families) names.push_back(g.name());
    std::sort(names.begin(), names.end());
    std::vector<std::string> want{"D12", "D4", "D6", "D8", "μ2", "μ3", "μ4", "μ6"};
    std::sort(want.begin(), want.end());
    CHECK(names == want);
    CHECK(r.max_order.decimal() == "12");
    CHECK(pgl2_max_order(DegreeOnly{1}).decimal() == "12");
}

TEST_CASE("PGL2 over other fields") {
    DegreeOnly quad{2};
    quad.flags.contains_sqrt5 = Tristate::No;
    CHECK(pgl2_max_order(quad).decimal() == "24");
    CHECK(pgl2_max_order(DegreeOnly{4}).decimal() == "60");
    CHECK(pgl2_max_order(DegreeOnly{6}).decimal() == "84");
    CHECK(pgl2_max_order(DegreeOnly{12}).decimal() == "180");
    CHECK(pgl2_max_order(DegreeOnly{24}).decimal() == "420");
    // Q(i): mu_4, D_8, and -1 = i^2 + 0^2 admits S4
    CHECK(pgl2_max_order(ExactCyclotomic{Conductor(4)}).decimal() == "24");
    // Q(zeta_5) contains sqrt5
    CHECK(pgl2_max_order(ExactCyclotomic{Conductor(5)}).decimal() == "60");
    // exact fields never exceed their degree-only bound
    for (std::uint64_t N = 1; N <= 64; ++N) {
        if (N % 4 == 2) continue;
        ExactCyclotomic K{Conductor(N)};
        CHECK(pgl2_max_order(K) <= pgl2_max_order(DegreeOnly{K.degree()}));
    }
}

TEST_CASE("GL2 bounds") {
    CHECK(gl2_max_order(6).decimal() == "1512");
    CHECK(gl2_max_order(2).decimal() == "144");
    CHECK(gl2_max_order(1).decimal() == "24");
    CHECK_THROWS_AS(gl2_max_order(0), DomainError);
}

TEST_CASE("basket points") {
    CHECK(max_basket_points({24}, {3, 2}) == 15);
    CHECK(max_basket_points({24}, {3}) == 7);
    CHECK(max_basket_points({3}, {3, 2}) == 1);
    // brute: largest N with per * N < budget
    for (std::uint64_t bn = 1; bn <= 40; ++bn)
        for (std::uint64_t pn = 1; pn <= 6; ++pn)
            for (std::uint64_t pd = 1; pd <= 4; ++pd) {
                std::uint64_t N = 0;
                while ((N + 1) * pn < bn * pd) ++N;
                CHECK(max_basket_points({bn}, {pn, pd}) == N);
            }
    CHECK_THROWS_AS(max_basket_points({0}, {1}), DomainError);
}
