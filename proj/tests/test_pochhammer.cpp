#include "support.hpp"

#include <doctest.h>

using namespace coulombkit;
using namespace testsupport;

namespace {

// Numeric (x)_d straight from the product definitions.
mpq_class poch_value(const mpq_class& q, const mpq_class& x, int d) {
    mpq_class r = 1;
    if (d > 0)
        for (int m = 0; m < d; ++m) r *= 1 - rpow(q, m) * x;
    else
        for (int m = 1; m <= -d; ++m) r /= 1 - rpow(q, -m) * x;
    return r;
}

const Monomial x = Monomial::from_entries({{var::a(1), 1}, {var::s(1), 1}});

}  // namespace

TEST_CASE("poch examples") {
    CHECK(poch(x, 2) == ExactScalar::one_minus(x) * ExactScalar::one_minus(q_power(1) * x));
    CHECK(poch(x, 0).is_one());
    CHECK(poch(x, -1) == ExactScalar::inv_one_minus(q_power(-1) * x));
    CHECK(poch(x, -1).to_string() == "1 / (1 - q^-1*a1*s1)");
}

TEST_CASE("poch_qinv examples") {
    CHECK(poch_qinv(x, 1) == ExactScalar::one_minus(x));
    CHECK(poch_qinv(x, 2) == ExactScalar::one_minus(x) * ExactScalar::one_minus(q_power(-1) * x));
    CHECK(poch_qinv(x, 0).is_one());
}

TEST_CASE("sign_kernel examples") {
    CHECK(sign_kernel(0).is_one());
    CHECK(sign_kernel(1) == ExactScalar::monomial(Monomial::from_entries({{var::q_half, 1}, {var::hbar_half, -1}}), -1));
    CHECK(sign_kernel(-2) == ExactScalar::monomial(Monomial::from_entries({{var::q_half, -2}, {var::hbar_half, 2}})));
}

TEST_CASE("poch agrees with numeric products") {
    std::mt19937 rng(3);
    for (int i = 0; i < 40; ++i) {
        Monomial m = random_nonunit_monomial(rng, {var::a(1), var::a(2), var::s(1)}, 2);
        int d = static_cast<int>(rng() % 13) - 6;
        auto at = random_point(rng, {var::q_half, var::hbar_half, var::a(1), var::a(2), var::s(1)});
        mpq_class q = at[var::q_half] * at[var::q_half];
        CHECK(eval(poch(m, d), at) == poch_value(q, eval_monomial(m, at), d));
    }
}

TEST_CASE("shift, inversion and cocycle identities") {
    std::mt19937 rng(17);
    std::vector<VarId> vars{var::hbar_half, var::a(1), var::a(2), var::s(1)};
    Monomial h = hbar_power(1), q = q_power(1);
    for (int i = 0; i < 12; ++i) {
        Monomial m = random_nonunit_monomial(rng, {var::a(1), var::a(2), var::s(1)}, 2);
        for (int d = -5; d <= 5; ++d) {
            CHECK((poch(q_power(-d) * m, d) * poch(m, -d)).is_one());
            ExactScalar lhs = sign_kernel(d) * poch(h * m, d) / poch(q * m, d);
            ExactScalar rhs = sign_kernel(-d) * poch(m.inverse(), -d) / poch(q * h.inverse() * m.inverse(), -d);
            CHECK(lhs == rhs);
            if (d >= 0) CHECK(poch_qinv(m, d) == poch_qinv_direct(m, d));
        }
        for (int c = -3; c <= 3; ++c)
            for (int d = -3; d <= 3; ++d) CHECK(poch(m, c + d) == poch(m, c) * poch(q_power(c) * m, d));
    }
    (void)vars;
}
