#pragma once

#include "coulombkit/bethe.hpp"
#include "coulombkit/exactring.hpp"
#include "coulombkit/hypertoric.hpp"
#include "coulombkit/pochhammer.hpp"

#include <random>

namespace testsupport {

using namespace coulombkit;

inline mpq_class rpow(const mpq_class& x, int e) {
    mpq_class r = 1;
    for (int i = 0; i < std::abs(e); ++i) r *= x;
    return e < 0 ? mpq_class(1 / r) : r;
}

// Independent numeric oracle: evaluate at a rational point where each
// variable id (half variables included) takes the given value.
inline mpq_class eval_monomial(const Monomial& m, const std::map<VarId, mpq_class>& at) {
    mpq_class r = 1;
    for (const auto& [v, e] : m.entries()) r *= rpow(at.at(v), e);
    return r;
}

inline mpq_class eval_poly(const LaurentPoly& p, const std::map<VarId, mpq_class>& at) {
    mpq_class r = 0;
    for (const auto& [m, c] : p.terms()) r += c * eval_monomial(m, at);
    return r;
}

inline mpq_class eval(const ExactScalar& x, const std::map<VarId, mpq_class>& at) {
    if (x.is_zero()) return 0;
    mpq_class r = eval_poly(x.numerator_poly(), at) * eval_monomial(x.prefactor(), at);
    for (const auto& [m, e] : x.atoms()) r *= rpow(1 - eval_monomial(m, at), e);
    return r / eval_poly(x.general_denominator(), at);
}

inline std::vector<VarId> small_vars() {
    return {var::q_half, var::hbar_half, var::a(1), var::a(2), var::s(1), var::s(2)};
}

inline std::map<VarId, mpq_class> random_point(std::mt19937& rng, const std::vector<VarId>& vars) {
    std::uniform_int_distribution<int> num(2, 29), den(2, 31);
    std::map<VarId, mpq_class> at;
    for (VarId v : vars) {
        mpq_class x(num(rng), den(rng));
        x.canonicalize();
        at[v] = x;
    }
    return at;
}

inline Monomial random_monomial(std::mt19937& rng, const std::vector<VarId>& vars, int span = 2) {
    std::uniform_int_distribution<int> e(-span, span);
    std::vector<Monomial::Entry> entries;
    for (VarId v : vars) entries.emplace_back(v, e(rng));
    return Monomial::from_entries(entries);
}

inline Monomial random_nonunit_monomial(std::mt19937& rng, const std::vector<VarId>& vars, int span = 2) {
    Monomial m;
    do {
        m = random_monomial(rng, vars, span);
    } while (m.is_one());
    return m;
}

inline LaurentPoly random_poly(std::mt19937& rng, const std::vector<VarId>& vars, int terms = 4) {
    std::uniform_int_distribution<int> c(-5, 5), t(1, terms);
    LaurentPoly p;
    int count = t(rng);
    for (int i = 0; i < count; ++i) p.add_term(random_monomial(rng, vars, 1), c(rng));
    return p;
}

// A product of a polynomial, a monomial and a few atoms of random sign.
inline ExactScalar random_scalar(std::mt19937& rng, const std::vector<VarId>& vars) {
    std::uniform_int_distribution<int> natoms(0, 3), e(-2, 2);
    LaurentPoly p;
    do {
        p = random_poly(rng, vars, 3);
    } while (p.is_zero());
    ExactScalar x(p);
    x *= ExactScalar::monomial(random_monomial(rng, vars, 1));
    int count = natoms(rng);
    for (int i = 0; i < count; ++i) {
        int ex = e(rng);
        if (ex == 0) continue;
        Monomial m = random_nonunit_monomial(rng, vars, 1);
        x *= (ex > 0 ? ExactScalar::one_minus(m) : ExactScalar::inv_one_minus(m)).pow(std::abs(ex));
    }
    return x;
}

// Desk models.
inline GaugeData a2_data() {
    GaugeData d;
    d.n = 3;
    d.k = 2;
    d.chi = {{1, 0}, {0, 1}, {-1, -1}};
    d.theta = {2, 1};
    return d;
}

inline GaugeData tpn_data(int n) {
    GaugeData d;
    d.n = n + 1;
    d.k = 1;
    d.chi.assign(n + 1, {1});
    d.theta = {1};
    return d;
}

inline GaugeData abelian_point_data(int n) {
    GaugeData d;
    d.n = n;
    d.k = n;
    d.chi.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) d.chi[i][i] = 1;
    d.theta.assign(n, 1);
    return d;
}

inline GaugeData k1_flip_data() {
    GaugeData d;
    d.n = 2;
    d.k = 1;
    d.chi = {{1}, {-1}};
    d.theta = {1};
    return d;
}

// T*Gr(2,4) abelianized: rows e_1 (x4) then e_2 (x4), one GL(2) block, and
// a_{(i,j)} specialized to a_i^{-1}.
inline GaugeData tgr24_data() {
    GaugeData d;
    d.n = 8;
    d.k = 2;
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 4; ++i) d.chi.push_back(j == 0 ? std::vector<int>{1, 0} : std::vector<int>{0, 1});
    d.theta = {1, 1};
    d.blocks = std::vector<int>{2};
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 4; ++i) d.a_specialization[var::a(4 * j + i + 1)] = Monomial::of(var::a(i + 1), -1);
    return d;
}

// T*Gr(1,2) = T*P^1 presented with a single GL(1) block.
inline GaugeData tgr12_data() {
    GaugeData d = tpn_data(1);
    d.blocks = std::vector<int>{1};
    return d;
}

// Literal q = 1 Bethe equations of T*Gr(k,n) for j = 1..k, written in the
// a_i^{-1} s_j variables with the prefactor -hbar^{n/2}.
inline std::vector<Relation> tgr_bethe_display(int k, int n) {
    std::vector<Relation> out;
    ExactScalar h = ExactScalar::monomial(Monomial::of(var::hbar_half, 2));
    for (int j = 1; j <= k; ++j) {
        ExactScalar lhs = ExactScalar::monomial(Monomial::of(var::hbar_half, n), -1);
        for (int i = 1; i <= n; ++i) {
            Monomial x = Monomial::of(var::a(i), -1) * Monomial::of(var::s(j));
            lhs *= (ExactScalar(1) - h * ExactScalar::monomial(x)) / (ExactScalar(1) - ExactScalar::monomial(x));
        }
        for (int i = 1; i <= k; ++i) {
            if (i == j) continue;
            ExactScalar u = ExactScalar::monomial(Monomial::of(var::s(i)) / Monomial::of(var::s(j)));
            lhs *= (ExactScalar(1) - h * u) / (h - u);
        }
        Cochar e(k, 0);
        e[j - 1] = 1;
        out.push_back({e, lhs, {1}, RelationKind::bethe_q1, std::nullopt});
    }
    return out;
}

}  // namespace testsupport
