#include "support.hpp"

#include "coulombkit/pochhammer.hpp"
#include "coulombkit/vertex.hpp"

#include <doctest.h>

using namespace coulombkit;
using namespace testsupport;

namespace {

Descendent s_var(int j) { return LaurentPoly::monomial(Monomial::of(var::s(j))); }
Descendent a_var(int i) { return LaurentPoly::monomial(Monomial::of(var::a(i))); }
Descendent hbar() { return LaurentPoly::monomial(hbar_power(1)); }

std::vector<Descendent> sample_descendents(int k) {
    std::vector<Descendent> out{Descendent(1), s_var(1), a_var(1) * s_var(1) - hbar()};
    out.push_back(k >= 2 ? s_var(1) * s_var(2) : s_var(1) * s_var(1));
    return out;
}

struct Case {
    GaugeData data;
    int order;
};

}  // namespace

TEST_CASE("vertex low degrees") {
    HypertoricModel tp1(tpn_data(1));
    for (std::size_t p = 0; p < tp1.fixed_points().size(); ++p) {
        QSeries V = vertex_fp(tp1, p, Descendent(1), 0);
        CHECK(V.terms().size() == 1);
        CHECK(V.at({0}).is_one());
    }
    // p = {1}: x_1 -> 1, x_2 -> a_2/a_1.
    QSeries V = vertex_fp(tp1, 0, Descendent(1), 1);
    Monomial x2 = Monomial::of(var::a(2)) / Monomial::of(var::a(1));
    ExactScalar expected = sign_kernel(2) * ExactScalar::one_minus(hbar_power(1)) / ExactScalar::one_minus(q_power(1)) *
                           ExactScalar::one_minus(hbar_power(1) * x2) / ExactScalar::one_minus(q_power(1) * x2);
    CHECK(V.at({1}) == expected);

    for (const GaugeData& data : {tpn_data(1), a2_data()}) {
        HypertoricModel m(data);
        for (std::size_t p = 0; p < m.fixed_points().size(); ++p) {
            for (const auto& tau : sample_descendents(m.k())) {
                QSeries Vt = vertex_fp(m, p, tau, 2);
                CHECK(Vt.at(Cochar(m.k(), 0)) == ExactScalar(tau).substitute(m.fixed_points()[p].restriction));
            }
        }
    }
}

TEST_CASE("descendent shift") {
    for (const GaugeData& data : {tpn_data(1), a2_data()}) {
        HypertoricModel m(data);
        for (std::size_t p = 0; p < m.fixed_points().size(); ++p) {
            const auto& fp = m.fixed_points()[p];
            for (const auto& tau : sample_descendents(m.k())) {
                QSeries V = vertex_fp(m, p, tau, 3);
                for (int j = 1; j <= m.k(); ++j) {
                    QSeries Vs = vertex_fp(m, p, s_var(j) * tau, 3);
                    Monomial Sj = Monomial::of(var::s(j)).substitute(fp.restriction);
                    for (const auto& [d, f] : V.terms())
                        CHECK(Vs.at(d) == ExactScalar::monomial(Sj * q_power(d[j - 1])) * f);
                }
            }
        }
    }
}

TEST_CASE("vertex equals Whittaker function") {
    for (const Case& cs : {Case{tpn_data(1), 4}, Case{a2_data(), 3}}) {
        CoulombAlgebra alg{HypertoricModel(cs.data)};
        for (std::size_t p = 0; p < alg.model().fixed_points().size(); ++p)
            for (const auto& tau : sample_descendents(alg.k()))
                CHECK(vertex_fp(alg.model(), p, tau, cs.order) == whittaker_function(alg, p, tau, cs.order));
    }
}

TEST_CASE("q-difference equations") {
    for (const Case& cs : {Case{tpn_data(1), 4}, Case{a2_data(), 3}, Case{tpn_data(2), 3}}) {
        HypertoricModel m(cs.data);
        for (const auto& c : m.circuits()) {
            for (const auto& tau : sample_descendents(m.k())) {
                QdeReport r = qde_check(m, c.vector, tau, cs.order);
                CHECK(r.checked > 0);
                CHECK(r.pass());
            }
        }
    }
}

TEST_CASE("qde residual detects a wrong sign") {
    // The circuit operator for c must not annihilate the series for -c.
    HypertoricModel m(tpn_data(1));
    const auto& c = m.circuits().front().vector;
    QdeReport good = qde_check(m, c, Descendent(1), 3);
    QdeReport bad = qde_check(m, -c, Descendent(1), 3);
    CHECK(good.pass());
    CHECK_FALSE(bad.pass());
}

TEST_CASE("Kaehler shift") {
    for (const Case& cs : {Case{tpn_data(1), 4}, Case{a2_data(), 3}}) {
        CoulombAlgebra alg{HypertoricModel(cs.data)};
        for (const auto& c : alg.model().circuits()) {
            for (const auto& tau : sample_descendents(alg.k())) {
                QdeReport r = kahler_check(alg, c.vector, tau, cs.order);
                CHECK(r.checked > 0);
                CHECK(r.pass());
            }
        }
    }
}

TEST_CASE("nonabelian vertex") {
    CoulombAlgebra tgr12{HypertoricModel(tgr12_data())};
    for (std::size_t p = 0; p < tgr12.model().fixed_points().size(); ++p)
        CHECK(vertex_fp_nonab(tgr12, p, ExactScalar(1), 3) == vertex_fp(tgr12.model(), p, Descendent(1), 3));

    CoulombAlgebra a2{HypertoricModel(a2_data())};
    CHECK_THROWS_WITH(vertex_fp_nonab(a2, 0, ExactScalar(1), 1), "no block structure");

    CoulombAlgebra tgr24{HypertoricModel(tgr24_data())};
    const auto& m = tgr24.model();
    const auto& weyl = *m.weyl();
    ExactScalar s1s2 = ExactScalar::monomial(Monomial::of(var::s(1)) * Monomial::of(var::s(2)));
    ExactScalar s_sum = ExactScalar::monomial(Monomial::of(var::s(1))) + ExactScalar::monomial(Monomial::of(var::s(2)));
    std::map<std::pair<std::size_t, int>, QSeries> cache;
    std::vector<ExactScalar> taus{ExactScalar(1), s1s2, s_sum};
    auto series = [&](std::size_t p, int t) {
        auto it = cache.find({p, t});
        if (it == cache.end()) it = cache.emplace(std::pair{p, t}, vertex_fp_nonab(tgr24, p, taus[t], 2)).first;
        return it->second;
    };
    int lifts = 0;
    for (std::size_t p = 0; p < m.fixed_points().size(); ++p) {
        const auto& supp = m.fixed_points()[p].support;
        CHECK(is_lift(tgr24, p) == (supp[0] % 4 != supp[1] % 4));
        if (!is_lift(tgr24, p)) continue;
        ++lifts;
        for (const auto& w : weyl.elements) {
            std::size_t wp = weyl_translate(tgr24, w, p);
            CHECK(m.fixed_points()[wp].support.size() == 2);
            for (int t = 0; t < 3; ++t) {
                CHECK(series(p, t).at({0}) ==
                      taus[t].substitute(m.fixed_points()[p].restriction).substitute(m.data().a_specialization));
                CHECK(series(p, t) == series(wp, t));
            }
        }
    }
    CHECK(lifts == 12);
}

TEST_CASE("QSeries json round trip") {
    HypertoricModel m(a2_data());
    QSeries V = vertex_fp(m, 0, s_var(1), 2);
    QSeries W = QSeries::from_json(V.to_json());
    CHECK(W == V);
    CHECK(W.order() == 2);
}
