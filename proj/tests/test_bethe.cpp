#include "support.hpp"

#include "coulombkit/bethe.hpp"
#include "coulombkit/vertex.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace coulombkit;
using namespace testsupport;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Numerator factors of a scalar: polynomial part times atoms with positive exponent.
ExactScalar numerator_part(const ExactScalar& f) {
    ExactScalar out(f.numerator_poly());
    for (const auto& [core, e] : f.atoms())
        if (e > 0) out *= ExactScalar::one_minus(core).pow(e);
    return out;
}

bool is_unit_ratio(const ExactScalar& f) {
    return f.atoms().empty() && !f.has_general_denominator() && f.numerator_poly().size() == 1;
}

}  // namespace

TEST_CASE("abelian relations") {
    CoulombAlgebra tp1{HypertoricModel(tpn_data(1))};
    auto rels = dmodule_relations(tp1);
    REQUIRE(rels.size() == 1);
    ExactScalar expected(1);
    for (int i = 0; i < 2; ++i)
        expected *= sign_kernel(-1) * poch(hbar_power(1) * tp1.model().x(i), -1) / poch(q_power(1) * tp1.model().x(i), -1);
    CHECK(rels[0].lhs == expected);
    CHECK(rels[0].rhs_degree == Cochar{1});
    CHECK_FALSE(rels[0].weyl_rep);

    // q = 1: hbar (1 - x_1)(1 - x_2) / ((1 - hbar x_1)(1 - hbar x_2)).
    auto q1 = bethe_relations_q1(tp1);
    ExactScalar closed = ExactScalar::monomial(hbar_power(1));
    for (int i = 0; i < 2; ++i)
        closed *= ExactScalar::one_minus(tp1.model().x(i)) / ExactScalar::one_minus(hbar_power(1) * tp1.model().x(i));
    CHECK(q1[0].lhs == closed);

    for (const GaugeData& data : {tpn_data(1), tpn_data(3), a2_data(), k1_flip_data()}) {
        CoulombAlgebra alg{HypertoricModel(data)};
        CHECK(dmodule_relations(alg).size() == alg.model().circuits().size());
    }
}

TEST_CASE("relations reproduce the vertex recursion") {
    struct Case {
        GaugeData data;
        int order;
    };
    for (const Case& cs : {Case{tpn_data(1), 3}, Case{a2_data(), 3}}) {
        CoulombAlgebra alg{HypertoricModel(cs.data)};
        const auto& m = alg.model();
        auto degrees = enumerate_degrees(m.eff(), m.data().theta, cs.order);
        int checked = 0;
        for (const auto& rel : dmodule_relations(alg)) {
            for (std::size_t p = 0; p < m.fixed_points().size(); ++p) {
                const auto& fp = m.fixed_points()[p];
                for (const auto& d : degrees) {
                    if (!m.eff().contains(d - rel.degree)) continue;
                    ExactScalar lhs = (vertex_weight(m, d) * rel.lhs.shift_s(d)).substitute(fp.restriction);
                    ExactScalar rhs = vertex_weight(m, d - rel.degree).substitute(fp.restriction);
                    CHECK(lhs == rhs);
                    ++checked;
                }
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("q = 1 specialization commutes with relation construction") {
    for (const GaugeData& data : {tpn_data(1), tpn_data(2), a2_data(), k1_flip_data(), tgr24_data(), tgr12_data()}) {
        CoulombAlgebra alg{HypertoricModel(data)};
        auto d = dmodule_relations(alg);
        auto b = bethe_relations_q1(alg);
        REQUIRE(d.size() == b.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            Relation s = specialize_q1(d[i]);
            CHECK(s == b[i]);
            CHECK_FALSE(b[i].lhs.mentions([](VarId v) { return v == var::q_half; }));
        }
    }
}

TEST_CASE("classical limit recovers the K-ring relations") {
    for (const GaugeData& data : {tpn_data(2), a2_data(), k1_flip_data()}) {
        CoulombAlgebra alg{HypertoricModel(data)};
        const auto& m = alg.model();
        for (const auto& rel : bethe_relations_q1(alg)) {
            ExactScalar generator(1);
            for (int i = 0; i < m.n(); ++i) {
                int C = pairing(m.data().chi[i], rel.degree);
                if (C > 0) generator *= ExactScalar::one_minus(m.x(i));
                if (C < 0) generator *= ExactScalar::one_minus(hbar_power(1) * m.x(i));
            }
            CHECK(is_unit_ratio(numerator_part(rel.lhs) / generator));
            // Each generator vanishes at every fixed point.
            for (const auto& fp : m.fixed_points()) CHECK(generator.substitute(fp.restriction).is_zero());
        }
    }
}

TEST_CASE("nonabelian relations") {
    CoulombAlgebra tgr24{HypertoricModel(tgr24_data())};
    const auto& m = tgr24.model();
    CHECK(dominant_circuits(m) == std::vector<Cochar>{{1, 0}});
    auto rels = dmodule_relations(tgr24);
    REQUIRE(rels.size() == 2);
    CHECK(rels[0].degree == Cochar{0, 1});
    CHECK(rels[1].degree == Cochar{1, 0});
    for (const auto& r : rels) {
        CHECK(r.rhs_degree == Cochar{1});
        REQUIRE(r.weyl_rep);
        CHECK_FALSE(r.lhs.mentions([](VarId v) { return var::is_a(v) && var::index(v) > 4; }));
    }

    // W permutes the relation set: s_j -> s_{w(j)} maps the relation at c to the one at w c.
    for (const auto& set : {rels, bethe_relations_q1(tgr24)}) {
        for (const auto& w : m.weyl()->elements) {
            std::map<VarId, Monomial> sub;
            for (int j = 0; j < m.k(); ++j) sub[var::s(j + 1)] = Monomial::of(var::s(w[j] + 1));
            for (const auto& r : set) {
                Cochar wc = WeylGroup::act(w, r.degree);
                auto it = std::find_if(set.begin(), set.end(), [&](const Relation& o) { return o.degree == wc; });
                REQUIRE(it != set.end());
                CHECK(r.lhs.substitute(sub) == it->lhs);
            }
        }
    }

    // Trivial blocks: same relations as the abelian presentation.
    CoulombAlgebra tgr12{HypertoricModel(tgr12_data())};
    CoulombAlgebra tp1{HypertoricModel(tpn_data(1))};
    CHECK(dmodule_relations(tgr12)[0].lhs == dmodule_relations(tp1)[0].lhs);
}

TEST_CASE("rendering") {
    CHECK(render_bethe_system({}, RenderFormat::text).empty());
    for (const GaugeData& data : {a2_data(), tgr24_data()}) {
        CoulombAlgebra alg{HypertoricModel(data)};
        for (const auto& rels : {dmodule_relations(alg), bethe_relations_q1(alg)}) {
            std::string js = render_bethe_system(rels, RenderFormat::json);
            auto back = parse_bethe_json(nlohmann::json::parse(js));
            CHECK(back == rels);
            CHECK(render_bethe_system(back, RenderFormat::text) == render_bethe_system(rels, RenderFormat::text));
        }
        std::vector<Relation> reversed = bethe_relations_q1(alg);
        std::reverse(reversed.begin(), reversed.end());
        CHECK(render_bethe_system(reversed, RenderFormat::text) ==
              render_bethe_system(bethe_relations_q1(alg), RenderFormat::text));
    }
    CHECK(render_bethe_system(bethe_relations_q1(CoulombAlgebra{HypertoricModel(tpn_data(1))}), RenderFormat::text) ==
          "[1]: h*(1 - a1*s1)*(1 - a2*s1) / ((1 - h*a1*s1)*(1 - h*a2*s1)) = Q^[1]\n");
}

TEST_CASE("golden file transcribes the T*Gr(2,4) display") {
    std::string golden = read_file(std::string(COULOMBKIT_GOLDEN_DIR) + "/tgr24_bethe.txt");
    CHECK(golden == render_bethe_system(tgr_bethe_display(2, 4), RenderFormat::text));
}
