#include "support.hpp"

#include "coulombkit/cli.hpp"

#include <doctest.h>

#include <sstream>

using namespace coulombkit;
using namespace testsupport;

namespace {

std::string model_path(const std::string& name) { return std::string(COULOMBKIT_MODELS_DIR) + "/" + name + ".json"; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string error_of(const std::string& text, const ExprOptions& opts = {}) {
    try {
        parse_expression(text, opts);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("model files match the desk models") {
    CHECK(model_to_json(load_model(model_path("a2"))) == model_to_json(a2_data()));
    CHECK(model_to_json(load_model(model_path("tp1"))) == model_to_json(tpn_data(1)));
    CHECK(model_to_json(load_model(model_path("tp3"))) == model_to_json(tpn_data(3)));
    CHECK(model_to_json(load_model(model_path("k1_flip"))) == model_to_json(k1_flip_data()));
    CHECK(model_to_json(load_model(model_path("tgr12"))) == model_to_json(tgr12_data()));
    CHECK(model_to_json(load_model(model_path("tgr24"))) == model_to_json(tgr24_data()));

    HypertoricModel m(load_model(model_path("a2")));
    CHECK(m.circuits().size() == 3);
    CHECK(m.fixed_points().size() == 3);
}

TEST_CASE("model json round trip") {
    for (const char* name : {"a2", "tp2", "tgr24"}) {
        GaugeData d = load_model(model_path(name));
        CHECK(model_to_json(model_from_json(model_to_json(d))) == model_to_json(d));
    }
}

TEST_CASE("model errors") {
    nlohmann::json j = model_to_json(a2_data());
    j["chi"].push_back({1, 1});
    CHECK_THROWS_AS(model_from_json(j), ModelError);

    j = model_to_json(a2_data());
    j["theta"] = {1, 1};  // on the wall spanned by chi_3
    CHECK_THROWS_AS(model_from_json(j), ModelError);

    j = model_to_json(tgr24_data());
    j["a_specialization"]["a5"] = "a1 + a2";
    CHECK_THROWS_WITH_AS(model_from_json(j), "a_specialization for a5 is not a monomial", ModelError);

    CHECK_THROWS_AS(load_model(model_path("missing")), ParseError);
}

TEST_CASE("expression parser") {
    CHECK(parse_expression("1") == LaurentPoly(1));
    LaurentPoly p = parse_expression("s1*s2 - h*a1^-1", {2, 2});
    CHECK(p.size() == 2);
    CHECK(p == LaurentPoly::monomial(Monomial::of(var::s(1)) * Monomial::of(var::s(2))) -
                   LaurentPoly::monomial(Monomial::of(var::hbar_half, 2) * Monomial::of(var::a(1), -1)));
    CHECK(parse_expression("h^(1/2)") == LaurentPoly::monomial(Monomial::of(var::hbar_half)));
    CHECK(parse_expression("(h^3)^(-1/2)") == LaurentPoly::monomial(Monomial::of(var::hbar_half, -3)));
    CHECK(parse_expression("1/2*a1 + 1/2*a1") == LaurentPoly::monomial(Monomial::of(var::a(1))));
    CHECK(parse_expression("(1 - s1)^2") == parse_expression("1 - 2*s1 + s1^2"));
    CHECK(parse_expression("(2*s1)^-1") == LaurentPoly::monomial(Monomial::of(var::s(1), -1), mpq_class(1, 2)));
    CHECK(parse_expression("q*s1", {0, 0, true}) == LaurentPoly::monomial(Monomial::of(var::q_half, 2) * Monomial::of(var::s(1))));
    CHECK(parse_expression(parse_expression("a1*s1 - h").to_string()) == parse_expression("a1*s1 - h"));
}

TEST_CASE("expression parser errors") {
    CHECK(error_of("s1/(1-s2)").find("division not allowed in descendents") != std::string::npos);
    CHECK(error_of("(1-s1)^-1").find("division not allowed") != std::string::npos);
    CHECK(error_of("s3", {2, 2}).find("unknown variable s3") != std::string::npos);
    CHECK(error_of("q").find("unknown variable q") != std::string::npos);
    CHECK(error_of("s1^(1/2)").find("fractional power of s1") != std::string::npos);
    CHECK(error_of("s1 +").find("column 5") != std::string::npos);
    CHECK(error_of("s1 ) ").find("unexpected ')'") != std::string::npos);
    CHECK(error_of("x1").find("unknown variable") != std::string::npos);
}

TEST_CASE("words and points") {
    CoulombAlgebra alg{HypertoricModel(a2_data())};
    CHECK(parse_word("r[1,0] r[0,1]", alg) == alg.mul(alg.r({1, 0}), alg.r({0, 1})));
    CHECK(parse_word("r[1,0]r[0,1]", alg) == parse_word("r[1,0] * r[0,1]", alg));
    CHECK(parse_word("R[1,-1] R[-1,1]", alg) == alg.mul(alg.mixed_generator({1, -1}), alg.mixed_generator({-1, 1})));
    AlgebraElement scaled = parse_word("(1 - h*s1) r[0,1]", alg);
    CHECK(scaled == alg.mul(AlgebraElement::scalar(ExactScalar(parse_expression("1 - h*s1")), 2), alg.r({0, 1})));
    CHECK_THROWS_AS(parse_word("r[1]", alg), ParseError);
    CHECK_THROWS_AS(parse_word("r[1,0", alg), ParseError);
    CHECK_THROWS_AS(parse_word("", alg), ParseError);

    CHECK(parse_point("{1,3}", alg.model()) == 1);
    CHECK(parse_point("2", alg.model()) == 2);
    CHECK_THROWS_AS(parse_point("3", alg.model()), ParseError);
    CHECK_THROWS_AS(parse_point("{1,4}", alg.model()), ParseError);
}

TEST_CASE("exit codes") {
    CHECK(run({"analyze", model_path("a2")}).code == 0);
    CHECK(run({"qde-check", "--circuit", "0", "--order", "4", model_path("tp1")}).code == 0);
    CHECK(run({"wallcross", "--theta2", "1,2", model_path("a2")}).code == 0);
    CHECK(run({"bethe", "--q1", model_path("tgr24")}).code == 0);

    Run bad = run({"vertex", "--descendent", "s1/(1-s2)", model_path("a2")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("division not allowed in descendents") != std::string::npos);
    CHECK(run({"vertex", model_path("missing")}).code == 2);
    CHECK(run({"vertex", "--point", "7", model_path("a2")}).code == 2);
    CHECK(run({"qde-check", "--circuit", "5", model_path("a2")}).code == 2);
    CHECK(run({"wallcross", "--theta2", "1", model_path("a2")}).code == 2);
    CHECK(run({"frobnicate", model_path("a2")}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("json outputs round trip") {
    Run v = run({"vertex", "--json", "--order", "2", "--point", "0", model_path("tp1")});
    REQUIRE(v.code == 0);
    auto j = nlohmann::json::parse(v.out);
    QSeries s = QSeries::from_json(j.at("points").at(0).at("series"));
    CHECK(s == vertex_fp(HypertoricModel(tpn_data(1)), 0, Descendent(1), 2));

    Run b = run({"bethe", "--json", model_path("a2")});
    REQUIRE(b.code == 0);
    CoulombAlgebra alg{HypertoricModel(a2_data())};
    CHECK(parse_bethe_json(nlohmann::json::parse(b.out)) == dmodule_relations(alg));

    Run m = run({"mul", "--json", "r[1,0] R[-1,0]", model_path("a2")});
    REQUIRE(m.code == 0);
    CHECK(AlgebraElement::from_json(nlohmann::json::parse(m.out)) == alg.mul(alg.r({1, 0}), alg.mixed_generator({-1, 0})));

    Run w = run({"wallcross", "--json", "--theta2", "-1", model_path("k1_flip")});
    REQUIRE(w.code == 0);
    CHECK(nlohmann::json::parse(w.out).at("pass").get<bool>());
}

TEST_CASE("output is deterministic") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"vertex", "--order", "3", model_path("a2")},
             {"whittaker", "--order", "2", model_path("a2")},
             {"vertex", "--order", "1", model_path("tgr24")},
             {"bethe", model_path("tgr24")}}) {
        Run a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}
