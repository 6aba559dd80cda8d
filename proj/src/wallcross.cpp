#include "coulombkit/wallcross.hpp"

namespace coulombkit {

namespace {

GaugeData with_theta(GaugeData data, const Character& theta) {
    data.theta = theta;
    return data;
}

std::string label(const std::string& what, const Cochar& d) {
    std::string s = what + "[";
    for (std::size_t j = 0; j < d.size(); ++j) s += (j ? "," : "") + std::to_string(d[j]);
    return s + "]";
}

std::vector<std::vector<int>> weyl_elements(const HypertoricModel& model) {
    if (model.weyl()) return model.weyl()->elements;
    std::vector<int> id(model.k());
    for (int j = 0; j < model.k(); ++j) id[j] = j;
    return {id};
}

std::vector<ExactScalar> sample_insertions(int k) {
    std::vector<ExactScalar> out{ExactScalar(1)};
    for (int j = 1; j <= k; ++j) out.push_back(ExactScalar::monomial(Monomial::of(var::s(j))));
    return out;
}

}  // namespace

WallCrossScenario::WallCrossScenario(const GaugeData& data, const Character& theta2)
    : before_(HypertoricModel(data)), after_(HypertoricModel(with_theta(data, theta2))), theta2_(theta2) {
    WallSplit split = separating_circuits(data, theta2);
    reversing_ = std::move(split.reversing);
    kept_ = std::move(split.kept);
}

bool WallCrossScenario::is_reversing(const Cochar& c) const {
    return std::any_of(reversing_.begin(), reversing_.end(), [&](const Circuit& r) { return r.vector == c; });
}

bool WallCrossReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.ok; });
}

nlohmann::json WallCrossReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) arr.push_back({{"name", c.name}, {"ok", c.ok}});
    return {{"circuit", circuit}, {"reversing", reversing}, {"pass", pass()}, {"checks", arr}};
}

WallCrossReport check_reversal(const WallCrossScenario& scenario, const Cochar& rho) {
    const CoulombAlgebra& X = scenario.before();
    const CoulombAlgebra& Xp = scenario.after();
    WallCrossReport report{rho, scenario.is_reversing(rho), {}};
    AlgebraElement one = AlgebraElement::identity(X.k());
    if (report.reversing) {
        report.checks.push_back({"r_-rho r'_rho = 1", X.mul(X.mixed_generator(-rho), Xp.mixed_generator(rho)) == one});
        report.checks.push_back({"r_rho r'_-rho = 1", X.mul(X.mixed_generator(rho), Xp.mixed_generator(-rho)) == one});
        report.checks.push_back({"r'_rho = r_-rho^-1", Xp.mixed_generator(rho) == X.inverse(X.mixed_generator(-rho))});
        report.checks.push_back({"r'_-rho = r_rho^-1", Xp.mixed_generator(-rho) == X.inverse(X.mixed_generator(rho))});
        ExactScalar prod = X.mixed_product_scalar(rho, -rho) * Xp.mixed_product_scalar(rho, -rho);
        report.checks.push_back({"(r_rho r_-rho)(r'_rho r'_-rho) = 1", prod.is_one()});
        prod = X.mixed_product_scalar(-rho, rho) * Xp.mixed_product_scalar(-rho, rho);
        report.checks.push_back({"(r_-rho r_rho)(r'_-rho r'_rho) = 1", prod.is_one()});
    } else {
        report.checks.push_back({"r'_rho = r_rho", Xp.mixed_generator(rho) == X.mixed_generator(rho)});
        report.checks.push_back({"r'_-rho = r_-rho", Xp.mixed_generator(-rho) == X.mixed_generator(-rho)});
    }
    return report;
}

WallCrossReport dmodule_match(const WallCrossScenario& scenario, const Cochar& c) {
    const CoulombAlgebra& X = scenario.before();
    const CoulombAlgebra& Xp = scenario.after();
    const HypertoricModel& model = X.model();
    WallCrossReport report{c, scenario.is_reversing(c), {}};
    int k = X.k();
    for (const auto& w : weyl_elements(model)) {
        Cochar wc = WeylGroup::act(w, c);
        ExactScalar phi = root_correction(model, wc);
        if (!report.reversing) {
            ExactScalar lhs = X.mixed_product_scalar(wc, -wc) * phi;
            ExactScalar rhs = Xp.mixed_product_scalar(wc, -wc) * root_correction(Xp.model(), wc);
            report.checks.push_back({label("relation w c = ", wc), lhs == rhs});
            continue;
        }
        // The root factor crossing r'_{wc} picks up the q-shift s^alpha -> q^{<alpha,wc>} s^alpha.
        report.checks.push_back({label("root shift ", wc), phi.inv().shift_s(wc) == root_correction(model, -wc)});
        for (const ExactScalar& tau : sample_insertions(k)) {
            AlgebraElement middle = AlgebraElement::scalar(tau * phi.inv(), k);
            AlgebraElement inverted = X.product({X.inverse(X.mixed_generator(wc)), middle, X.inverse(X.mixed_generator(-wc))});
            AlgebraElement substituted = X.product({Xp.mixed_generator(-wc), middle, Xp.mixed_generator(wc)});
            AlgebraElement relation = X.product({Xp.mixed_generator(-wc), AlgebraElement::scalar(tau, k), Xp.mixed_generator(wc)});
            relation = root_correction(Xp.model(), -wc) * relation;
            std::string tag = label("w c = ", wc) + " tau = " + tau.to_string();
            report.checks.push_back({"inverse substitution, " + tag, inverted == substituted});
            report.checks.push_back({"X' relation for -c, " + tag, substituted == relation});
        }
    }
    return report;
}

}  // namespace coulombkit
