#include "coulombkit/bethe.hpp"

#include "coulombkit/pochhammer.hpp"

#include <sstream>

namespace coulombkit {

namespace {

std::string format_cochar(const Cochar& d) {
    std::string s = "[";
    for (std::size_t j = 0; j < d.size(); ++j) s += (j ? "," : "") + std::to_string(d[j]);
    return s + "]";
}

Monomial root_monomial(const std::pair<int, int>& alpha) {
    return Monomial::of(var::s(alpha.first + 1)) / Monomial::of(var::s(alpha.second + 1));
}

// (-hbar^{-1/2})^m
ExactScalar sign_kernel_q1(int m) { return ExactScalar::monomial(Monomial::of(var::hbar_half, -m), m % 2 ? -1 : 1); }

ExactScalar matter_q1(const HypertoricModel& model, const Cochar& c) {
    ExactScalar f(1);
    for (int i = 0; i < model.n(); ++i) {
        int C = pairing(model.data().chi[i], c);
        if (C == 0) continue;
        ExactScalar ratio = ExactScalar::one_minus(hbar_power(1) * model.x(i)) / ExactScalar::one_minus(model.x(i));
        f *= sign_kernel_q1(-C) * ratio.pow(-C);
    }
    return f;
}

struct WeightedDegree {
    Cochar degree;
    Cochar rhs;
    std::optional<std::vector<int>> w;
};

// Degrees carrying a relation, in canonical order.
std::vector<WeightedDegree> relation_degrees(const HypertoricModel& model) {
    std::map<Cochar, WeightedDegree> out;
    const auto& weyl = model.weyl();
    if (!weyl) {
        for (const auto& c : model.circuits()) out.emplace(c.vector, WeightedDegree{c.vector, c.vector, std::nullopt});
    } else {
        for (const auto& c : dominant_circuits(model)) {
            for (const auto& w : weyl->elements) {
                Cochar wc = WeylGroup::act(w, c);
                out.emplace(wc, WeightedDegree{wc, weyl->reduce(c), w});
            }
        }
    }
    std::vector<WeightedDegree> v;
    for (auto& [d, wd] : out) v.push_back(std::move(wd));
    return v;
}

ExactScalar specialize_a(const HypertoricModel& model, const ExactScalar& f) {
    const auto& spec = model.data().a_specialization;
    return spec.empty() ? f : f.substitute(spec);
}

const char* kind_name(RelationKind k) { return k == RelationKind::dmodule ? "dmodule" : "bethe_q1"; }

}  // namespace

ExactScalar root_correction(const HypertoricModel& model, const Cochar& e) {
    ExactScalar f(1);
    if (!model.weyl()) return f;
    for (const auto& alpha : model.weyl()->roots) {
        int m = -WeylGroup::root_pairing(alpha, e);
        Monomial sa = root_monomial(alpha);
        f *= poch(q_power(1) * sa, m) / poch(hbar_power(1) * sa, m);
    }
    return f;
}

std::vector<Cochar> dominant_circuits(const HypertoricModel& model) {
    std::vector<Cochar> out;
    const auto& weyl = model.weyl();
    for (const auto& c : model.circuits()) {
        bool dominant = true;
        if (weyl)
            for (const auto& alpha : weyl->roots)
                if (alpha.first < alpha.second && WeylGroup::root_pairing(alpha, c.vector) < 0) dominant = false;
        if (dominant) out.push_back(c.vector);
    }
    return out;
}

std::vector<Relation> dmodule_relations(const CoulombAlgebra& algebra) {
    const HypertoricModel& model = algebra.model();
    std::vector<Relation> out;
    for (const auto& wd : relation_degrees(model)) {
        ExactScalar lhs = algebra.mixed_product_scalar(wd.degree, -wd.degree) * root_correction(model, wd.degree);
        out.push_back({wd.degree, specialize_a(model, lhs), wd.rhs, RelationKind::dmodule, wd.w});
    }
    return out;
}

std::vector<Relation> bethe_relations_q1(const CoulombAlgebra& algebra) {
    const HypertoricModel& model = algebra.model();
    std::vector<Relation> out;
    for (const auto& wd : relation_degrees(model)) {
        ExactScalar lhs = matter_q1(model, wd.degree);
        if (model.weyl())
            for (const auto& alpha : model.weyl()->roots) {
                int m = -WeylGroup::root_pairing(alpha, wd.degree);
                Monomial sa = root_monomial(alpha);
                lhs *= (ExactScalar::one_minus(sa) / ExactScalar::one_minus(hbar_power(1) * sa)).pow(m);
            }
        out.push_back({wd.degree, specialize_a(model, lhs), wd.rhs, RelationKind::bethe_q1, wd.w});
    }
    return out;
}

Relation specialize_q1(const Relation& r) {
    Relation out = r;
    out.lhs = r.lhs.substitute({{var::q_half, Monomial()}});
    out.kind = RelationKind::bethe_q1;
    return out;
}

std::string render_bethe_system(const std::vector<Relation>& relations, RenderFormat format) {
    std::vector<const Relation*> sorted;
    for (const auto& r : relations) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(), [](const Relation* a, const Relation* b) { return a->degree < b->degree; });
    if (format == RenderFormat::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const Relation* r : sorted) {
            nlohmann::json j{{"degree", r->degree},
                             {"lhs", r->lhs.to_json()},
                             {"rhs_degree", r->rhs_degree},
                             {"kind", kind_name(r->kind)}};
            j["weyl"] = r->weyl_rep ? nlohmann::json(*r->weyl_rep) : nlohmann::json(nullptr);
            arr.push_back(std::move(j));
        }
        return nlohmann::json{{"relations", arr}}.dump(2) + "\n";
    }
    std::ostringstream os;
    for (const Relation* r : sorted)
        os << format_cochar(r->degree) << ": " << r->lhs.to_string() << " = Q^" << format_cochar(r->rhs_degree) << "\n";
    return os.str();
}

std::vector<Relation> parse_bethe_json(const nlohmann::json& j) {
    std::vector<Relation> out;
    for (const auto& e : j.at("relations")) {
        Relation r;
        r.degree = e.at("degree").get<Cochar>();
        r.lhs = ExactScalar::from_json(e.at("lhs"));
        r.rhs_degree = e.at("rhs_degree").get<Cochar>();
        std::string kind = e.at("kind").get<std::string>();
        if (kind == "dmodule")
            r.kind = RelationKind::dmodule;
        else if (kind == "bethe_q1")
            r.kind = RelationKind::bethe_q1;
        else
            throw std::invalid_argument("unknown relation kind " + kind);
        if (!e.at("weyl").is_null()) r.weyl_rep = e.at("weyl").get<std::vector<int>>();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace coulombkit
