#include "coulombkit/vertex.hpp"

#include "coulombkit/parallel.hpp"
#include "coulombkit/pochhammer.hpp"

namespace coulombkit {

namespace {

ExactScalar restrict_at(const FixedPoint& p, const ExactScalar& f) {
    try {
        return f.substitute(p.restriction);
    } catch (const PoleError&) {
        throw PoleError("pole at fixed point");
    }
}

// q^{<chi, e>} L|_p for every row.
std::vector<Monomial> shifted_roots(const HypertoricModel& model, const FixedPoint& p, const Cochar& e) {
    std::vector<Monomial> out;
    for (int i = 0; i < model.n(); ++i)
        out.push_back(model.x(i).substitute(p.restriction) * q_power(pairing(model.data().chi[i], e)));
    return out;
}

ExactScalar lowering_part(const std::vector<Monomial>& X, const Cochar& c) {
    ExactScalar f(1);
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (c[i] > 0) f *= poch_qinv(X[i], c[i]);
        if (c[i] < 0) f *= poch(hbar_power(1) * X[i], -c[i]);
    }
    return f;
}

ExactScalar raising_part(const std::vector<Monomial>& X, const Cochar& c) {
    ExactScalar f(1);
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (c[i] > 0) f *= poch(hbar_power(1) * X[i], c[i]);
        if (c[i] < 0) f *= poch_qinv(X[i], -c[i]);
    }
    return f;
}

std::pair<Cochar, ExactScalar> split_Q(const ExactScalar& f, int k) {
    Cochar e(k, 0);
    std::vector<Monomial::Entry> entries;
    for (int j = 1; j <= k; ++j) {
        int ex = f.prefactor().exponent(var::Q_half(j));
        if (ex % 2 != 0) throw std::logic_error("odd power of Q^{1/2} in Whittaker pairing");
        e[j - 1] = ex / 2;
        entries.emplace_back(var::Q_half(j), ex);
    }
    ExactScalar rest = f / ExactScalar::monomial(Monomial::from_entries(entries));
    if (rest.mentions(var::is_Q)) throw std::logic_error("Q in Whittaker pairing outside the prefactor");
    return {e, rest};
}

}  // namespace

nlohmann::json QSeries::to_json() const { return {{"order", order_}, {"terms", GradedSum::to_json()}}; }

QSeries QSeries::from_json(const nlohmann::json& j) {
    QSeries s(j.at("order").get<int>());
    s.terms_ = map_from_json(j.at("terms"));
    return s;
}

ExactScalar vertex_weight(const HypertoricModel& model, const Cochar& d) {
    ExactScalar f(1);
    for (int i = 0; i < model.n(); ++i) f *= weight_factor(model.x(i), pairing(model.data().chi[i], d));
    return f;
}

QSeries vertex_fp(const HypertoricModel& model, std::size_t point, const ExactScalar& tau, int order) {
    const FixedPoint& p = model.fixed_points().at(point);
    auto degrees = enumerate_degrees(model.eff(), model.data().theta, order);
    auto coeffs = parallel_map(degrees, [&](const Cochar& d) {
        return restrict_at(p, vertex_weight(model, d) * tau.shift_s(d));
    });
    QSeries out(order);
    for (std::size_t i = 0; i < degrees.size(); ++i) out.add(degrees[i], coeffs[i]);
    return out;
}

QSeries vertex_fp(const HypertoricModel& model, std::size_t point, const Descendent& tau, int order) {
    return vertex_fp(model, point, ExactScalar(tau), order);
}

QSeries whittaker_function(const CoulombAlgebra& algebra, std::size_t point, const Descendent& tau, int order) {
    VermaModule M(algebra, point);
    WhittakerVector W = M.whittaker_vector(order);
    VermaVector tW = M.act(AlgebraElement::scalar(ExactScalar(tau), algebra.k()), W.vector);
    QSeries out(order);
    for (const auto& [d, term] : M.contravariant_terms(W.vector, tW)) {
        auto [e, rest] = split_Q(term, algebra.k());
        out.add(e, rest);
    }
    return out;
}

QdeReport qde_check(const HypertoricModel& model, const Cochar& c, const Descendent& tau, int order) {
    QdeReport report{c, order, {}, 0};
    ExactScalar t(tau);
    ExactScalar shifted = t.shift_s(c);
    Cochar row_c(model.n(), 0);
    int total = 0;
    for (int i = 0; i < model.n(); ++i) total += row_c[i] = pairing(model.data().chi[i], c);
    auto degrees = enumerate_degrees(model.eff(), model.data().theta, order);
    for (std::size_t pi = 0; pi < model.fixed_points().size(); ++pi) {
        const FixedPoint& p = model.fixed_points()[pi];
        QSeries V = vertex_fp(model, pi, t, order);
        QSeries Vs = vertex_fp(model, pi, shifted, order);
        for (const auto& d : degrees) {
            ExactScalar lhs = lowering_part(shifted_roots(model, p, d), row_c) * V.at(d);
            ExactScalar rhs = sign_kernel(total) * raising_part(shifted_roots(model, p, d - c), row_c) * Vs.at(d - c);
            ExactScalar r = lhs - rhs;
            ++report.checked;
            if (!r.is_zero()) report.residuals.push_back({pi, d, r});
        }
    }
    return report;
}

QdeReport kahler_check(const CoulombAlgebra& algebra, const Cochar& c, const Descendent& tau, int order) {
    const HypertoricModel& model = algebra.model();
    QdeReport report{c, order, {}, 0};
    ExactScalar t(tau);
    ExactScalar sigma = t.shift_s(-c) * algebra.mixed_product_scalar(c, -c);
    auto degrees = enumerate_degrees(model.eff(), model.data().theta, order);
    for (std::size_t pi = 0; pi < model.fixed_points().size(); ++pi) {
        QSeries lhs = vertex_fp(model, pi, sigma, order);
        QSeries rhs = vertex_fp(model, pi, t, order);
        for (const auto& d : degrees) {
            ExactScalar r = lhs.at(d) - rhs.at(d - c);
            ++report.checked;
            if (!r.is_zero()) report.residuals.push_back({pi, d, r});
        }
    }
    return report;
}

QSeries vertex_fp_nonab(const CoulombAlgebra& algebra, std::size_t ptilde, const ExactScalar& tau, int order) {
    const HypertoricModel& model = algebra.model();
    const auto& weyl = model.weyl();
    if (!weyl) throw ModelError("no block structure");
    const FixedPoint& p = model.fixed_points().at(ptilde);
    const auto& spec = model.data().a_specialization;
    auto degrees = enumerate_degrees(model.eff(), model.data().theta, order);
    auto coeffs = parallel_map(degrees, [&](const Cochar& d) {
        ExactScalar f = vertex_weight(model, d) * tau.shift_s(d);
        for (const auto& alpha : weyl->roots) {
            Monomial s_alpha = Monomial::of(var::s(alpha.first + 1)) / Monomial::of(var::s(alpha.second + 1));
            f *= weight_factor(s_alpha, WeylGroup::root_pairing(alpha, d)).inv();
        }
        f = restrict_at(p, f);
        return spec.empty() ? f : f.substitute(spec);
    });
    QSeries out(order);
    for (std::size_t i = 0; i < degrees.size(); ++i) out.add(weyl->reduce(degrees[i]), coeffs[i]);
    return out;
}

bool is_lift(const CoulombAlgebra& algebra, std::size_t ptilde) {
    const HypertoricModel& model = algebra.model();
    if (!model.weyl()) return true;
    const FixedPoint& p = model.fixed_points().at(ptilde);
    for (const auto& alpha : model.weyl()->roots) {
        Monomial s_alpha = Monomial::of(var::s(alpha.first + 1)) / Monomial::of(var::s(alpha.second + 1));
        Monomial r = s_alpha.substitute(p.restriction).substitute(model.data().a_specialization);
        if (r.without(var::hbar_half).is_one()) return false;
    }
    return true;
}

std::size_t weyl_translate(const CoulombAlgebra& algebra, const std::vector<int>& w, std::size_t ptilde) {
    auto perm = algebra.weyl_row_permutation(w);
    std::vector<int> support;
    for (int i : algebra.model().fixed_points().at(ptilde).support) support.push_back(perm[i]);
    return algebra.model().fixed_point_index(support);
}

}  // namespace coulombkit
