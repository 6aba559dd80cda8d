#include "coulombkit/verma.hpp"

#include "coulombkit/parallel.hpp"

namespace coulombkit {

VermaVector VermaVector::basis(const Cochar& d, const ExactScalar& coeff) {
    VermaVector u;
    u.add(d, coeff);
    return u;
}

VermaVector VermaVector::operator+(const VermaVector& o) const {
    VermaVector r = *this;
    for (const auto& [d, f] : o.terms_) r.add(d, f);
    return r;
}

VermaVector VermaVector::operator-(const VermaVector& o) const { return *this + ExactScalar(-1) * o; }

VermaVector operator*(const ExactScalar& f, const VermaVector& u) {
    VermaVector r;
    for (const auto& [d, g] : u.terms_) r.add(d, f * g);
    return r;
}

Monomial Q_half_power(const Cochar& d) {
    std::vector<Monomial::Entry> e;
    for (std::size_t j = 0; j < d.size(); ++j) e.emplace_back(var::Q_half(static_cast<int>(j) + 1), d[j]);
    return Monomial::from_entries(e);
}

VermaModule::VermaModule(const CoulombAlgebra& algebra, std::size_t point) : algebra_(&algebra), point_(point) {}

ExactScalar VermaModule::restrict(const ExactScalar& f) const {
    try {
        return f.substitute(point().restriction);
    } catch (const PoleError&) {
        throw PoleError("pole at fixed point");
    }
}

VermaVector VermaModule::act(const AlgebraElement& a, const VermaVector& u) const {
    const CoulombAlgebra& alg = *algebra_;
    VermaVector out;
    for (const auto& [c, f] : a.terms()) {
        for (const auto& [e, g] : u.terms()) {
            Cochar target = c + e;
            if (!eff().contains(target)) continue;
            ExactScalar h = f * alg.mixed_coefficient(e).shift_s(-c) * alg.structure_constant(c, e) * alg.mixed_coefficient(target).inv();
            out.add(target, g * restrict(h.shift_s(target)));
        }
    }
    return out;
}

ExactScalar VermaModule::norm(const Cochar& d) const { return restrict(algebra_->mixed_product_scalar(-d, d)); }

std::map<Cochar, ExactScalar> VermaModule::contravariant_terms(const VermaVector& u, const VermaVector& w) const {
    std::map<Cochar, ExactScalar> out;
    for (const auto& [d, f] : u.terms()) {
        ExactScalar g = w.at(d);
        if (!g.is_zero()) out.emplace(d, f * g * norm(d));
    }
    return out;
}

ExactScalar VermaModule::contravariant_form(const VermaVector& u, const VermaVector& w) const {
    ExactScalar sum;
    for (const auto& [d, t] : contravariant_terms(u, w)) sum += t;
    return sum;
}

WhittakerVector VermaModule::whittaker_vector(int order) const {
    auto degrees = enumerate_degrees(eff(), algebra_->model().data().theta, order);
    auto coeffs = parallel_map(degrees, [&](const Cochar& d) { return ExactScalar::monomial(Q_half_power(d)) / norm(d); });
    WhittakerVector w{order, {}};
    for (std::size_t i = 0; i < degrees.size(); ++i) w.vector.add(degrees[i], coeffs[i]);
    return w;
}

}  // namespace coulombkit
