#pragma once

#include "coulombkit/coulomb.hpp"

namespace coulombkit {

// sum_d f_d (mixed r_d) v with residue-field coefficients (no s variables).
class VermaVector : public GradedSum {
public:
    VermaVector() = default;
    static VermaVector basis(const Cochar& d, const ExactScalar& coeff = ExactScalar(1));
    static VermaVector highest_weight(int k) { return basis(Cochar(k, 0)); }

    VermaVector operator+(const VermaVector& o) const;
    VermaVector operator-(const VermaVector& o) const;
    friend VermaVector operator*(const ExactScalar& f, const VermaVector& u);
    std::string to_string() const { return GradedSum::to_string("Rv"); }
};

struct WhittakerVector {
    int order = 0;
    VermaVector vector;
};

// Q^{d/2} = prod_j Q_j^{d_j/2}
Monomial Q_half_power(const Cochar& d);

class VermaModule {
public:
    VermaModule(const CoulombAlgebra& algebra, std::size_t point);

    const CoulombAlgebra& algebra() const { return *algebra_; }
    const FixedPoint& point() const { return algebra_->model().fixed_points()[point_]; }
    const Cone& eff() const { return algebra_->model().eff_fp(point_); }

    // Substitution s -> S|_p; a surviving pole raises PoleError("pole at fixed point").
    ExactScalar restrict(const ExactScalar& f) const;
    VermaVector act(const AlgebraElement& a, const VermaVector& u) const;
    // (mixed r_{-d} mixed r_d)|_p
    ExactScalar norm(const Cochar& d) const;
    // Per-degree summands u_d w_d norm(d) of the contravariant form.
    std::map<Cochar, ExactScalar> contravariant_terms(const VermaVector& u, const VermaVector& w) const;
    ExactScalar contravariant_form(const VermaVector& u, const VermaVector& w) const;
    WhittakerVector whittaker_vector(int order) const;

private:
    const CoulombAlgebra* algebra_;
    std::size_t point_;
};

}  // namespace coulombkit
