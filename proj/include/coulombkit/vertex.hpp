#pragma once

#include "coulombkit/verma.hpp"

namespace coulombkit {

// Truncated series sum_d c_d Q^d; c_d in the residue field.
class QSeries : public GradedSum {
public:
    QSeries() = default;
    explicit QSeries(int order) : order_(order) {}
    int order() const { return order_; }
    std::string to_string() const { return GradedSum::to_string("Q^"); }
    nlohmann::json to_json() const;
    static QSeries from_json(const nlohmann::json& j);

private:
    int order_ = 0;
};

// Polynomial insertion tau(s) in s, a, hbar^{1/2}.
using Descendent = LaurentPoly;

// prod_i sk(D_i) (hbar x_i)_{D_i} / (q x_i)_{D_i}
ExactScalar vertex_weight(const HypertoricModel& model, const Cochar& d);

// V^{(tau)}|_p: sum over d in Eff(X), l(d) <= order, of the weight times
// tau(q^d s), restricted at p.
QSeries vertex_fp(const HypertoricModel& model, std::size_t point, const ExactScalar& tau, int order);
QSeries vertex_fp(const HypertoricModel& model, std::size_t point, const Descendent& tau, int order);

// <W_p, tau W_p> through the Verma action and the contravariant form.
QSeries whittaker_function(const CoulombAlgebra& algebra, std::size_t point, const Descendent& tau, int order);

struct DegreeResidual {
    std::size_t point;
    Cochar degree;
    ExactScalar residual;
};

struct QdeReport {
    Cochar circuit;
    int order = 0;
    std::vector<DegreeResidual> residuals;  // nonzero residuals only
    int checked = 0;
    bool pass() const { return residuals.empty(); }
};

// q-difference operator attached to the circuit c applied to the vertex
// series at every fixed point; q^{chi_i Q d_Q} acts on the Q^d coefficient by
// L_i|_p q^{<chi_i,d>}.
QdeReport qde_check(const HypertoricModel& model, const Cochar& c, const Descendent& tau, int order);

// Q^c V^{(tau)} = V^{(r_c tau r_{-c})} at every fixed point.
QdeReport kahler_check(const CoulombAlgebra& algebra, const Cochar& c, const Descendent& tau, int order);

// Nonabelian vertex at a lift ptilde of an isolated fixed point, keyed by
// the image of d in pi_1(G); the model's a-specialization is applied last.
QSeries vertex_fp_nonab(const CoulombAlgebra& algebra, std::size_t ptilde, const ExactScalar& tau, int order);

// ptilde lifts an isolated fixed point: no root restricts (after the
// a-specialization) to a pure power of hbar.
bool is_lift(const CoulombAlgebra& algebra, std::size_t ptilde);

// Index of the fixed point w . ptilde (support rows permuted by w).
std::size_t weyl_translate(const CoulombAlgebra& algebra, const std::vector<int>& w, std::size_t ptilde);

}  // namespace coulombkit
