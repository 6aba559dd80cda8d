#pragma once

#include "coulombkit/exactring.hpp"
#include "coulombkit/hypertoric.hpp"

#include <memory>
#include <shared_mutex>
#include <tuple>

namespace coulombkit {

int epsilon(int c);
// 0 when c and d have the same sign (zero counts as either), else min(|c|,|d|).
int delta(int c, int d);

// sk(D) (hbar x)_D / (q x)_D
ExactScalar weight_factor(const Monomial& x, int D);

struct Polarization {
    std::vector<bool> included;

    static Polarization canonical(int n) { return {std::vector<bool>(n, true)}; }
    static Polarization empty(int n) { return {std::vector<bool>(n, false)}; }
    friend bool operator==(const Polarization&, const Polarization&) = default;
    friend auto operator<=>(const Polarization&, const Polarization&) = default;
};

// Finite sum of scalar coefficients indexed by cocharacters; no zero entries.
class GradedSum {
public:
    using Map = std::map<Cochar, ExactScalar>;

    GradedSum() = default;
    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Coefficient at d, zero if absent.
    ExactScalar at(const Cochar& d) const;
    void add(const Cochar& d, const ExactScalar& f);

    friend bool operator==(const GradedSum& a, const GradedSum& b);
    friend bool operator!=(const GradedSum& a, const GradedSum& b) { return !(a == b); }

    // One line per degree: "r[1,0]: <scalar>".
    std::string to_string(const std::string& symbol) const;
    nlohmann::json to_json() const;
    static Map map_from_json(const nlohmann::json& j);

protected:
    Map terms_;
};

// sum_d f_d r_d with coefficients on the left.
class AlgebraElement : public GradedSum {
public:
    AlgebraElement() = default;
    static AlgebraElement generator(const Cochar& d, const ExactScalar& coeff = ExactScalar(1));
    static AlgebraElement scalar(const ExactScalar& f, int k) { return generator(Cochar(k, 0), f); }
    static AlgebraElement identity(int k) { return scalar(ExactScalar(1), k); }
    static AlgebraElement from_json(const nlohmann::json& j);

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const;
    // Left multiplication by a Cartan scalar.
    friend AlgebraElement operator*(const ExactScalar& f, const AlgebraElement& a);
    std::string to_string() const { return GradedSum::to_string("r"); }
};

// sum_c f_c t_c in the right module.
class ModuleElement : public GradedSum {
public:
    ModuleElement() = default;
    static ModuleElement basis(const Cochar& c, const ExactScalar& coeff = ExactScalar(1));
    ModuleElement operator+(const ModuleElement& o) const;
    std::string to_string() const { return GradedSum::to_string("t"); }
};

class CoulombAlgebra {
public:
    explicit CoulombAlgebra(HypertoricModel model);

    const HypertoricModel& model() const { return model_; }
    int n() const { return model_.n(); }
    int k() const { return model_.k(); }
    Polarization canonical() const { return Polarization::canonical(n()); }

    // gamma(c,d) with r_c r_d = gamma r_{c+d}; memoized.
    ExactScalar structure_constant(const Cochar& c, const Cochar& d, const Polarization& pol) const;
    ExactScalar structure_constant(const Cochar& c, const Cochar& d) const { return structure_constant(c, d, canonical()); }

    AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b, const Polarization& pol) const;
    AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const { return mul(a, b, canonical()); }
    AlgebraElement product(const std::vector<AlgebraElement>& factors) const;
    AlgebraElement tau(const AlgebraElement& a) const;

    AlgebraElement r(const Cochar& d) const { return AlgebraElement::generator(d); }
    // Left coefficient zeta_d with mixed generator = zeta_d r_d.
    ExactScalar mixed_coefficient(const Cochar& d) const;
    AlgebraElement mixed_generator(const Cochar& d) const;
    // Composite change of polarization applied to r_d(pol).
    AlgebraElement mixed_generator_via_polarization(const Cochar& d, const Polarization& pol) const;
    // Mixed polarization of the cochamber closure containing +-d.
    Polarization polarization_for_degree(const Cochar& d) const;
    // Scalar coefficient of mixed(d) mixed(e) at degree d+e.
    ExactScalar mixed_product_scalar(const Cochar& d, const Cochar& e) const;

    ExactScalar module_constant(const Cochar& c, const Cochar& d) const;
    ModuleElement module_act(const ModuleElement& t, const AlgebraElement& a) const;

    // Two-sided inverse of a single-term element f r_c.
    AlgebraElement inverse(const AlgebraElement& single) const;

    // Nonabelian data: symmetrized generator and the Weyl action.
    AlgebraElement symmetrized_generator(const Cochar& d) const;
    ExactScalar root_factor(const std::pair<int, int>& alpha, int pairing_value) const;
    // Row i goes to the row carrying w . chi_i with the same occurrence index.
    std::vector<int> weyl_row_permutation(const std::vector<int>& w) const;
    std::map<VarId, Monomial> weyl_substitution(const std::vector<int>& w) const;
    ExactScalar weyl_act(const std::vector<int>& w, const ExactScalar& f) const;
    AlgebraElement weyl_act(const std::vector<int>& w, const AlgebraElement& a) const;

private:
    HypertoricModel model_;
    using Key = std::tuple<Cochar, Cochar, Polarization>;
    struct Cache {
        std::shared_mutex mutex;
        std::map<Key, ExactScalar> values;
    };
    std::shared_ptr<Cache> cache_;

    ExactScalar compute_structure_constant(const Cochar& c, const Cochar& d, const Polarization& pol) const;
};

// Rank-n model with chi = identity, used as an independent oracle: products of
// lifted words are evaluated generator by generator using only the rank-one
// relations and the shift lemma.
class AbelianPointModel {
public:
    explicit AbelianPointModel(int n) : n_(n) {}

    int n() const { return n_; }
    Monomial x(int i) const;  // a_i s_i, 0-based i
    // r~_{-eps b_i} r~_{eps b_i} as a scalar.
    ExactScalar rank_one_relation(int i, int eps) const;
    AlgebraElement times_generator(const AlgebraElement& a, int i, int eps) const;
    AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
    // r~_{iota(d)} with iota(d)_i = <chi_i, d>.
    AlgebraElement lift(const GaugeData& data, const Cochar& d) const;
    // s~_i -> s^{chi_i}
    std::map<VarId, Monomial> reduction(const GaugeData& data) const;

private:
    int n_;
};

}  // namespace coulombkit
