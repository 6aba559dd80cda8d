#pragma once

#include "coulombkit/exactring.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coulombkit {

using Cochar = std::vector<int>;
using Character = std::vector<int>;

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int pairing(const Character& chi, const Cochar& d);
Cochar operator+(const Cochar& a, const Cochar& b);
Cochar operator-(const Cochar& a, const Cochar& b);
Cochar operator-(const Cochar& a);
bool is_zero(const Cochar& d);
std::string format_vector(const std::vector<int>& v);
// "{1,3}" with 1-based indices.
std::string format_subset(const std::vector<int>& zero_based);

struct GaugeData {
    int n = 0;
    int k = 0;
    std::vector<Character> chi;
    Character theta;
    std::optional<std::vector<int>> blocks;  // block sizes, summing to k
    std::vector<std::string> labels;
    // a_i -> monomial in the specialized torus variables and hbar^{1/2}
    std::map<VarId, Monomial> a_specialization;

    // Shape, nonzero rows, rank k, block compatibility.
    void validate_shape() const;
    VariableTable variables() const { return VariableTable(n, k); }
};

struct Circuit {
    Cochar vector;
    std::vector<int> wall;  // rows (0-based) orthogonal to the circuit
};

struct Cone {
    int dim = 0;
    std::vector<Cochar> generators;
    std::vector<Character> facet_normals;

    static Cone from_generators(std::vector<Cochar> gens, int dim);
    bool contains(const Cochar& d) const;
    // Generators lying on an extreme ray, deduplicated.
    std::vector<Cochar> extreme_rays() const;
};

struct FixedPoint {
    std::vector<int> support;  // 0-based rows
    std::vector<int> plus;
    std::vector<int> minus;
    std::vector<mpq_class> coeffs;  // theta = sum coeffs[j] chi_{support[j]}
    std::map<VarId, Monomial> restriction;  // s_j -> monomial in a, hbar^{1/2}
    std::vector<Cochar> eff_rays;           // dual basis, one per support row

    bool in_support(int i) const;
    bool in_plus(int i) const;
    bool in_minus(int i) const;
    std::string label() const;  // "p13"
};

std::vector<Circuit> circuits(const GaugeData& data);
std::vector<FixedPoint> fixed_points(const GaugeData& data);
Cone eff_cone(const GaugeData& data, const std::vector<Circuit>& circuits);
Cone eff_cone(const GaugeData& data);
Cone eff_cone_fp(const FixedPoint& p, const GaugeData& data);
// K(p) = cone(+chi_j for j in p+, -chi_j for j in p-)
Cone kahler_cone_fp(const FixedPoint& p, const GaugeData& data);
// Pol(d) = {i : <chi_i, d> >= 0}
std::vector<bool> mixed_polarization(const GaugeData& data, const Cochar& d);
std::vector<Cochar> enumerate_degrees(const Cone& cone, const Character& theta, int order);

struct WallSplit {
    std::vector<Circuit> reversing;
    std::vector<Circuit> kept;
};
WallSplit separating_circuits(const GaugeData& data, const Character& theta2);

// Weyl group of a product of GL blocks, acting on cocharacters by permuting
// coordinates inside blocks.
struct WeylGroup {
    std::vector<std::vector<int>> elements;  // perm[j] = image of coordinate j
    std::vector<std::pair<int, int>> roots;  // alpha = e_a - e_b, a != b in one block
    std::vector<int> block_of;               // coordinate -> block index
    int blocks = 0;

    static WeylGroup from_blocks(const std::vector<int>& sizes);
    static Cochar act(const std::vector<int>& w, const Cochar& d);
    static int root_pairing(const std::pair<int, int>& alpha, const Cochar& d) { return d[alpha.first] - d[alpha.second]; }
    bool dominant(const Cochar& d) const;
    // Image in pi_1(G): per-block coordinate sums.
    Cochar reduce(const Cochar& d) const;
};

// The gauge datum together with its circuits, fixed points and effective cone.
class HypertoricModel {
public:
    explicit HypertoricModel(GaugeData data);

    const GaugeData& data() const { return data_; }
    int n() const { return data_.n; }
    int k() const { return data_.k; }
    const std::vector<Circuit>& circuits() const { return circuits_; }
    const std::vector<FixedPoint>& fixed_points() const { return fixed_points_; }
    const Cone& eff() const { return eff_; }
    const Cone& eff_fp(std::size_t p) const { return eff_fp_[p]; }
    // x_i = a_i s^{chi_i} (0-based i)
    const Monomial& x(int i) const { return x_[i]; }
    int grading(const Cochar& d) const { return pairing(data_.theta, d); }
    int pair(int i, const Cochar& d) const { return pairing(data_.chi[i], d); }
    bool in_eff(const Cochar& d) const { return eff_.contains(d); }
    bool is_abelian() const;
    const std::optional<WeylGroup>& weyl() const { return weyl_; }
    std::size_t fixed_point_index(const std::vector<int>& support) const;

private:
    GaugeData data_;
    std::vector<Circuit> circuits_;
    std::vector<FixedPoint> fixed_points_;
    Cone eff_;
    std::vector<Cone> eff_fp_;
    std::vector<Monomial> x_;
    std::optional<WeylGroup> weyl_;
};

}  // namespace coulombkit
