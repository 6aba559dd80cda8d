#pragma once

#include "coulombkit/coulomb.hpp"

#include <optional>

namespace coulombkit {

enum class RelationKind { dmodule, bethe_q1 };

// lhs = Q^{rhs_degree}, attached to the cocharacter `degree` (c, or w c in
// the nonabelian case).
struct Relation {
    Cochar degree;
    ExactScalar lhs;
    Cochar rhs_degree;
    RelationKind kind = RelationKind::dmodule;
    std::optional<std::vector<int>> weyl_rep;

    friend bool operator==(const Relation&, const Relation&) = default;
};

// Abelian: one relation per circuit. With blocks: one per distinct w c for
// dominant circuits c and w in W, a-specialization applied.
std::vector<Relation> dmodule_relations(const CoulombAlgebra& algebra);

// Closed q = 1 forms of the same relations.
std::vector<Relation> bethe_relations_q1(const CoulombAlgebra& algebra);

// q^{1/2} -> 1 applied to a single relation.
Relation specialize_q1(const Relation& r);

// prod_alpha (q s^alpha)_{-<alpha,e>} / (hbar s^alpha)_{-<alpha,e>}; 1 without blocks.
ExactScalar root_correction(const HypertoricModel& model, const Cochar& e);

// Circuits c with <alpha, c> >= 0 for every positive root.
std::vector<Cochar> dominant_circuits(const HypertoricModel& model);

enum class RenderFormat { text, json };

// One line "[c]: lhs = Q^[d]" per relation, ordered by degree.
std::string render_bethe_system(const std::vector<Relation>& relations, RenderFormat format);
std::vector<Relation> parse_bethe_json(const nlohmann::json& j);

}  // namespace coulombkit
