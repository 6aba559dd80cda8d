#pragma once

#include "coulombkit/coulomb.hpp"
#include "coulombkit/vertex.hpp"

#include <iosfwd>

namespace coulombkit {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model file: {"n", "k", "chi", "theta", optional "blocks", "a_specialization"
// (key "a5" -> monomial text), "labels"}. All invariants are re-checked.
GaugeData model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const GaugeData& data);
GaugeData load_model(const std::string& path);

// Bounds for variable indices; zero disables the check.
struct ExprOptions {
    int n = 0;
    int k = 0;
    bool allow_q = false;
};

// Laurent polynomial over rationals in a_i, s_j, h (and q when allowed).
// Precedence ^ > * > +,-; h^(1/2) and q^(1/2) are the only fractional powers.
LaurentPoly parse_expression(const std::string& text, const ExprOptions& opts = {});
Descendent parse_descendent(const std::string& text, const ExprOptions& opts = {});

// "r[1,0] R[-1,0]" with optional scalar factors; r is the canonical
// generator and R the mixed one. Juxtaposition is the product.
AlgebraElement parse_word(const std::string& text, const CoulombAlgebra& algebra);

// "2", "{1,3}"; returns a fixed point index.
std::size_t parse_point(const std::string& text, const HypertoricModel& model);

// Entry point shared by the executable and the tests; returns the exit code
// (0 success, 1 failed check, 2 input error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coulombkit
