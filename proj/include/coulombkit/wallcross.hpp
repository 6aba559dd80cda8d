#pragma once

#include "coulombkit/bethe.hpp"

namespace coulombkit {

// X and X' share chi and blocks and differ in theta; both algebras live in
// the same localized algebra and differ only through Eff.
class WallCrossScenario {
public:
    WallCrossScenario(const GaugeData& data, const Character& theta2);

    const CoulombAlgebra& before() const { return before_; }
    const CoulombAlgebra& after() const { return after_; }
    const Character& theta2() const { return theta2_; }
    const std::vector<Circuit>& reversing() const { return reversing_; }
    const std::vector<Circuit>& kept() const { return kept_; }
    bool is_reversing(const Cochar& c) const;

private:
    CoulombAlgebra before_;
    CoulombAlgebra after_;
    Character theta2_;
    std::vector<Circuit> reversing_;
    std::vector<Circuit> kept_;
};

struct IdentityCheck {
    std::string name;
    bool ok = false;
};

struct WallCrossReport {
    Cochar circuit;
    bool reversing = false;
    std::vector<IdentityCheck> checks;
    bool pass() const;
    nlohmann::json to_json() const;
};

// Reversing rho: r_{-rho} r'_rho = 1, r_rho r'_{-rho} = 1, r'_{+-rho} equals
// the algebra inverse of r_{-+rho}, and the scalar identities
// (r_{+-rho} r_{-+rho})(X) (r'_{+-rho} r'_{-+rho})(X') = 1. Kept rho: r'_{+-rho} = r_{+-rho}.
WallCrossReport check_reversal(const WallCrossScenario& scenario, const Cochar& rho);

// Inverts the X relation for c, substitutes r_{wc}^{-1} = r'_{-wc} and
// r_{-wc}^{-1} = r'_{wc}, and compares with the X' relation for -c, for
// tau in {1, s_1, ..., s_k} and every w in W. Kept circuits compare the two
// relations for c directly.
WallCrossReport dmodule_match(const WallCrossScenario& scenario, const Cochar& c);

}  // namespace coulombkit
