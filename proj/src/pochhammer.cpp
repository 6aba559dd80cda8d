#include "coulombkit/pochhammer.hpp"

namespace coulombkit {

Monomial q_power(int m) { return Monomial::of(var::q_half, 2 * m); }

Monomial hbar_power(int m) { return Monomial::of(var::hbar_half, 2 * m); }

ExactScalar poch(const Monomial& x, int d) {
    ExactScalar r(1);
    if (d > 0) {
        for (int m = 0; m < d; ++m) r *= ExactScalar::one_minus(q_power(m) * x);
    } else {
        for (int m = 1; m <= -d; ++m) r *= ExactScalar::inv_one_minus(q_power(-m) * x);
    }
    return r;
}

ExactScalar poch_qinv(const Monomial& x, int d) {
    if (d == 0) return ExactScalar(1);
    // (-1)^d x^d q^{-d(d-1)/2} (x^{-1})_d
    Monomial pre = x.pow(d) * Monomial::of(var::q_half, -d * (d - 1));
    return ExactScalar::monomial(pre, d % 2 == 0 ? 1 : -1) * poch(x.inverse(), d);
}

ExactScalar poch_qinv_direct(const Monomial& x, int d) {
    ExactScalar r(1);
    for (int m = 0; m < d; ++m) r *= ExactScalar::one_minus(q_power(-m) * x);
    return r;
}

ExactScalar evaluate(const PochSpec& spec) {
    return spec.base == PochBase::q ? poch(spec.argument, spec.length) : poch_qinv(spec.argument, spec.length);
}

ExactScalar sign_kernel(int d) {
    Monomial m = Monomial::from_entries({{var::q_half, d}, {var::hbar_half, -d}});
    return ExactScalar::monomial(m, d % 2 == 0 ? 1 : -1);
}

}  // namespace coulombkit
