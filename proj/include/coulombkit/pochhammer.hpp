#pragma once

#include "coulombkit/exactring.hpp"

namespace coulombkit {

enum class PochBase { q, q_inverse };

struct PochSpec {
    Monomial argument;
    int length = 0;
    PochBase base = PochBase::q;
};

// q^m as a monomial (integer power of q).
Monomial q_power(int m);
// hbar^m as a monomial (integer power of hbar).
Monomial hbar_power(int m);

// (x)_d = prod_{m=0}^{d-1} (1 - q^m x) for d > 0, 1/prod_{m=1}^{-d}(1 - q^{-m} x) for d < 0.
ExactScalar poch(const Monomial& x, int d);
// (x; q^{-1})_d through the inversion identity.
ExactScalar poch_qinv(const Monomial& x, int d);
// (x; q^{-1})_d as the literal product prod_{m=0}^{d-1}(1 - q^{-m} x) (d >= 0).
ExactScalar poch_qinv_direct(const Monomial& x, int d);
ExactScalar evaluate(const PochSpec& spec);
// (-q^{1/2} hbar^{-1/2})^d
ExactScalar sign_kernel(int d);

}  // namespace coulombkit
