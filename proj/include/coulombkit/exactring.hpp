#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace coulombkit {

struct DivisionByZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Variable identifiers are global so that monomials from different tables
// compare consistently: q^{1/2} < hbar^{1/2} < a_i < s_j < Q_j^{1/2}.
using VarId = std::uint16_t;

namespace var {
constexpr VarId q_half = 0;
constexpr VarId hbar_half = 1;
constexpr VarId a_base = 1000;
constexpr VarId s_base = 2000;
constexpr VarId Q_base = 3000;
inline VarId a(int i) { return static_cast<VarId>(a_base + i); }
inline VarId s(int j) { return static_cast<VarId>(s_base + j); }
inline VarId Q_half(int j) { return static_cast<VarId>(Q_base + j); }
inline bool is_a(VarId v) { return v > a_base && v < s_base; }
inline bool is_s(VarId v) { return v > s_base && v < Q_base; }
inline bool is_Q(VarId v) { return v > Q_base; }
inline int index(VarId v) { return v >= Q_base ? v - Q_base : v >= s_base ? v - s_base : v - a_base; }
}  // namespace var

class VariableTable {
public:
    VariableTable() = default;
    VariableTable(int n, int k) : n_(n), k_(k) {}

    int n() const { return n_; }
    int k() const { return k_; }
    std::vector<VarId> entries() const;
    bool contains(VarId v) const;
    // Printed base name: q, h, a3, s1, Q2. Half variables print their full power.
    static std::string base_name(VarId v);
    static bool is_half(VarId v) { return v == var::q_half || v == var::hbar_half || var::is_Q(v); }
    // Inverse of the structured-rendering key ("q_half", "a3", "Q_half2").
    static VarId from_key(const std::string& key);
    static std::string key(VarId v);

private:
    int n_ = 0;
    int k_ = 0;
};

class Monomial {
public:
    using Entry = std::pair<VarId, int>;

    Monomial() = default;
    static Monomial of(VarId v, int e = 1);
    static Monomial from_entries(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const { return e_; }
    int exponent(VarId v) const;
    bool is_one() const { return e_.empty(); }
    int total_degree() const;

    Monomial operator*(const Monomial& o) const;
    Monomial& operator*=(const Monomial& o) { return *this = *this * o; }
    Monomial inverse() const;
    Monomial pow(int e) const;
    Monomial operator/(const Monomial& o) const { return *this * o.inverse(); }
    Monomial gcd(const Monomial& o) const;  // componentwise min
    Monomial lcm(const Monomial& o) const;  // componentwise max
    // Componentwise min with the zero vector, i.e. the "negative part".
    Monomial negative_part() const;
    bool divides(const Monomial& o) const;  // all exponents of o - this nonnegative
    Monomial substitute(const std::map<VarId, Monomial>& map) const;
    Monomial without(VarId v) const;
    Monomial restricted_to_s() const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e_ != b.e_; }
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.e_ < b.e_; }

    std::string to_string() const;
    nlohmann::json to_json() const;
    static Monomial from_json(const nlohmann::json& j);

private:
    std::vector<Entry> e_;  // sorted by VarId, no zero exponents
};

// Graded-lex comparison used for printing: higher total degree first, ties
// broken lexicographically in the variable order.
bool graded_lex_greater(const Monomial& a, const Monomial& b);

class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(const mpq_class& c);
    LaurentPoly(long c) : LaurentPoly(mpq_class(c)) {}
    static LaurentPoly monomial(const Monomial& m, const mpq_class& c = 1);
    // 1 - m
    static LaurentPoly one_minus(const Monomial& m);

    const std::map<Monomial, mpq_class>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    mpq_class constant_value() const;
    std::size_t size() const { return t_.size(); }

    void add_term(const Monomial& m, const mpq_class& c);
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    LaurentPoly times(const Monomial& m) const;
    LaurentPoly scaled(const mpq_class& c) const;
    LaurentPoly pow(unsigned e) const;

    // gcd of all term monomials (componentwise min over the support).
    Monomial content() const;
    LaurentPoly substitute(const std::map<VarId, Monomial>& map) const;
    // Exact division by (1 - m); nullopt if not divisible.
    std::optional<LaurentPoly> divide_one_minus(const Monomial& m) const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    std::string to_string() const;
    nlohmann::json to_json() const;
    static LaurentPoly from_json(const nlohmann::json& j);

private:
    std::map<Monomial, mpq_class> t_;
};

// (1 - q^m core)^multiplicity; the q power is kept inside the monomial.
struct DenomAtom {
    Monomial core;
    int multiplicity = 1;
    int shift() const;  // integer power of q, halves rounded toward zero
};

// value = prefactor * numerator * prod (1 - m)^{e_m} / general_denominator
// with e_m != 0; e_m < 0 are the denominator atoms, e_m > 0 are numerator
// factors kept unexpanded.
class ExactScalar {
public:
    ExactScalar() = default;  // zero
    ExactScalar(const mpq_class& c);
    ExactScalar(long c) : ExactScalar(mpq_class(c)) {}
    ExactScalar(const LaurentPoly& p);
    static ExactScalar monomial(const Monomial& m, const mpq_class& c = 1);
    static ExactScalar one_minus(const Monomial& m);            // 1 - m
    static ExactScalar inv_one_minus(const Monomial& m);        // 1/(1 - m)
    static ExactScalar zero() { return ExactScalar(); }
    static ExactScalar one() { return ExactScalar(1); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool has_general_denominator() const { return !gden_.is_constant(); }

    const LaurentPoly& numerator_poly() const { return num_; }
    const Monomial& prefactor() const { return pre_; }
    const std::map<Monomial, int>& atoms() const { return atoms_; }
    const LaurentPoly& general_denominator() const { return gden_; }
    // Denominator atoms only (multiplicity positive).
    std::vector<DenomAtom> denominator_atoms() const;
    // Fully expanded numerator including the factored numerator atoms.
    LaurentPoly expanded_numerator() const;
    // Denominator-free scalars as Laurent polynomials.
    std::optional<LaurentPoly> as_laurent() const;

    ExactScalar operator+(const ExactScalar& o) const;
    ExactScalar operator-(const ExactScalar& o) const;
    ExactScalar operator-() const;
    ExactScalar operator*(const ExactScalar& o) const;
    ExactScalar operator/(const ExactScalar& o) const { return *this * o.inv(); }
    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    ExactScalar inv() const;
    ExactScalar pow(int e) const;

    // Monomial substitution v -> map[v]; vanishing denominator atoms are
    // cancelled by exact division or reported as PoleError.
    ExactScalar substitute(const std::map<VarId, Monomial>& map) const;
    ExactScalar q_shift(VarId v, int m) const;
    // s_j -> q^{shift_j} s_j for j = 1..k simultaneously.
    ExactScalar shift_s(const std::vector<int>& shift) const;
    // Does any variable in the predicate class occur?
    bool mentions(bool (*pred)(VarId)) const;

    friend bool operator==(const ExactScalar& a, const ExactScalar& b);
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    std::string to_string() const;
    nlohmann::json to_json() const;
    static ExactScalar from_json(const nlohmann::json& j);

private:
    LaurentPoly num_;
    LaurentPoly gden_ = LaurentPoly(1);
    Monomial pre_;
    std::map<Monomial, int> atoms_;

    void normalize(bool try_cancel);
    void add_atom(const Monomial& m, int e);
    ExactScalar transform(const std::map<VarId, Monomial>& map) const;
};

ExactScalar scalar_add(const ExactScalar& x, const ExactScalar& y);
ExactScalar scalar_mul(const ExactScalar& x, const ExactScalar& y);
ExactScalar scalar_inv(const ExactScalar& x);
ExactScalar substitute_monomials(const ExactScalar& x, const std::map<VarId, Monomial>& map);
ExactScalar q_shift(const ExactScalar& x, VarId v, int m);

std::string to_string(const mpq_class& c);

}  // namespace coulombkit
