#include "coulombkit/coulomb.hpp"

#include "coulombkit/pochhammer.hpp"

#include <mutex>

namespace coulombkit {

int epsilon(int c) { return (c > 0) - (c < 0); }

int delta(int c, int d) {
    if (c == 0 || d == 0 || (c > 0) == (d > 0)) return 0;
    return std::min(std::abs(c), std::abs(d));
}

ExactScalar weight_factor(const Monomial& x, int D) {
    if (D == 0) return ExactScalar(1);
    return sign_kernel(D) * poch(hbar_power(1) * x, D) / poch(q_power(1) * x, D);
}

namespace {

std::string degree_label(const std::string& symbol, const Cochar& d) {
    std::string s = symbol + "[";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + "]";
}

}  // namespace

// ---- GradedSum ----

ExactScalar GradedSum::at(const Cochar& d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? ExactScalar() : it->second;
}

void GradedSum::add(const Cochar& d, const ExactScalar& f) {
    if (f.is_zero()) return;
    auto it = terms_.find(d);
    if (it == terms_.end()) {
        terms_.emplace(d, f);
        return;
    }
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
}

bool operator==(const GradedSum& a, const GradedSum& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
}

std::string GradedSum::to_string(const std::string& symbol) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [d, f] : terms_) {
        if (!out.empty()) out += "\n";
        out += degree_label(symbol, d) + ": " + f.to_string();
    }
    return out;
}

nlohmann::json GradedSum::to_json() const {
    auto arr = nlohmann::json::array();
    for (const auto& [d, f] : terms_) arr.push_back({{"degree", d}, {"coefficient", f.to_json()}});
    return arr;
}

GradedSum::Map GradedSum::map_from_json(const nlohmann::json& j) {
    Map m;
    for (const auto& t : j) m.emplace(t.at("degree").get<Cochar>(), ExactScalar::from_json(t.at("coefficient")));
    return m;
}

// ---- AlgebraElement / ModuleElement ----

AlgebraElement AlgebraElement::generator(const Cochar& d, const ExactScalar& coeff) {
    AlgebraElement a;
    a.add(d, coeff);
    return a;
}

AlgebraElement AlgebraElement::from_json(const nlohmann::json& j) {
    AlgebraElement a;
    for (const auto& [d, f] : map_from_json(j)) a.add(d, f);
    return a;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    for (const auto& [d, f] : o.terms_) r.add(d, f);
    return r;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement r;
    for (const auto& [d, f] : terms_) r.add(d, -f);
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const { return *this + (-o); }

AlgebraElement operator*(const ExactScalar& f, const AlgebraElement& a) {
    AlgebraElement r;
    for (const auto& [d, g] : a.terms_) r.add(d, f * g);
    return r;
}

ModuleElement ModuleElement::basis(const Cochar& c, const ExactScalar& coeff) {
    ModuleElement t;
    t.add(c, coeff);
    return t;
}

ModuleElement ModuleElement::operator+(const ModuleElement& o) const {
    ModuleElement r = *this;
    for (const auto& [d, f] : o.terms_) r.add(d, f);
    return r;
}

// ---- CoulombAlgebra ----

CoulombAlgebra::CoulombAlgebra(HypertoricModel model) : model_(std::move(model)), cache_(std::make_shared<Cache>()) {}

ExactScalar CoulombAlgebra::compute_structure_constant(const Cochar& c, const Cochar& d, const Polarization& pol) const {
    ExactScalar g(1);
    for (int i = 0; i < n(); ++i) {
        int C = model_.pair(i, c), D = model_.pair(i, d);
        int del = delta(C, D);
        if (del == 0) continue;
        int e = epsilon(C), m = e * del;
        Monomial shifted = q_power(-C) * model_.x(i);
        ExactScalar f = sign_kernel(m) * poch(hbar_power(1) * shifted, m) / poch(q_power(1) * shifted, m);
        g *= f.pow(pol.included[i] ? -e : e);
    }
    return g;
}

ExactScalar CoulombAlgebra::structure_constant(const Cochar& c, const Cochar& d, const Polarization& pol) const {
    Key key{c, d, pol};
    {
        std::shared_lock lock(cache_->mutex);
        auto it = cache_->values.find(key);
        if (it != cache_->values.end()) return it->second;
    }
    ExactScalar g = compute_structure_constant(c, d, pol);
    std::unique_lock lock(cache_->mutex);
    cache_->values.emplace(std::move(key), g);
    return g;
}

AlgebraElement CoulombAlgebra::mul(const AlgebraElement& a, const AlgebraElement& b, const Polarization& pol) const {
    AlgebraElement out;
    for (const auto& [c, f] : a.terms())
        for (const auto& [d, g] : b.terms()) out.add(c + d, f * g.shift_s(-c) * structure_constant(c, d, pol));
    return out;
}

AlgebraElement CoulombAlgebra::product(const std::vector<AlgebraElement>& factors) const {
    AlgebraElement acc = AlgebraElement::identity(k());
    for (const auto& f : factors) acc = mul(acc, f);
    return acc;
}

AlgebraElement CoulombAlgebra::tau(const AlgebraElement& a) const {
    AlgebraElement out;
    for (const auto& [d, f] : a.terms()) out.add(-d, f.shift_s(d));
    return out;
}

ExactScalar CoulombAlgebra::mixed_coefficient(const Cochar& d) const {
    if (is_zero(d)) return ExactScalar(1);
    ExactScalar z(1);
    if (model_.in_eff(d)) {
        for (int i = 0; i < n(); ++i) {
            int D = model_.pair(i, d);
            if (D < 0) z *= weight_factor(model_.x(i), D).inv();
        }
        return z.shift_s(-d);
    }
    if (model_.in_eff(-d)) {
        for (int i = 0; i < n(); ++i) {
            int E = -model_.pair(i, d);
            if (E < 0) z *= weight_factor(model_.x(i), E).inv();
        }
    }
    return z;
}

AlgebraElement CoulombAlgebra::mixed_generator(const Cochar& d) const {
    return AlgebraElement::generator(d, mixed_coefficient(d));
}

AlgebraElement CoulombAlgebra::mixed_generator_via_polarization(const Cochar& d, const Polarization& pol) const {
    ExactScalar z(1);
    for (int i = 0; i < n(); ++i) {
        if (pol.included[i]) continue;
        int D = model_.pair(i, d);
        if (D != 0) z *= weight_factor(model_.x(i), -D).pow(-epsilon(D));
    }
    return AlgebraElement::generator(d, z);
}

Polarization CoulombAlgebra::polarization_for_degree(const Cochar& d) const {
    if (model_.in_eff(d)) return {mixed_polarization(model_.data(), d)};
    if (model_.in_eff(-d)) return {mixed_polarization(model_.data(), -d)};
    return canonical();
}

ExactScalar CoulombAlgebra::mixed_product_scalar(const Cochar& d, const Cochar& e) const {
    return mul(mixed_generator(d), mixed_generator(e)).at(d + e);
}

ExactScalar CoulombAlgebra::module_constant(const Cochar& c, const Cochar& d) const {
    ExactScalar g(1);
    for (int i = 0; i < n(); ++i) {
        int C = model_.pair(i, c), D = model_.pair(i, d);
        if (D >= 0) continue;
        Monomial shifted = q_power(-C) * model_.x(i);
        g *= sign_kernel(D) * poch(q_power(1) * shifted, -D) / poch(hbar_power(1) * shifted, -D);
    }
    return g;
}

ModuleElement CoulombAlgebra::module_act(const ModuleElement& t, const AlgebraElement& a) const {
    ModuleElement out;
    for (const auto& [c, f] : t.terms())
        for (const auto& [d, g] : a.terms()) out.add(c + d, f * g.shift_s(-c) * module_constant(c, d));
    return out;
}

AlgebraElement CoulombAlgebra::inverse(const AlgebraElement& single) const {
    if (single.terms().size() != 1) throw std::invalid_argument("inverse needs a single-term element");
    const auto& [c, f] = *single.terms().begin();
    return AlgebraElement::generator(-c, (f * structure_constant(c, -c)).inv().shift_s(c));
}

ExactScalar CoulombAlgebra::root_factor(const std::pair<int, int>& alpha, int m) const {
    Monomial s_alpha = Monomial::of(var::s(alpha.first + 1)) / Monomial::of(var::s(alpha.second + 1));
    return sign_kernel(m) * poch(q_power(1) * s_alpha, -m) / poch(hbar_power(1) * s_alpha, -m);
}

AlgebraElement CoulombAlgebra::symmetrized_generator(const Cochar& d) const {
    const auto& weyl = model_.weyl();
    if (!weyl) throw ModelError("no block structure");
    AlgebraElement sum;
    for (const auto& w : weyl->elements) {
        Cochar wd = WeylGroup::act(w, d);
        ExactScalar coeff(1);
        for (const auto& alpha : weyl->roots) {
            int m = WeylGroup::root_pairing(alpha, wd);
            if (m > 0) coeff *= root_factor(alpha, m);
        }
        sum = sum + coeff * mixed_generator(wd);
    }
    return ExactScalar(mpq_class(1, static_cast<long>(weyl->elements.size()))) * sum;
}

std::vector<int> CoulombAlgebra::weyl_row_permutation(const std::vector<int>& w) const {
    const auto& chi = model_.data().chi;
    std::vector<int> perm(n(), -1);
    for (int i = 0; i < n(); ++i) {
        int occurrence = 0;
        for (int l = 0; l < i; ++l) occurrence += chi[l] == chi[i];
        Character target = WeylGroup::act(w, chi[i]);
        for (int l = 0, seen = 0; l < n(); ++l) {
            if (chi[l] != target) continue;
            if (seen++ == occurrence) {
                perm[i] = l;
                break;
            }
        }
        if (perm[i] < 0) throw ModelError("rows not W-invariant");
    }
    return perm;
}

std::map<VarId, Monomial> CoulombAlgebra::weyl_substitution(const std::vector<int>& w) const {
    std::map<VarId, Monomial> map;
    for (int j = 0; j < k(); ++j) map[var::s(j + 1)] = Monomial::of(var::s(w[j] + 1));
    auto perm = weyl_row_permutation(w);
    for (int i = 0; i < n(); ++i) map[var::a(i + 1)] = Monomial::of(var::a(perm[i] + 1));
    return map;
}

ExactScalar CoulombAlgebra::weyl_act(const std::vector<int>& w, const ExactScalar& f) const {
    return f.substitute(weyl_substitution(w));
}

AlgebraElement CoulombAlgebra::weyl_act(const std::vector<int>& w, const AlgebraElement& a) const {
    auto map = weyl_substitution(w);
    AlgebraElement out;
    for (const auto& [d, f] : a.terms()) out.add(WeylGroup::act(w, d), f.substitute(map));
    return out;
}

// ---- AbelianPointModel ----

Monomial AbelianPointModel::x(int i) const { return Monomial::of(var::a(i + 1)) * Monomial::of(var::s(i + 1)); }

ExactScalar AbelianPointModel::rank_one_relation(int i, int eps) const {
    Monomial xi = x(i), h = hbar_power(1);
    if (eps > 0) return sign_kernel(-1) * ExactScalar::one_minus(q_power(1) * xi) * ExactScalar::inv_one_minus(h * xi);
    return sign_kernel(-1) * ExactScalar::one_minus(xi) * ExactScalar::inv_one_minus(q_power(-1) * h * xi);
}

AlgebraElement AbelianPointModel::times_generator(const AlgebraElement& a, int i, int eps) const {
    AlgebraElement out;
    for (const auto& [m, f] : a.terms()) {
        Cochar next = m;
        next[i] += eps;
        if (m[i] * eps >= 0) {
            out.add(next, f);
        } else {
            out.add(next, f * rank_one_relation(i, eps).shift_s(-next));
        }
    }
    return out;
}

AlgebraElement AbelianPointModel::mul(const AlgebraElement& a, const AlgebraElement& b) const {
    AlgebraElement out;
    for (const auto& [c, f] : a.terms()) {
        for (const auto& [m, g] : b.terms()) {
            AlgebraElement acc = AlgebraElement::generator(c, f * g.shift_s(-c));
            for (int i = 0; i < n_; ++i)
                for (int t = 0; t < std::abs(m[i]); ++t) acc = times_generator(acc, i, epsilon(m[i]));
            out = out + acc;
        }
    }
    return out;
}

AlgebraElement AbelianPointModel::lift(const GaugeData& data, const Cochar& d) const {
    Cochar iota(n_);
    for (int i = 0; i < n_; ++i) iota[i] = pairing(data.chi[i], d);
    return AlgebraElement::generator(iota);
}

std::map<VarId, Monomial> AbelianPointModel::reduction(const GaugeData& data) const {
    std::map<VarId, Monomial> map;
    for (int i = 0; i < n_; ++i) {
        std::vector<Monomial::Entry> e;
        for (int j = 0; j < data.k; ++j) e.emplace_back(var::s(j + 1), data.chi[i][j]);
        map[var::s(i + 1)] = Monomial::from_entries(e);
    }
    return map;
}

}  // namespace coulombkit
