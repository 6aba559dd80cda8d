#include "coulombkit/exactring.hpp"

#include <algorithm>
#include <sstream>

namespace coulombkit {

std::string to_string(const mpq_class& c) { return c.get_str(); }

// ---------------------------------------------------------------- VariableTable

std::vector<VarId> VariableTable::entries() const {
    std::vector<VarId> out{var::q_half, var::hbar_half};
    for (int i = 1; i <= n_; ++i) out.push_back(var::a(i));
    for (int j = 1; j <= k_; ++j) out.push_back(var::s(j));
    for (int j = 1; j <= k_; ++j) out.push_back(var::Q_half(j));
    return out;
}

bool VariableTable::contains(VarId v) const {
    if (v == var::q_half || v == var::hbar_half) return true;
    if (var::is_a(v)) return var::index(v) <= n_;
    if (var::is_s(v) || var::is_Q(v)) return var::index(v) <= k_;
    return false;
}

std::string VariableTable::base_name(VarId v) {
    if (v == var::q_half) return "q";
    if (v == var::hbar_half) return "h";
    if (var::is_a(v)) return "a" + std::to_string(var::index(v));
    if (var::is_s(v)) return "s" + std::to_string(var::index(v));
    return "Q" + std::to_string(var::index(v));
}

std::string VariableTable::key(VarId v) {
    if (v == var::q_half) return "q_half";
    if (v == var::hbar_half) return "hbar_half";
    if (var::is_Q(v)) return "Q_half" + std::to_string(var::index(v));
    return base_name(v);
}

VarId VariableTable::from_key(const std::string& key) {
    if (key == "q_half") return var::q_half;
    if (key == "hbar_half") return var::hbar_half;
    auto number = [&](std::size_t from) {
        if (from >= key.size()) throw std::invalid_argument("bad variable key: " + key);
        int v = std::stoi(key.substr(from));
        if (v < 1 || v > 999) throw std::invalid_argument("bad variable key: " + key);
        return v;
    };
    if (key.rfind("Q_half", 0) == 0) return var::Q_half(number(6));
    if (key.rfind("a", 0) == 0) return var::a(number(1));
    if (key.rfind("s", 0) == 0) return var::s(number(1));
    throw std::invalid_argument("bad variable key: " + key);
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(VarId v, int e) {
    Monomial m;
    if (e != 0) m.e_.emplace_back(v, e);
    return m;
}

Monomial Monomial::from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end());
    Monomial m;
    for (const auto& [v, e] : entries) {
        if (!m.e_.empty() && m.e_.back().first == v)
            m.e_.back().second += e;
        else
            m.e_.emplace_back(v, e);
    }
    m.e_.erase(std::remove_if(m.e_.begin(), m.e_.end(), [](const Entry& x) { return x.second == 0; }),
               m.e_.end());
    return m;
}

int Monomial::exponent(VarId v) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), Entry{v, INT32_MIN});
    return (it != e_.end() && it->first == v) ? it->second : 0;
}

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& x : e_) d += x.second;
    return d;
}

namespace {

template <class Op>
Monomial merge(const std::vector<Monomial::Entry>& a, const std::vector<Monomial::Entry>& b, Op op) {
    std::vector<Monomial::Entry> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        VarId v;
        int ea = 0, eb = 0;
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            v = a[i].first;
            ea = a[i++].second;
        } else if (i == a.size() || b[j].first < a[i].first) {
            v = b[j].first;
            eb = b[j++].second;
        } else {
            v = a[i].first;
            ea = a[i++].second;
            eb = b[j++].second;
        }
        int e = op(ea, eb);
        if (e != 0) out.emplace_back(v, e);
    }
    return Monomial::from_entries(std::move(out));
}

}  // namespace

Monomial Monomial::operator*(const Monomial& o) const {
    if (o.e_.empty()) return *this;
    if (e_.empty()) return o;
    return merge(e_, o.e_, [](int a, int b) { return a + b; });
}

Monomial Monomial::inverse() const {
    Monomial m = *this;
    for (auto& x : m.e_) x.second = -x.second;
    return m;
}

Monomial Monomial::pow(int e) const {
    if (e == 0) return Monomial();
    Monomial m = *this;
    for (auto& x : m.e_) x.second *= e;
    return m;
}

Monomial Monomial::gcd(const Monomial& o) const {
    return merge(e_, o.e_, [](int a, int b) { return std::min(a, b); });
}

Monomial Monomial::lcm(const Monomial& o) const {
    return merge(e_, o.e_, [](int a, int b) { return std::max(a, b); });
}

Monomial Monomial::negative_part() const {
    Monomial m;
    for (const auto& x : e_)
        if (x.second < 0) m.e_.push_back(x);
    return m;
}

bool Monomial::divides(const Monomial& o) const {
    Monomial r = o / *this;
    for (const auto& x : r.e_)
        if (x.second < 0) return false;
    return true;
}

Monomial Monomial::substitute(const std::map<VarId, Monomial>& map) const {
    Monomial out;
    bool changed = false;
    std::vector<Entry> kept;
    for (const auto& [v, e] : e_) {
        auto it = map.find(v);
        if (it == map.end()) {
            kept.emplace_back(v, e);
        } else {
            changed = true;
            out *= it->second.pow(e);
        }
    }
    if (!changed) return *this;
    return out * from_entries(std::move(kept));
}

Monomial Monomial::without(VarId v) const {
    Monomial m;
    for (const auto& x : e_)
        if (x.first != v) m.e_.push_back(x);
    return m;
}

Monomial Monomial::restricted_to_s() const {
    Monomial m;
    for (const auto& x : e_)
        if (var::is_s(x.first)) m.e_.push_back(x);
    return m;
}

std::string Monomial::to_string() const {
    if (e_.empty()) return "1";
    std::string out;
    for (const auto& [v, e] : e_) {
        if (!out.empty()) out += "*";
        out += VariableTable::base_name(v);
        if (VariableTable::is_half(v)) {
            if (e % 2 == 0) {
                if (e != 2) out += "^" + std::to_string(e / 2);
            } else {
                out += "^(" + std::to_string(e) + "/2)";
            }
        } else if (e != 1) {
            out += "^" + std::to_string(e);
        }
    }
    return out;
}

nlohmann::json Monomial::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [v, e] : e_) j[VariableTable::key(v)] = e;
    return j;
}

Monomial Monomial::from_json(const nlohmann::json& j) {
    std::vector<Entry> entries;
    for (auto it = j.begin(); it != j.end(); ++it)
        entries.emplace_back(VariableTable::from_key(it.key()), it.value().get<int>());
    return from_entries(std::move(entries));
}

bool graded_lex_greater(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    // Lex: compare dense exponent vectors in variable order.
    const auto& x = a.entries();
    const auto& y = b.entries();
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        VarId vx = i < x.size() ? x[i].first : UINT16_MAX;
        VarId vy = j < y.size() ? y[j].first : UINT16_MAX;
        VarId v = std::min(vx, vy);
        int ex = vx == v ? x[i].second : 0;
        int ey = vy == v ? y[j].second : 0;
        if (ex != ey) return ex > ey;
        if (vx == v) ++i;
        if (vy == v) ++j;
    }
    return false;
}

namespace {

// Pure lex order on dense exponent vectors; a monomial order on polynomials.
struct LexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const auto& x = a.entries();
        const auto& y = b.entries();
        std::size_t i = 0, j = 0;
        while (i < x.size() || j < y.size()) {
            VarId vx = i < x.size() ? x[i].first : UINT16_MAX;
            VarId vy = j < y.size() ? y[j].first : UINT16_MAX;
            VarId v = std::min(vx, vy);
            int ex = vx == v ? x[i].second : 0;
            int ey = vy == v ? y[j].second : 0;
            if (ex != ey) return ex > ey;
            if (vx == v) ++i;
            if (vy == v) ++j;
        }
        return false;
    }
};

}  // namespace

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(const mpq_class& c) {
    if (c != 0) t_.emplace(Monomial(), c);
}

LaurentPoly LaurentPoly::monomial(const Monomial& m, const mpq_class& c) {
    LaurentPoly p;
    if (c != 0) p.t_.emplace(m, c);
    return p;
}

LaurentPoly LaurentPoly::one_minus(const Monomial& m) {
    LaurentPoly p(1);
    p.add_term(m, -1);
    return p;
}

bool LaurentPoly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }

mpq_class LaurentPoly::constant_value() const {
    if (t_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("LaurentPoly is not constant");
    return t_.begin()->second;
}

void LaurentPoly::add_term(const Monomial& m, const mpq_class& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r += o;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& x : r.t_) x.second = -x.second;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (t_.empty() || o.t_.empty()) return {};
    if (o.is_constant()) return scaled(o.t_.begin()->second);
    if (is_constant()) return o.scaled(t_.begin()->second);
    LaurentPoly r;
    for (const auto& [m1, c1] : t_)
        for (const auto& [m2, c2] : o.t_) r.add_term(m1 * m2, c1 * c2);
    return r;
}

LaurentPoly LaurentPoly::times(const Monomial& m) const {
    if (m.is_one()) return *this;
    LaurentPoly r;
    for (const auto& [x, c] : t_) r.t_.emplace(x * m, c);
    return r;
}

LaurentPoly LaurentPoly::scaled(const mpq_class& c) const {
    if (c == 0) return {};
    LaurentPoly r = *this;
    for (auto& x : r.t_) x.second *= c;
    return r;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
    LaurentPoly r(1), b = *this;
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1u;
        if (e) b *= b;
    }
    return r;
}

Monomial LaurentPoly::content() const {
    if (t_.empty()) return {};
    auto it = t_.begin();
    Monomial g = it->first;
    for (++it; it != t_.end(); ++it) g = g.gcd(it->first);
    return g;
}

LaurentPoly LaurentPoly::substitute(const std::map<VarId, Monomial>& map) const {
    LaurentPoly r;
    for (const auto& [m, c] : t_) r.add_term(m.substitute(map), c);
    return r;
}

std::optional<LaurentPoly> LaurentPoly::divide_one_minus(const Monomial& m) const {
    if (m.is_one()) return std::nullopt;
    if (t_.empty()) return LaurentPoly();
    // 1 - m = (v - u)/v with u, v coprime and nonnegative.
    Monomial v = m.negative_part().inverse();
    Monomial u = m * v;
    LaurentPoly g = times(v);
    Monomial shift = g.content().negative_part().inverse();
    std::map<Monomial, mpq_class, LexGreater> p;
    for (const auto& [x, c] : g.t_) p.emplace(x * shift, c);

    bool v_leads = LexGreater{}(v, u);
    const Monomial& lead = v_leads ? v : u;
    const Monomial& other = v_leads ? u : v;
    mpq_class lead_c = v_leads ? 1 : -1;
    mpq_class other_c = -lead_c;

    LaurentPoly quotient;
    while (!p.empty()) {
        auto it = p.begin();
        if (!lead.divides(it->first)) return std::nullopt;
        Monomial f = it->first / lead;
        mpq_class c = it->second / lead_c;
        p.erase(it);
        quotient.add_term(f, c);
        Monomial t = f * other;
        mpq_class tc = -c * other_c;
        auto [jt, inserted] = p.emplace(t, tc);
        if (!inserted) {
            jt->second += tc;
            if (jt->second == 0) p.erase(jt);
        }
    }
    return quotient.times(shift.inverse());
}

std::string LaurentPoly::to_string() const {
    if (t_.empty()) return "0";
    std::vector<std::pair<Monomial, mpq_class>> terms(t_.begin(), t_.end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return graded_lex_greater(a.first, b.first); });
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& [m, c] = terms[i];
        bool neg = c < 0;
        mpq_class a = abs(c);
        if (i == 0)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (m.is_one())
            out += a.get_str();
        else if (a == 1)
            out += m.to_string();
        else
            out += a.get_str() + "*" + m.to_string();
    }
    return out;
}

nlohmann::json LaurentPoly::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [m, c] : t_) arr.push_back({{"coeff", c.get_str()}, {"monomial", m.to_json()}});
    return arr;
}

LaurentPoly LaurentPoly::from_json(const nlohmann::json& j) {
    LaurentPoly p;
    for (const auto& t : j) {
        mpq_class c(t.at("coeff").get<std::string>());
        c.canonicalize();
        p.add_term(Monomial::from_json(t.at("monomial")), c);
    }
    return p;
}

int DenomAtom::shift() const { return core.exponent(var::q_half) / 2; }

// ---------------------------------------------------------------- ExactScalar

namespace {

// Orientation rule for atom cores: the first exponent among a, s, Q (then
// hbar, then q) is positive.
bool oriented(const Monomial& m) {
    for (const auto& [v, e] : m.entries())
        if (v >= var::a_base) return e > 0;
    int h = m.exponent(var::hbar_half);
    if (h != 0) return h > 0;
    return m.exponent(var::q_half) > 0;
}

LaurentPoly one_minus_pow(const Monomial& m, int e) { return LaurentPoly::one_minus(m).pow(static_cast<unsigned>(e)); }

}  // namespace

ExactScalar::ExactScalar(const mpq_class& c) : num_(c) {}

ExactScalar::ExactScalar(const LaurentPoly& p) : num_(p) { normalize(false); }

ExactScalar ExactScalar::monomial(const Monomial& m, const mpq_class& c) {
    ExactScalar x(c);
    if (c != 0) x.pre_ = m;
    return x;
}

ExactScalar ExactScalar::one_minus(const Monomial& m) {
    ExactScalar x(1);
    x.add_atom(m, 1);
    return x;
}

ExactScalar ExactScalar::inv_one_minus(const Monomial& m) {
    ExactScalar x(1);
    x.add_atom(m, -1);
    return x;
}

bool ExactScalar::is_one() const {
    return atoms_.empty() && pre_.is_one() && num_.is_constant() && num_.constant_value() == 1 && gden_.is_constant();
}

void ExactScalar::add_atom(const Monomial& m0, int e) {
    if (e == 0) return;
    if (m0.is_one()) {
        if (e < 0) throw DivisionByZero("division by zero");
        *this = ExactScalar();
        return;
    }
    Monomial m = m0;
    if (!oriented(m)) {
        // 1 - m = -m (1 - m^{-1})
        if (e % 2 != 0) num_ = -num_;
        pre_ *= m.pow(e);
        m = m.inverse();
    }
    int& slot = atoms_[m];
    slot += e;
    if (slot == 0) atoms_.erase(m);
}

void ExactScalar::normalize(bool try_cancel) {
    if (gden_.is_zero()) throw DivisionByZero("division by zero");
    for (int round = 0; round < 64; ++round) {
        if (num_.is_zero()) {
            *this = ExactScalar();
            return;
        }
        bool changed = false;
        Monomial c = num_.content();
        if (!c.is_one()) {
            num_ = num_.times(c.inverse());
            pre_ *= c;
        }
        c = gden_.content();
        if (!c.is_one()) {
            gden_ = gden_.times(c.inverse());
            pre_ *= c.inverse();
        }
        if (gden_.is_constant() && gden_.constant_value() != 1) {
            num_ = num_.scaled(1 / gden_.constant_value());
            gden_ = LaurentPoly(1);
        }
        if (num_.size() == 2) {
            auto it = num_.terms().begin();
            auto [m1, c1] = *it;
            auto [m2, c2] = *std::next(it);
            if (c2 == -c1) {
                num_ = LaurentPoly(c1);
                pre_ *= m1;
                add_atom(m2 / m1, 1);
                changed = true;
            }
        }
        if (gden_.size() == 2) {
            auto it = gden_.terms().begin();
            auto [m1, c1] = *it;
            auto [m2, c2] = *std::next(it);
            if (c2 == -c1) {
                gden_ = LaurentPoly(1);
                num_ = num_.scaled(1 / c1);
                pre_ *= m1.inverse();
                add_atom(m2 / m1, -1);
                changed = true;
            }
        }
        if (try_cancel && !num_.is_constant()) {
            std::vector<Monomial> dens;
            for (const auto& [m, e] : atoms_)
                if (e < 0) dens.push_back(m);
            for (const auto& m : dens) {
                while (atoms_.count(m) && atoms_[m] < 0 && !num_.is_constant()) {
                    auto q = num_.divide_one_minus(m);
                    if (!q) break;
                    num_ = *q;
                    if (++atoms_[m] == 0) atoms_.erase(m);
                    changed = true;
                }
            }
            if (!gden_.is_constant() && !num_.is_constant()) {
                // Literal cancellation of an identical general denominator.
                if (num_ == gden_) {
                    num_ = LaurentPoly(1);
                    gden_ = LaurentPoly(1);
                    changed = true;
                } else if (num_ == -gden_) {
                    num_ = LaurentPoly(-1);
                    gden_ = LaurentPoly(1);
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
}

std::vector<DenomAtom> ExactScalar::denominator_atoms() const {
    std::vector<DenomAtom> out;
    for (const auto& [m, e] : atoms_)
        if (e < 0) out.push_back({m, -e});
    return out;
}

LaurentPoly ExactScalar::expanded_numerator() const {
    LaurentPoly p = num_.times(pre_);
    for (const auto& [m, e] : atoms_)
        if (e > 0) p *= one_minus_pow(m, e);
    return p;
}

std::optional<LaurentPoly> ExactScalar::as_laurent() const {
    if (!gden_.is_constant()) return std::nullopt;
    for (const auto& [m, e] : atoms_)
        if (e < 0) return std::nullopt;
    return expanded_numerator();
}

namespace {

// Numerators of x and y over the shared denominator: common atoms (minimum
// exponent), common prefactor (gcd) and the product of general denominators.
struct CommonForm {
    LaurentPoly lx, ly;
    Monomial pre;
    std::map<Monomial, int> atoms;
    LaurentPoly gden;
};

}  // namespace

static CommonForm common_form(const LaurentPoly& nx, const Monomial& px, const std::map<Monomial, int>& ax,
                              const LaurentPoly& gx, const LaurentPoly& ny, const Monomial& py,
                              const std::map<Monomial, int>& ay, const LaurentPoly& gy) {
    CommonForm f;
    f.pre = px.gcd(py);
    std::map<Monomial, std::pair<int, int>> ex;
    for (const auto& [m, e] : ax) ex[m].first = e;
    for (const auto& [m, e] : ay) ex[m].second = e;
    f.lx = nx.times(px / f.pre);
    f.ly = ny.times(py / f.pre);
    for (const auto& [m, pr] : ex) {
        int common = std::min(pr.first, pr.second);
        if (common != 0) f.atoms[m] = common;
        if (pr.first - common > 0) f.lx *= one_minus_pow(m, pr.first - common);
        if (pr.second - common > 0) f.ly *= one_minus_pow(m, pr.second - common);
    }
    if (gx == gy) {
        f.gden = gx;
    } else {
        f.lx *= gy;
        f.ly *= gx;
        f.gden = gx * gy;
    }
    return f;
}

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    CommonForm f = common_form(num_, pre_, atoms_, gden_, o.num_, o.pre_, o.atoms_, o.gden_);
    ExactScalar r;
    r.num_ = f.lx + f.ly;
    if (r.num_.is_zero()) return ExactScalar();
    r.pre_ = f.pre;
    r.atoms_ = std::move(f.atoms);
    r.gden_ = std::move(f.gden);
    r.normalize(true);
    return r;
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar r = *this;
    r.num_ = -r.num_;
    return r;
}

ExactScalar ExactScalar::operator-(const ExactScalar& o) const { return *this + (-o); }

bool operator==(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.num_ == b.num_ && a.pre_ == b.pre_ && a.atoms_ == b.atoms_ && a.gden_ == b.gden_) return true;
    CommonForm f = common_form(a.num_, a.pre_, a.atoms_, a.gden_, b.num_, b.pre_, b.atoms_, b.gden_);
    return f.lx == f.ly;
}

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
    if (is_zero() || o.is_zero()) return ExactScalar();
    ExactScalar r;
    r.num_ = num_ * o.num_;
    r.pre_ = pre_ * o.pre_;
    r.atoms_ = atoms_;
    for (const auto& [m, e] : o.atoms_) {
        int& slot = r.atoms_[m];
        slot += e;
        if (slot == 0) r.atoms_.erase(m);
    }
    r.gden_ = gden_ * o.gden_;
    if (!r.num_.is_constant() || !r.gden_.is_constant()) r.normalize(!r.num_.is_constant());
    return r;
}

ExactScalar ExactScalar::inv() const {
    if (is_zero()) throw DivisionByZero("division by zero");
    ExactScalar r;
    r.pre_ = pre_.inverse();
    for (const auto& [m, e] : atoms_) r.atoms_[m] = -e;
    if (num_.is_constant()) {
        r.num_ = gden_.scaled(1 / num_.constant_value());
        r.gden_ = LaurentPoly(1);
    } else {
        r.num_ = gden_;
        r.gden_ = num_;
    }
    r.normalize(false);
    return r;
}

ExactScalar ExactScalar::pow(int e) const {
    if (e < 0) return inv().pow(-e);
    ExactScalar r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

ExactScalar ExactScalar::transform(const std::map<VarId, Monomial>& map) const {
    ExactScalar r;
    r.num_ = num_.substitute(map);
    if (r.num_.is_zero()) return ExactScalar();
    r.gden_ = gden_.substitute(map);
    if (r.gden_.is_zero()) throw PoleError("pole at evaluation point");
    r.pre_ = pre_.substitute(map);
    for (const auto& [m, e] : atoms_) {
        Monomial img = m.substitute(map);
        if (img.is_one()) {
            if (e > 0) return ExactScalar();
            throw PoleError("pole at evaluation point");
        }
        r.add_atom(img, e);
        if (r.num_.is_zero()) return ExactScalar();
    }
    r.normalize(!r.num_.is_constant());
    return r;
}

ExactScalar ExactScalar::substitute(const std::map<VarId, Monomial>& map) const {
    if (is_zero()) return ExactScalar();
    std::vector<std::pair<Monomial, int>> vanishing;
    for (const auto& [m, e] : atoms_)
        if (e < 0 && m.substitute(map).is_one()) vanishing.emplace_back(m, -e);
    if (vanishing.empty()) return transform(map);

    auto attempt = [&](bool all_numerator_atoms) -> std::optional<ExactScalar> {
        ExactScalar src = *this;
        LaurentPoly f = src.num_;
        std::vector<Monomial> folded;
        for (const auto& [m, e] : atoms_) {
            if (e <= 0) continue;
            if (all_numerator_atoms || m.substitute(map).is_one()) {
                f *= one_minus_pow(m, e);
                folded.push_back(m);
            }
        }
        for (const auto& [m, mult] : vanishing) {
            for (int i = 0; i < mult; ++i) {
                auto q = f.divide_one_minus(m);
                if (!q) return std::nullopt;
                f = *q;
            }
        }
        for (const auto& m : folded) src.atoms_.erase(m);
        for (const auto& [m, mult] : vanishing) src.atoms_.erase(m);
        src.num_ = f;
        return src.transform(map);
    };
    if (auto r = attempt(false)) return *r;
    if (auto r = attempt(true)) return *r;
    throw PoleError("pole at evaluation point");
}

ExactScalar ExactScalar::q_shift(VarId v, int m) const {
    if (m == 0) return *this;
    return transform({{v, Monomial::from_entries({{var::q_half, 2 * m}, {v, 1}})}});
}

ExactScalar ExactScalar::shift_s(const std::vector<int>& shift) const {
    std::map<VarId, Monomial> map;
    for (std::size_t j = 0; j < shift.size(); ++j)
        if (shift[j] != 0)
            map[var::s(static_cast<int>(j) + 1)] =
                Monomial::from_entries({{var::q_half, 2 * shift[j]}, {var::s(static_cast<int>(j) + 1), 1}});
    if (map.empty() || is_zero()) return *this;
    return transform(map);
}

bool ExactScalar::mentions(bool (*pred)(VarId)) const {
    auto in_mon = [&](const Monomial& m) {
        for (const auto& [v, e] : m.entries())
            if (pred(v)) return true;
        return false;
    };
    auto in_poly = [&](const LaurentPoly& p) {
        for (const auto& [m, c] : p.terms())
            if (in_mon(m)) return true;
        return false;
    };
    if (in_mon(pre_) || in_poly(num_) || in_poly(gden_)) return true;
    for (const auto& [m, e] : atoms_)
        if (in_mon(m)) return true;
    return false;
}

std::string ExactScalar::to_string() const {
    if (is_zero()) return "0";
    std::vector<std::string> num_factors, den_factors;
    std::string lead;
    if (num_.is_constant()) {
        mpq_class c = num_.constant_value();
        if (pre_.is_one())
            lead = c.get_str();
        else if (c == 1)
            lead = pre_.to_string();
        else if (c == -1)
            lead = "-" + pre_.to_string();
        else
            lead = c.get_str() + "*" + pre_.to_string();
    } else {
        bool alone = pre_.is_one() && atoms_.empty() && gden_.is_constant();
        lead = alone ? num_.to_string() : "(" + num_.to_string() + ")";
        if (!pre_.is_one()) lead = pre_.to_string() + "*" + lead;
    }
    auto atom_text = [](const Monomial& m, int e) {
        std::string s = "(1 - " + m.to_string() + ")";
        if (e != 1) s += "^" + std::to_string(e);
        return s;
    };
    for (const auto& [m, e] : atoms_) {
        if (e > 0)
            num_factors.push_back(atom_text(m, e));
        else
            den_factors.push_back(atom_text(m, -e));
    }
    if (!gden_.is_constant()) den_factors.push_back("(" + gden_.to_string() + ")");

    std::string out;
    if (num_factors.empty()) {
        out = lead;
    } else {
        if (lead == "1")
            out = "";
        else if (lead == "-1")
            out = "-";
        else
            out = lead + "*";
        for (std::size_t i = 0; i < num_factors.size(); ++i) out += (i ? "*" : "") + num_factors[i];
    }
    if (den_factors.empty()) return out;
    std::string den;
    for (std::size_t i = 0; i < den_factors.size(); ++i) den += (i ? "*" : "") + den_factors[i];
    if (den_factors.size() > 1) den = "(" + den + ")";
    return out + " / " + den;
}

nlohmann::json ExactScalar::to_json() const {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& [m, e] : atoms_) atoms.push_back({{"core", m.to_json()}, {"exponent", e}});
    return {{"numerator", num_.to_json()},
            {"prefactor", pre_.to_json()},
            {"atoms", atoms},
            {"general_denominator", gden_.to_json()}};
}

ExactScalar ExactScalar::from_json(const nlohmann::json& j) {
    ExactScalar r(LaurentPoly::from_json(j.at("numerator")));
    r *= ExactScalar::monomial(Monomial::from_json(j.at("prefactor")));
    for (const auto& a : j.at("atoms")) {
        Monomial m = Monomial::from_json(a.at("core"));
        int e = a.at("exponent").get<int>();
        ExactScalar f = e > 0 ? one_minus(m) : inv_one_minus(m);
        r *= f.pow(std::abs(e));
    }
    ExactScalar g(LaurentPoly::from_json(j.at("general_denominator")));
    return r / g;
}

ExactScalar scalar_add(const ExactScalar& x, const ExactScalar& y) { return x + y; }
ExactScalar scalar_mul(const ExactScalar& x, const ExactScalar& y) { return x * y; }
ExactScalar scalar_inv(const ExactScalar& x) { return x.inv(); }
ExactScalar substitute_monomials(const ExactScalar& x, const std::map<VarId, Monomial>& map) {
    return x.substitute(map);
}
ExactScalar q_shift(const ExactScalar& x, VarId v, int m) { return x.q_shift(v, m); }

}  // namespace coulombkit
