#include "coulombkit/cli.hpp"

#include "coulombkit/bethe.hpp"
#include "coulombkit/verma.hpp"
#include "coulombkit/wallcross.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>

namespace coulombkit {

namespace {

class ExprParser {
public:
    ExprParser(const std::string& text, const ExprOptions& opts) : s_(text), opts_(opts) {}

    LaurentPoly parse() {
        LaurentPoly r = expr();
        skip();
        if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return r;
    }

private:
    const std::string& s_;
    ExprOptions opts_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("syntax error at column " + std::to_string(pos_ + 1) + ": " + msg);
    }
    [[noreturn]] void fail_division() const {
        throw ParseError("division not allowed in descendents (column " + std::to_string(pos_ + 1) + ")");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool digit_at(std::size_t i) const { return i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i])); }

    long integer() {
        skip();
        if (!digit_at(pos_)) fail("expected an integer");
        std::size_t start = pos_;
        while (digit_at(pos_)) ++pos_;
        if (pos_ - start > 9) fail("integer too large");
        return std::stol(s_.substr(start, pos_ - start));
    }

    LaurentPoly expr() {
        bool negate = false;
        if (peek('+') || peek('-')) negate = s_[pos_++] == '-';
        LaurentPoly acc = term();
        if (negate) acc = -acc;
        while (peek('+') || peek('-')) {
            bool minus = s_[pos_++] == '-';
            LaurentPoly t = term();
            acc += minus ? -t : t;
        }
        return acc;
    }

    LaurentPoly term() {
        LaurentPoly acc = power();
        while (true) {
            if (peek('*')) {
                ++pos_;
                acc *= power();
            } else if (peek('/')) {
                fail_division();
            } else {
                return acc;
            }
        }
    }

    LaurentPoly power() {
        LaurentPoly base = primary();
        if (!peek('^')) return base;
        ++pos_;
        long num = 0, den = 1;
        if (peek('(')) {
            ++pos_;
            bool neg = peek('-');
            if (neg) ++pos_;
            num = integer();
            if (neg) num = -num;
            if (peek('/')) {
                ++pos_;
                den = integer();
            }
            if (!peek(')')) fail("expected ')'");
            ++pos_;
        } else {
            bool neg = peek('-');
            if (neg) ++pos_;
            num = integer();
            if (neg) num = -num;
        }
        if (den == 0) fail("zero denominator in exponent");
        long g = std::gcd(num, den);
        if (g > 1) num /= g, den /= g;
        if (den != 1 && den != 2) fail("only half-integer exponents are allowed");
        return raise(base, static_cast<int>(num), static_cast<int>(den));
    }

    LaurentPoly raise(const LaurentPoly& base, int num, int den) {
        if (den == 2) {
            if (base.size() != 1 || base.terms().begin()->second != 1) fail("fractional power of a non-monomial");
            std::vector<Monomial::Entry> e;
            for (const auto& [v, ex] : base.terms().begin()->first.entries()) {
                if (!VariableTable::is_half(v) || (ex * num) % 2 != 0)
                    fail("fractional power of " + VariableTable::base_name(v));
                e.emplace_back(v, ex * num / 2);
            }
            return LaurentPoly::monomial(Monomial::from_entries(e));
        }
        if (num >= 0) return base.pow(static_cast<unsigned>(num));
        if (base.size() != 1) fail_division();
        const auto& [m, c] = *base.terms().begin();
        return LaurentPoly::monomial(m.inverse(), 1 / c).pow(static_cast<unsigned>(-num));
    }

    int index_after(std::size_t start, const std::string& name) {
        if (!digit_at(pos_)) fail("variable " + name + " needs an index");
        long i = integer();
        (void)start;
        return static_cast<int>(i);
    }

    LaurentPoly primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            LaurentPoly e = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return e;
        }
        if (digit_at(pos_)) {
            long num = integer();
            if (pos_ + 1 < s_.size() && s_[pos_] == '/' && digit_at(pos_ + 1)) {
                ++pos_;
                long den = integer();
                if (den == 0) fail("zero denominator");
                return LaurentPoly(mpq_class(num, den));
            }
            return LaurentPoly(num);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_++;
            if (c == 'h' && !digit_at(pos_)) return LaurentPoly::monomial(Monomial::of(var::hbar_half, 2));
            if (c == 'q' && !digit_at(pos_)) {
                if (!opts_.allow_q) {
                    pos_ = start;
                    fail("unknown variable q");
                }
                return LaurentPoly::monomial(Monomial::of(var::q_half, 2));
            }
            if (c == 'a' || c == 's') {
                int i = index_after(start, std::string(1, c));
                int bound = c == 'a' ? opts_.n : opts_.k;
                if (i < 1 || (bound > 0 && i > bound)) {
                    pos_ = start;
                    fail("unknown variable " + std::string(1, c) + std::to_string(i));
                }
                return LaurentPoly::monomial(Monomial::of(c == 'a' ? var::a(i) : var::s(i)));
            }
            pos_ = start;
            fail(std::string("unknown variable starting with '") + c + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

std::vector<int> parse_int_list(std::string text, const std::string& what) {
    std::vector<int> out;
    for (char& c : text)
        if (c == ',') c = ' ';
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw ParseError("bad integer '" + tok + "' in " + what);
        out.push_back(v);
    }
    return out;
}

std::string format_cochar(const Cochar& d) { return format_vector(d); }

nlohmann::json restriction_json(const FixedPoint& p) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [v, m] : p.restriction) j[VariableTable::base_name(v)] = m.to_string();
    return j;
}

nlohmann::json circuits_json(const HypertoricModel& m) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < m.circuits().size(); ++i) {
        std::vector<int> wall;
        for (int r : m.circuits()[i].wall) wall.push_back(r + 1);
        arr.push_back({{"index", i}, {"vector", m.circuits()[i].vector}, {"wall", wall}});
    }
    return arr;
}

nlohmann::json fixed_points_json(const HypertoricModel& m) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < m.fixed_points().size(); ++i) {
        const auto& p = m.fixed_points()[i];
        auto one_based = [](const std::vector<int>& v) {
            std::vector<int> out;
            for (int x : v) out.push_back(x + 1);
            return out;
        };
        arr.push_back({{"index", i},
                       {"label", p.label()},
                       {"support", one_based(p.support)},
                       {"plus", one_based(p.plus)},
                       {"minus", one_based(p.minus)},
                       {"restriction", restriction_json(p)},
                       {"eff_rays", p.eff_rays}});
    }
    return arr;
}

void print_circuits(const HypertoricModel& m, std::ostream& out) {
    for (std::size_t i = 0; i < m.circuits().size(); ++i)
        out << i << ": " << format_cochar(m.circuits()[i].vector) << " wall " << format_subset(m.circuits()[i].wall) << "\n";
}

void print_fixed_points(const HypertoricModel& m, std::ostream& out) {
    for (std::size_t i = 0; i < m.fixed_points().size(); ++i) {
        const auto& p = m.fixed_points()[i];
        out << i << ": " << p.label() << " plus " << format_subset(p.plus) << " minus " << format_subset(p.minus);
        for (const auto& [v, mono] : p.restriction) out << " " << VariableTable::base_name(v) << "=" << mono.to_string();
        out << " rays";
        for (const auto& r : p.eff_rays) out << " " << format_cochar(r);
        out << "\n";
    }
}

std::string indent(const std::string& block) {
    std::string out;
    std::istringstream in(block);
    std::string line;
    while (std::getline(in, line)) out += "  " + line + "\n";
    return out;
}

bool nonabelian(const HypertoricModel& m) { return m.weyl() && !m.is_abelian(); }

std::vector<std::size_t> selected_points(const CoulombAlgebra& alg, const std::string& point) {
    const auto& m = alg.model();
    if (!point.empty()) {
        std::size_t p = parse_point(point, m);
        if (nonabelian(m) && !is_lift(alg, p))
            throw ModelError("fixed point " + m.fixed_points()[p].label() + " does not lift an isolated fixed point");
        return {p};
    }
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < m.fixed_points().size(); ++p)
        if (!nonabelian(m) || is_lift(alg, p)) out.push_back(p);
    return out;
}

struct Options {
    std::string model;
    std::string point;
    std::string descendent = "1";
    std::string word;
    std::string theta2;
    int order = 3;
    int circuit = -1;
    bool q1 = false;
    bool json = false;
};

int cmd_analyze(const std::string& which, const Options& o, std::ostream& out) {
    HypertoricModel m(load_model(o.model));
    if (o.json) {
        nlohmann::json j;
        if (which == "analyze") {
            j["model"] = model_to_json(m.data());
            j["circuits"] = circuits_json(m);
            j["fixed_points"] = fixed_points_json(m);
            j["eff"] = {{"generators", m.eff().extreme_rays()}, {"facet_normals", m.eff().facet_normals}};
        } else if (which == "circuits") {
            j = circuits_json(m);
        } else {
            j = fixed_points_json(m);
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    if (which == "analyze") {
        out << "n=" << m.n() << " k=" << m.k() << " theta=" << format_cochar(m.data().theta) << "\n";
        out << "circuits:\n";
    }
    if (which != "fixed-points") print_circuits(m, out);
    if (which == "analyze") out << "fixed points:\n";
    if (which != "circuits") print_fixed_points(m, out);
    if (which == "analyze") {
        out << "effective cone:";
        for (const auto& g : m.eff().extreme_rays()) out << " " << format_cochar(g);
        out << "\n";
    }
    return 0;
}

int cmd_vertex(const Options& o, std::ostream& out) {
    CoulombAlgebra alg{HypertoricModel(load_model(o.model))};
    const auto& m = alg.model();
    Descendent tau = parse_descendent(o.descendent, {m.n(), m.k(), false});
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t p : selected_points(alg, o.point)) {
        QSeries V = nonabelian(m) ? vertex_fp_nonab(alg, p, ExactScalar(tau), o.order) : vertex_fp(m, p, tau, o.order);
        if (o.json)
            arr.push_back({{"index", p}, {"point", m.fixed_points()[p].label()}, {"series", V.to_json()}});
        else
            out << m.fixed_points()[p].label() << ":\n" << indent(V.to_string());
    }
    if (o.json) out << nlohmann::json{{"order", o.order}, {"descendent", o.descendent}, {"points", arr}}.dump(2) << "\n";
    return 0;
}

int cmd_whittaker(const Options& o, std::ostream& out) {
    CoulombAlgebra alg{HypertoricModel(load_model(o.model))};
    const auto& m = alg.model();
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t p : selected_points(alg, o.point)) {
        WhittakerVector W = VermaModule(alg, p).whittaker_vector(o.order);
        if (o.json)
            arr.push_back({{"index", p}, {"point", m.fixed_points()[p].label()}, {"vector", W.vector.to_json()}});
        else
            out << m.fixed_points()[p].label() << ":\n" << indent(W.vector.to_string());
    }
    if (o.json) out << nlohmann::json{{"order", o.order}, {"points", arr}}.dump(2) << "\n";
    return 0;
}

int cmd_qde(const Options& o, std::ostream& out) {
    HypertoricModel m(load_model(o.model));
    Descendent tau = parse_descendent(o.descendent, {m.n(), m.k(), false});
    std::vector<std::size_t> which;
    if (o.circuit >= 0) {
        if (static_cast<std::size_t>(o.circuit) >= m.circuits().size())
            throw ParseError("circuit index " + std::to_string(o.circuit) + " out of range (" +
                             std::to_string(m.circuits().size()) + " circuits)");
        which.push_back(o.circuit);
    } else {
        for (std::size_t i = 0; i < m.circuits().size(); ++i) which.push_back(i);
    }
    bool ok = true;
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i : which) {
        QdeReport r = qde_check(m, m.circuits()[i].vector, tau, o.order);
        ok &= r.pass();
        if (o.json) {
            nlohmann::json res = nlohmann::json::array();
            for (const auto& d : r.residuals)
                res.push_back({{"point", m.fixed_points()[d.point].label()}, {"degree", d.degree}, {"residual", d.residual.to_json()}});
            arr.push_back({{"index", i}, {"circuit", r.circuit}, {"pass", r.pass()}, {"checked", r.checked}, {"residuals", res}});
        } else {
            out << "circuit " << i << " " << format_cochar(r.circuit) << ": " << (r.pass() ? "PASS" : "FAIL") << " (" << r.checked
                << " coefficients)\n";
            for (const auto& d : r.residuals)
                out << "  " << m.fixed_points()[d.point].label() << " " << format_cochar(d.degree) << ": " << d.residual.to_string()
                    << "\n";
        }
    }
    if (o.json) out << nlohmann::json{{"order", o.order}, {"pass", ok}, {"circuits", arr}}.dump(2) << "\n";
    return ok ? 0 : 1;
}

int cmd_bethe(const Options& o, std::ostream& out) {
    CoulombAlgebra alg{HypertoricModel(load_model(o.model))};
    auto rels = o.q1 ? bethe_relations_q1(alg) : dmodule_relations(alg);
    out << render_bethe_system(rels, o.json ? RenderFormat::json : RenderFormat::text);
    return 0;
}

int cmd_mul(const Options& o, std::ostream& out) {
    CoulombAlgebra alg{HypertoricModel(load_model(o.model))};
    AlgebraElement a = parse_word(o.word, alg);
    if (o.json)
        out << a.to_json().dump(2) << "\n";
    else
        out << a.to_string() << "\n";
    return 0;
}

int cmd_wallcross(const Options& o, std::ostream& out) {
    GaugeData data = load_model(o.model);
    Character theta2 = parse_int_list(o.theta2, "--theta2");
    if (static_cast<int>(theta2.size()) != data.k)
        throw ParseError("--theta2 needs " + std::to_string(data.k) + " entries, got " + std::to_string(theta2.size()));
    WallCrossScenario sc(data, theta2);
    std::set<Cochar> expected, actual;
    for (const auto& r : sc.reversing()) expected.insert(-r.vector);
    for (const auto& r : sc.kept()) expected.insert(r.vector);
    for (const auto& c : sc.after().model().circuits()) actual.insert(c.vector);
    bool ok = expected == actual;
    nlohmann::json reports = nlohmann::json::array();
    std::ostringstream text;
    for (const auto& c : sc.before().model().circuits()) {
        WallCrossReport rev = check_reversal(sc, c.vector);
        WallCrossReport mod = dmodule_match(sc, c.vector);
        ok &= rev.pass() && mod.pass();
        reports.push_back({{"generators", rev.to_json()}, {"relations", mod.to_json()}});
        text << format_cochar(c.vector) << (rev.reversing ? " reversing" : " kept") << ": generators "
             << (rev.pass() ? "PASS" : "FAIL") << ", relations " << (mod.pass() ? "PASS" : "FAIL") << "\n";
        for (const auto* rep : {&rev, &mod})
            for (const auto& chk : rep->checks)
                if (!chk.ok) text << "  failed: " << chk.name << "\n";
    }
    auto vectors = [](const std::vector<Circuit>& cs) {
        std::vector<Cochar> v;
        for (const auto& c : cs) v.push_back(c.vector);
        return v;
    };
    if (o.json) {
        out << nlohmann::json{{"theta2", theta2},
                              {"reversing", vectors(sc.reversing())},
                              {"kept", vectors(sc.kept())},
                              {"circuits_match", expected == actual},
                              {"reports", reports},
                              {"pass", ok}}
                   .dump(2)
            << "\n";
    } else {
        out << "reversing:";
        for (const auto& c : sc.reversing()) out << " " << format_cochar(c.vector);
        out << "\nkept:";
        for (const auto& c : sc.kept()) out << " " << format_cochar(c.vector);
        out << "\ncircuits after crossing: " << (expected == actual ? "PASS" : "FAIL") << "\n" << text.str();
    }
    return ok ? 0 : 1;
}

}  // namespace

GaugeData model_from_json(const nlohmann::json& j) {
    GaugeData d;
    d.n = j.at("n").get<int>();
    d.k = j.at("k").get<int>();
    d.chi = j.at("chi").get<std::vector<Character>>();
    d.theta = j.at("theta").get<Character>();
    if (static_cast<int>(d.chi.size()) != d.n)
        throw ModelError("chi has " + std::to_string(d.chi.size()) + " rows, expected n = " + std::to_string(d.n));
    for (std::size_t i = 0; i < d.chi.size(); ++i)
        if (static_cast<int>(d.chi[i].size()) != d.k)
            throw ModelError("row χ_" + std::to_string(i + 1) + " has " + std::to_string(d.chi[i].size()) +
                             " entries, expected k = " + std::to_string(d.k));
    if (static_cast<int>(d.theta.size()) != d.k)
        throw ModelError("theta has " + std::to_string(d.theta.size()) + " entries, expected k = " + std::to_string(d.k));
    if (j.contains("blocks") && !j.at("blocks").is_null()) d.blocks = j.at("blocks").get<std::vector<int>>();
    if (j.contains("labels")) d.labels = j.at("labels").get<std::vector<std::string>>();
    if (j.contains("a_specialization")) {
        for (const auto& [key, value] : j.at("a_specialization").items()) {
            VarId v = VariableTable::from_key(key);
            if (!var::is_a(v)) throw ModelError("a_specialization key " + key + " is not an a variable");
            LaurentPoly p = parse_expression(value.get<std::string>());
            if (p.size() != 1 || p.terms().begin()->second != 1)
                throw ModelError("a_specialization for " + key + " is not a monomial");
            d.a_specialization[v] = p.terms().begin()->first;
        }
    }
    HypertoricModel check(d);
    return d;
}

nlohmann::json model_to_json(const GaugeData& data) {
    nlohmann::json j{{"n", data.n}, {"k", data.k}, {"chi", data.chi}, {"theta", data.theta}};
    if (data.blocks) j["blocks"] = *data.blocks;
    if (!data.labels.empty()) j["labels"] = data.labels;
    if (!data.a_specialization.empty()) {
        nlohmann::json spec = nlohmann::json::object();
        for (const auto& [v, m] : data.a_specialization) spec[VariableTable::key(v)] = m.to_string();
        j["a_specialization"] = spec;
    }
    return j;
}

GaugeData load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("model file " + path + ": " + e.what());
    }
    try {
        return model_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("model file " + path + ": " + e.what());
    }
}

LaurentPoly parse_expression(const std::string& text, const ExprOptions& opts) { return ExprParser(text, opts).parse(); }

Descendent parse_descendent(const std::string& text, const ExprOptions& opts) {
    ExprOptions o = opts;
    o.allow_q = false;
    return parse_expression(text, o);
}

AlgebraElement parse_word(const std::string& text, const CoulombAlgebra& algebra) {
    std::vector<std::string> tokens;
    std::string cur;
    int depth = 0;
    auto flush = [&] {
        while (!cur.empty() && cur.front() == '*') cur.erase(cur.begin());
        while (!cur.empty() && cur.back() == '*') cur.pop_back();
        if (!cur.empty()) tokens.push_back(cur);
        cur.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        bool generator_start = depth == 0 && (c == 'r' || c == 'R') && i + 1 < text.size() && text[i + 1] == '[';
        if (generator_start) flush();
        if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) {
            flush();
            continue;
        }
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (depth < 0) throw ParseError("unbalanced brackets in word");
        cur += c;
        if (c == ']' && depth == 0) flush();
    }
    if (depth != 0) throw ParseError("unbalanced brackets in word");
    flush();
    if (tokens.empty()) throw ParseError("empty word");
    const int n = algebra.n(), k = algebra.k();
    std::vector<AlgebraElement> factors;
    for (const auto& t : tokens) {
        if ((t[0] == 'r' || t[0] == 'R') && t.size() >= 3 && t[1] == '[' && t.back() == ']') {
            Cochar d = parse_int_list(t.substr(2, t.size() - 3), t);
            if (static_cast<int>(d.size()) != k)
                throw ParseError("generator " + t + " needs " + std::to_string(k) + " entries");
            factors.push_back(t[0] == 'r' ? algebra.r(d) : algebra.mixed_generator(d));
        } else {
            factors.push_back(AlgebraElement::scalar(ExactScalar(parse_expression(t, {n, k, true})), k));
        }
    }
    return algebra.product(factors);
}

std::size_t parse_point(const std::string& text, const HypertoricModel& model) {
    std::string t = text;
    if (!t.empty() && t.front() == '{') {
        if (t.back() != '}') throw ParseError("bad fixed point " + text);
        std::vector<int> rows = parse_int_list(t.substr(1, t.size() - 2), "fixed point");
        for (int& r : rows) {
            if (r < 1 || r > model.n()) throw ParseError("row " + std::to_string(r) + " out of range in " + text);
            --r;
        }
        return model.fixed_point_index(rows);
    }
    std::vector<int> idx = parse_int_list(t, "fixed point");
    if (idx.size() != 1) throw ParseError("bad fixed point " + text);
    if (idx[0] < 0 || static_cast<std::size_t>(idx[0]) >= model.fixed_points().size())
        throw ParseError("fixed point index " + text + " out of range (" + std::to_string(model.fixed_points().size()) +
                         " fixed points)");
    return static_cast<std::size_t>(idx[0]);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations in K-theoretic Coulomb branches of abelian and abelianized gauge theories",
                 "coulombkit"};
    app.require_subcommand(1);
    Options o;

    auto with_model = [&](CLI::App* sub) {
        sub->add_option("model", o.model, "model file (JSON)")->required();
        sub->add_flag("--json", o.json, "structured output");
    };
    auto with_order = [&](CLI::App* sub) { sub->add_option("--order", o.order, "truncation order (default 3)")->check(CLI::NonNegativeNumber); };

    std::map<std::string, CLI::App*> subs;
    for (const char* name : {"analyze", "circuits", "fixed-points"}) {
        subs[name] = app.add_subcommand(name, std::string(name) == "analyze" ? "circuits, fixed points and cones"
                                                                            : std::string("list ") + name);
        with_model(subs[name]);
    }

    auto* vertex = subs["vertex"] = app.add_subcommand("vertex", "vertex function at fixed points");
    vertex->add_option("--point", o.point, "fixed point index or subset {i,j}");
    vertex->add_option("--descendent", o.descendent, "descendent insertion");
    with_order(vertex);
    with_model(vertex);

    auto* whit = subs["whittaker"] = app.add_subcommand("whittaker", "truncated Whittaker vector");
    whit->add_option("--point", o.point, "fixed point index or subset {i,j}");
    with_order(whit);
    with_model(whit);

    auto* qde = subs["qde-check"] = app.add_subcommand("qde-check", "q-difference residuals of the vertex function");
    qde->add_option("--circuit", o.circuit, "circuit index (default: all)");
    qde->add_option("--descendent", o.descendent, "descendent insertion");
    with_order(qde);
    with_model(qde);

    auto* bethe = subs["bethe"] = app.add_subcommand("bethe", "q-difference module and Bethe relations");
    bethe->add_flag("--q1", o.q1, "specialize q = 1");
    with_model(bethe);

    auto* mul = subs["mul"] = app.add_subcommand("mul", "normal form of a product of generators");
    mul->add_option("word", o.word, "generator word such as \"r[1,0] R[-1,0]\"")->required();
    with_model(mul);

    auto* wc = subs["wallcross"] = app.add_subcommand("wallcross", "compare with a second stability condition");
    wc->add_option("--theta2", o.theta2, "comma separated stability vector")->required();
    with_model(wc);

    std::vector<std::string> argv_store{"coulombkit"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        for (const auto& [name, sub] : subs) {
            if (!sub->parsed()) continue;
            if (name == "analyze" || name == "circuits" || name == "fixed-points") return cmd_analyze(name, o, out);
            if (name == "vertex") return cmd_vertex(o, out);
            if (name == "whittaker") return cmd_whittaker(o, out);
            if (name == "qde-check") return cmd_qde(o, out);
            if (name == "bethe") return cmd_bethe(o, out);
            if (name == "mul") return cmd_mul(o, out);
            if (name == "wallcross") return cmd_wallcross(o, out);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PoleError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace coulombkit
