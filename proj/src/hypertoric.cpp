#include "coulombkit/hypertoric.hpp"

#include "coulombkit/linalg.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace coulombkit {

int pairing(const Character& chi, const Cochar& d) { return linalg::dot(chi, d); }

Cochar operator+(const Cochar& a, const Cochar& b) {
    Cochar r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Cochar operator-(const Cochar& a, const Cochar& b) {
    Cochar r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Cochar operator-(const Cochar& a) {
    Cochar r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

bool is_zero(const Cochar& d) {
    return std::all_of(d.begin(), d.end(), [](int x) { return x == 0; });
}

std::string format_vector(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string format_subset(const std::vector<int>& zero_based) {
    std::string s = "{";
    for (std::size_t i = 0; i < zero_based.size(); ++i) s += (i ? "," : "") + std::to_string(zero_based[i] + 1);
    return s + "}";
}

namespace {

std::string chi_subset(const std::vector<int>& rows) {
    std::string s = "{";
    for (std::size_t i = 0; i < rows.size(); ++i) s += (i ? "," : "") + std::string("χ_") + std::to_string(rows[i] + 1);
    return s + "}";
}

void for_each_subset(int n, int r, const std::function<void(const std::vector<int>&)>& f) {
    if (r < 0 || r > n) return;
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        f(idx);
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

linalg::IntMatrix rows_of(const std::vector<Character>& chi, const std::vector<int>& subset) {
    linalg::IntMatrix m;
    for (int i : subset) m.push_back(chi[i]);
    return m;
}

int to_int(const mpq_class& x) {
    if (x.get_den() != 1) throw ModelError("non-integral restriction exponent");
    return static_cast<int>(x.get_num().get_si());
}

}  // namespace

void GaugeData::validate_shape() const {
    if (n < 1 || k < 1) throw ModelError("model needs n >= 1 and k >= 1");
    if (static_cast<int>(chi.size()) != n) throw ModelError("chi must have n rows");
    for (const auto& row : chi)
        if (static_cast<int>(row.size()) != k) throw ModelError("every row of chi must have k entries");
    if (static_cast<int>(theta.size()) != k) throw ModelError("theta must have k entries");
    for (int i = 0; i < n; ++i)
        if (is_zero(chi[i])) throw ModelError("row χ_" + std::to_string(i + 1) + " is zero");
    int r = linalg::rank(chi, k);
    if (r != k) throw ModelError("chi has rank " + std::to_string(r) + ", expected " + std::to_string(k));
    if (blocks) {
        int total = 0;
        for (int b : *blocks) {
            if (b < 1) throw ModelError("block sizes must be positive");
            total += b;
        }
        if (total != k) throw ModelError("block sizes must sum to k");
        std::multiset<Character> rows(chi.begin(), chi.end());
        int start = 0;
        for (int b : *blocks) {
            for (int j = start; j + 1 < start + b; ++j) {
                std::multiset<Character> swapped;
                for (auto row : chi) {
                    std::swap(row[j], row[j + 1]);
                    swapped.insert(row);
                }
                if (swapped != rows) throw ModelError("rows of chi are not invariant under the block Weyl group");
            }
            start += b;
        }
    }
}

std::vector<Circuit> circuits(const GaugeData& data) {
    data.validate_shape();
    std::vector<Circuit> out;
    std::set<Cochar> seen;
    for_each_subset(data.n, data.k - 1, [&](const std::vector<int>& subset) {
        auto rows = rows_of(data.chi, subset);
        if (linalg::rank(rows, data.k) != data.k - 1) return;
        Cochar rho = linalg::nullspace(rows, data.k).front();
        int s = pairing(data.theta, rho);
        if (s == 0)
            throw ModelError("theta on wall: theta lies on wall spanned by " + chi_subset(subset));
        if (s < 0) rho = -rho;
        if (!seen.insert(rho).second) return;
        Circuit c{rho, {}};
        for (int i = 0; i < data.n; ++i)
            if (pairing(data.chi[i], rho) == 0) c.wall.push_back(i);
        out.push_back(std::move(c));
    });
    return out;
}

bool FixedPoint::in_support(int i) const { return std::find(support.begin(), support.end(), i) != support.end(); }
bool FixedPoint::in_plus(int i) const { return std::find(plus.begin(), plus.end(), i) != plus.end(); }
bool FixedPoint::in_minus(int i) const { return std::find(minus.begin(), minus.end(), i) != minus.end(); }

std::string FixedPoint::label() const {
    bool small = std::all_of(support.begin(), support.end(), [](int i) { return i < 9; });
    if (!small) return "p" + format_subset(support);
    std::string s = "p";
    for (int i : support) s += std::to_string(i + 1);
    return s;
}

std::vector<FixedPoint> fixed_points(const GaugeData& data) {
    data.validate_shape();
    std::vector<FixedPoint> out;
    for_each_subset(data.n, data.k, [&](const std::vector<int>& subset) {
        auto m = rows_of(data.chi, subset);
        mpq_class det = linalg::determinant(m);
        if (det == 0) return;
        if (abs(det) != 1) throw ModelError("subset " + format_subset(subset) + " non-unimodular");
        auto minv = linalg::inverse(m);
        FixedPoint p;
        p.support = subset;
        for (int j = 0; j < data.k; ++j) {
            mpq_class c = 0;
            for (int l = 0; l < data.k; ++l) c += data.theta[l] * minv[l][j];
            if (c == 0) throw ModelError("theta on wall: theta lies on wall spanned by " + chi_subset(subset));
            p.coeffs.push_back(c);
            (c > 0 ? p.plus : p.minus).push_back(subset[j]);
        }
        // s^{chi_j} = a_j^{-1} hbar^{-[j in p-]}
        for (int l = 0; l < data.k; ++l) {
            Monomial s;
            for (int j = 0; j < data.k; ++j) {
                int e = to_int(minv[l][j]);
                int neg = p.coeffs[j] < 0 ? 1 : 0;
                s *= Monomial::from_entries({{var::a(subset[j] + 1), -e}, {var::hbar_half, -2 * neg * e}});
            }
            p.restriction[var::s(l + 1)] = s;
        }
        for (int j = 0; j < data.k; ++j) {
            int sign = p.coeffs[j] > 0 ? 1 : -1;
            Cochar ray(data.k);
            for (int l = 0; l < data.k; ++l) ray[l] = sign * to_int(minv[l][j]);
            p.eff_rays.push_back(ray);
        }
        out.push_back(std::move(p));
    });
    return out;
}

Cone Cone::from_generators(std::vector<Cochar> gens, int dim) {
    Cone c;
    c.dim = dim;
    std::set<Cochar> seen;
    for (auto& g : gens)
        if (!is_zero(g) && seen.insert(g).second) c.generators.push_back(g);
    std::set<Character> normals;
    for_each_subset(static_cast<int>(c.generators.size()), dim - 1, [&](const std::vector<int>& subset) {
        linalg::IntMatrix rows;
        for (int i : subset) rows.push_back(c.generators[i]);
        if (linalg::rank(rows, dim) != dim - 1) return;
        Character nv = linalg::nullspace(rows, dim).front();
        bool pos = false, neg = false;
        for (const auto& g : c.generators) {
            int s = pairing(nv, g);
            pos |= s > 0;
            neg |= s < 0;
        }
        if (pos && neg) return;
        if (neg) nv = -nv;
        normals.insert(nv);
    });
    c.facet_normals.assign(normals.begin(), normals.end());
    return c;
}

bool Cone::contains(const Cochar& d) const {
    for (const auto& nv : facet_normals)
        if (pairing(nv, d) < 0) return false;
    return true;
}

std::vector<Cochar> Cone::extreme_rays() const {
    std::vector<Cochar> out;
    std::set<Cochar> seen;
    for (const auto& g : generators) {
        linalg::IntMatrix tight;
        for (const auto& nv : facet_normals)
            if (pairing(nv, g) == 0) tight.push_back(nv);
        if (linalg::rank(tight, dim) != dim - 1) continue;
        std::vector<mpq_class> q(g.begin(), g.end());
        if (seen.insert(linalg::primitive(q)).second) out.push_back(g);
    }
    return out;
}

Cone eff_cone(const GaugeData& data, const std::vector<Circuit>& cs) {
    std::vector<Cochar> gens;
    for (const auto& c : cs) gens.push_back(c.vector);
    return Cone::from_generators(gens, data.k);
}

Cone eff_cone(const GaugeData& data) { return eff_cone(data, circuits(data)); }

Cone eff_cone_fp(const FixedPoint& p, const GaugeData& data) {
    Cone c;
    c.dim = data.k;
    c.generators = p.eff_rays;
    for (std::size_t j = 0; j < p.support.size(); ++j) {
        Character nv = data.chi[p.support[j]];
        if (p.coeffs[j] < 0) nv = -nv;
        c.facet_normals.push_back(nv);
    }
    return c;
}

Cone kahler_cone_fp(const FixedPoint& p, const GaugeData& data) {
    std::vector<Cochar> gens;
    for (std::size_t j = 0; j < p.support.size(); ++j) {
        Character g = data.chi[p.support[j]];
        if (p.coeffs[j] < 0) g = -g;
        gens.push_back(g);
    }
    return Cone::from_generators(gens, data.k);
}

std::vector<bool> mixed_polarization(const GaugeData& data, const Cochar& d) {
    std::vector<bool> pol(data.n);
    for (int i = 0; i < data.n; ++i) pol[i] = pairing(data.chi[i], d) >= 0;
    return pol;
}

std::vector<Cochar> enumerate_degrees(const Cone& cone, const Character& theta, int order) {
    for (const auto& g : cone.generators)
        if (pairing(theta, g) <= 0) throw ModelError("cone not pointed for grading");
    std::vector<Cochar> out;
    if (order < 0) return out;
    int k = cone.dim;
    std::vector<int> bound(k, 0);
    for (const auto& g : cone.generators) {
        int l = pairing(theta, g);
        for (int j = 0; j < k; ++j) bound[j] = std::max(bound[j], (order * std::abs(g[j]) + l - 1) / l);
    }
    Cochar d(k);
    std::function<void(int)> rec = [&](int j) {
        if (j == k) {
            if (pairing(theta, d) <= order && cone.contains(d)) out.push_back(d);
            return;
        }
        for (int v = -bound[j]; v <= bound[j]; ++v) {
            d[j] = v;
            rec(j + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), [&](const Cochar& a, const Cochar& b) {
        int la = pairing(theta, a), lb = pairing(theta, b);
        if (la != lb) return la < lb;
        return a < b;
    });
    return out;
}

WallSplit separating_circuits(const GaugeData& data, const Character& theta2) {
    GaugeData other = data;
    other.theta = theta2;
    try {
        circuits(other);
    } catch (const ModelError& e) {
        if (std::string(e.what()).rfind("theta on wall", 0) == 0) throw ModelError("theta2 on wall");
        throw;
    }
    WallSplit split;
    for (const auto& c : circuits(data)) {
        int s = pairing(theta2, c.vector);
        if (s == 0) throw ModelError("theta2 on wall");
        (s < 0 ? split.reversing : split.kept).push_back(c);
    }
    return split;
}

WeylGroup WeylGroup::from_blocks(const std::vector<int>& sizes) {
    WeylGroup w;
    w.blocks = static_cast<int>(sizes.size());
    int k = 0;
    for (int b = 0; b < w.blocks; ++b)
        for (int j = 0; j < sizes[b]; ++j) w.block_of.push_back(b), ++k;
    std::vector<std::vector<int>> elems{std::vector<int>(k)};
    for (int j = 0; j < k; ++j) elems[0][j] = j;
    int start = 0;
    for (int size : sizes) {
        std::vector<int> local(size);
        for (int j = 0; j < size; ++j) local[j] = start + j;
        std::vector<std::vector<int>> next;
        for (const auto& e : elems) {
            std::vector<int> perm = local;
            do {
                std::vector<int> f = e;
                for (int j = 0; j < size; ++j) f[start + j] = perm[j];
                next.push_back(f);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        elems = std::move(next);
        for (int a = start; a < start + size; ++a)
            for (int b = start; b < start + size; ++b)
                if (a != b) w.roots.emplace_back(a, b);
        start += size;
    }
    w.elements = std::move(elems);
    return w;
}

Cochar WeylGroup::act(const std::vector<int>& w, const Cochar& d) {
    Cochar out(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) out[w[j]] = d[j];
    return out;
}

bool WeylGroup::dominant(const Cochar& d) const {
    for (std::size_t j = 0; j + 1 < d.size(); ++j)
        if (block_of[j] == block_of[j + 1] && d[j] < d[j + 1]) return false;
    return true;
}

Cochar WeylGroup::reduce(const Cochar& d) const {
    Cochar out(blocks, 0);
    for (std::size_t j = 0; j < d.size(); ++j) out[block_of[j]] += d[j];
    return out;
}

HypertoricModel::HypertoricModel(GaugeData data) : data_(std::move(data)) {
    data_.validate_shape();
    circuits_ = coulombkit::circuits(data_);
    fixed_points_ = coulombkit::fixed_points(data_);
    eff_ = eff_cone(data_, circuits_);
    for (const auto& p : fixed_points_) eff_fp_.push_back(eff_cone_fp(p, data_));
    for (int i = 0; i < data_.n; ++i) {
        std::vector<Monomial::Entry> e{{var::a(i + 1), 1}};
        for (int j = 0; j < data_.k; ++j) e.emplace_back(var::s(j + 1), data_.chi[i][j]);
        x_.push_back(Monomial::from_entries(e));
    }
    if (data_.blocks) weyl_ = WeylGroup::from_blocks(*data_.blocks);
}

bool HypertoricModel::is_abelian() const {
    if (!data_.blocks) return true;
    return std::all_of(data_.blocks->begin(), data_.blocks->end(), [](int b) { return b == 1; });
}

std::size_t HypertoricModel::fixed_point_index(const std::vector<int>& support) const {
    std::vector<int> s = support;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < fixed_points_.size(); ++i)
        if (fixed_points_[i].support == s) return i;
    throw ModelError("no fixed point with support " + format_subset(s));
}

}  // namespace coulombkit
