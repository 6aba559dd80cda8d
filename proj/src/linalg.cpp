#include "coulombkit/linalg.hpp"

#include <numeric>
#include <stdexcept>

namespace coulombkit::linalg {

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r;
    for (const auto& row : m) r.emplace_back(row.begin(), row.end());
    return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RatMatrix& a, int cols) {
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        mpq_class inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (std::size_t j = 0; j < a[r].size(); ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int rank(const IntMatrix& rows, int cols) {
    RatMatrix a = to_rational(rows);
    return static_cast<int>(rref(a, cols).size());
}

std::vector<int> primitive(const std::vector<mpq_class>& v) {
    mpz_class l = 1;
    for (const auto& x : v) l = lcm(l, mpz_class(x.get_den()));
    std::vector<mpz_class> z;
    mpz_class g = 0;
    for (const auto& x : v) {
        mpz_class y = mpz_class(x * l);
        z.push_back(y);
        g = gcd(g, y);
    }
    std::vector<int> out;
    for (auto& y : z) out.push_back(g == 0 ? 0 : static_cast<int>(mpz_class(y / g).get_si()));
    return out;
}

IntMatrix nullspace(const IntMatrix& rows, int cols) {
    RatMatrix a = to_rational(rows);
    std::vector<int> piv = rref(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (int c : piv) is_pivot[c] = true;
    IntMatrix out;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<mpq_class> v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
        out.push_back(primitive(v));
    }
    return out;
}

mpq_class determinant(const IntMatrix& square) {
    RatMatrix a = to_rational(square);
    std::size_t n = a.size();
    mpq_class det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            mpq_class f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

RatMatrix inverse(const IntMatrix& square) {
    int n = static_cast<int>(square.size());
    RatMatrix a = to_rational(square);
    for (int i = 0; i < n; ++i) {
        a[i].resize(2 * n, 0);
        a[i][n + i] = 1;
    }
    std::vector<int> piv = rref(a, n);
    if (static_cast<int>(piv.size()) != n) throw std::invalid_argument("singular matrix");
    RatMatrix out(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = a[i][n + j];
    return out;
}

int dot(const std::vector<int>& a, const std::vector<int>& b) {
    int s = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace coulombkit::linalg
