#include "purity/finite_geometry.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace purity {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

namespace {

using Poly = std::vector<int>;  // coefficients low to high, trimmed

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int p) {
    for (int x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    throw std::domain_error("no inverse mod p");
}

Poly poly_mod(Poly a, const Poly& m, int p) {
    trim(a);
    const int dm = int(m.size()) - 1;
    const int lead_inv = inv_mod(m.back(), p);
    while (int(a.size()) - 1 >= dm) {
        int shift = int(a.size()) - 1 - dm;
        int c = a.back() * lead_inv % p;
        for (int i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

Poly from_code(int code, int p, int e) {
    Poly a(e, 0);
    for (int i = 0; i < e; ++i) {
        a[i] = code % p;
        code /= p;
    }
    return a;
}

int to_code(const Poly& a, int p) {
    int code = 0;
    for (int i = int(a.size()) - 1; i >= 0; --i) code = code * p + a[i];
    return code;
}

}  // namespace

bool is_irreducible(int p, const std::vector<int>& poly) {
    Poly f(poly);
    trim(f);
    const int deg = int(f.size()) - 1;
    if (deg < 1) return false;
    for (int d = 1; d <= deg / 2; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int code = 0; code < count; ++code) {
            Poly g = from_code(code, p, d);
            g.push_back(1);
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

FieldSpec::FieldSpec() { build(); }

FieldSpec FieldSpec::prime(int p) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (p > 16) throw std::invalid_argument("field order must be at most 16");
    FieldSpec f;
    f.p_ = p;
    f.e_ = 1;
    f.q_ = p;
    f.modulus_.clear();
    f.build();
    return f;
}

FieldSpec FieldSpec::with_modulus(int p, int e, std::vector<int> modulus) {
    if (e == 1) return prime(p);
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (e < 1) throw std::invalid_argument("field degree must be positive");
    int q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    if (q > 16) throw std::invalid_argument("field order must be at most 16");
    if (int(modulus.size()) != e + 1 || modulus.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree e");
    for (int c : modulus)
        if (c < 0 || c >= p) throw std::invalid_argument("modulus coefficient out of range");
    if (!is_irreducible(p, modulus)) throw std::invalid_argument("modulus is not irreducible");
    FieldSpec f;
    f.p_ = p;
    f.e_ = e;
    f.q_ = q;
    f.modulus_ = std::move(modulus);
    f.build();
    return f;
}

FieldSpec FieldSpec::of_order(int q) {
    switch (q) {
        case 2: case 3: case 5: case 7: case 11: case 13:
            return prime(q);
        case 4: return with_modulus(2, 2, {1, 1, 1});
        case 8: return with_modulus(2, 3, {1, 1, 0, 1});
        case 9: return with_modulus(3, 2, {1, 0, 1});
        case 16: return with_modulus(2, 4, {1, 1, 0, 0, 1});
        default: break;
    }
    throw std::invalid_argument("unsupported field order " + std::to_string(q));
}

void FieldSpec::build() {
    auto t = std::make_shared<Tables>();
    const int q = q_;
    t->add.assign(q * q, 0);
    t->mul.assign(q * q, 0);
    t->neg.assign(q, 0);
    t->inv.assign(q, 0);
    Poly m = modulus_;
    for (int a = 0; a < q; ++a) {
        Poly pa = from_code(a, p_, e_);
        Poly na(e_);
        for (int i = 0; i < e_; ++i) na[i] = (p_ - pa[i]) % p_;
        t->neg[a] = std::uint8_t(to_code(na, p_));
        for (int b = 0; b < q; ++b) {
            Poly pb = from_code(b, p_, e_);
            Poly s(e_);
            for (int i = 0; i < e_; ++i) s[i] = (pa[i] + pb[i]) % p_;
            t->add[a * q + b] = std::uint8_t(to_code(s, p_));
            Poly prod(2 * e_, 0);
            for (int i = 0; i < e_; ++i)
                for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
            if (e_ > 1) prod = poly_mod(prod, m, p_);
            prod.resize(e_, 0);
            t->mul[a * q + b] = std::uint8_t(to_code(prod, p_));
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (t->mul[a * q + b] == 1) t->inv[a] = std::uint8_t(b);
    tables_ = std::move(t);
}

int FieldSpec::inv(int a) const {
    if (a == 0) throw std::domain_error("inverse of zero in finite field");
    return tables_->inv[a];
}

std::string FieldSpec::describe() const {
    std::ostringstream os;
    os << "F_" << q_;
    return os.str();
}

std::vector<int> LinearSubvariety::row(int r) const {
    std::vector<int> out(ambient_ + 1);
    for (int c = 0; c <= ambient_; ++c) out[c] = entry(r, c);
    return out;
}

std::vector<std::vector<int>> LinearSubvariety::matrix() const {
    std::vector<std::vector<int>> out;
    for (int r = 0; r < rows(); ++r) out.push_back(row(r));
    return out;
}

std::vector<int> LinearSubvariety::pivots() const {
    std::vector<int> out;
    for (int r = 0; r < rows(); ++r)
        for (int c = 0; c <= ambient_; ++c)
            if (entry(r, c) != 0) {
                out.push_back(c);
                break;
            }
    return out;
}

std::string LinearSubvariety::describe() const {
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < rows(); ++r) {
        if (r) os << ";";
        for (int c = 0; c <= ambient_; ++c) os << (c ? "," : "") << entry(r, c);
    }
    os << "]";
    return os.str();
}

int row_reduce(const FieldSpec& f, std::vector<std::vector<int>>& a) {
    if (a.empty()) return 0;
    const int nc = int(a[0].size());
    int r = 0;
    for (int c = 0; c < nc && r < int(a.size()); ++c) {
        int p = r;
        while (p < int(a.size()) && a[p][c] == 0) ++p;
        if (p == int(a.size())) continue;
        std::swap(a[p], a[r]);
        int iv = f.inv(a[r][c]);
        for (int j = 0; j < nc; ++j) a[r][j] = f.mul(a[r][j], iv);
        for (int i = 0; i < int(a.size()); ++i) {
            if (i == r || a[i][c] == 0) continue;
            int s = a[i][c];
            for (int j = 0; j < nc; ++j) a[i][j] = f.sub(a[i][j], f.mul(s, a[r][j]));
        }
        ++r;
    }
    return r;
}

LinearSubvariety LinearSubvariety::span(const FieldSpec& f, int ambient, const std::vector<std::vector<int>>& vecs) {
    if (ambient < 0 || ambient > kMaxAmbient) throw std::invalid_argument("ambient dimension out of range");
    std::vector<std::vector<int>> a(vecs);
    for (auto& v : a)
        if (int(v.size()) != ambient + 1) throw std::invalid_argument("vector length mismatch");
    int rk = row_reduce(f, a);
    LinearSubvariety s;
    s.ambient_ = std::int8_t(ambient);
    s.dim_ = std::int8_t(rk - 1);
    for (int r = 0; r < rk; ++r) {
        std::uint32_t w = 0;
        for (int c = 0; c <= ambient; ++c) w |= std::uint32_t(a[r][c]) << (4 * (kMaxAmbient - c));
        s.packed_[r] = w;
    }
    return s;
}

LinearSubvariety LinearSubvariety::whole(const FieldSpec& f, int ambient) {
    std::vector<std::vector<int>> id(ambient + 1, std::vector<int>(ambient + 1, 0));
    for (int i = 0; i <= ambient; ++i) id[i][i] = 1;
    return span(f, ambient, id);
}

std::vector<LinearSubvariety> enumerate_subspaces(int n, const FieldSpec& f, int d) {
    if (n < 0 || n > kMaxAmbient) throw std::invalid_argument("ambient dimension out of range");
    std::vector<LinearSubvariety> out;
    if (d < -1 || d > n) return out;
    const int k = d + 1, nc = n + 1, q = f.q();
    // choose pivot columns, then fill the free entries
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    while (true) {
        std::vector<std::pair<int, int>> free_slots;
        for (int r = 0; r < k; ++r)
            for (int c = piv[r] + 1; c < nc; ++c)
                if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_slots.push_back({r, c});
        std::vector<int> digits(free_slots.size(), 0);
        while (true) {
            std::vector<std::vector<int>> m(k, std::vector<int>(nc, 0));
            for (int r = 0; r < k; ++r) m[r][piv[r]] = 1;
            for (std::size_t i = 0; i < free_slots.size(); ++i) m[free_slots[i].first][free_slots[i].second] = digits[i];
            out.push_back(LinearSubvariety::span(f, n, m));
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
            if (i == digits.size()) break;
        }
        int i = k - 1;
        while (i >= 0 && piv[i] == nc - k + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<LinearSubvariety> enumerate_all_proper(int n, const FieldSpec& f) {
    std::vector<LinearSubvariety> out;
    for (int d = 0; d < n; ++d) {
        auto s = enumerate_subspaces(n, f, d);
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

bool contains(const FieldSpec& f, const LinearSubvariety& v, const LinearSubvariety& w) {
    if (w.dim() > v.dim()) return false;
    if (w.dim() < 0) return true;
    auto m = v.matrix();
    for (auto& r : w.matrix()) m.push_back(r);
    return row_reduce(f, m) == v.rows();
}

LinearSubvariety join(const FieldSpec& f, const LinearSubvariety& a, const LinearSubvariety& b) {
    auto m = a.matrix();
    for (auto& r : b.matrix()) m.push_back(r);
    return LinearSubvariety::span(f, a.ambient(), m);
}

LinearSubvariety meet(const FieldSpec& f, const LinearSubvariety& a, const LinearSubvariety& b) {
    // brute force over the points of a; adequate for the small fields supported
    std::vector<std::vector<int>> pts;
    for (const auto& p : enumerate_subspaces(a.ambient(), f, 0))
        if (contains(f, a, p) && contains(f, b, p)) pts.push_back(p.row(0));
    if (pts.empty()) {
        LinearSubvariety e = LinearSubvariety::span(f, a.ambient(), {});
        return e;
    }
    return LinearSubvariety::span(f, a.ambient(), pts);
}

LinearSubvariety coordinates_in(const FieldSpec& f, const LinearSubvariety& v, const LinearSubvariety& w) {
    if (!contains(f, v, w)) throw std::invalid_argument("subvariety not contained in target");
    // In echelon form the coordinates of x in V are the entries of x at V's pivot columns.
    auto piv = v.pivots();
    std::vector<std::vector<int>> rows;
    for (int r = 0; r < w.rows(); ++r) {
        std::vector<int> x(piv.size());
        for (std::size_t i = 0; i < piv.size(); ++i) x[i] = w.entry(r, piv[i]);
        rows.push_back(x);
    }
    return LinearSubvariety::span(f, v.dim(), rows);
}

LinearSubvariety embed_from(const FieldSpec& f, const LinearSubvariety& v, const LinearSubvariety& local) {
    std::vector<std::vector<int>> rows;
    for (int r = 0; r < local.rows(); ++r) {
        std::vector<int> x(v.ambient() + 1, 0);
        for (int i = 0; i < v.rows(); ++i) {
            int c = local.entry(r, i);
            if (c == 0) continue;
            for (int j = 0; j <= v.ambient(); ++j) x[j] = f.add(x[j], f.mul(c, v.entry(i, j)));
        }
        rows.push_back(x);
    }
    return LinearSubvariety::span(f, v.ambient(), rows);
}

LinearSubvariety quotient_image(const FieldSpec& f, const LinearSubvariety& v, const LinearSubvariety& w) {
    if (!contains(f, w, v)) throw std::invalid_argument("quotient of a subvariety not containing the center");
    auto piv = v.pivots();
    std::vector<int> keep;
    for (int c = 0; c <= v.ambient(); ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) keep.push_back(c);
    std::vector<std::vector<int>> rows;
    for (int r = 0; r < w.rows(); ++r) {
        std::vector<int> x = w.row(r);
        for (std::size_t i = 0; i < piv.size(); ++i) {
            int s = x[piv[i]];
            if (s == 0) continue;
            for (int j = 0; j <= v.ambient(); ++j) x[j] = f.sub(x[j], f.mul(s, v.entry(int(i), j)));
        }
        std::vector<int> y;
        for (int c : keep) y.push_back(x[c]);
        rows.push_back(y);
    }
    return LinearSubvariety::span(f, int(keep.size()) - 1, rows);
}

std::vector<std::pair<LinearSubvariety, LinearSubvariety>> quotient_geometry(const FieldSpec& f,
                                                                             const LinearSubvariety& v) {
    std::vector<std::pair<LinearSubvariety, LinearSubvariety>> out;
    for (int d = v.dim() + 1; d < v.ambient(); ++d)
        for (const auto& w : enumerate_subspaces(v.ambient(), f, d))
            if (contains(f, w, v)) out.push_back({w, quotient_image(f, v, w)});
    return out;
}

LinearSubvariety apply_linear(const FieldSpec& f, const std::vector<std::vector<int>>& g, const LinearSubvariety& v) {
    const int n = v.ambient();
    std::vector<std::vector<int>> rows;
    for (int r = 0; r < v.rows(); ++r) {
        std::vector<int> y(n + 1, 0);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) y[i] = f.add(y[i], f.mul(g[i][j], v.entry(r, j)));
        rows.push_back(y);
    }
    return LinearSubvariety::span(f, n, rows);
}

std::uint64_t point_count(int k, int q) {
    if (k < 0) return 0;
    std::uint64_t s = 0, t = 1;
    for (int i = 0; i <= k; ++i) {
        s += t;
        t *= std::uint64_t(q);
    }
    return s;
}

std::uint64_t gaussian_binomial(int n, int k, int q) {
    if (k < 0 || k > n) return 0;
    // product formula; exact in integers for the sizes used here
    unsigned __int128 num = 1, den = 1;
    auto qp = [&](int e) {
        unsigned __int128 x = 1;
        for (int i = 0; i < e; ++i) x *= unsigned(q);
        return x;
    };
    for (int i = 0; i < k; ++i) {
        num *= qp(n - i) - 1;
        den *= qp(i + 1) - 1;
    }
    return std::uint64_t(num / den);
}

}  // namespace purity
