#include "purity/exact_linalg.hpp"

#include <stdexcept>

namespace purity {

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (c != ' ') t += c;
    if (t.empty()) throw std::invalid_argument("empty rational");
    auto valid_int = [](const std::string& s) {
        std::size_t i = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = t.find('/');
    std::string num = t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed rational: " + text);
    if (num[0] == '+') num = num.substr(1);
    if (den[0] == '+') den = den.substr(1);
    mpz_class n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) {
    Rational r = x;
    r.canonicalize();
    return r.get_str();
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<RationalVector>& cols, std::size_t rows) {
    RationalMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw std::invalid_argument("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

RationalVector RationalMatrix::row(std::size_t r) const {
    return RationalVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

RationalVector RationalMatrix::column(std::size_t c) const {
    RationalVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

std::vector<RationalVector> RationalMatrix::columns() const {
    std::vector<RationalVector> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    RationalMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Rational& b = o(k, j);
                if (sgn(b) != 0) out(i, j) += a * b;
            }
        }
    return out;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    RationalVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k)
            if (sgn(v[k]) != 0 && sgn((*this)(i, k)) != 0) out[i] += (*this)(i, k) * v[k];
    return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    RationalMatrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    RationalMatrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
}

RationalMatrix RationalMatrix::scaled(const Rational& s) const {
    RationalMatrix out(*this);
    for (auto& x : out.data_) x *= s;
    return out;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool RationalMatrix::is_zero() const {
    for (const auto& x : data_)
        if (sgn(x) != 0) return false;
    return true;
}

bool RationalMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

void RationalMatrix::set_block(std::size_t r0, std::size_t c0, const RationalMatrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("block does not fit");
    for (std::size_t r = 0; r < b.rows_; ++r)
        for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

RationalMatrix RationalMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block out of range");
    RationalMatrix out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
}

RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    RationalMatrix out(a.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(0, a.cols(), b);
    return out;
}

RationalMatrix vstack(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    RationalMatrix out(a.rows() + b.rows(), a.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), 0, b);
    return out;
}

RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (sgn(a(i, j)) == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return out;
}

RationalMatrix power(const RationalMatrix& m, int e) {
    if (m.rows() != m.cols()) throw std::invalid_argument("power of non-square matrix");
    RationalMatrix out = RationalMatrix::identity(m.rows());
    for (int i = 0; i < e; ++i) out = out * m;
    return out;
}

namespace {

// Integer rows, each scaled by the lcm of its denominators.
std::vector<std::vector<mpz_class>> integer_rows(const RationalMatrix& m) {
    std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
    }
    return a;
}

struct Echelon {
    std::vector<std::vector<mpz_class>> rows;  // first `pivots.size()` rows are the echelon rows
    std::vector<std::size_t> pivots;
};

// Bareiss fraction-free elimination with row pivoting.
Echelon bareiss(const RationalMatrix& m) {
    Echelon e;
    e.rows = integer_rows(m);
    auto& a = e.rows;
    const std::size_t nr = m.rows(), nc = m.cols();
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t p = r;
        while (p < nr && a[p][c] == 0) ++p;
        if (p == nr) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < nr; ++i) {
            for (std::size_t j = c + 1; j < nc; ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

}  // namespace

RankKernel rank_kernel(const RationalMatrix& m) {
    RankKernel out;
    const std::size_t nc = m.cols();
    Echelon e = bareiss(m);
    out.rank = e.pivots.size();
    out.pivot_columns = e.pivots;
    std::vector<bool> is_pivot(nc, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < nc; ++f) {
        if (is_pivot[f]) continue;
        RationalVector x(nc);
        x[f] = 1;
        for (std::size_t i = out.rank; i-- > 0;) {
            std::size_t pc = e.pivots[i];
            Rational s = 0;
            for (std::size_t j = pc + 1; j < nc; ++j)
                if (sgn(x[j]) != 0 && e.rows[i][j] != 0) s += Rational(e.rows[i][j]) * x[j];
            x[pc] = -s / Rational(e.rows[i][pc]);
        }
        out.kernel.push_back(std::move(x));
    }
    return out;
}

std::size_t rank(const RationalMatrix& m) { return bareiss(m).pivots.size(); }

std::vector<std::size_t> pivot_columns(const RationalMatrix& m) { return bareiss(m).pivots; }

RationalMatrix inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::domain_error("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix a(m), inv = RationalMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a(p, c)) == 0) ++p;
        if (p == n) throw std::domain_error("singular matrix");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        Rational piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || sgn(a(i, c)) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                if (sgn(a(c, j)) != 0) a(i, j) -= f * a(c, j);
                if (sgn(inv(c, j)) != 0) inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

Rational determinant(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::domain_error("determinant of non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix a(m);
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a(p, c)) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(a(i, c)) == 0) continue;
            Rational f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

Inertia symmetric_signature(const RationalMatrix& g) {
    if (!g.is_symmetric()) throw std::invalid_argument("signature of non-symmetric matrix");
    RationalMatrix a(g);
    const std::size_t n = a.rows();
    Inertia out;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        // pick an unused index with nonzero diagonal
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && sgn(a(i, i)) != 0) {
                p = i;
                break;
            }
        if (p == n) {
            // all remaining diagonals vanish; look for an off-diagonal entry
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!done[i] && !done[j] && sgn(a(i, j)) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) break;
            // x_i <- x_i + x_j: row/col i += row/col j
            for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
            for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
            p = pi;
        }
        done[p] = true;
        const Rational d = a(p, p);
        if (sgn(d) > 0)
            ++out.positive;
        else
            ++out.negative;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || sgn(a(i, p)) == 0) continue;
            Rational f = a(i, p) / d;
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(a(p, k)) != 0) a(i, k) -= f * a(p, k);
            for (std::size_t k = 0; k < n; ++k) a(k, i) = a(i, k);
        }
    }
    out.zero = n - out.positive - out.negative;
    return out;
}

bool is_positive_definite(const RationalMatrix& g) {
    if (!g.is_symmetric()) return false;
    // Leading principal minors are the Bareiss pivots taken in order without row swaps.
    const std::size_t n = g.rows();
    if (n == 0) return true;
    auto a = integer_rows(g);
    // integer_rows scales rows independently, which breaks symmetry but not minor signs:
    // each minor is multiplied by a positive product of row scales.
    mpz_class prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return true;
}

RationalMatrix column_basis(const RationalMatrix& span) {
    auto piv = pivot_columns(span);
    RationalMatrix out(span.rows(), piv.size());
    for (std::size_t j = 0; j < piv.size(); ++j)
        for (std::size_t r = 0; r < span.rows(); ++r) out(r, j) = span(r, piv[j]);
    return out;
}

std::size_t subspace_dim(const RationalMatrix& span) { return rank(span); }

RationalMatrix subspace_sum(const RationalMatrix& a, const RationalMatrix& b) { return column_basis(hstack(a, b)); }

RationalMatrix subspace_intersection(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix ba = column_basis(a), bb = column_basis(b);
    RationalMatrix stacked = hstack(ba, bb.scaled(-1));
    auto rk = rank_kernel(stacked);
    std::vector<RationalVector> vecs;
    for (const auto& k : rk.kernel) {
        RationalVector x(k.begin(), k.begin() + ba.cols());
        vecs.push_back(ba * x);
    }
    return column_basis(RationalMatrix::from_columns(vecs, a.rows()));
}

bool subspace_contains(const RationalMatrix& outer, const RationalMatrix& inner) {
    return rank(hstack(outer, inner)) == rank(outer);
}

RationalMatrix kernel_basis(const RationalMatrix& m, std::size_t ambient_cols) {
    if (m.rows() == 0) return RationalMatrix::identity(ambient_cols);
    auto rk = rank_kernel(m);
    return RationalMatrix::from_columns(rk.kernel, m.cols());
}

RationalMatrix complement_in(const RationalMatrix& base, const RationalMatrix& ext) {
    RationalMatrix bb = column_basis(base);
    auto piv = pivot_columns(hstack(bb, ext));
    std::vector<RationalVector> cols;
    for (auto p : piv)
        if (p >= bb.cols()) cols.push_back(ext.column(p - bb.cols()));
    return RationalMatrix::from_columns(cols, base.rows());
}

}  // namespace purity
