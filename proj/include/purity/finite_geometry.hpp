#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace purity {

constexpr int kMaxAmbient = 6;  // projective dimension bound for packed subspace storage

// F_q = F_p[x]/(modulus). Elements are encoded as integers 0..q-1 whose base-p digits are
// polynomial coefficients, lowest degree first.
class FieldSpec {
public:
    FieldSpec();  // F_2
    static FieldSpec prime(int p);
    static FieldSpec with_modulus(int p, int e, std::vector<int> modulus);  // modulus: c_0..c_e, monic
    static FieldSpec of_order(int q);  // built-in irreducible modulus for q <= 16

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const { return tables_->add[a * q_ + b]; }
    int sub(int a, int b) const { return tables_->add[a * q_ + tables_->neg[b]]; }
    int neg(int a) const { return tables_->neg[a]; }
    int mul(int a, int b) const { return tables_->mul[a * q_ + b]; }
    int inv(int a) const;

    bool operator==(const FieldSpec& o) const { return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_; }
    std::string describe() const;

private:
    struct Tables {
        std::vector<std::uint8_t> add, mul, neg, inv;
    };
    void build();

    int p_ = 2, e_ = 1, q_ = 2;
    std::vector<int> modulus_;
    std::shared_ptr<const Tables> tables_;
};

bool is_prime(int p);
// Irreducibility over F_p by trial division against all monic polynomials of lower degree.
bool is_irreducible(int p, const std::vector<int>& poly);

// Projective linear subvariety of P^n, stored as the reduced row echelon basis of its
// affine cone. Entries are packed 4 bits each with the first column in the high bits, so
// packed rows compare lexicographically. Needs n <= kMaxAmbient and q <= 16.
class LinearSubvariety {
public:
    LinearSubvariety() = default;

    int ambient() const { return ambient_; }
    int dim() const { return dim_; }  // -1 for the empty subvariety
    int rows() const { return dim_ + 1; }
    int entry(int r, int c) const { return (packed_[r] >> (4 * (kMaxAmbient - c))) & 0xF; }
    std::vector<int> row(int r) const;
    std::vector<std::vector<int>> matrix() const;
    std::vector<int> pivots() const;

    auto operator<=>(const LinearSubvariety&) const = default;
    bool operator==(const LinearSubvariety&) const = default;

    std::string describe() const;

    // Canonical form of the span of the given vectors in F^{n+1}.
    static LinearSubvariety span(const FieldSpec& f, int ambient, const std::vector<std::vector<int>>& vecs);
    static LinearSubvariety whole(const FieldSpec& f, int ambient);

private:
    // Declaration order fixes the comparison: dimension first, then echelon entries.
    std::int8_t dim_ = -1;
    std::int8_t ambient_ = 0;
    std::array<std::uint32_t, kMaxAmbient + 1> packed_{};
};

// Row-reduce in place; returns the rank. Rows may be of any count.
int row_reduce(const FieldSpec& f, std::vector<std::vector<int>>& rows);

std::vector<LinearSubvariety> enumerate_subspaces(int n, const FieldSpec& f, int d);
std::vector<LinearSubvariety> enumerate_all_proper(int n, const FieldSpec& f);  // dims 0..n-1

// True when W is contained in V.
bool contains(const FieldSpec& f, const LinearSubvariety& v, const LinearSubvariety& w);
LinearSubvariety meet(const FieldSpec& f, const LinearSubvariety& a, const LinearSubvariety& b);
LinearSubvariety join(const FieldSpec& f, const LinearSubvariety& a, const LinearSubvariety& b);

// W inside V, expressed in the coordinates of V given by its echelon basis (V = P^{dim V}).
LinearSubvariety coordinates_in(const FieldSpec& f, const LinearSubvariety& v, const LinearSubvariety& w);
// Inverse of coordinates_in.
LinearSubvariety embed_from(const FieldSpec& f, const LinearSubvariety& v, const LinearSubvariety& local);

// Image of W (containing V) in P^{n - dim V - 1} = P(F^{n+1} / V).
LinearSubvariety quotient_image(const FieldSpec& f, const LinearSubvariety& v, const LinearSubvariety& w);
// All W strictly containing V paired with their images in the quotient space.
std::vector<std::pair<LinearSubvariety, LinearSubvariety>> quotient_geometry(const FieldSpec& f,
                                                                             const LinearSubvariety& v);

// Image under an invertible (n+1)x(n+1) matrix acting on column vectors.
LinearSubvariety apply_linear(const FieldSpec& f, const std::vector<std::vector<int>>& g, const LinearSubvariety& v);

std::uint64_t point_count(int k, int q);                 // |P^k(F_q)|, 0 for k < 0
std::uint64_t gaussian_binomial(int n, int k, int q);    // number of k-dim subspaces of F_q^n

}  // namespace purity
