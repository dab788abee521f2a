#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace triqal {

using Scalar = std::complex<double>;

/// Thrown for shape, tag and index violations anywhere in the library.
class TensorError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Lower legs are inputs (subscripts), upper legs are outputs (superscripts).
enum class Leg { lower, upper };

inline constexpr int kMaxDim = 8;
inline constexpr std::size_t kMaxRank = 12;
inline constexpr std::size_t kMaxEntries = std::size_t{1} << 24;

/**
 * Dense complex tensor with every leg of dimension n.
 *
 * Storage is row-major over the leg order: leg 0 is the slowest index.
 * A rank-0 tensor holds a single scalar.
 */
class DenseTensor {
  public:
    DenseTensor(int n, std::vector<Leg> legs);
    DenseTensor(int n, std::vector<Leg> legs, std::vector<Scalar> data);

    static DenseTensor scalar(Scalar value);
    /// delta with legs (lower, upper).
    static DenseTensor identity(int n);

    int dim() const { return n_; }
    std::size_t rank() const { return legs_.size(); }
    std::size_t size() const { return data_.size(); }
    std::span<const Leg> legs() const { return legs_; }
    Leg leg(std::size_t k) const { return legs_.at(k); }

    std::span<const Scalar> data() const { return data_; }
    std::span<Scalar> data() { return data_; }

    std::size_t offset(std::span<const int> index) const;

    Scalar& operator()(std::span<const int> index) { return data_[offset(index)]; }
    const Scalar& operator()(std::span<const int> index) const { return data_[offset(index)]; }
    Scalar& at(std::initializer_list<int> index) { return (*this)({index.begin(), index.size()}); }
    const Scalar& at(std::initializer_list<int> index) const {
        return (*this)({index.begin(), index.size()});
    }

    /// Value of a rank-0 tensor.
    Scalar value() const;

    bool same_signature(const DenseTensor& other) const {
        return n_ == other.n_ && legs_ == other.legs_;
    }

    DenseTensor& operator+=(const DenseTensor& other);
    DenseTensor& operator-=(const DenseTensor& other);
    DenseTensor& operator*=(Scalar factor);

  private:
    int n_;
    std::vector<Leg> legs_;
    std::vector<Scalar> data_;
};

DenseTensor operator+(DenseTensor a, const DenseTensor& b);
DenseTensor operator-(DenseTensor a, const DenseTensor& b);
DenseTensor operator*(Scalar factor, DenseTensor t);

/// Signature as a string of 'l'/'u', e.g. "lluu" for the m̄ tensor.
std::string signature(const DenseTensor& t);
std::vector<Leg> parse_signature(std::string_view sig);

/// A permutation of {0..n-1} with P^3 = id, acting on basis vectors e_i -> e_{P(i)}.
class BasisPermutation {
  public:
    explicit BasisPermutation(std::vector<int> map);

    static BasisPermutation identity(int n);

    int dim() const { return static_cast<int>(map_.size()); }
    std::span<const int> map() const { return map_; }
    bool is_identity() const;

    /// P^power(i); any integer power, reduced mod 3.
    int apply(int i, int power = 1) const;

    friend bool operator==(const BasisPermutation&, const BasisPermutation&) = default;

  private:
    std::vector<int> map_;
};

struct LegPair {
    std::size_t a;
    std::size_t b;
};

/**
 * Sum over paired legs of a and b. The result carries the unpaired legs of a
 * (in order) followed by the unpaired legs of b. Each pair must join a lower
 * and an upper leg. Summation runs in ascending multi-index order.
 */
DenseTensor contract(const DenseTensor& a, const DenseTensor& b, std::span<const LegPair> pairs);
DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     std::initializer_list<LegPair> pairs);

/// Outer product: legs of a followed by legs of b.
DenseTensor outer(const DenseTensor& a, const DenseTensor& b);

/// Contract two legs of the same tensor (one lower, one upper).
DenseTensor trace(const DenseTensor& t, std::size_t leg_a, std::size_t leg_b);

/// Result leg k is input leg perm[k]; tags travel with their legs.
DenseTensor permute_legs(const DenseTensor& t, std::span<const std::size_t> perm);
DenseTensor permute_legs(const DenseTensor& t, std::initializer_list<std::size_t> perm);

/**
 * Act with P^power on one leg. On a lower leg this precomposes the map
 * (new[i] = old[P^power(i)]); on an upper leg it postcomposes
 * (new[s] = old[P^-power(s)]), matching operator composition.
 */
DenseTensor apply_basis_perm(const DenseTensor& t, const BasisPermutation& p, std::size_t leg,
                             int power);

double max_abs_diff(const DenseTensor& a, const DenseTensor& b);
double max_abs(const DenseTensor& t);

/// A tensor operand with one index label per leg, for `einsum`.
struct Labeled {
    const DenseTensor& tensor;
    std::string_view labels;  // whitespace separated, e.g. "r l' t s"
};

/**
 * Index-notation contraction. Every label appears at most twice; repeated
 * labels are summed (one occurrence must be lower, the other upper), and the
 * free labels are returned in the order given by `out`. Operands are folded
 * left to right through `contract` and `trace`.
 */
DenseTensor einsum(std::initializer_list<Labeled> operands, std::string_view out);

/// Odometer over all multi-indices of a given rank, last index fastest.
class MultiIndex {
  public:
    MultiIndex(int n, std::size_t rank) : n_(n), idx_(rank, 0) {}
    std::span<const int> get() const { return idx_; }
    int operator[](std::size_t k) const { return idx_[k]; }
    /// Returns false after wrapping past the last multi-index.
    bool next();

  private:
    int n_;
    std::vector<int> idx_;
};

}  // namespace triqal
