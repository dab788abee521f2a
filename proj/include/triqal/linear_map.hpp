#pragma once

#include "triqal/tensor.hpp"

#include <initializer_list>
#include <vector>

namespace triqal {

/**
 * A linear map A^{⊗in} -> A^{⊗out} stored as a tensor whose legs are the
 * `in` input slots (lower) followed by the `out` output slots (upper).
 *
 * Slots are numbered 1..k from the left, as in the operator strings of the
 * axioms, so `swap(n, 3, 1, 2)` is σ_{12} on A^{⊗3}.
 */
class LinearMap {
  public:
    LinearMap(DenseTensor t, std::size_t in, std::size_t out);

    static LinearMap identity(int n, std::size_t slots);
    static LinearMap swap(int n, std::size_t slots, std::size_t i, std::size_t j);
    /// P^power on a single slot; P^{-1} is P^2.
    static LinearMap basis_perm(const BasisPermutation& p, int power);

    std::size_t in() const { return in_; }
    std::size_t out() const { return out_; }
    int dim() const { return t_.dim(); }
    const DenseTensor& tensor() const { return t_; }

  private:
    DenseTensor t_;
    std::size_t in_;
    std::size_t out_;
};

/// f ∘ g
LinearMap compose(const LinearMap& f, const LinearMap& g);
/// Right-to-left product: chain({f, g, h}) = f ∘ g ∘ h.
LinearMap chain(std::initializer_list<LinearMap> maps);

/// f ⊗ g
LinearMap kron(const LinearMap& f, const LinearMap& g);
LinearMap kron(std::initializer_list<LinearMap> maps);

/// A square map acting on the listed slots (1-based) of A^{⊗total}, e.g. (m̄)_{13}.
LinearMap on_slots(const LinearMap& local, std::vector<std::size_t> slots, std::size_t total);

}  // namespace triqal
