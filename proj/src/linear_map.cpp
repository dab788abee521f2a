#include "triqal/linear_map.hpp"

#include <algorithm>
#include <numeric>

namespace triqal {

LinearMap::LinearMap(DenseTensor t, std::size_t in, std::size_t out)
    : t_(std::move(t)), in_(in), out_(out) {
    if (t_.rank() != in_ + out_) throw TensorError("LinearMap: rank != in + out");
    for (std::size_t k = 0; k < t_.rank(); ++k) {
        const Leg want = k < in_ ? Leg::lower : Leg::upper;
        if (t_.leg(k) != want) throw TensorError("LinearMap: legs must be inputs then outputs");
    }
}

LinearMap LinearMap::identity(int n, std::size_t slots) {
    std::vector<Leg> legs(slots, Leg::lower);
    legs.insert(legs.end(), slots, Leg::upper);
    DenseTensor t(n, std::move(legs));
    MultiIndex mi(n, slots);
    std::vector<int> idx(2 * slots);
    do {
        std::copy(mi.get().begin(), mi.get().end(), idx.begin());
        std::copy(mi.get().begin(), mi.get().end(), idx.begin() + static_cast<std::ptrdiff_t>(slots));
        t(idx) = 1.0;
    } while (mi.next());
    return LinearMap(std::move(t), slots, slots);
}

LinearMap LinearMap::swap(int n, std::size_t slots, std::size_t i, std::size_t j) {
    if (i < 1 || j < 1 || i > slots || j > slots || i == j) {
        throw TensorError("swap: slots out of range");
    }
    // σ(e_{..a_i..a_j..}) = e_{..a_j..a_i..}: exchange the two output legs of the identity.
    std::vector<std::size_t> perm(2 * slots);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::swap(perm[slots + i - 1], perm[slots + j - 1]);
    return LinearMap(permute_legs(identity(n, slots).tensor(), perm), slots, slots);
}

LinearMap LinearMap::basis_perm(const BasisPermutation& p, int power) {
    const int n = p.dim();
    DenseTensor t(n, {Leg::lower, Leg::upper});
    for (int i = 0; i < n; ++i) t.at({i, p.apply(i, power)}) = 1.0;
    return LinearMap(std::move(t), 1, 1);
}

LinearMap compose(const LinearMap& f, const LinearMap& g) {
    if (g.out() != f.in()) {
        throw TensorError("compose: arity mismatch (" + std::to_string(g.out()) + " outputs into " +
                          std::to_string(f.in()) + " inputs)");
    }
    std::vector<LegPair> pairs;
    for (std::size_t k = 0; k < g.out(); ++k) pairs.push_back({g.in() + k, k});
    return LinearMap(contract(g.tensor(), f.tensor(), pairs), g.in(), f.out());
}

LinearMap chain(std::initializer_list<LinearMap> maps) {
    if (maps.size() == 0) throw TensorError("chain: empty");
    auto it = std::rbegin(maps);
    LinearMap acc = *it;
    for (++it; it != std::rend(maps); ++it) acc = compose(*it, acc);
    return acc;
}

LinearMap kron(const LinearMap& f, const LinearMap& g) {
    // outer gives (f.in, f.out, g.in, g.out); reorder to (f.in, g.in, f.out, g.out).
    const DenseTensor t = outer(f.tensor(), g.tensor());
    const std::size_t fi = f.in(), fo = f.out(), gi = g.in(), go = g.out();
    std::vector<std::size_t> perm;
    for (std::size_t k = 0; k < fi; ++k) perm.push_back(k);
    for (std::size_t k = 0; k < gi; ++k) perm.push_back(fi + fo + k);
    for (std::size_t k = 0; k < fo; ++k) perm.push_back(fi + k);
    for (std::size_t k = 0; k < go; ++k) perm.push_back(fi + fo + gi + k);
    return LinearMap(permute_legs(t, perm), fi + gi, fo + go);
}

LinearMap kron(std::initializer_list<LinearMap> maps) {
    if (maps.size() == 0) throw TensorError("kron: empty");
    auto it = maps.begin();
    LinearMap acc = *it;
    for (++it; it != maps.end(); ++it) acc = kron(acc, *it);
    return acc;
}

LinearMap on_slots(const LinearMap& local, std::vector<std::size_t> slots, std::size_t total) {
    const std::size_t s = slots.size();
    if (local.in() != s || local.out() != s) throw TensorError("on_slots: map must be square on its slots");
    std::vector<bool> taken(total, false);
    for (std::size_t x : slots) {
        if (x < 1 || x > total || taken[x - 1]) throw TensorError("on_slots: bad slot list");
        taken[x - 1] = true;
    }
    const LinearMap padded =
        s == total ? local : kron(local, LinearMap::identity(local.dim(), total - s));
    // padded legs: local.in (s), id.in (total-s), local.out (s), id.out (total-s)
    std::vector<std::size_t> source(total);
    std::size_t rest = s;
    for (std::size_t pos = 0; pos < total; ++pos) {
        auto it = std::find(slots.begin(), slots.end(), pos + 1);
        source[pos] = it != slots.end() ? static_cast<std::size_t>(it - slots.begin()) : rest++;
    }
    std::vector<std::size_t> perm;
    for (std::size_t pos = 0; pos < total; ++pos) perm.push_back(source[pos]);
    for (std::size_t pos = 0; pos < total; ++pos) perm.push_back(total + source[pos]);
    return LinearMap(permute_legs(padded.tensor(), perm), total, total);
}

}  // namespace triqal
