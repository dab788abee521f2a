#pragma once

// Shared fixtures for the unit and acceptance tests: random instances, the
// family parameter grid, and an independent brute-force lens evaluator.

#include "triqal/families.hpp"
#include "triqal/frobenius.hpp"
#include "triqal/lawrence.hpp"
#include "triqal/lens.hpp"
#include "triqal/linear_map.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace triqal::testing {

using Rng = std::mt19937_64;

/// Entries uniform on the square [-1,1) + [-1,1) i.
inline DenseTensor random_tensor(int n, std::string_view sig, Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseTensor t(n, parse_signature(sig));
    for (auto& z : t.data()) z = {u(rng), u(rng)};
    return t;
}

inline BasisPermutation three_cycle(int n) {
    std::vector<int> map(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) map[i] = i;
    map[0] = 1;
    map[1] = 2;
    map[2] = 0;
    return BasisPermutation(map);
}

/// Random h satisfying the form condition for P, redrawn while |det| < 0.1.
inline BilinearForm random_form(const BasisPermutation& p, Rng& rng) {
    for (;;) {
        const DenseTensor h = symmetrize_form(random_tensor(p.dim(), "ll", rng), p);
        if (std::abs(determinant(h)) >= 0.1) return BilinearForm(h);
    }
}

/// Random Qbar with Q_{ij}^{st} = Q_{ji}^{ts} (the P = id form of (vii)).
inline DenseTensor random_symmetric_qbar(int n, Rng& rng) {
    return symmetrize(random_tensor(n, "lluu", rng), BasisPermutation::identity(n), AxiomId::vii);
}

inline std::vector<FamilyParams> family_grid(const std::vector<Scalar>& ds) {
    const std::vector<Scalar> alphas = {1.0, 4.0, -2.0, Scalar(0.0, 1.0)};
    std::vector<FamilyParams> grid;
    for (Scalar d : ds) {
        for (Scalar alpha : alphas) {
            for (int sign : {1, -1}) {
                for (int branch : {1, 2}) grid.push_back({d, alpha, sign, branch});
            }
        }
    }
    return grid;
}

/// The grid used by the acceptance criteria.
inline std::vector<FamilyParams> acceptance_grid() {
    return family_grid({0.25, 0.5, -0.5, Scalar(1.0, 1.0)});
}

/// The wider grid of the family invariants (adds d = -1/4).
inline std::vector<FamilyParams> property_grid() {
    return family_grid({0.25, -0.25, 0.5, -0.5, Scalar(1.0, 1.0)});
}

/**
 * Sum over every index assignment of every bond: a direct bond carries one
 * index shared by both faces; a mediated bond carries one index per face and
 * the weight h_{xy} (two outputs) or h^{xy} (two inputs), x on the first face.
 */
inline Scalar brute_force_evaluate(const ContractionNetwork& net, const DenseTensor& qbar,
                                   const BilinearForm& form) {
    const int n = qbar.dim();
    // Variable slots: bond b uses var[first_var[b]] and, if mediated, the next one.
    std::vector<int> first_var(net.bonds.size());
    int vars = 0;
    for (const Bond& b : net.bonds) {
        first_var[b.id] = vars;
        vars += b.mediator == Mediator::direct ? 1 : 2;
    }
    std::vector<int> value(static_cast<std::size_t>(vars), 0);
    const auto face_var = [&](std::size_t tetra, std::size_t slot) {
        const Bond& b = net.bonds[net.tetra[tetra].faces[slot].bond];
        const bool second = b.mediator != Mediator::direct && b.second.tetra == tetra && b.second.slot == slot;
        return value[first_var[b.id] + (second ? 1 : 0)];
    };

    // Extended precision so the oracle is the more accurate side of any comparison.
    using Wide = std::complex<long double>;
    const auto wide = [](Scalar z) { return Wide(z.real(), z.imag()); };
    Wide total = 0.0L;
    for (;;) {
        Wide term = 1.0L;
        for (std::size_t t = 0; t < net.tetra.size() && term != Wide(0.0L); ++t) {
            term *= wide(qbar.at({face_var(t, 0), face_var(t, 1), face_var(t, 2), face_var(t, 3)}));
        }
        for (const Bond& b : net.bonds) {
            if (b.mediator == Mediator::direct) continue;
            const DenseTensor& w = b.mediator == Mediator::h ? form.h() : form.inverse();
            term *= wide(w.at({value[first_var[b.id]], value[first_var[b.id] + 1]}));
        }
        total += term;
        int k = vars - 1;
        while (k >= 0 && ++value[k] == n) value[k--] = 0;
        if (k < 0) break;
    }
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

/// Same entries, new leg tags.
inline DenseTensor retag(const DenseTensor& t, std::string_view sig) {
    return DenseTensor(t.dim(), parse_signature(sig), {t.data().begin(), t.data().end()});
}

/// (G ⊗ G) m̄ (G⁻¹ ⊗ G⁻¹) for an invertible n×n matrix G (legs "lu").
inline DenseTensor conjugate(const DenseTensor& qbar, const DenseTensor& g_matrix) {
    const BilinearForm inv(retag(g_matrix, "ll"));  // only its matrix inverse is used
    const LinearMap g(retag(g_matrix, "lu"), 1, 1);
    const LinearMap g_inv(retag(inv.inverse(), "lu"), 1, 1);
    const LinearMap m(qbar, 2, 2);
    return chain({kron(g, g), m, kron(g_inv, g_inv)}).tensor();
}

/// Random GL(n) matrix (legs "lu") with |det| >= 0.1.
inline DenseTensor random_gl(int n, Rng& rng) {
    for (;;) {
        DenseTensor g = random_tensor(n, "lu", rng);
        if (std::abs(determinant(retag(g, "ll"))) >= 0.1) return g;
    }
}

}  // namespace triqal::testing
