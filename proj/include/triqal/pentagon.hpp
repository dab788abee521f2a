#pragma once

#include "triqal/tensor.hpp"

namespace triqal {

// Identities of the P = id calculus. Every function takes the m̄ tensor
// Q_{ij}^{st} with legs (i, j | s, t) and returns a max-abs residual over all
// free indices.

/// (m̄)_{12}(m̄)_{23} - (m̄)_{23}(m̄)_{13}(m̄)_{12} as a map on A^{⊗3}, legs (a, b, c | u, v, y).
DenseTensor pentagon_operator_tensor(const DenseTensor& qbar);
/// Q_{rl'}^{ts}Q_{ji}^{l'k} - Q_{j't'}^{sk}Q_{i'i}^{tt'}Q_{jr}^{j'i'}, legs (r, j, i | t, s, k).
DenseTensor pentagon_coordinate_tensor(const DenseTensor& qbar);

/// Operator form. Equal to the coordinate form whenever Q_{ij}^{st} = Q_{ji}^{ts}.
double pentagon_residual(const DenseTensor& qbar);
double pentagon_coordinate_residual(const DenseTensor& qbar);

/// 1-4 move: Q_{ij}^{kl} = Q_{ij'}^{k'l'} Q_{jr'}^{s'j'} Q_{k's'}^{kp'} Q_{l'p'}^{lr'}
double pachner14_residual(const DenseTensor& qbar);

/// Cubic form of the 1-4 move: Q_{ij}^{kl} = Q_{r'z'}^{l'p'} Q_{ji}^{z'k} Q_{l'p'}^{lr'}
double cubic_residual(const DenseTensor& qbar);

/// B_{jk} = Σ_{i'} Q_{i'j}^{ki'}, stored with legs (j | k).
struct ProjectorMatrix {
    DenseTensor B;
};

ProjectorMatrix projector_matrix(const DenseTensor& qbar);
/// max |B² - B|
double projector_residual(const ProjectorMatrix& pm);

}  // namespace triqal
