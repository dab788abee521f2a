#pragma once

#include "triqal/tensor.hpp"

#include <array>

namespace triqal {

/// The six free structure constants of an n = 2 m̄ with B = identity.
struct SixVars {
    Scalar a{}, b{}, c{}, d{}, f{}, y{};
};

/**
 * Member of the two parametric solution families of the n = 2 pentagon
 * system. `sign` is ±1 and picks the upper or lower sign of ±/∓; the square
 * root is always the principal one.
 */
struct FamilyParams {
    Scalar d;
    Scalar alpha;
    int sign = 1;
    int branch = 1;
};

/// a = b = d = f = y = 0, c = 1: embeds to the identity m̄.
SixVars trivial_solution();

/// Throws TensorError for d = 0, alpha = 0, sign ∉ {±1} or branch ∉ {1, 2}.
SixVars family(const FamilyParams& params);

/**
 * The 16 entries of Q_{ij}^{st} (0-based, legs i, j | s, t):
 *   Q00^01 = Q00^10 = a      Q01^00 = Q10^00 = b
 *   Q01^01 = Q10^10 = c      Q01^10 = Q10^01 = d
 *   Q00^11 = f               Q11^00 = y
 *   Q01^11 = Q10^11 = -a     Q11^10 = Q11^01 = -b
 *   Q00^00 = Q11^11 = 1 - d
 */
DenseTensor embed(const SixVars& v);

/// Inverse of embed; throws TensorError if any entry departs from the pattern by more than tol.
SixVars extract(const DenseTensor& qbar, double tol = 1e-9);

/**
 * |expression| for the twelve polynomials of the n = 2 pentagon system, in
 * the order a(c-d), b(c-d), (c-1)(c-d), d(c-d), f(c-d), y(c-d), ad-bf,
 * ay-bc, d²-fy, 2ab+2d²-d, 2a²+2df-f, 2b²+2dy-y. A stray h in the sixth and
 * twelfth entries of the source system is read as y.
 */
std::array<double, 12> system23_residuals(const SixVars& v);

/// |4ab + 2cd + (1-d)² + fy - 1|
double eq22_residual(const SixVars& v);

}  // namespace triqal
