#include "triqal/pentagon.hpp"

#include "triqal/linear_map.hpp"

namespace triqal {

namespace {

void require_mbar(const DenseTensor& qbar, const char* what) {
    if (signature(qbar) != "lluu") {
        throw TensorError(std::string(what) + ": expected an m̄ tensor (lluu), got " + signature(qbar));
    }
}

}  // namespace

// Index dictionary. Slots 1, 2, 3 of A^{⊗3} carry the inputs (a, b, c) and
// outputs (u, v, y) of the operator form. The coordinate form matches it with
//   r = a, j = b, i = c, t = u, s = v, k = y,
// which is forced by its left-hand side; the right-hand factor Q_{jr}^{j'i'}
// is the operator's Q_{rj}^{i'j'} read through σ12 on both sides.
DenseTensor pentagon_operator_tensor(const DenseTensor& qbar) {
    require_mbar(qbar, "pentagon");
    const int n = qbar.dim();
    const LinearMap I = LinearMap::identity(n, 1);
    const LinearMap mbar(qbar, 2, 2);
    const LinearMap lhs = chain({kron(mbar, I), kron(I, mbar)});
    const LinearMap rhs = chain({kron(I, mbar), on_slots(mbar, {1, 3}, 3), kron(mbar, I)});
    return lhs.tensor() - rhs.tensor();
}

DenseTensor pentagon_coordinate_tensor(const DenseTensor& qbar) {
    require_mbar(qbar, "pentagon");
    const DenseTensor& Q = qbar;
    return einsum({{Q, "r l' t s"}, {Q, "j i l' k"}}, "r j i t s k") -
           einsum({{Q, "j' t' s k"}, {Q, "i' i t t'"}, {Q, "j r j' i'"}}, "r j i t s k");
}

double pentagon_residual(const DenseTensor& qbar) { return max_abs(pentagon_operator_tensor(qbar)); }

double pentagon_coordinate_residual(const DenseTensor& qbar) {
    return max_abs(pentagon_coordinate_tensor(qbar));
}

double pachner14_residual(const DenseTensor& qbar) {
    require_mbar(qbar, "1-4 move");
    const DenseTensor& Q = qbar;
    // Primed labels are the summed indices j', k', l', r', s', p'.
    const DenseTensor rhs = einsum(
        {{Q, "i j' k' l'"}, {Q, "j r' s' j'"}, {Q, "k' s' k p'"}, {Q, "l' p' l r'"}}, "i j k l");
    return max_abs_diff(Q, rhs);
}

double cubic_residual(const DenseTensor& qbar) {
    require_mbar(qbar, "cubic");
    const DenseTensor& Q = qbar;
    const DenseTensor rhs =
        einsum({{Q, "r' z' l' p'"}, {Q, "j i z' k"}, {Q, "l' p' l r'"}}, "i j k l");
    return max_abs_diff(Q, rhs);
}

ProjectorMatrix projector_matrix(const DenseTensor& qbar) {
    require_mbar(qbar, "projector");
    return {einsum({{qbar, "i' j k i'"}}, "j k")};
}

double projector_residual(const ProjectorMatrix& pm) {
    if (signature(pm.B) != "lu") throw TensorError("projector matrix must have signature lu");
    return max_abs_diff(contract(pm.B, pm.B, {{1, 0}}), pm.B);
}

}  // namespace triqal
