#include "triqal/frobenius.hpp"

#include <algorithm>
#include <cmath>

namespace triqal {

namespace {

using Matrix = std::vector<std::vector<Scalar>>;

Matrix to_matrix(const DenseTensor& t) {
    const int n = t.dim();
    Matrix m(n, std::vector<Scalar>(n));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) m[r][c] = t.at({r, c});
    }
    return m;
}

// Gauss-Jordan with partial pivoting. Returns false if a pivot vanishes
// relative to the largest entry of the input.
bool invert(Matrix a, Matrix& inv, Scalar& det) {
    const std::size_t n = a.size();
    double scale = 0.0;
    for (const auto& row : a) {
        for (const auto& x : row) scale = std::max(scale, std::abs(x));
    }
    inv.assign(n, std::vector<Scalar>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) inv[k][k] = 1.0;
    det = 1.0;
    if (scale == 0.0) {
        det = 0.0;
        return false;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (std::abs(a[piv][col]) <= 1e-13 * scale) {
            det = 0.0;
            return false;
        }
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(inv[piv], inv[col]);
            det = -det;
        }
        const Scalar p = a[col][col];
        det *= p;
        for (std::size_t c = 0; c < n; ++c) {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Scalar f = a[r][col];
            if (f == Scalar(0.0)) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return true;
}

// Moves the last leg of t to position `leg`.
DenseTensor last_leg_to(const DenseTensor& t, std::size_t leg) {
    std::vector<std::size_t> perm;
    const std::size_t last = t.rank() - 1;
    for (std::size_t pos = 0; pos < t.rank(); ++pos) {
        perm.push_back(pos < leg ? pos : pos == leg ? last : pos - 1);
    }
    return permute_legs(t, perm);
}

}  // namespace

Scalar determinant(const DenseTensor& matrix) {
    if (matrix.rank() != 2) throw TensorError("determinant needs a rank-2 tensor");
    Matrix inv;
    Scalar det;
    invert(to_matrix(matrix), inv, det);
    return det;
}

BilinearForm::BilinearForm(DenseTensor h)
    : h_(std::move(h)), h_inv_(h_.dim(), {Leg::upper, Leg::upper}), det_(0.0) {
    if (signature(h_) != "ll") throw TensorError("bilinear form must have signature ll");
    Matrix inv;
    if (!invert(to_matrix(h_), inv, det_)) throw SingularFormError("h is singular");
    const int n = h_.dim();
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) h_inv_.at({r, c}) = inv[r][c];
    }
    const DenseTensor product = contract(h_, h_inv_, {{1, 0}});
    if (max_abs_diff(product, DenseTensor::identity(n)) > 1e-9) {
        throw SingularFormError("h is singular (inverse fails h·h⁻¹ = 1 at 1e-9)");
    }
}

BilinearForm BilinearForm::identity(int n) {
    DenseTensor h(n, {Leg::lower, Leg::lower});
    for (int i = 0; i < n; ++i) h.at({i, i}) = 1.0;
    return BilinearForm(std::move(h));
}

BilinearForm BilinearForm::from_rows(const std::vector<std::vector<Scalar>>& rows) {
    const int n = static_cast<int>(rows.size());
    DenseTensor h(n, {Leg::lower, Leg::lower});
    for (int r = 0; r < n; ++r) {
        if (static_cast<int>(rows[r].size()) != n) throw TensorError("h must be square");
        for (int c = 0; c < n; ++c) h.at({r, c}) = rows[r][c];
    }
    return BilinearForm(std::move(h));
}

DenseTensor raise_leg(const DenseTensor& t, std::size_t leg, const BilinearForm& form) {
    if (leg >= t.rank() || t.leg(leg) != Leg::lower) throw TensorError("raise_leg: not a lower leg");
    return last_leg_to(contract(t, form.inverse(), {{leg, 0}}), leg);
}

DenseTensor lower_leg(const DenseTensor& t, std::size_t leg, const BilinearForm& form) {
    if (leg >= t.rank() || t.leg(leg) != Leg::upper) throw TensorError("lower_leg: not an upper leg");
    return last_leg_to(contract(t, form.h(), {{leg, 0}}), leg);
}

double form_condition_residual(const BilinearForm& form, const BasisPermutation& p) {
    const DenseTensor& h = form.h();
    if (h.dim() != p.dim()) throw TensorError("form condition: dimension mismatch");
    double worst = 0.0;
    for (int j = 0; j < h.dim(); ++j) {
        for (int k = 0; k < h.dim(); ++k) {
            worst = std::max(worst, std::abs(h.at({j, k}) - h.at({p.apply(k, 1), p.apply(j, 2)})));
        }
    }
    return worst;
}

DenseTensor symmetrize_form(const DenseTensor& h, const BasisPermutation& p) {
    if (signature(h) != "ll") throw TensorError("symmetrize_form needs an ll tensor");
    DenseTensor image(h.dim(), {Leg::lower, Leg::lower});
    for (int j = 0; j < h.dim(); ++j) {
        for (int k = 0; k < h.dim(); ++k) image.at({j, k}) = h.at({p.apply(k, 1), p.apply(j, 2)});
    }
    return 0.5 * (h + image);
}

DenseTensor derive_m(const DenseTensor& qbar, const BilinearForm& form) {
    if (signature(qbar) != "lluu") throw TensorError("derive_m needs Qbar with signature lluu");
    // lower t in Q_{ij}^{st}: legs (i, j, s, k) -> (i, j, k | s)
    return permute_legs(lower_leg(qbar, 3, form), {0, 1, 3, 2});
}

double compatibility_residual(const ThreeAlgebra& alg, const BilinearForm& form) {
    if (!alg.Qm) throw MissingMError("compatibility needs Qm");
    return max_abs_diff(*alg.Qm, derive_m(alg.Qbar, form));
}

ResidualReport frobenius_report(const FrobeniusAlgebra& fa, double tolerance) {
    ResidualReport r;
    r.tolerance = tolerance;
    r.add("form", form_condition_residual(fa.h, fa.base.P));
    if (fa.base.Qm) r.add("compat", compatibility_residual(fa.base, fa.h));
    r.add("i* (= iv)", axiom_residual(fa.base, AxiomId::iv));
    r.add("ii* (= vii)", axiom_residual(fa.base, AxiomId::vii));
    return r;
}

namespace {

FullThreeAlgebra full_from(const DenseTensor& m22, const BilinearForm& h) {
    DenseTensor m31 = derive_m(m22, h);
    // Q_i^{stu} = Q_{ij}^{st} h^{ju}: (i, u, s, t) -> (i | s, t, u)
    DenseTensor m13 = permute_legs(raise_leg(m22, 1, h), {0, 2, 3, 1});
    // Q^{ijkl} = Q_s^{ijk} h^{sl}: (l, i, j, k) -> (i, j, k, l)
    DenseTensor m04 = permute_legs(raise_leg(m13, 0, h), {1, 2, 3, 0});
    // Q_{ijkl} = Q_{ijk}^t h_{tl}
    DenseTensor m40 = lower_leg(m31, 3, h);
    return {m22, std::move(m31), std::move(m13), std::move(m04), std::move(m40)};
}

}  // namespace

FullThreeAlgebra build_full(const FrobeniusAlgebra& fa) {
    if (fa.h.dim() != fa.base.dim()) throw TensorError("build_full: h dimension mismatch");
    return full_from(fa.base.Qbar, fa.h);
}

double roundtrip_residual(const DenseTensor& t, const BilinearForm& form) {
    double worst = 0.0;
    for (std::size_t leg = 0; leg < t.rank(); ++leg) {
        const DenseTensor back = t.leg(leg) == Leg::lower
                                     ? lower_leg(raise_leg(t, leg, form), leg, form)
                                     : raise_leg(lower_leg(t, leg, form), leg, form);
        worst = std::max(worst, max_abs_diff(t, back));
    }
    return worst;
}

ResidualReport full_consistency_report(const FullThreeAlgebra& full, const BilinearForm& form,
                                       double tolerance) {
    ResidualReport r;
    r.tolerance = tolerance;
    const FullThreeAlgebra regen = full_from(full.m22, form);
    r.add("m31 regenerated", max_abs_diff(full.m31, regen.m31));
    r.add("m13 regenerated", max_abs_diff(full.m13, regen.m13));
    r.add("m04 regenerated", max_abs_diff(full.m04, regen.m04));
    r.add("m40 regenerated", max_abs_diff(full.m40, regen.m40));
    r.add("m13 -> m22", max_abs_diff(full.m22, permute_legs(lower_leg(full.m13, 3, form), {0, 3, 1, 2})));
    r.add("m04 -> m13", max_abs_diff(full.m13, permute_legs(lower_leg(full.m04, 3, form), {3, 0, 1, 2})));
    r.add("m40 -> m31", max_abs_diff(full.m31, raise_leg(full.m40, 3, form)));
    r.add("m31 -> m22", max_abs_diff(full.m22, permute_legs(raise_leg(full.m31, 2, form), {0, 1, 3, 2})));
    r.add("roundtrip m22", roundtrip_residual(full.m22, form));
    r.add("roundtrip m31", roundtrip_residual(full.m31, form));
    r.add("roundtrip m13", roundtrip_residual(full.m13, form));
    r.add("roundtrip m04", roundtrip_residual(full.m04, form));
    r.add("roundtrip m40", roundtrip_residual(full.m40, form));
    return r;
}

PropositionStep proposition_step_residual(const DenseTensor& qbar, const BilinearForm& form,
                                          const BasisPermutation& p) {
    PropositionStep out;
    out.vii_precondition = max_abs_diff(qbar, vii_transform(qbar, p));
    out.form_precondition = form_condition_residual(form, p);

    // lhs(j', k, l, t) = Σ_{k'} h_{j'k'} Q_{kl}^{k't}
    const DenseTensor lhs = contract(form.h(), qbar, {{1, 2}});
    const DenseTensor qm = derive_m(qbar, form);
    double worst = 0.0;
    MultiIndex mi(qbar.dim(), 4);
    do {
        const int jp = mi[0], k = mi[1], l = mi[2], t = mi[3];
        // Q_{P²(l)P(k)P²(j')}^{P²(t)} = Σ_s Q_{P²(l)P(k)}^{P²(t)s} h_{s,P²(j')}
        const Scalar rhs = qm.at({p.apply(l, 2), p.apply(k, 1), p.apply(jp, 2), p.apply(t, 2)});
        worst = std::max(worst, std::abs(lhs.at({jp, k, l, t}) - rhs));
    } while (mi.next());
    out.residual = worst;
    return out;
}

EquivalenceTensors equivalence_tensors(const DenseTensor& qbar, const BilinearForm& form,
                                       const BasisPermutation& p) {
    if (!p.is_identity()) {
        throw UnsupportedError("equivalence suite supports only P = id");
    }
    if (signature(qbar) != "lluu") throw TensorError("equivalence suite needs Qbar (lluu)");
    const DenseTensor& Q = qbar;
    const DenseTensor qm = derive_m(qbar, form);
    const DenseTensor& M = qm;
    const DenseTensor& hinv = form.inverse();

    // (i) at P = id:  Q_{t l' s}^r Q_{j k i}^{l'} = Q_{j' l i}^r Q_{k' j s}^{j'} Q_{k t}^{k' l},
    // then raise i -> q and s -> u.
    const DenseTensor lhs_i =
        einsum({{M, "t l' s r"}, {M, "j k i l'"}}, "t s j k i r") -
        einsum({{M, "j' l i r"}, {M, "k' j s j'"}, {Q, "k t k' l"}}, "t s j k i r");
    DenseTensor axiom_i = einsum({{lhs_i, "t s j k i r"}, {hinv, "i q"}, {hinv, "s u"}}, "t j k r u q");

    // (ii) at P = id:  Q_{ij}^{tj'} Q_{kj'l}^s = Q_{k's'}^{ts} Q_{ik}^{i'k'} Q_{i'jl}^{s'}, raise l -> q.
    const DenseTensor lhs_ii =
        einsum({{Q, "i j t j'"}, {M, "k j' l s"}}, "i j k l t s") -
        einsum({{Q, "k' s' t s"}, {Q, "i k i' k'"}, {M, "i' j l s'"}}, "i j k l t s");
    DenseTensor axiom_ii = einsum({{lhs_ii, "i j k l t s"}, {hinv, "l q"}}, "i j k t s q");

    // (iii) at P = id:  Q_{s'l}^{qr} Q_{ijk}^{s'} = Q_{t'l'k}^r Q_{ij'}^{qt'} Q_{jl}^{j'l'}, raise k -> t.
    const DenseTensor lhs_iii =
        einsum({{Q, "s' l q r"}, {M, "i j k s'"}}, "i j k l q r") -
        einsum({{M, "t' l' k r"}, {Q, "i j' q t'"}, {Q, "j l j' l'"}}, "i j k l q r");
    DenseTensor axiom_iii = einsum({{lhs_iii, "i j k l q r"}, {hinv, "k t"}}, "i j l q r t");

    // (iv) at P = id:  Q_{ik'}^{st} Q_{jk}^{rk'} = Q_{i'q'}^{rs} Q_{j'k}^{q't} Q_{ij}^{i'j'}
    DenseTensor axiom_iv =
        einsum({{Q, "i k' s t"}, {Q, "j k r k'"}}, "i j k s t r") -
        einsum({{Q, "i' q' r s"}, {Q, "j' k q' t"}, {Q, "i j i' j'"}}, "i j k s t r");

    // pentagon:  Q_{rl'}^{ts} Q_{ji}^{l'k} = Q_{j't'}^{sk} Q_{i'i}^{tt'} Q_{jr}^{j'i'}
    DenseTensor pentagon =
        einsum({{Q, "r l' t s"}, {Q, "j i l' k"}}, "r j i t s k") -
        einsum({{Q, "j' t' s k"}, {Q, "i' i t t'"}, {Q, "j r j' i'"}}, "r j i t s k");

    return {std::move(axiom_i), std::move(axiom_ii), std::move(axiom_iii), std::move(axiom_iv), std::move(pentagon)};
}

ResidualReport equivalence_suite(const DenseTensor& qbar, const BilinearForm& form,
                                 const BasisPermutation& p, double tolerance) {
    const EquivalenceTensors e = equivalence_tensors(qbar, form, p);
    ResidualReport r;
    r.tolerance = tolerance;
    r.add("coord i", max_abs(e.axiom_i));
    r.add("coord ii", max_abs(e.axiom_ii));
    r.add("coord iii", max_abs(e.axiom_iii));
    r.add("coord iv", max_abs(e.axiom_iv));
    r.add("coord pentagon", max_abs(e.pentagon));
    r.add("renaming iv <-> pentagon",
          max_abs_diff(e.axiom_iv, permute_legs(e.pentagon, std::span<const std::size_t>(kRenamePentagonToIv))),
          "entrywise distance between residual tensors under i->r, j->i, k->j, s->t, t->s, r->k");
    return r;
}

}  // namespace triqal
