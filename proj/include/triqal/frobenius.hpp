#pragma once

#include "triqal/lawrence.hpp"
#include "triqal/tensor.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace triqal {

class SingularFormError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Non-degenerate bilinear form h_{jk} (legs "ll") together with its inverse
 * h^{jk} (legs "uu"), so that Σ_k h_{jk} h^{kl} = δ_j^l.
 */
class BilinearForm {
  public:
    /// Throws SingularFormError when h is singular or the inverse fails h·h⁻¹ = 1 at 1e-9.
    explicit BilinearForm(DenseTensor h);

    static BilinearForm identity(int n);
    static BilinearForm from_rows(const std::vector<std::vector<Scalar>>& rows);

    int dim() const { return h_.dim(); }
    const DenseTensor& h() const { return h_; }
    const DenseTensor& inverse() const { return h_inv_; }
    Scalar determinant() const { return det_; }

  private:
    DenseTensor h_;
    DenseTensor h_inv_;
    Scalar det_;
};

/// Determinant of a rank-2 tensor read as an n×n matrix (partial-pivot LU).
Scalar determinant(const DenseTensor& matrix);

/// Turn lower leg `leg` into an upper leg with h^{..}; the leg keeps its position.
DenseTensor raise_leg(const DenseTensor& t, std::size_t leg, const BilinearForm& form);
/// Turn upper leg `leg` into a lower leg with h_{..}; the leg keeps its position.
DenseTensor lower_leg(const DenseTensor& t, std::size_t leg, const BilinearForm& form);

/// max |h_{jk} - h_{P(k)P²(j)}|
double form_condition_residual(const BilinearForm& form, const BasisPermutation& p);
/// Average of h with its image under (j,k) -> (P(k), P²(j)), an involution.
DenseTensor symmetrize_form(const DenseTensor& h, const BasisPermutation& p);

/// Q_{ijk}^t = Σ_s Q_{ij}^{ts} h_{sk}, legs (i, j, k | t).
DenseTensor derive_m(const DenseTensor& qbar, const BilinearForm& form);

/// max |Q_{ijk}^s - Σ_t Q_{ij}^{st} h_{tk}|
double compatibility_residual(const ThreeAlgebra& alg, const BilinearForm& form);

struct FrobeniusAlgebra {
    ThreeAlgebra base;
    BilinearForm h;
};

/// Residuals of the form condition, compatibility if Qm is stored, and (i*) = (iv), (ii*) = (vii).
ResidualReport frobenius_report(const FrobeniusAlgebra& fa, double tolerance = kDefaultTolerance);

struct FullThreeAlgebra {
    DenseTensor m22;  // Q_{ij}^{st}        (l l u u)
    DenseTensor m31;  // Q_{ijk}^{t}        (l l l u)
    DenseTensor m13;  // Q_i^{stu}          (l u u u), u is the raised j
    DenseTensor m04;  // Q^{ijkl}           (u u u u), l is the raised lower leg of m13
    DenseTensor m40;  // Q_{ijkl}           (l l l l), l is the lowered upper leg of m31
};

FullThreeAlgebra build_full(const FrobeniusAlgebra& fa);

/**
 * Regenerates m31, m13, m04, m40 from m22 and h and compares with the stored
 * tensors, re-lowers m13 to m22 and m04 to m13, and raise/lowers every leg of
 * all five tensors and back. Every entry should be ~1e-15.
 */
ResidualReport full_consistency_report(const FullThreeAlgebra& full, const BilinearForm& form,
                                       double tolerance = 1e-12);

/// Max over legs of |t - lower(raise(t))| (or raise(lower(t)) for upper legs).
double roundtrip_residual(const DenseTensor& t, const BilinearForm& form);

struct PropositionStep {
    double residual = 0.0;        // identity of the proof step
    double vii_precondition = 0.0; // coordinate (vii) residual of Qbar
    double form_precondition = 0.0; // form condition residual of h
    bool preconditions_hold(double tol = kDefaultTolerance) const {
        return vii_precondition <= tol && form_precondition <= tol;
    }
};

/**
 * The swap step in the proof that compatibility implies axiom (v):
 * max over (j', k, l, t) of
 *   |Σ_{k'} h_{j'k'} Q_{kl}^{k't} - Σ_s Q_{P²(l)P(k)}^{P²(t)s} h_{s,P²(j')}|.
 * Violated preconditions are reported in the result rather than thrown.
 */
PropositionStep proposition_step_residual(const DenseTensor& qbar, const BilinearForm& form,
                                          const BasisPermutation& p);

/// LHS - RHS tensors of the raised coordinate identities at P = id.
struct EquivalenceTensors {
    DenseTensor axiom_i;    // legs (t, j, k | r, u, q)
    DenseTensor axiom_ii;   // legs (i, j, k | t, s, q)
    DenseTensor axiom_iii;  // legs (i, j, l | q, r, t)
    DenseTensor axiom_iv;   // legs (i, j, k | s, t, r)
    DenseTensor pentagon;   // legs (r, j, i | t, s, k)
};

class UnsupportedError : public TensorError {
  public:
    using TensorError::TensorError;
};

/// Throws UnsupportedError unless P is the identity.
EquivalenceTensors equivalence_tensors(const DenseTensor& qbar, const BilinearForm& form,
                                       const BasisPermutation& p);

/// Leg order that carries the coordinate pentagon residual onto the axiom (iv) index names.
inline constexpr std::array<std::size_t, 6> kRenamePentagonToIv = {0, 2, 1, 3, 4, 5};

/**
 * Max residual of the raised coordinate forms of axioms (i)-(iv) and of the
 * coordinate pentagon, and the entrywise distance between the (iv) residual
 * tensor and the renamed pentagon residual tensor.
 */
ResidualReport equivalence_suite(const DenseTensor& qbar, const BilinearForm& form,
                                 const BasisPermutation& p, double tolerance = kDefaultTolerance);

}  // namespace triqal
