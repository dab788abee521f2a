#pragma once

#include "triqal/tensor.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace triqal {

inline constexpr double kDefaultTolerance = 1e-9;

/// Structural constants of a 3-algebra whose P permutes basis vectors.
struct ThreeAlgebra {
    /// Checks signatures (Qbar "lluu", Qm "lllu") and that every dimension equals P's.
    ThreeAlgebra(BasisPermutation p, DenseTensor qbar, std::optional<DenseTensor> qm = std::nullopt);

    int dim() const { return P.dim(); }

    BasisPermutation P;
    DenseTensor Qbar;              // Q_{ij}^{st}: legs (i, j | s, t)
    std::optional<DenseTensor> Qm; // Q_{ijk}^{t}: legs (i, j, k | t)
};

enum class AxiomId { i, ii, iii, iv, v, vi, vii };

inline constexpr std::array<AxiomId, 7> kAllAxioms = {AxiomId::i,  AxiomId::ii, AxiomId::iii,
                                                      AxiomId::iv, AxiomId::v,  AxiomId::vi,
                                                      AxiomId::vii};

std::string_view to_string(AxiomId id);
std::optional<AxiomId> parse_axiom(std::string_view name);
/// Axioms (i), (ii), (iii), (v), (vi) involve m.
bool needs_m(AxiomId id);

class MissingMError : public TensorError {
  public:
    using TensorError::TensorError;
};

struct Residual {
    std::string check;
    double value = 0.0;
    std::string note;
};

/// Named residuals with pass/fail against one tolerance.
struct ResidualReport {
    double tolerance = kDefaultTolerance;
    std::vector<Residual> items;

    void add(std::string check, double value, std::string note = {});
    bool passes(const Residual& r) const { return r.value <= tolerance; }
    bool all_pass() const;
    const Residual* find(std::string_view check) const;
};

/**
 * Builds both sides of the chosen axiom as maps between tensor powers of A,
 * composing right to left as the axiom is written, and returns the max-abs
 * difference. P^{-1} is realised as P^2.
 */
double axiom_residual(const ThreeAlgebra& alg, AxiomId which);

/// (vi): Q_{ijk}^s = Q_{P(j)P(k)P(i)}^{P(s)};  (vii): Q_{ij}^{st} = Q_{P²(j)P(i)}^{P²(t)P(s)}.
double coordinate_axiom_residual(const ThreeAlgebra& alg, AxiomId which);

/// The index maps of the coordinate forms: (vii) is an involution, (vi) has order 3.
DenseTensor vii_transform(const DenseTensor& qbar, const BasisPermutation& p);
DenseTensor vi_transform(const DenseTensor& qm, const BasisPermutation& p);

/// Orbit average under the rule's transform; the result satisfies the coordinate axiom.
DenseTensor symmetrize(const DenseTensor& t, const BasisPermutation& p, AxiomId rule);

/// Residuals of every axiom that can be evaluated (those needing m are skipped without Qm).
ResidualReport axiom_report(const ThreeAlgebra& alg, double tolerance = kDefaultTolerance);

}  // namespace triqal
