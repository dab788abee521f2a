#include "triqal/lawrence.hpp"

#include "triqal/linear_map.hpp"

#include <algorithm>

namespace triqal {

ThreeAlgebra::ThreeAlgebra(BasisPermutation p, DenseTensor qbar, std::optional<DenseTensor> qm)
    : P(std::move(p)), Qbar(std::move(qbar)), Qm(std::move(qm)) {
    if (signature(Qbar) != "lluu") throw TensorError("Qbar must have signature lluu");
    if (Qbar.dim() != P.dim()) throw TensorError("Qbar dimension does not match P");
    if (Qm) {
        if (signature(*Qm) != "lllu") throw TensorError("Qm must have signature lllu");
        if (Qm->dim() != P.dim()) throw TensorError("Qm dimension does not match P");
    }
}

std::string_view to_string(AxiomId id) {
    switch (id) {
        case AxiomId::i: return "i";
        case AxiomId::ii: return "ii";
        case AxiomId::iii: return "iii";
        case AxiomId::iv: return "iv";
        case AxiomId::v: return "v";
        case AxiomId::vi: return "vi";
        case AxiomId::vii: return "vii";
    }
    return "?";
}

std::optional<AxiomId> parse_axiom(std::string_view name) {
    for (AxiomId id : kAllAxioms) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

bool needs_m(AxiomId id) {
    return id == AxiomId::i || id == AxiomId::ii || id == AxiomId::iii || id == AxiomId::v ||
           id == AxiomId::vi;
}

void ResidualReport::add(std::string check, double value, std::string note) {
    items.push_back({std::move(check), value, std::move(note)});
}

bool ResidualReport::all_pass() const {
    return std::all_of(items.begin(), items.end(), [&](const Residual& r) { return passes(r); });
}

const Residual* ResidualReport::find(std::string_view check) const {
    for (const auto& r : items) {
        if (r.check == check) return &r;
    }
    return nullptr;
}

namespace {

struct Sides {
    LinearMap lhs;
    LinearMap rhs;
};

Sides build_axiom(const ThreeAlgebra& alg, AxiomId which) {
    const int n = alg.dim();
    const LinearMap I = LinearMap::identity(n, 1);
    const LinearMap mbar(alg.Qbar, 2, 2);
    const auto P = [&](int power) { return LinearMap::basis_perm(alg.P, power); };
    const auto sigma = [&](std::size_t slots, std::size_t i, std::size_t j) {
        return LinearMap::swap(n, slots, i, j);
    };
    const auto m = [&] {
        if (!alg.Qm) {
            throw MissingMError("axiom (" + std::string(to_string(which)) + ") needs Qm");
        }
        return LinearMap(*alg.Qm, 3, 1);
    };

    switch (which) {
        case AxiomId::i:
            // m(m ⊗ 1 ⊗ 1) = m(1 ⊗ 1 ⊗ m)σ34(1 ⊗ m̄ ⊗ 1 ⊗ 1)σ34
            return {chain({m(), kron({m(), I, I})}),
                    chain({m(), kron({I, I, m()}), sigma(5, 3, 4), kron({I, mbar, I, I}),
                           sigma(5, 3, 4)})};
        case AxiomId::ii:
            // (1 ⊗ m)σ23(m̄ ⊗ 1 ⊗ 1) = m̄(1 ⊗ m)σ12(P⁻¹ ⊗ 1 ⊗ 1 ⊗ 1)(m̄ ⊗ 1 ⊗ 1)(P ⊗ P ⊗ 1 ⊗ 1)σ23
            return {chain({kron(I, m()), sigma(4, 2, 3), kron({mbar, I, I})}),
                    chain({mbar, kron(I, m()), sigma(4, 1, 2), kron({P(2), I, I, I}),
                           kron({mbar, I, I}), kron({P(1), P(1), I, I}), sigma(4, 2, 3)})};
        case AxiomId::iii:
            // m̄(m ⊗ 1) = (1 ⊗ m)σ12(P² ⊗ m̄ ⊗ 1)(1 ⊗ 1 ⊗ m̄)σ12σ23
            return {chain({mbar, kron(m(), I)}),
                    chain({kron(I, m()), sigma(4, 1, 2), kron({P(2), mbar, I}), kron({I, I, mbar}),
                           sigma(4, 1, 2), sigma(4, 2, 3)})};
        case AxiomId::iv:
            // (1 ⊗ m̄)σ12(1 ⊗ m̄) = (m̄ ⊗ 1)(1 ⊗ m̄)(P ⊗ P ⊗ 1)(m̄ ⊗ 1)(1 ⊗ P⁻¹ ⊗ 1)
            return {chain({kron(I, mbar), sigma(3, 1, 2), kron(I, mbar)}),
                    chain({kron(mbar, I), kron(I, mbar), kron({P(1), P(1), I}), kron(mbar, I),
                           kron({I, P(2), I})})};
        case AxiomId::v:
            // (1 ⊗ m)σ23(m̄ ⊗ P² ⊗ 1) = (m ⊗ 1)(1 ⊗ 1 ⊗ m̄)
            return {chain({kron(I, m()), sigma(4, 2, 3), kron({mbar, P(2), I})}),
                    chain({kron(m(), I), kron({I, I, mbar})})};
        case AxiomId::vi:
            // Pm = m(P ⊗ P ⊗ P)σ23σ12
            return {chain({P(1), m()}),
                    chain({m(), kron({P(1), P(1), P(1)}), sigma(3, 2, 3), sigma(3, 1, 2)})};
        case AxiomId::vii:
            // m̄(P² ⊗ P)σ12 = σ12 m̄(P² ⊗ P)
            return {chain({mbar, kron(P(2), P(1)), sigma(2, 1, 2)}),
                    chain({sigma(2, 1, 2), mbar, kron(P(2), P(1))})};
    }
    throw TensorError("unknown axiom");
}

}  // namespace

double axiom_residual(const ThreeAlgebra& alg, AxiomId which) {
    const Sides s = build_axiom(alg, which);
    return max_abs_diff(s.lhs.tensor(), s.rhs.tensor());
}

DenseTensor vii_transform(const DenseTensor& qbar, const BasisPermutation& p) {
    if (signature(qbar) != "lluu") throw TensorError("vii transform needs an lluu tensor");
    if (qbar.dim() != p.dim()) throw TensorError("vii transform: dimension mismatch");
    DenseTensor out(qbar.dim(), {Leg::lower, Leg::lower, Leg::upper, Leg::upper});
    MultiIndex mi(qbar.dim(), 4);
    do {
        const int i = mi[0], j = mi[1], s = mi[2], t = mi[3];
        out.at({i, j, s, t}) = qbar.at({p.apply(j, 2), p.apply(i, 1), p.apply(t, 2), p.apply(s, 1)});
    } while (mi.next());
    return out;
}

DenseTensor vi_transform(const DenseTensor& qm, const BasisPermutation& p) {
    if (signature(qm) != "lllu") throw TensorError("vi transform needs an lllu tensor");
    if (qm.dim() != p.dim()) throw TensorError("vi transform: dimension mismatch");
    DenseTensor out(qm.dim(), {Leg::lower, Leg::lower, Leg::lower, Leg::upper});
    MultiIndex mi(qm.dim(), 4);
    do {
        const int i = mi[0], j = mi[1], k = mi[2], s = mi[3];
        out.at({i, j, k, s}) = qm.at({p.apply(j), p.apply(k), p.apply(i), p.apply(s)});
    } while (mi.next());
    return out;
}

double coordinate_axiom_residual(const ThreeAlgebra& alg, AxiomId which) {
    switch (which) {
        case AxiomId::vi:
            if (!alg.Qm) throw MissingMError("axiom (vi) needs Qm");
            return max_abs_diff(*alg.Qm, vi_transform(*alg.Qm, alg.P));
        case AxiomId::vii:
            return max_abs_diff(alg.Qbar, vii_transform(alg.Qbar, alg.P));
        default:
            throw TensorError("coordinate form is only available for axioms (vi) and (vii)");
    }
}

DenseTensor symmetrize(const DenseTensor& t, const BasisPermutation& p, AxiomId rule) {
    switch (rule) {
        case AxiomId::vii: return 0.5 * (t + vii_transform(t, p));
        case AxiomId::vi: {
            const DenseTensor once = vi_transform(t, p);
            return (1.0 / 3.0) * (t + once + vi_transform(once, p));
        }
        default: throw TensorError("symmetrize supports rules (vi) and (vii) only");
    }
}

ResidualReport axiom_report(const ThreeAlgebra& alg, double tolerance) {
    ResidualReport report;
    report.tolerance = tolerance;
    for (AxiomId id : kAllAxioms) {
        if (needs_m(id) && !alg.Qm) continue;
        report.add("axiom " + std::string(to_string(id)), axiom_residual(alg, id));
    }
    return report;
}

}  // namespace triqal
