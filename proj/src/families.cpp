#include "triqal/families.hpp"

#include <cmath>
#include <sstream>

namespace triqal {

SixVars trivial_solution() { return {0.0, 0.0, 1.0, 0.0, 0.0, 0.0}; }

SixVars family(const FamilyParams& p) {
    if (p.d == Scalar(0.0)) throw TensorError("d must be nonzero");
    if (p.alpha == Scalar(0.0)) throw TensorError("alpha must be nonzero");
    if (p.sign != 1 && p.sign != -1) throw TensorError("sign must be +1 or -1");
    const double sign = p.sign;
    const Scalar d = p.d, alpha = p.alpha;
    switch (p.branch) {
        case 1: {
            const Scalar root = std::sqrt(d / (2.0 * alpha) - d * d / alpha);
            return {sign * alpha * root, sign * root, d, d, alpha * d, d / alpha};
        }
        case 2: {
            const Scalar root = std::sqrt(d * d / alpha - d / (2.0 * alpha));
            return {-sign * alpha * root, sign * root, d, d, -alpha * d, -d / alpha};
        }
        default: throw TensorError("branch must be 1 or 2");
    }
}

DenseTensor embed(const SixVars& v) {
    DenseTensor q(2, {Leg::lower, Leg::lower, Leg::upper, Leg::upper});
    q.at({0, 0, 0, 1}) = q.at({0, 0, 1, 0}) = v.a;
    q.at({0, 1, 0, 0}) = q.at({1, 0, 0, 0}) = v.b;
    q.at({0, 1, 0, 1}) = q.at({1, 0, 1, 0}) = v.c;
    q.at({0, 1, 1, 0}) = q.at({1, 0, 0, 1}) = v.d;
    q.at({0, 0, 1, 1}) = v.f;
    q.at({1, 1, 0, 0}) = v.y;
    q.at({0, 1, 1, 1}) = q.at({1, 0, 1, 1}) = -v.a;
    q.at({1, 1, 1, 0}) = q.at({1, 1, 0, 1}) = -v.b;
    q.at({0, 0, 0, 0}) = q.at({1, 1, 1, 1}) = 1.0 - v.d;
    return q;
}

SixVars extract(const DenseTensor& qbar, double tol) {
    if (qbar.dim() != 2 || signature(qbar) != "lluu") {
        throw TensorError("extract needs an n = 2 tensor with signature lluu");
    }
    const SixVars v{qbar.at({0, 0, 0, 1}), qbar.at({0, 1, 0, 0}), qbar.at({0, 1, 0, 1}),
                    qbar.at({0, 1, 1, 0}), qbar.at({0, 0, 1, 1}), qbar.at({1, 1, 0, 0})};
    const DenseTensor expect = embed(v);
    MultiIndex mi(2, 4);
    do {
        const double gap = std::abs(expect(mi.get()) - qbar(mi.get()));
        if (gap > tol) {
            std::ostringstream msg;
            msg << "entry Q[" << mi[0] << "][" << mi[1] << "][" << mi[2] << "][" << mi[3]
                << "] departs from the six-variable pattern by " << gap;
            throw TensorError(msg.str());
        }
    } while (mi.next());
    return v;
}

std::array<double, 12> system23_residuals(const SixVars& v) {
    const auto& [a, b, c, d, f, y] = v;
    const Scalar cd = c - d;
    return {std::abs(a * cd),
            std::abs(b * cd),
            std::abs((c - 1.0) * cd),
            std::abs(d * cd),
            std::abs(f * cd),
            std::abs(y * cd),
            std::abs(a * d - b * f),
            std::abs(a * y - b * c),
            std::abs(d * d - f * y),
            std::abs(2.0 * a * b + 2.0 * d * d - d),
            std::abs(2.0 * a * a + 2.0 * d * f - f),
            std::abs(2.0 * b * b + 2.0 * d * y - y)};
}

double eq22_residual(const SixVars& v) {
    const Scalar one_minus_d = 1.0 - v.d;
    return std::abs(4.0 * v.a * v.b + 2.0 * v.c * v.d + one_minus_d * one_minus_d + v.f * v.y - 1.0);
}

}  // namespace triqal
