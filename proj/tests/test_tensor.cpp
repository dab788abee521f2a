#include "support.hpp"

#include "triqal/tensor.hpp"

#include <gtest/gtest.h>

using namespace triqal;
using triqal::testing::random_tensor;
using triqal::testing::Rng;

namespace {

DenseTensor matrix(std::vector<Scalar> entries) {
    return DenseTensor(2, {Leg::lower, Leg::upper}, std::move(entries));
}

}  // namespace

TEST(DenseTensor, ShapeAndAddressing) {
    DenseTensor t(3, parse_signature("lluu"));
    EXPECT_EQ(t.size(), 81u);
    EXPECT_EQ(signature(t), "lluu");
    t.at({1, 2, 0, 1}) = 5.0;
    EXPECT_EQ(t.offset(std::vector<int>{1, 2, 0, 1}), static_cast<std::size_t>(((1 * 3 + 2) * 3 + 0) * 3 + 1));
    EXPECT_EQ(t.data()[t.offset(std::vector<int>{1, 2, 0, 1})], Scalar(5.0));
}

TEST(DenseTensor, RejectsBadShapes) {
    EXPECT_THROW(DenseTensor(0, parse_signature("l")), TensorError);
    EXPECT_THROW(DenseTensor(9, parse_signature("l")), TensorError);
    EXPECT_THROW(DenseTensor(2, parse_signature("lu"), std::vector<Scalar>(3)), TensorError);
    EXPECT_THROW(DenseTensor(8, parse_signature("lllllllll")), TensorError);  // 8^9 entries
    EXPECT_THROW(parse_signature("lx"), TensorError);
}

TEST(Contract, MatrixProduct) {
    const DenseTensor m = matrix({1.0, 2.0, 3.0, 4.0});
    const DenseTensor n = matrix({0.0, 1.0, Scalar(0.0, 1.0), 2.0});
    const DenseTensor mn = contract(m, n, {{1, 0}});
    // [[1,2],[3,4]] · [[0,1],[i,2]]
    EXPECT_EQ(mn.at({0, 0}), Scalar(0.0, 2.0));
    EXPECT_EQ(mn.at({0, 1}), Scalar(5.0));
    EXPECT_EQ(mn.at({1, 0}), Scalar(0.0, 4.0));
    EXPECT_EQ(mn.at({1, 1}), Scalar(11.0));
    EXPECT_EQ(signature(mn), "lu");
}

TEST(Contract, IdentityTraceIsTwo) {
    const DenseTensor id = DenseTensor::identity(2);
    const DenseTensor sq = contract(id, id, {{1, 0}});
    EXPECT_EQ(max_abs_diff(sq, id), 0.0);
    EXPECT_EQ(trace(sq, 0, 1).value(), Scalar(2.0));
    EXPECT_EQ(contract(id, id, {{1, 0}, {0, 1}}).value(), Scalar(2.0));
}

TEST(Contract, TrivialMbarLensPatternIsTwo) {
    // Q_{i1 j1}^{j2 t1} Q_{j2 t1}^{j1 i1} with Q the identity map.
    DenseTensor q(2, parse_signature("lluu"));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) q.at({i, j, i, j}) = 1.0;
    }
    const DenseTensor value = contract(q, q, {{2, 0}, {3, 1}, {0, 3}, {1, 2}});
    EXPECT_EQ(value.rank(), 0u);
    EXPECT_EQ(value.value(), Scalar(2.0));
}

TEST(Contract, Errors) {
    const DenseTensor a = matrix({1, 2, 3, 4});
    const DenseTensor b3(3, parse_signature("lu"));
    EXPECT_THROW(contract(a, b3, {{1, 0}}), TensorError);  // dimension mismatch
    EXPECT_THROW(contract(a, a, {{0, 0}}), TensorError);   // lower with lower
    EXPECT_THROW(contract(a, a, {{1, 0}, {1, 1}}), TensorError);  // leg reused
    EXPECT_THROW(contract(a, a, {{2, 0}}), TensorError);   // no such leg
}

TEST(Contract, Bilinear) {
    Rng rng(11);
    const DenseTensor a1 = random_tensor(2, "lluu", rng), a2 = random_tensor(2, "lluu", rng);
    const DenseTensor b = random_tensor(2, "llu", rng);
    const Scalar x(0.3, -1.2), y(2.0, 0.5);
    const DenseTensor lhs = contract(x * a1 + y * a2, b, {{2, 0}, {1, 2}});
    const DenseTensor rhs = x * contract(a1, b, {{2, 0}, {1, 2}}) + y * contract(a2, b, {{2, 0}, {1, 2}});
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-12);
}

TEST(Contract, PairOrderIndependent) {
    Rng rng(12);
    const DenseTensor a = random_tensor(3, "lluu", rng), b = random_tensor(3, "lluu", rng);
    const DenseTensor one = contract(a, b, {{2, 0}, {3, 1}});
    const DenseTensor two = contract(a, b, {{3, 1}, {2, 0}});
    EXPECT_LE(max_abs_diff(one, two), 1e-12);
    // Sequential: first pair, then the second as a trace of the result.
    const DenseTensor seq = trace(contract(a, b, {{2, 0}}), 2, 3);
    EXPECT_LE(max_abs_diff(one, seq), 1e-12);
}

TEST(PermuteLegs, InverseRoundTripIsExact) {
    Rng rng(13);
    const DenseTensor t = random_tensor(2, "llul", rng);
    const DenseTensor p = permute_legs(t, {2, 0, 3, 1});
    EXPECT_EQ(signature(p), "ulll");
    EXPECT_EQ(p.at({1, 0, 1, 0}), t.at({0, 0, 1, 1}));
    const DenseTensor back = permute_legs(p, {1, 3, 0, 2});
    EXPECT_EQ(max_abs_diff(back, t), 0.0);
}

TEST(PermuteLegs, Examples) {
    const DenseTensor id = DenseTensor::identity(2);
    DenseTensor sym(2, parse_signature("ll"), {1.0, 2.0, 2.0, 3.0});
    EXPECT_EQ(max_abs_diff(permute_legs(sym, {1, 0}), sym), 0.0);
    EXPECT_EQ(signature(permute_legs(id, {1, 0})), "ul");

    const DenseTensor fam = embed(family({0.25, 4.0}));
    EXPECT_EQ(max_abs_diff(permute_legs(fam, {1, 0, 3, 2}), fam), 0.0);
    const DenseTensor twice = permute_legs(permute_legs(fam, {1, 0, 3, 2}), {1, 0, 3, 2});
    EXPECT_EQ(max_abs_diff(twice, fam), 0.0);

    EXPECT_THROW(permute_legs(fam, {0, 0, 1, 2}), TensorError);
    EXPECT_THROW(permute_legs(fam, {0, 1, 2}), TensorError);
}

TEST(BasisPermutation, Validation) {
    EXPECT_NO_THROW(BasisPermutation({1, 2, 0}));
    EXPECT_NO_THROW(BasisPermutation({0, 1}));
    EXPECT_THROW(BasisPermutation({1, 0}), TensorError);      // P^3 = P
    EXPECT_THROW(BasisPermutation({0, 0, 1}), TensorError);   // not a bijection
    EXPECT_THROW(BasisPermutation({0, 3, 1}), TensorError);
    const BasisPermutation p({1, 2, 0});
    EXPECT_EQ(p.apply(0), 1);
    EXPECT_EQ(p.apply(0, 2), 2);
    EXPECT_EQ(p.apply(0, 3), 0);
    EXPECT_EQ(p.apply(0, -1), 2);
}

TEST(ApplyBasisPerm, PowersAndIdentity) {
    Rng rng(14);
    const DenseTensor t = random_tensor(3, "lluu", rng);
    const BasisPermutation p({1, 2, 0});
    for (std::size_t leg = 0; leg < 4; ++leg) {
        EXPECT_EQ(max_abs_diff(apply_basis_perm(t, p, leg, 0), t), 0.0);
        DenseTensor x = t;
        for (int k = 0; k < 3; ++k) x = apply_basis_perm(x, p, leg, 1);
        EXPECT_EQ(max_abs_diff(x, t), 0.0);
        EXPECT_EQ(max_abs_diff(apply_basis_perm(apply_basis_perm(t, p, leg, 1), p, leg, 2), t), 0.0);
        EXPECT_EQ(max_abs_diff(apply_basis_perm(t, BasisPermutation::identity(3), leg, 1), t), 0.0);
    }
    EXPECT_THROW(apply_basis_perm(t, p, 4, 1), TensorError);
}

TEST(ApplyBasisPerm, LowerAndUpperRules) {
    Rng rng(15);
    const DenseTensor t = random_tensor(3, "lu", rng);
    const BasisPermutation p({1, 2, 0});
    const DenseTensor lo = apply_basis_perm(t, p, 0, 1);
    const DenseTensor up = apply_basis_perm(t, p, 1, 1);
    for (int i = 0; i < 3; ++i) {
        for (int s = 0; s < 3; ++s) {
            EXPECT_EQ(lo.at({i, s}), t.at({p.apply(i), s}));
            EXPECT_EQ(up.at({i, s}), t.at({i, p.apply(s, -1)}));
        }
    }
}

TEST(MaxAbsDiff, Examples) {
    const DenseTensor fam = embed(family({0.25, 4.0}));
    EXPECT_EQ(max_abs_diff(fam, fam), 0.0);
    DenseTensor bumped = fam;
    bumped.at({0, 1, 0, 1}) += 0.1;
    EXPECT_NEAR(max_abs_diff(fam, bumped), 0.1, 1e-15);
    EXPECT_THROW(max_abs_diff(fam, DenseTensor(2, parse_signature("lllu"))), TensorError);
}

TEST(Einsum, MatchesExplicitLoops) {
    Rng rng(16);
    const DenseTensor a = random_tensor(2, "lluu", rng), b = random_tensor(2, "lluu", rng);
    // Σ_{x} A_{i x}^{s t} B_{j k}^{x u}  ->  (i, j, k | s, t, u)
    const DenseTensor e = einsum({{a, "i x s t"}, {b, "j k x u"}}, "i j k s t u");
    MultiIndex mi(2, 6);
    double worst = 0.0;
    do {
        const auto [i, j, k, s, t, u] = std::array{mi[0], mi[1], mi[2], mi[3], mi[4], mi[5]};
        Scalar want = 0.0;
        for (int x = 0; x < 2; ++x) want += a.at({i, x, s, t}) * b.at({j, k, x, u});
        worst = std::max(worst, std::abs(e(mi.get()) - want));
    } while (mi.next());
    EXPECT_LE(worst, 1e-14);
}

TEST(Einsum, TracesAndErrors) {
    Rng rng(17);
    const DenseTensor a = random_tensor(2, "lluu", rng);
    const DenseTensor tr = einsum({{a, "x j k x"}}, "j k");
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            EXPECT_NEAR(std::abs(tr.at({j, k}) - (a.at({0, j, k, 0}) + a.at({1, j, k, 1}))), 0.0, 1e-15);
        }
    }
    EXPECT_THROW(einsum({{a, "x x x y"}}, "y"), TensorError);
    EXPECT_THROW(einsum({{a, "i j s"}}, "i j s"), TensorError);
    EXPECT_THROW(einsum({{a, "i j s t"}}, "i j s q"), TensorError);
}

TEST(MultiIndex, VisitsEveryIndexOnce) {
    MultiIndex mi(3, 3);
    int count = 0;
    do ++count;
    while (mi.next());
    EXPECT_EQ(count, 27);
}
