#include "triqal/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace triqal {

namespace {

std::size_t checked_size(int n, std::size_t rank) {
    if (n < 1 || n > kMaxDim) {
        throw TensorError("tensor dimension " + std::to_string(n) + " outside 1.." +
                          std::to_string(kMaxDim));
    }
    if (rank > kMaxRank) {
        throw TensorError("tensor rank " + std::to_string(rank) + " exceeds " +
                          std::to_string(kMaxRank));
    }
    std::size_t size = 1;
    for (std::size_t k = 0; k < rank; ++k) {
        size *= static_cast<std::size_t>(n);
        if (size > kMaxEntries) throw TensorError("tensor too large");
    }
    return size;
}

std::vector<std::size_t> strides(int n, std::size_t rank) {
    std::vector<std::size_t> s(rank, 1);
    for (std::size_t k = rank; k-- > 1;) s[k - 1] = s[k] * static_cast<std::size_t>(n);
    return s;
}

std::size_t ipow(int n, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= static_cast<std::size_t>(n);
    return r;
}

// Offsets of every multi-index over the given legs, ascending order.
std::vector<std::size_t> leg_offsets(int n, std::span<const std::size_t> legs,
                                     std::span<const std::size_t> stride) {
    std::vector<std::size_t> out;
    out.reserve(ipow(n, legs.size()));
    MultiIndex mi(n, legs.size());
    do {
        std::size_t off = 0;
        for (std::size_t k = 0; k < legs.size(); ++k) off += mi[k] * stride[legs[k]];
        out.push_back(off);
    } while (mi.next());
    return out;
}

}  // namespace

bool MultiIndex::next() {
    for (std::size_t k = idx_.size(); k-- > 0;) {
        if (++idx_[k] < n_) return true;
        idx_[k] = 0;
    }
    return false;
}

DenseTensor::DenseTensor(int n, std::vector<Leg> legs)
    : n_(n), legs_(std::move(legs)), data_(checked_size(n, legs_.size())) {}

DenseTensor::DenseTensor(int n, std::vector<Leg> legs, std::vector<Scalar> data)
    : n_(n), legs_(std::move(legs)), data_(std::move(data)) {
    if (data_.size() != checked_size(n_, legs_.size())) {
        throw TensorError("tensor data length " + std::to_string(data_.size()) +
                          " does not match n^rank");
    }
}

DenseTensor DenseTensor::scalar(Scalar value) { return DenseTensor(1, {}, {value}); }

DenseTensor DenseTensor::identity(int n) {
    DenseTensor t(n, {Leg::lower, Leg::upper});
    for (int i = 0; i < n; ++i) t.at({i, i}) = 1.0;
    return t;
}

std::size_t DenseTensor::offset(std::span<const int> index) const {
    if (index.size() != legs_.size()) {
        throw TensorError("index rank " + std::to_string(index.size()) + " != tensor rank " +
                          std::to_string(legs_.size()));
    }
    std::size_t off = 0;
    for (int i : index) {
        if (i < 0 || i >= n_) throw TensorError("index " + std::to_string(i) + " out of range");
        off = off * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    }
    return off;
}

Scalar DenseTensor::value() const {
    if (!legs_.empty()) throw TensorError("value() on a tensor of rank " + std::to_string(rank()));
    return data_[0];
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& other) {
    if (!same_signature(other)) throw TensorError("signature mismatch in +");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

DenseTensor& DenseTensor::operator-=(const DenseTensor& other) {
    if (!same_signature(other)) throw TensorError("signature mismatch in -");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

DenseTensor& DenseTensor::operator*=(Scalar factor) {
    for (auto& x : data_) x *= factor;
    return *this;
}

DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
DenseTensor operator*(Scalar factor, DenseTensor t) { return t *= factor; }

std::string signature(const DenseTensor& t) {
    std::string s;
    for (Leg l : t.legs()) s += (l == Leg::lower ? 'l' : 'u');
    return s;
}

std::vector<Leg> parse_signature(std::string_view sig) {
    std::vector<Leg> legs;
    for (char c : sig) {
        if (c == 'l') {
            legs.push_back(Leg::lower);
        } else if (c == 'u') {
            legs.push_back(Leg::upper);
        } else {
            throw TensorError("bad signature character '" + std::string(1, c) + "'");
        }
    }
    return legs;
}

BasisPermutation::BasisPermutation(std::vector<int> map) : map_(std::move(map)) {
    const int n = dim();
    if (n < 1 || n > kMaxDim) throw TensorError("P: dimension out of range");
    std::vector<bool> seen(map_.size(), false);
    for (int v : map_) {
        if (v < 0 || v >= n || seen[v]) throw TensorError("P: not a bijection on 0..n-1");
        seen[v] = true;
    }
    for (int i = 0; i < n; ++i) {
        if (map_[map_[map_[i]]] != i) throw TensorError("P: P^3 is not the identity");
    }
}

BasisPermutation BasisPermutation::identity(int n) {
    std::vector<int> map(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) map[i] = i;
    return BasisPermutation(std::move(map));
}

bool BasisPermutation::is_identity() const {
    for (int i = 0; i < dim(); ++i) {
        if (map_[i] != i) return false;
    }
    return true;
}

int BasisPermutation::apply(int i, int power) const {
    int k = ((power % 3) + 3) % 3;
    while (k--) i = map_.at(i);
    return i;
}

DenseTensor contract(const DenseTensor& a, const DenseTensor& b, std::span<const LegPair> pairs) {
    if (a.dim() != b.dim()) {
        throw TensorError("contract: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()) + ")");
    }
    const int n = a.dim();
    std::vector<bool> used_a(a.rank(), false), used_b(b.rank(), false);
    std::vector<std::size_t> pa, pb;
    for (const auto& p : pairs) {
        if (p.a >= a.rank() || p.b >= b.rank()) throw TensorError("contract: leg out of range");
        if (used_a[p.a] || used_b[p.b]) throw TensorError("contract: leg paired twice");
        if (a.leg(p.a) == b.leg(p.b)) {
            throw TensorError("contract: paired legs must be one lower and one upper");
        }
        used_a[p.a] = used_b[p.b] = true;
        pa.push_back(p.a);
        pb.push_back(p.b);
    }
    std::vector<std::size_t> ua, ub;
    std::vector<Leg> out_legs;
    for (std::size_t k = 0; k < a.rank(); ++k) {
        if (!used_a[k]) {
            ua.push_back(k);
            out_legs.push_back(a.leg(k));
        }
    }
    for (std::size_t k = 0; k < b.rank(); ++k) {
        if (!used_b[k]) {
            ub.push_back(k);
            out_legs.push_back(b.leg(k));
        }
    }
    const auto sa = strides(n, a.rank());
    const auto sb = strides(n, b.rank());
    const auto inner_a = leg_offsets(n, pa, sa);
    const auto inner_b = leg_offsets(n, pb, sb);
    const auto outer_a = leg_offsets(n, ua, sa);
    const auto outer_b = leg_offsets(n, ub, sb);

    DenseTensor out(n, std::move(out_legs));
    auto dst = out.data();
    const auto da = a.data();
    const auto db = b.data();
    std::size_t k = 0;
    for (std::size_t oa : outer_a) {
        for (std::size_t ob : outer_b) {
            Scalar sum = 0.0;
            for (std::size_t c = 0; c < inner_a.size(); ++c) {
                sum += da[oa + inner_a[c]] * db[ob + inner_b[c]];
            }
            dst[k++] = sum;
        }
    }
    return out;
}

DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     std::initializer_list<LegPair> pairs) {
    return contract(a, b, std::span<const LegPair>(pairs.begin(), pairs.size()));
}

DenseTensor outer(const DenseTensor& a, const DenseTensor& b) {
    if (a.rank() == 0) return a.value() * b;
    if (b.rank() == 0) return b.value() * a;
    return contract(a, b, std::span<const LegPair>{});
}

DenseTensor trace(const DenseTensor& t, std::size_t leg_a, std::size_t leg_b) {
    if (leg_a >= t.rank() || leg_b >= t.rank() || leg_a == leg_b) {
        throw TensorError("trace: invalid legs");
    }
    if (t.leg(leg_a) == t.leg(leg_b)) throw TensorError("trace: legs must be one lower, one upper");
    const int n = t.dim();
    const auto st = strides(n, t.rank());
    std::vector<std::size_t> rest;
    std::vector<Leg> out_legs;
    for (std::size_t k = 0; k < t.rank(); ++k) {
        if (k != leg_a && k != leg_b) {
            rest.push_back(k);
            out_legs.push_back(t.leg(k));
        }
    }
    const auto outer_off = leg_offsets(n, rest, st);
    const std::size_t diag = st[leg_a] + st[leg_b];
    DenseTensor out(n, out_legs);
    auto dst = out.data();
    const auto src = t.data();
    for (std::size_t k = 0; k < outer_off.size(); ++k) {
        Scalar sum = 0.0;
        for (int i = 0; i < n; ++i) sum += src[outer_off[k] + static_cast<std::size_t>(i) * diag];
        dst[k] = sum;
    }
    return out;
}

DenseTensor permute_legs(const DenseTensor& t, std::span<const std::size_t> perm) {
    if (perm.size() != t.rank()) throw TensorError("permute_legs: permutation has wrong length");
    std::vector<bool> seen(t.rank(), false);
    for (std::size_t p : perm) {
        if (p >= t.rank() || seen[p]) throw TensorError("permute_legs: not a bijection on legs");
        seen[p] = true;
    }
    if (t.rank() == 0) return t;
    std::vector<Leg> legs;
    for (std::size_t p : perm) legs.push_back(t.leg(p));
    const auto st = strides(t.dim(), t.rank());
    std::vector<std::size_t> src_stride;
    for (std::size_t p : perm) src_stride.push_back(st[p]);
    DenseTensor out(t.dim(), std::move(legs));
    auto dst = out.data();
    const auto src = t.data();
    MultiIndex mi(t.dim(), t.rank());
    std::size_t k = 0;
    do {
        std::size_t off = 0;
        for (std::size_t j = 0; j < t.rank(); ++j) off += mi[j] * src_stride[j];
        dst[k++] = src[off];
    } while (mi.next());
    return out;
}

DenseTensor permute_legs(const DenseTensor& t, std::initializer_list<std::size_t> perm) {
    return permute_legs(t, std::span<const std::size_t>(perm.begin(), perm.size()));
}

DenseTensor apply_basis_perm(const DenseTensor& t, const BasisPermutation& p, std::size_t leg,
                             int power) {
    if (leg >= t.rank()) throw TensorError("apply_basis_perm: leg out of range");
    if (p.dim() != t.dim()) throw TensorError("apply_basis_perm: dimension mismatch");
    const int eff = t.leg(leg) == Leg::lower ? power : -power;
    DenseTensor out(t.dim(), std::vector<Leg>(t.legs().begin(), t.legs().end()));
    auto dst = out.data();
    MultiIndex mi(t.dim(), t.rank());
    std::vector<int> src(t.rank());
    std::size_t k = 0;
    do {
        std::copy(mi.get().begin(), mi.get().end(), src.begin());
        src[leg] = p.apply(src[leg], eff);
        dst[k++] = t(src);
    } while (mi.next());
    return out;
}

double max_abs_diff(const DenseTensor& a, const DenseTensor& b) {
    if (!a.same_signature(b)) {
        throw TensorError("max_abs_diff: signature mismatch (" + signature(a) + " vs " +
                          signature(b) + ")");
    }
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

double max_abs(const DenseTensor& t) {
    double m = 0.0;
    for (const auto& x : t.data()) m = std::max(m, std::abs(x));
    return m;
}

namespace {

std::vector<std::string> split_labels(std::string_view labels) {
    std::vector<std::string> out;
    std::istringstream in{std::string(labels)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

struct Work {
    DenseTensor t;
    std::vector<std::string> labels;
};

// Trace out labels that repeat within one operand.
void close_self_pairs(Work& w) {
    for (;;) {
        bool found = false;
        for (std::size_t x = 0; x < w.labels.size() && !found; ++x) {
            for (std::size_t y = x + 1; y < w.labels.size() && !found; ++y) {
                if (w.labels[x] == w.labels[y]) {
                    w.t = trace(w.t, x, y);
                    w.labels.erase(w.labels.begin() + static_cast<std::ptrdiff_t>(y));
                    w.labels.erase(w.labels.begin() + static_cast<std::ptrdiff_t>(x));
                    found = true;
                }
            }
        }
        if (!found) return;
    }
}

}  // namespace

DenseTensor einsum(std::initializer_list<Labeled> operands, std::string_view out) {
    if (operands.size() == 0) throw TensorError("einsum: no operands");
    std::map<std::string, int> count;
    std::vector<Work> work;
    for (const auto& op : operands) {
        auto labels = split_labels(op.labels);
        if (labels.size() != op.tensor.rank()) {
            throw TensorError("einsum: label count does not match rank for '" +
                              std::string(op.labels) + "'");
        }
        for (const auto& l : labels) {
            if (++count[l] > 2) throw TensorError("einsum: label '" + l + "' used more than twice");
        }
        work.push_back({op.tensor, std::move(labels)});
    }
    Work acc = std::move(work.front());
    close_self_pairs(acc);
    for (std::size_t w = 1; w < work.size(); ++w) {
        Work& next = work[w];
        close_self_pairs(next);
        std::vector<LegPair> pairs;
        std::vector<bool> pa(acc.labels.size(), false), pb(next.labels.size(), false);
        for (std::size_t x = 0; x < acc.labels.size(); ++x) {
            for (std::size_t y = 0; y < next.labels.size(); ++y) {
                if (acc.labels[x] == next.labels[y]) {
                    pairs.push_back({x, y});
                    pa[x] = pb[y] = true;
                }
            }
        }
        std::vector<std::string> labels;
        for (std::size_t x = 0; x < acc.labels.size(); ++x) {
            if (!pa[x]) labels.push_back(acc.labels[x]);
        }
        for (std::size_t y = 0; y < next.labels.size(); ++y) {
            if (!pb[y]) labels.push_back(next.labels[y]);
        }
        if (acc.t.rank() == 0 || next.t.rank() == 0) {
            acc.t = outer(acc.t, next.t);
        } else {
            acc.t = contract(acc.t, next.t, pairs);
        }
        acc.labels = std::move(labels);
    }
    const auto want = split_labels(out);
    if (want.size() != acc.labels.size()) {
        throw TensorError("einsum: output labels do not match free labels");
    }
    std::vector<std::size_t> perm;
    for (const auto& l : want) {
        auto it = std::find(acc.labels.begin(), acc.labels.end(), l);
        if (it == acc.labels.end()) throw TensorError("einsum: '" + l + "' is not a free label");
        perm.push_back(static_cast<std::size_t>(it - acc.labels.begin()));
    }
    return permute_legs(acc.t, perm);
}

}  // namespace triqal
