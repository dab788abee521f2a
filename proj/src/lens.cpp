#include "triqal/lens.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace triqal {

std::string Vertex::name() const {
    switch (kind) {
        case Kind::north: return "N";
        case Kind::south: return "S";
        case Kind::polygon: break;
    }
    return "A" + std::to_string(index);
}

std::string to_string(Mediator m) {
    switch (m) {
        case Mediator::direct: return "direct";
        case Mediator::h: return "h";
        case Mediator::h_inv: return "h_inv";
    }
    return "?";
}

namespace {

Vertex A(int i) { return {Vertex::Kind::polygon, i}; }
Vertex pole(TetraKind k) {
    return {k == TetraKind::north ? Vertex::Kind::north : Vertex::Kind::south, 0};
}

Face make_face(Vertex x, Vertex y, Vertex z, FaceSign sign) {
    std::array<Vertex, 3> v{x, y, z};
    std::sort(v.begin(), v.end());
    return {v, sign, -1};
}

// Key identifying which faces are glued together.
std::string glue_key(const Face& f, int p, int q) {
    std::vector<int> poly;
    std::optional<Vertex::Kind> apex;
    for (const auto& v : f.vertices) {
        if (v.kind == Vertex::Kind::polygon) {
            poly.push_back(v.index);
        } else {
            apex = v.kind;
        }
    }
    if (!apex) return "base " + std::to_string(poly[0]);  // A_l A_{l+1} A_p
    const int u = poly[0], w = poly[1];
    const bool north = *apex == Vertex::Kind::north;
    int edge = 0;  // polygon edge A_m A_{m+1}, 0 if a diagonal
    if (w == u + 1) {
        edge = u;
    } else if (u == 1 && w == p) {
        edge = p;
    }
    if (edge == 0) return std::string(north ? "diagN " : "diagS ") + std::to_string(u);
    // A_l A_{l+1} N ~ A_{l+q} A_{l+q+1} S: label both by the north index l.
    const int l = north ? edge : ((edge - 1 - q) % p + p) % p + 1;
    return "lat " + std::to_string(l);
}

int gcd(int a, int b) { return b == 0 ? a : gcd(b, a % b); }

}  // namespace

ContractionNetwork build_lens(int p, int q) {
    if (p < 3) throw TensorError("p must be at least 3");
    if (q < 1 || q >= p) throw TensorError("q must satisfy 1 <= q < p");
    if (gcd(p, q) != 1) throw TensorError("q must be coprime to p");

    ContractionNetwork net;
    net.p = p;
    net.q = q;
    const auto in = FaceSign::input;
    const auto out = FaceSign::output;
    for (int l = 1; l <= p - 2; ++l) {
        const Vertex n = pole(TetraKind::north), s = pole(TetraKind::south);
        net.tetra.push_back({TetraKind::north, l,
                             {make_face(A(l), A(l + 1), n, in), make_face(A(l), A(p), n, in),
                              make_face(A(l + 1), A(p), n, out),
                              make_face(A(l), A(l + 1), A(p), out)}});
        net.tetra.push_back({TetraKind::south, l,
                             {make_face(A(l), A(p), s, in), make_face(A(l), A(l + 1), A(p), in),
                              make_face(A(l), A(l + 1), s, out),
                              make_face(A(l + 1), A(p), s, out)}});
    }

    std::map<std::string, int> bond_of_key;
    for (std::size_t t = 0; t < net.tetra.size(); ++t) {
        for (std::size_t slot = 0; slot < 4; ++slot) {
            Face& face = net.tetra[t].faces[slot];
            const std::string key = glue_key(face, p, q);
            auto it = bond_of_key.find(key);
            if (it == bond_of_key.end()) {
                const int id = static_cast<int>(net.bonds.size());
                bond_of_key.emplace(key, id);
                net.bonds.push_back({id, {t, slot}, {t, slot}, Mediator::direct});
                face.bond = id;
                continue;
            }
            Bond& bond = net.bonds[it->second];
            if (bond.first.tetra != bond.second.tetra || bond.first.slot != bond.second.slot) {
                throw TensorError("face '" + key + "' is shared by more than two tetrahedra");
            }
            bond.second = {t, slot};
            face.bond = bond.id;
            const FaceSign a = net.tetra[bond.first.tetra].faces[bond.first.slot].sign;
            if (a != face.sign) {
                bond.mediator = Mediator::direct;
            } else {
                bond.mediator = a == FaceSign::output ? Mediator::h : Mediator::h_inv;
            }
        }
    }
    for (const Bond& b : net.bonds) {
        if (b.first.tetra == b.second.tetra && b.first.slot == b.second.slot) {
            net.open_legs.push_back(b.first);
        }
    }
    return net;
}

namespace {

struct Node {
    DenseTensor t;
    std::vector<int> bond_of_leg;
};

}  // namespace

Scalar evaluate(const ContractionNetwork& net, const DenseTensor& qbar, const BilinearForm& form) {
    if (!net.open_legs.empty()) throw TensorError("network has open legs");
    if (signature(qbar) != "lluu") throw TensorError("evaluate needs Qbar with signature lluu");
    if (form.dim() != qbar.dim()) throw TensorError("evaluate: h dimension does not match Qbar");

    std::vector<std::optional<Node>> nodes;
    for (const Tetra& t : net.tetra) {
        Node node{qbar, {}};
        for (const Face& f : t.faces) node.bond_of_leg.push_back(f.bond);
        nodes.emplace_back(std::move(node));
    }
    for (const Bond& b : net.bonds) {
        DenseTensor& t = nodes[b.first.tetra]->t;
        if (b.mediator == Mediator::h) t = lower_leg(t, b.first.slot, form);
        if (b.mediator == Mediator::h_inv) t = raise_leg(t, b.first.slot, form);
    }

    std::vector<bool> done(net.bonds.size(), false);
    const auto locate = [&](int bond) {
        std::vector<std::pair<std::size_t, std::size_t>> ends;  // (node, leg)
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            if (!nodes[k]) continue;
            for (std::size_t leg = 0; leg < nodes[k]->bond_of_leg.size(); ++leg) {
                if (nodes[k]->bond_of_leg[leg] == bond) ends.emplace_back(k, leg);
            }
        }
        if (ends.size() != 2) throw TensorError("bond " + std::to_string(bond) + " is not closed");
        return ends;
    };

    for (std::size_t remaining = net.bonds.size(); remaining > 0; --remaining) {
        int best = -1;
        long best_rank = 0;
        for (const Bond& b : net.bonds) {
            if (done[b.id]) continue;
            const auto ends = locate(b.id);
            const std::size_t u = ends[0].first, v = ends[1].first;
            long rank;
            if (u == v) {
                rank = static_cast<long>(nodes[u]->t.rank()) - 2;
            } else {
                long shared = 0;
                for (int x : nodes[u]->bond_of_leg) {
                    shared += std::count(nodes[v]->bond_of_leg.begin(), nodes[v]->bond_of_leg.end(), x);
                }
                rank = static_cast<long>(nodes[u]->t.rank() + nodes[v]->t.rank()) - 2 * shared;
            }
            if (best < 0 || rank < best_rank) {
                best = b.id;
                best_rank = rank;
            }
        }

        const auto ends = locate(best);
        const std::size_t u = ends[0].first, v = ends[1].first;
        Node& a = *nodes[u];
        if (u == v) {
            a.t = trace(a.t, ends[0].second, ends[1].second);
            const auto hi = std::max(ends[0].second, ends[1].second);
            const auto lo = std::min(ends[0].second, ends[1].second);
            a.bond_of_leg.erase(a.bond_of_leg.begin() + static_cast<std::ptrdiff_t>(hi));
            a.bond_of_leg.erase(a.bond_of_leg.begin() + static_cast<std::ptrdiff_t>(lo));
            done[best] = true;
            continue;
        }
        Node& b = *nodes[v];
        std::vector<LegPair> pairs;
        std::vector<bool> used_a(a.bond_of_leg.size(), false), used_b(b.bond_of_leg.size(), false);
        for (std::size_t x = 0; x < a.bond_of_leg.size(); ++x) {
            for (std::size_t y = 0; y < b.bond_of_leg.size(); ++y) {
                if (a.bond_of_leg[x] == b.bond_of_leg[y]) {
                    pairs.push_back({x, y});
                    used_a[x] = used_b[y] = true;
                    done[a.bond_of_leg[x]] = true;
                }
            }
        }
        std::vector<int> legs;
        for (std::size_t x = 0; x < a.bond_of_leg.size(); ++x) {
            if (!used_a[x]) legs.push_back(a.bond_of_leg[x]);
        }
        for (std::size_t y = 0; y < b.bond_of_leg.size(); ++y) {
            if (!used_b[y]) legs.push_back(b.bond_of_leg[y]);
        }
        remaining -= pairs.size() - 1;
        a.t = contract(a.t, b.t, pairs);
        a.bond_of_leg = std::move(legs);
        nodes[v].reset();
    }

    Scalar value = 1.0;
    for (const auto& node : nodes) {
        if (node) value *= node->t.value();
    }
    return value;
}

Scalar invariant(int p, int q, const DenseTensor& qbar, const BilinearForm& form) {
    return evaluate(build_lens(p, q), qbar, form);
}

}  // namespace triqal
