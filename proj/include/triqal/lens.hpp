#pragma once

#include "triqal/frobenius.hpp"
#include "triqal/tensor.hpp"

#include <array>
#include <string>
#include <vector>

namespace triqal {

/// A_1..A_p on the polygon, or one of the poles N, S.
struct Vertex {
    enum class Kind { polygon, north, south };
    Kind kind = Kind::polygon;
    int index = 0;  // 1-based polygon index; 0 for poles

    std::string name() const;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

enum class FaceSign { input, output };  // "-" and "+"

struct Face {
    std::array<Vertex, 3> vertices;  // sorted
    FaceSign sign = FaceSign::input;
    int bond = -1;
};

enum class TetraKind { north, south };

/// Faces in argument order (input 1, input 2, output 1, output 2) of Q_{in1 in2}^{out1 out2}.
struct Tetra {
    TetraKind kind;
    int l;
    std::array<Face, 4> faces;
};

/**
 * How a glued face contracts: opposite signs pair an upper with a lower leg
 * directly; two outputs are joined through h_{..}; two inputs through h^{..}.
 */
enum class Mediator { direct, h, h_inv };

std::string to_string(Mediator m);

struct BondEnd {
    std::size_t tetra;
    std::size_t slot;
};

struct Bond {
    int id;
    BondEnd first;
    BondEnd second;
    Mediator mediator;
};

struct ContractionNetwork {
    int p = 0;
    int q = 0;
    std::vector<Tetra> tetra;
    std::vector<Bond> bonds;
    std::vector<BondEnd> open_legs;  // empty for a closed manifold
};

/**
 * Bipyramid triangulation of L(p, q) over the polygon A_1..A_p split by
 * diagonals from A_p, with one tetrahedron over each triangle from each pole.
 * Tetrahedra come in the order N_1, S_1, N_2, S_2, ... and bond ids follow
 * the first appearance of each glued face in that order.
 *
 *   N_l: (A_l A_{l+1} N, A_l A_p N | A_{l+1} A_p N, A_l A_{l+1} A_p)
 *   S_l: (A_l A_p S, A_l A_{l+1} A_p | A_l A_{l+1} S, A_{l+1} A_p S)
 *
 * The lateral face A_l A_{l+1} N is glued to A_{l+q} A_{l+q+1} S, indices
 * cyclic mod p (A_{p+1} = A_1).
 */
ContractionNetwork build_lens(int p, int q);

/**
 * Sums the closed network with Qbar on every tetrahedron. Mediated bonds are
 * first absorbed into their first endpoint by lowering or raising that leg;
 * then the bond whose contraction gives the smallest intermediate rank is
 * contracted, ties going to the lowest bond id.
 */
Scalar evaluate(const ContractionNetwork& net, const DenseTensor& qbar, const BilinearForm& form);

Scalar invariant(int p, int q, const DenseTensor& qbar, const BilinearForm& form);

}  // namespace triqal
