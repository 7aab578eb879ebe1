// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#ifndef HGP_CORE_DENSE_HPP
#define HGP_CORE_DENSE_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>

#include "core/edge_set.hpp"

// Brute-force computational-basis simulator. Deliberately naive: every gate
// and projector is an explicit index manipulation on dense vectors/matrices.
// Serves as ground truth for the graphical rules and the protocol layer.
namespace hgp::oracle {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Basis-index convention, fixed project-wide: vertex 1 is the most
// significant bit, i.e. vertex v lives at bit (n - v) of a basis index.
inline int bit_of_vertex(int n, int v) { return n - v; }

// Edge mask translated into basis-index space.
std::uint64_t state_mask(int n, EdgeMask e);

/// |H> = sign * prod_e C_e |+>^n as a 2^n state vector.
Vec build_state(const EdgeSet& es);

/// |H_k> = Z^k |H_0>; bit (n-v) of k addresses vertex v.
Vec basis_state(const EdgeSet& es, std::uint64_t k);

/// Stabilizer S_i = U_ph X_i U_ph^dagger as a dense matrix.
Mat stabilizer(const EdgeSet& es, int i);

Mat dyad(const Vec& psi);

// In-place unitaries; `bit` arguments are basis-index bit positions.
void vec_apply_phase_edge(Vec& psi, std::uint64_t smask);  // C_e (Z if one bit)
void vec_apply_x(Vec& psi, int bit);
void vec_apply_y(Vec& psi, int bit);
void vec_apply_cnot(Vec& psi, int control_bit, int target_bit);

void mat_apply_phase_edge(Mat& rho, std::uint64_t smask);
void mat_apply_x(Mat& rho, int bit);
void mat_apply_y(Mat& rho, int bit);
void mat_apply_cnot(Mat& rho, int control_bit, int target_bit);

/// Gate spec for the generic apply_unitary entry point.
struct GateSpec {
  enum class Kind { CE, Z, X, Y, CNOT } kind;
  EdgeMask edge = 0;  // CE only
  int v = 0;          // Z/X/Y target vertex
  int c = 0, t = 0;   // CNOT vertices
};

Mat apply_unitary(const Mat& rho, int n, const GateSpec& gate);

/// K rho K^dagger and its trace. K may change dimension.
std::pair<Mat, double> apply_kraus(const Mat& rho, const Mat& K);

// Reduction operators in the computational basis (2 qubits -> 1).
Mat reduction_p();        // |0><00| + |1><11|
Mat reduction_p_perp();   // |0><10| + |1><01|

// Branch probabilities below this are reported as impossible.
constexpr double kImpossibleBranch = 1e-14;

/// One sub-protocol branch: which rest-vertices measured P_perp (empty mask
/// selects the all-P pattern) and which measured-color vertices reported
/// outcome "-1" (sigma_x outcomes for all-P branches, sigma_z otherwise).
struct BranchSpec {
  EdgeMask pperp_vertices = 0;
  EdgeMask minus_vertices = 0;
};

struct DenseBranch {
  Mat rho;            // post-selected state on n qubits, NOT normalized
  double probability = 0.0;
  bool impossible = false;
};

/// Exact two-copy sub-protocol on a joint state of 2n qubits (copy 1 =
/// vertices 1..n in the high bits, copy 2 in the low bits). Applies the
/// local CNOTs, the chosen reduction pattern, the step-(iii) measurement,
/// and the local Z corrections for recycle branches. Ground truth for the
/// coefficient-space protocol maps.
DenseBranch subprotocol_dense(const Mat& rho_pair, const EdgeSet& target, int measured_color,
                              const Coloring& coloring, const BranchSpec& branch);

Mat kron(const Mat& a, const Mat& b);

}  // namespace hgp::oracle

#endif
