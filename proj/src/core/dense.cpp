// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#include "core/dense.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

namespace hgp::oracle {

namespace {

constexpr Complex kI{0.0, 1.0};

inline int bit_parity(std::uint64_t x) { return std::popcount(x) & 1; }

Eigen::Index dim_of(int n) { return Eigen::Index{1} << n; }

void check_oracle_size(int n) {
  if (n < 1 || n > kMaxVertices) throw std::out_of_range("oracle size guard: need 1 <= n <= 12");
}

}  // namespace

std::uint64_t state_mask(int n, EdgeMask e) {
  std::uint64_t m = 0;
  for (int v : edge_vertices(e)) m |= std::uint64_t{1} << bit_of_vertex(n, v);
  return m;
}

Vec build_state(const EdgeSet& es) {
  const int n = es.n_vertices();
  check_oracle_size(n);
  const Eigen::Index dim = dim_of(n);
  std::vector<std::uint64_t> masks;
  masks.reserve(es.edges().size());
  for (EdgeMask e : es.edges()) masks.push_back(state_mask(n, e));
  const double amp = es.sign() / std::sqrt(static_cast<double>(dim));
  Vec psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    int f = 0;
    for (std::uint64_t m : masks) f ^= static_cast<int>((i & m) == static_cast<std::uint64_t>(m));
    psi[i] = f ? -amp : amp;
  }
  return psi;
}

Vec basis_state(const EdgeSet& es, std::uint64_t k) {
  const int n = es.n_vertices();
  if (k >> n) throw std::invalid_argument("basis index length mismatch");
  Vec psi = build_state(es);
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if (bit_parity(static_cast<std::uint64_t>(i) & k)) psi[i] = -psi[i];
  return psi;
}

Mat stabilizer(const EdgeSet& es, int i) {
  es.check_vertex(i);
  const int n = es.n_vertices();
  check_oracle_size(n);
  const Eigen::Index dim = dim_of(n);
  // Diagonal of U_ph, restricted to gates touching vertex i (the rest cancels).
  std::vector<std::uint64_t> masks;
  for (EdgeMask e : es.edges()) masks.push_back(state_mask(n, e));
  auto uph = [&](Eigen::Index x) {
    int f = 0;
    for (std::uint64_t m : masks) f ^= static_cast<int>((x & m) == static_cast<std::uint64_t>(m));
    return f ? -1.0 : 1.0;
  };
  const std::uint64_t bit = std::uint64_t{1} << bit_of_vertex(n, i);
  Mat s = Mat::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    const Eigen::Index y = static_cast<Eigen::Index>(x ^ bit);
    s(x, y) = uph(x) * uph(y);
  }
  return s;
}

Mat dyad(const Vec& psi) { return psi * psi.adjoint(); }

void vec_apply_phase_edge(Vec& psi, std::uint64_t smask) {
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if ((static_cast<std::uint64_t>(i) & smask) == smask) psi[i] = -psi[i];
}

void vec_apply_x(Vec& psi, int bit) {
  const Eigen::Index b = Eigen::Index{1} << bit;
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if (i & b) std::swap(psi[i], psi[i ^ b]);
}

void vec_apply_y(Vec& psi, int bit) {
  const Eigen::Index b = Eigen::Index{1} << bit;
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if (i & b) {
      const Complex hi = psi[i];
      const Complex lo = psi[i ^ b];
      psi[i ^ b] = -kI * hi;  // Y|1> = -i|0>
      psi[i] = kI * lo;       // Y|0> = +i|1>
    }
}

void vec_apply_cnot(Vec& psi, int control_bit, int target_bit) {
  const Eigen::Index c = Eigen::Index{1} << control_bit;
  const Eigen::Index t = Eigen::Index{1} << target_bit;
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if ((i & c) && (i & t)) std::swap(psi[i], psi[i ^ t]);
}

namespace {

// One-sided row permutations/phases; columns follow by symmetry of U rho U^t.
template <typename Permute>
void conjugate_by_permutation(Mat& rho, Permute&& rows) {
  rows(rho);                       // U rho
  Mat tmp = rho.adjoint().eval();  // (U rho)^dagger = rho^dagger U^dagger
  rows(tmp);                       // U rho^dagger U^dagger
  rho = tmp.adjoint();
}

}  // namespace

void mat_apply_phase_edge(Mat& rho, std::uint64_t smask) {
  conjugate_by_permutation(rho, [&](Mat& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if ((static_cast<std::uint64_t>(i) & smask) == smask) m.row(i) = -m.row(i);
  });
}

void mat_apply_x(Mat& rho, int bit) {
  conjugate_by_permutation(rho, [&](Mat& m) {
    const Eigen::Index b = Eigen::Index{1} << bit;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i & b) m.row(i).swap(m.row(i ^ b));
  });
}

void mat_apply_y(Mat& rho, int bit) {
  conjugate_by_permutation(rho, [&](Mat& m) {
    const Eigen::Index b = Eigen::Index{1} << bit;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i & b) {
        Eigen::RowVectorXcd hi = m.row(i);
        m.row(i) = kI * m.row(i ^ b);
        m.row(i ^ b) = -kI * hi;
      }
  });
}

void mat_apply_cnot(Mat& rho, int control_bit, int target_bit) {
  conjugate_by_permutation(rho, [&](Mat& m) {
    const Eigen::Index c = Eigen::Index{1} << control_bit;
    const Eigen::Index t = Eigen::Index{1} << target_bit;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if ((i & c) && (i & t)) m.row(i).swap(m.row(i ^ t));
  });
}

Mat apply_unitary(const Mat& rho, int n, const GateSpec& gate) {
  if (rho.rows() != dim_of(n) || rho.cols() != dim_of(n))
    throw std::invalid_argument("apply_unitary: dimension mismatch");
  Mat out = rho;
  switch (gate.kind) {
    case GateSpec::Kind::CE:
      mat_apply_phase_edge(out, state_mask(n, gate.edge));
      break;
    case GateSpec::Kind::Z:
      if (gate.v < 1 || gate.v > n) throw std::out_of_range("gate vertex out of range");
      mat_apply_phase_edge(out, std::uint64_t{1} << bit_of_vertex(n, gate.v));
      break;
    case GateSpec::Kind::X:
      if (gate.v < 1 || gate.v > n) throw std::out_of_range("gate vertex out of range");
      mat_apply_x(out, bit_of_vertex(n, gate.v));
      break;
    case GateSpec::Kind::Y:
      if (gate.v < 1 || gate.v > n) throw std::out_of_range("gate vertex out of range");
      mat_apply_y(out, bit_of_vertex(n, gate.v));
      break;
    case GateSpec::Kind::CNOT:
      if (gate.c < 1 || gate.c > n || gate.t < 1 || gate.t > n || gate.c == gate.t)
        throw std::invalid_argument("bad cnot vertices");
      mat_apply_cnot(out, bit_of_vertex(n, gate.c), bit_of_vertex(n, gate.t));
      break;
  }
  return out;
}

std::pair<Mat, double> apply_kraus(const Mat& rho, const Mat& K) {
  if (K.cols() != rho.rows()) throw std::invalid_argument("apply_kraus: shape mismatch");
  Mat out = K * rho * K.adjoint();
  return {out, out.trace().real()};
}

Mat reduction_p() {
  Mat p = Mat::Zero(2, 4);
  p(0, 0b00) = 1.0;
  p(1, 0b11) = 1.0;
  return p;
}

Mat reduction_p_perp() {
  Mat p = Mat::Zero(2, 4);
  p(0, 0b10) = 1.0;
  p(1, 0b01) = 1.0;
  return p;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

// Embedded two-qubit reduction: |x>_q1 |y>_q2 -> delta * |0>_q1 |y>_q2 with
// delta = [x == y] for P and [x == 1^y] for P_perp; q1 is traced out later.
Mat apply_reduction_inplace(const Mat& rho, int q1_bit, int q2_bit, bool perp) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index b1 = Eigen::Index{1} << q1_bit;
  const Eigen::Index b2 = Eigen::Index{1} << q2_bit;
  auto selected = [&](Eigen::Index i) {
    const int x = (i & b1) ? 1 : 0;
    const int y = (i & b2) ? 1 : 0;
    return perp ? (x == (1 ^ y)) : (x == y);
  };
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < dim; ++i)
    if (selected(i)) keep.push_back(i);
  Mat out = Mat::Zero(dim, dim);
  for (Eigen::Index i : keep)
    for (Eigen::Index j : keep) out(i & ~b1, j & ~b1) = rho(i, j);
  return out;
}

Mat partial_trace_high(const Mat& rho, int low_bits) {
  const Eigen::Index dlow = Eigen::Index{1} << low_bits;
  const Eigen::Index dhigh = rho.rows() / dlow;
  Mat out = Mat::Zero(dlow, dlow);
  for (Eigen::Index h = 0; h < dhigh; ++h)
    out += rho.block(h * dlow, h * dlow, dlow, dlow);
  return out;
}

void mat_left_right_x(const Mat& rho, int bit, Mat& left, Mat& right) {
  const Eigen::Index b = Eigen::Index{1} << bit;
  left = rho;
  for (Eigen::Index i = 0; i < left.rows(); ++i)
    if (i & b) left.row(i).swap(left.row(i ^ b));
  right = rho;
  for (Eigen::Index j = 0; j < right.cols(); ++j)
    if (j & b) right.col(j).swap(right.col(j ^ b));
}

// Projector (1 + s X_bit)/2 applied from both sides.
Mat project_sigma_x(const Mat& rho, int bit, int sgn) {
  Mat xl, xr;
  mat_left_right_x(rho, bit, xl, xr);
  Mat xlr = xl;
  const Eigen::Index b = Eigen::Index{1} << bit;
  for (Eigen::Index j = 0; j < xlr.cols(); ++j)
    if (j & b) xlr.col(j).swap(xlr.col(j ^ b));
  const double s = sgn;
  return 0.25 * (rho + s * xl + s * xr + xlr);
}

Mat project_sigma_z(const Mat& rho, int bit, int value) {
  const Eigen::Index b = Eigen::Index{1} << bit;
  Mat out = rho;
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    if (((i & b) != 0) != (value != 0)) {
      out.row(i).setZero();
      out.col(i).setZero();
    }
  return out;
}

}  // namespace

DenseBranch subprotocol_dense(const Mat& rho_pair, const EdgeSet& target, int measured_color,
                              const Coloring& coloring, const BranchSpec& branch) {
  const int n = target.n_vertices();
  if (!is_colorable(target, coloring)) throw std::invalid_argument("invalid coloring for target");
  if (rho_pair.rows() != dim_of(2 * n)) throw std::invalid_argument("joint state must live on 2n qubits");
  const auto m_vertices = coloring.vertices_of(measured_color);
  if (m_vertices.empty()) throw std::invalid_argument("measured color has no vertices");

  EdgeMask m_mask = 0;
  for (int v : m_vertices) m_mask |= EdgeMask{1} << (v - 1);
  const EdgeMask all = (EdgeMask{1} << n) - 1;
  const EdgeMask r_mask = all & ~m_mask;
  if (branch.pperp_vertices & ~r_mask) throw std::invalid_argument("P_perp vertices must avoid the measured color");
  if (branch.minus_vertices & ~m_mask) throw std::invalid_argument("outcome vertices must be of the measured color");

  auto copy1_bit = [&](int v) { return bit_of_vertex(2 * n, v); };
  auto copy2_bit = [&](int v) { return bit_of_vertex(2 * n, n + v); };

  Mat rho = rho_pair;
  // (i) local CNOTs from copy-1 onto copy-2 qubits of the measured color.
  for (int v : m_vertices) mat_apply_cnot(rho, copy1_bit(v), copy2_bit(v));

  // (ii) reduction instrument on every other vertex.
  for (int v = 1; v <= n; ++v) {
    if (m_mask & (EdgeMask{1} << (v - 1))) continue;
    const bool perp = (branch.pperp_vertices >> (v - 1)) & 1;
    rho = apply_reduction_inplace(rho, copy1_bit(v), copy2_bit(v), perp);
  }

  // (iii) measurement on the copy-1 qubits of the measured color.
  const bool recycle = branch.pperp_vertices != 0;
  for (int v : m_vertices) {
    const bool minus = (branch.minus_vertices >> (v - 1)) & 1;
    if (recycle)
      rho = project_sigma_z(rho, copy1_bit(v), minus ? 1 : 0);
    else
      rho = project_sigma_x(rho, copy1_bit(v), minus ? -1 : +1);
  }

  // (iiib) local Z corrections on the output copy for "-1" outcomes.
  if (recycle && branch.minus_vertices) {
    EdgeMask corrections = 0;
    for (int v : m_vertices) {
      if (!((branch.minus_vertices >> (v - 1)) & 1)) continue;
      const EdgeMask vbit = EdgeMask{1} << (v - 1);
      for (EdgeMask e : target.edges()) {
        if (!(e & vbit)) continue;
        const EdgeMask e_rest = e & r_mask;
        const EdgeMask hit = e_rest & branch.pperp_vertices;
        if (!hit) continue;
        if (std::popcount(e_rest) > 2)
          throw std::invalid_argument("corrections defined for edges of order 3 only");
        if (std::popcount(hit) == 1)
          corrections ^= e_rest & ~hit;  // Z on the edge partner that measured P
        else
          corrections ^= e_rest;  // both measured P_perp: Z on both (plus a phase)
      }
    }
    for (int v : edge_vertices(corrections))
      mat_apply_phase_edge(rho, std::uint64_t{1} << copy2_bit(v));
  }

  DenseBranch out;
  out.rho = partial_trace_high(rho, n);
  out.probability = out.rho.trace().real();
  out.impossible = out.probability < kImpossibleBranch;
  return out;
}

}  // namespace hgp::oracle
