// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#include "core/hbasis.hpp"

#include <bit>
#include <stdexcept>

namespace hgp {

HBState::HBState(EdgeSet target, Mat coeffs) : target_(std::move(target)), coeffs_(std::move(coeffs)) {
  const Eigen::Index dim = Eigen::Index{1} << target_.n_vertices();
  if (coeffs_.rows() != dim || coeffs_.cols() != dim)
    throw std::invalid_argument("coefficient matrix dimension mismatch");
}

HBState HBState::pure_target(const EdgeSet& target) {
  const Eigen::Index dim = Eigen::Index{1} << target.n_vertices();
  Mat c = Mat::Zero(dim, dim);
  c(0, 0) = 1.0;
  return HBState(target, std::move(c));
}

HBState HBState::normalized() const {
  const double t = trace();
  if (t < oracle::kImpossibleBranch) throw std::runtime_error("cannot normalize a zero-trace state");
  return HBState(target_, coeffs_ / t);
}

Mat hbasis_matrix(const EdgeSet& target) {
  const int n = target.n_vertices();
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Vec h0 = oracle::build_state(target);
  Mat b(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k)
    for (Eigen::Index x = 0; x < dim; ++x) {
      const int par = std::popcount(static_cast<std::uint64_t>(x & k)) & 1;
      b(x, k) = par ? -h0[x] : h0[x];
    }
  return b;
}

HBState to_hbasis(const Mat& rho, const EdgeSet& target) {
  const Eigen::Index dim = Eigen::Index{1} << target.n_vertices();
  if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("to_hbasis: dimension mismatch");
  const Mat b = hbasis_matrix(target);
  return HBState(target, b.adjoint() * rho * b);
}

Mat from_hbasis(const HBState& state) {
  const Mat b = hbasis_matrix(state.target());
  return b * state.coeffs() * b.adjoint();
}

double fidelity(const HBState& state) {
  const double t = state.trace();
  if (t < oracle::kImpossibleBranch) throw std::runtime_error("fidelity of a zero-trace state");
  return state.coeffs()(0, 0).real() / t;
}

NoiseKind noise_kind_from_text(const std::string& text) {
  if (text == "white") return NoiseKind::white;
  if (text == "dephasing") return NoiseKind::dephasing;
  if (text == "depolarizing") return NoiseKind::depolarizing;
  throw std::invalid_argument("unknown noise kind: " + text);
}

std::string noise_kind_to_text(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::white: return "white";
    case NoiseKind::dephasing: return "dephasing";
    case NoiseKind::depolarizing: return "depolarizing";
  }
  throw std::logic_error("unreachable");
}

HBState apply_noise(const HBState& state, const NoiseSpec& noise) {
  if (noise.p < 0.0 || noise.p > 1.0) throw std::invalid_argument("noise parameter must be in [0,1]");
  const int n = state.n_qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;
  switch (noise.kind) {
    case NoiseKind::white: {
      Mat c = noise.p * state.coeffs();
      c += Mat::Identity(dim, dim) * ((1.0 - noise.p) / static_cast<double>(dim));
      return HBState(state.target(), std::move(c));
    }
    case NoiseKind::dephasing: {
      // Z_v permutes the basis: |H_k> -> |H_{k ^ e_v}>. Per-site mixture of
      // the identity (weight p + (1-p)/2) and that index flip ((1-p)/2).
      const double w_id = noise.p + (1.0 - noise.p) / 2.0;
      const double w_flip = (1.0 - noise.p) / 2.0;
      Mat c = state.coeffs();
      for (int v = 1; v <= n; ++v) {
        const Eigen::Index bit = Eigen::Index{1} << oracle::bit_of_vertex(n, v);
        Mat flipped(dim, dim);
        for (Eigen::Index k = 0; k < dim; ++k)
          for (Eigen::Index kp = 0; kp < dim; ++kp) flipped(k, kp) = c(k ^ bit, kp ^ bit);
        c = w_id * c + w_flip * flipped;
      }
      return HBState(state.target(), std::move(c));
    }
    case NoiseKind::depolarizing: {
      Mat rho = from_hbasis(state);
      const double w = (1.0 - noise.p) / 4.0;
      for (int v = 1; v <= n; ++v) {
        Mat x = rho, y = rho, z = rho;
        const int bit = oracle::bit_of_vertex(n, v);
        oracle::mat_apply_x(x, bit);
        oracle::mat_apply_y(y, bit);
        oracle::mat_apply_phase_edge(z, std::uint64_t{1} << bit);
        rho = (noise.p + w) * rho + w * (x + y + z);
      }
      return to_hbasis(rho, state.target());
    }
  }
  throw std::logic_error("unreachable");
}

double white_noise_p_for_fidelity(int n_qubits, double f0) {
  const double dim = static_cast<double>(Eigen::Index{1} << n_qubits);
  return (f0 - 1.0 / dim) / (1.0 - 1.0 / dim);
}

}  // namespace hgp
