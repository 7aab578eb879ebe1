// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#ifndef HGP_CORE_HBASIS_HPP
#define HGP_CORE_HBASIS_HPP

#include <Eigen/Dense>

#include "core/dense.hpp"
#include "core/edge_set.hpp"

namespace hgp {

using oracle::Mat;
using oracle::Vec;

/// Mixed state written in the hypergraph basis of a target graph:
/// rho = sum_{k,k'} C(k,k') |H_k><H_k'|. Subnormalized states (protocol
/// branches) are legal; normalization is always explicit.
class HBState {
 public:
  HBState() = default;
  HBState(EdgeSet target, Mat coeffs);

  /// Pure target |H_0><H_0|.
  static HBState pure_target(const EdgeSet& target);

  const EdgeSet& target() const { return target_; }
  const Mat& coeffs() const { return coeffs_; }
  Mat& coeffs() { return coeffs_; }
  int n_qubits() const { return target_.n_vertices(); }

  double trace() const { return coeffs_.trace().real(); }
  HBState normalized() const;

 private:
  EdgeSet target_;
  Mat coeffs_;
};

/// Change-of-basis matrix B whose k-th column is |H_k>.
Mat hbasis_matrix(const EdgeSet& target);

HBState to_hbasis(const Mat& rho, const EdgeSet& target);
Mat from_hbasis(const HBState& state);

/// F = Re c_00 / trace. Throws on (near-)zero trace.
double fidelity(const HBState& state);

enum class NoiseKind { white, dephasing, depolarizing };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::white;
  double p = 1.0;
};

NoiseKind noise_kind_from_text(const std::string& text);
std::string noise_kind_to_text(NoiseKind kind);

/// Global white noise, local dephasing, or local depolarizing noise with
/// parameter p (p = 1 is the identity channel). White noise and dephasing
/// act directly on the coefficient matrix; depolarizing leaves the
/// hypergraph basis and is routed through the dense representation.
HBState apply_noise(const HBState& state, const NoiseSpec& noise);

/// White-noise parameter that prepares a state of the requested fidelity.
double white_noise_p_for_fidelity(int n_qubits, double f0);

}  // namespace hgp

#endif
