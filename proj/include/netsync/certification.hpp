#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netsync/dynamics.hpp"
#include "netsync/graph.hpp"

namespace netsync {

/// Outcome of a spectral gain condition sym(F) − μ·H_s ≺ 0 checked over a set
/// of eigenvalues μ. `margin` is the smallest −λ_max(sym(F) − μ·H_s); the
/// condition holds iff it is positive.
struct CertificateReport {
  bool satisfied = false;
  double margin = 0.0;
  double binding_eigenvalue = 0.0;
  std::optional<double> lambda_star;
  std::optional<double> epsilon_bound;
  std::vector<std::string> warnings;
};

/// Largest uniform margin λ with sym(F) − μ_i·H_s + λI ≺ 0 for every listed μ_i,
/// i.e. min_i −λ_max(sym(F) − μ_i·H_s). Non-positive values mean the bounded
/// error condition fails.
double lambda_star(const QuadBound& f, const Matrix& h, std::span<const double> nonzero_mu);

/// √(N·γ_cᵀΓγ_c) / λ*. Throws ErrorCode::certificate_failed when λ* ≤ 0.
double epsilon_bound(int nodes, const UncertaintyBound& bound, double lambda_star);

/// Uncontrolled network: λ* over the N−1 nonzero eigenvalues of L and, when
/// λ* > 0, the ε bound on ‖x − 1⊗x̄‖. L must be connected.
CertificateReport check_bounded_error(const QuadBound& f, const Matrix& h,
                                      const Laplacian& l, const UncertaintyBound& bound);

/// Decentralized compensation: margin over all eigenvalues of L + Z.
CertificateReport check_decentralized(const QuadBound& f, const Matrix& h,
                                      const Laplacian& l, const GainDiagonal& z);

/// Distributed compensation: margin over all eigenvalues of L + B + Z.
CertificateReport check_distributed(const QuadBound& f, const Matrix& h, const Laplacian& l,
                                    const Laplacian& b, const GainDiagonal& z);

/// Infimum of μ with sym(F) − μ·H_s ≺ 0, i.e. λ_max(H_s^{-1/2} sym(F) H_s^{-1/2}).
/// Throws when H_s is not positive definite.
double mu_threshold(const QuadBound& f, const Matrix& h);

/// Adds `count` pins of gain `gain` one at a time, each maximizing the
/// smallest eigenvalue of L + Z. Ties go to the lowest node index.
GainDiagonal greedy_pin_selection(const Laplacian& l, int count, double gain);

}  // namespace netsync
