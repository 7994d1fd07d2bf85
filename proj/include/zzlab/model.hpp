#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zzlab {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// How a coupling strength follows the frequency of its second mode.
enum class CouplingScaling {
  constant,
  /// g(t) = g * sqrt(f_b(t) / f_b(0)), with mode_b the coupler.
  sqrt_frequency,
};

/// One weakly anharmonic oscillator. Frequencies are linear, in GHz.
struct ModeSpec {
  std::string label;
  double frequency = 0.0;
  double anharmonicity = 0.0;
  int n_levels = 5;
};

struct CouplingSpec {
  std::string mode_a;
  std::string mode_b;
  double strength = 0.0;  // GHz
  CouplingScaling scaling = CouplingScaling::constant;
};

/// Microwave drive Omega cos(omega t + phase) (q + q^dag) on one mode.
struct DriveSpec {
  std::string target_mode;
  double amplitude = 0.0;  // GHz
  double frequency = 0.0;  // GHz
  double phase = 0.0;      // rad
};

/// Modes in canonical order (Q1, coupler, Q2) for the three-mode device. The
/// first and last modes are the qubits; anything in between is a coupler.
struct DeviceSpec {
  std::vector<ModeSpec> modes;
  std::vector<CouplingSpec> couplings;
  bool rwa = false;
  /// Constant added to every energy (GHz). Shifts no observable.
  double energy_offset = 0.0;

  /// Throws InvalidArgument on the first violated invariant.
  void validate() const;

  std::size_t dimension() const;
  std::vector<int> level_counts() const;
  std::size_t mode_index(std::string_view label) const;

  /// Strength of the coupling between two modes, 0 when absent.
  double coupling(std::string_view a, std::string_view b) const;

  /// Copy with one mode retuned; sqrt_frequency couplings whose mode_b is the
  /// retuned mode are rescaled so repeated retuning stays referenced to the
  /// original frequency.
  DeviceSpec with_mode_frequency(std::string_view label, double frequency) const;

  /// Copy with the coupling between a and b set (added when absent).
  DeviceSpec with_coupling(std::string_view a, std::string_view b, double strength) const;

  DeviceSpec with_levels(int n_levels) const;
};

/// Dense Hermitian matrix in rad/ns. Every Hamiltonian of this model is real
/// in the Fock basis, so storage is real symmetric.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  /// Throws InvalidArgument when max|H - H^T| >= 1e-12 max|H|.
  explicit HermitianOperator(RealMatrix matrix);

  const RealMatrix& matrix() const noexcept { return matrix_; }
  Eigen::Index dimension() const noexcept { return matrix_.rows(); }

 private:
  RealMatrix matrix_;
};

inline constexpr std::size_t kDefaultMaxDimension = 4096;

/// Annihilation operator truncated to n_levels: q(i, i+1) = sqrt(i+1).
RealMatrix lowering_operator(int n_levels);

/// Row-major mixed-radix index; the first mode is the most significant digit.
std::size_t bare_index(std::span<const int> level_counts, std::span<const int> occupations);
std::vector<int> bare_occupations(std::span<const int> level_counts, std::size_t index);

std::size_t bare_index(const DeviceSpec& spec, std::span<const int> occupations);

/// Caches the embedded operators of one device layout (mode count, level
/// counts and coupling topology) and assembles Hamiltonians for any parameter
/// values sharing that layout. Used by sweeps and time evolution to avoid
/// rebuilding Kronecker products at every point.
class HamiltonianAssembler {
 public:
  explicit HamiltonianAssembler(const DeviceSpec& layout,
                                std::size_t max_dimension = kDefaultMaxDimension);

  std::size_t dimension() const noexcept { return dimension_; }

  /// `spec` must share the layout passed at construction.
  RealMatrix assemble(const DeviceSpec& spec) const;

  /// q_j + q_j^dag embedded in the full space.
  const RealMatrix& quadrature(std::size_t mode) const { return quadratures_.at(mode); }
  /// Diagonal of q_j^dag q_j.
  const RealVector& number(std::size_t mode) const { return numbers_.at(mode); }

 private:
  void check_layout(const DeviceSpec& spec) const;

  std::vector<int> levels_;
  std::size_t dimension_ = 0;
  bool rwa_ = false;
  std::vector<RealVector> numbers_;
  std::vector<RealMatrix> quadratures_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<RealMatrix> coupling_terms_;
};

/// Full Hamiltonian in rad/ns:
///   sum_j 2pi (f_j n_j + a_j/2 n_j (n_j - 1)) + sum_{pairs} 2pi g (q_j + q_j^dag)(q_k + q_k^dag)
/// with the exchange form g (q_j q_k^dag + h.c.) when spec.rwa is set.
HermitianOperator build_hamiltonian(const DeviceSpec& spec,
                                    std::size_t max_dimension = kDefaultMaxDimension);

/// Time-dependent drive term, rad/ns.
class DriveOperator {
 public:
  DriveOperator(const DeviceSpec& spec, DriveSpec drive);

  RealMatrix at(double t) const;
  double envelope(double t) const;
  const RealMatrix& quadrature() const noexcept { return quadrature_; }

 private:
  DriveSpec drive_;
  RealMatrix quadrature_;
};

DriveOperator drive_operator(const DeviceSpec& spec, const DriveSpec& drive);

}  // namespace zzlab
