#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zzlab/model.hpp"

namespace zzlab {

/// Overlaps within this of 1/2 count as an equal superposition.
inline constexpr double kMixedTolerance = 1e-9;

struct EigenSystem {
  RealVector energies;  // ascending, rad/ns
  RealMatrix states;    // eigenvectors as columns
};

struct ComplexEigenSystem {
  RealVector energies;
  ComplexMatrix states;
};

EigenSystem eigendecompose(const HermitianOperator& h);
/// Throws InvalidArgument for a non-Hermitian matrix.
ComplexEigenSystem eigendecompose(const ComplexMatrix& h);

/// Bijective assignment between bare basis states and eigenstates.
struct StateLabels {
  std::vector<std::size_t> label_of;  // bare index -> eigen index
  std::vector<std::size_t> bare_of;   // eigen index -> bare index
  std::vector<double> overlap_of;     // bare index -> |<bare|assigned>|^2
  bool mixed = false;                 // some assigned overlap <= 0.5 (+ rounding slack)
};

/// Greedy maximum-overlap assignment in descending overlap order.
StateLabels label_states(std::span<const int> level_counts, const RealMatrix& states);
StateLabels label_states(const DeviceSpec& spec, const RealMatrix& states);

class LabeledSpectrum {
 public:
  LabeledSpectrum(std::vector<int> level_counts, EigenSystem system, StateLabels labels);

  const RealVector& energies() const noexcept { return system_.energies; }
  const RealMatrix& states() const noexcept { return system_.states; }
  const std::vector<int>& level_counts() const noexcept { return levels_; }
  const StateLabels& labels() const noexcept { return labels_; }
  bool mixed() const noexcept { return labels_.mixed; }

  std::size_t eigen_index(std::span<const int> occupations) const;
  double energy(std::span<const int> occupations) const;  // rad/ns
  double overlap(std::span<const int> occupations) const;
  bool is_mixed(std::span<const int> occupations) const { return overlap(occupations) <= 0.5 + kMixedTolerance; }
  RealVector state(std::span<const int> occupations) const;

 private:
  std::vector<int> levels_;
  EigenSystem system_;
  StateLabels labels_;
};

LabeledSpectrum diagonalize(const DeviceSpec& spec);
LabeledSpectrum diagonalize(const DeviceSpec& spec, const HamiltonianAssembler& assembler);

/// Occupation tuple with the given excitations on the first and last modes
/// (the qubits) and every mode in between in its ground state.
std::vector<int> qubit_occupations(std::size_t n_modes, int first, int last);

/// |00>, |01>, |10>, |11> in (Q1 Q2) order, i.e. |000>, |001>, |100>, |101>.
std::array<std::vector<int>, 4> computational_occupations(std::size_t n_modes);

/// zeta/2pi = [(E101 - E100) - (E001 - E000)] / 2pi in GHz. When the two
/// single-excitation qubit states hybridize with each other (resonant qubits)
/// only their energy sum enters, which stays well defined. Throws IllDefined
/// when |000>, |101> or the qubit pair cannot be identified.
double zz_strength(const LabeledSpectrum& spectrum);
double zz_strength(const DeviceSpec& spec);

/// Dressed qubit frequencies (E100 - E000, E001 - E000) in GHz.
std::pair<double, double> dressed_frequencies(const LabeledSpectrum& spectrum);
std::pair<double, double> dressed_frequencies(const DeviceSpec& spec);

/// Indices of the two eigenstates with the largest weight on {|100>, |001>},
/// ordered by energy. Throws IllDefined when the selection is ambiguous.
std::pair<std::size_t, std::size_t> qubit_like_pair(const LabeledSpectrum& spectrum);

/// Half the splitting of the qubit-like pair, GHz. Meaningful at resonance.
double xy_strength_resonant(const LabeledSpectrum& spectrum);
double xy_strength_resonant(const DeviceSpec& spec);

/// Retunes `mode` (bare, GHz) inside `bracket` until the qubit-like pair
/// splitting is minimal, i.e. the dressed qubits are resonant. Returns the
/// frequency and the resulting J in GHz.
std::pair<double, double> resonant_partner_frequency(const DeviceSpec& spec, std::string_view mode,
                                                     std::pair<double, double> bracket);

struct CouplingReport {
  double zeta = 0.0;                 // GHz
  std::optional<double> j_resonant;  // GHz
  double omega1 = 0.0;               // GHz, NaN when mixed
  double omega2 = 0.0;
  bool mixed = false;
  std::array<double, 4> overlaps{};  // |000>, |001>, |100>, |101>
};

/// j_resonant is reported when the qubit-like pair is hybridized: each state
/// carries at least `hybridization` of its qubit weight on the minority qubit.
CouplingReport coupling_report(const DeviceSpec& spec, double hybridization = 0.25);

}  // namespace zzlab
