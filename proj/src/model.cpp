#include "zzlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "zzlab/errors.hpp"
#include "zzlab/units.hpp"

namespace zzlab {

namespace {

std::pair<std::string, std::string> unordered(std::string_view a, std::string_view b) {
  return a < b ? std::pair<std::string, std::string>{a, b} : std::pair<std::string, std::string>{b, a};
}

}  // namespace

void DeviceSpec::validate() const {
  if (modes.empty()) throw InvalidArgument("device has no modes");
  std::set<std::string> labels;
  for (const auto& m : modes) {
    if (m.label.empty()) throw InvalidArgument("mode label must not be empty");
    if (!labels.insert(m.label).second) throw InvalidArgument("duplicate mode label '" + m.label + "'");
    if (m.n_levels < 2) throw InvalidArgument("mode '" + m.label + "': n_levels must be >= 2");
    if (m.anharmonicity != 0.0 && m.n_levels < 3)
      throw InvalidArgument("mode '" + m.label + "': anharmonic mode needs n_levels >= 3");
    if (!(m.frequency > 0.0) || !std::isfinite(m.frequency))
      throw InvalidArgument("mode '" + m.label + "': frequency must be positive");
    if (!std::isfinite(m.anharmonicity))
      throw InvalidArgument("mode '" + m.label + "': anharmonicity must be finite");
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& c : couplings) {
    if (!labels.contains(c.mode_a) || !labels.contains(c.mode_b))
      throw InvalidArgument("coupling references unknown mode '" +
                            (labels.contains(c.mode_a) ? c.mode_b : c.mode_a) + "'");
    if (c.mode_a == c.mode_b) throw InvalidArgument("coupling of mode '" + c.mode_a + "' to itself");
    if (!pairs.insert(unordered(c.mode_a, c.mode_b)).second)
      throw InvalidArgument("duplicate coupling " + c.mode_a + "-" + c.mode_b);
    if (!std::isfinite(c.strength)) throw InvalidArgument("coupling strength must be finite");
  }
  if (!std::isfinite(energy_offset)) throw InvalidArgument("energy offset must be finite");
}

std::size_t DeviceSpec::dimension() const {
  std::size_t d = 1;
  for (const auto& m : modes) d *= static_cast<std::size_t>(std::max(m.n_levels, 0));
  return d;
}

std::vector<int> DeviceSpec::level_counts() const {
  std::vector<int> out;
  out.reserve(modes.size());
  for (const auto& m : modes) out.push_back(m.n_levels);
  return out;
}

std::size_t DeviceSpec::mode_index(std::string_view label) const {
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (modes[i].label == label) return i;
  throw InvalidArgument("unknown mode '" + std::string(label) + "'");
}

double DeviceSpec::coupling(std::string_view a, std::string_view b) const {
  for (const auto& c : couplings)
    if ((c.mode_a == a && c.mode_b == b) || (c.mode_a == b && c.mode_b == a)) return c.strength;
  return 0.0;
}

DeviceSpec DeviceSpec::with_mode_frequency(std::string_view label, double frequency) const {
  DeviceSpec out = *this;
  auto& mode = out.modes[mode_index(label)];
  const double old = mode.frequency;
  mode.frequency = frequency;
  for (auto& c : out.couplings) {
    if (c.scaling == CouplingScaling::sqrt_frequency && c.mode_b == label)
      c.strength *= std::sqrt(frequency / old);
  }
  return out;
}

DeviceSpec DeviceSpec::with_coupling(std::string_view a, std::string_view b, double strength) const {
  DeviceSpec out = *this;
  for (auto& c : out.couplings) {
    if ((c.mode_a == a && c.mode_b == b) || (c.mode_a == b && c.mode_b == a)) {
      c.strength = strength;
      return out;
    }
  }
  mode_index(a);
  mode_index(b);
  out.couplings.push_back({std::string(a), std::string(b), strength, CouplingScaling::constant});
  return out;
}

DeviceSpec DeviceSpec::with_levels(int n_levels) const {
  DeviceSpec out = *this;
  for (auto& m : out.modes) m.n_levels = n_levels;
  return out;
}

HermitianOperator::HermitianOperator(RealMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw InvalidArgument("operator matrix is not square");
  const double scale = matrix_.cwiseAbs().maxCoeff();
  const double asym = (matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) throw InvalidArgument("operator is not Hermitian");
}

RealMatrix lowering_operator(int n_levels) {
  if (n_levels < 2) throw InvalidArgument("lowering_operator: n_levels must be >= 2");
  RealMatrix q = RealMatrix::Zero(n_levels, n_levels);
  for (int i = 0; i + 1 < n_levels; ++i) q(i, i + 1) = std::sqrt(static_cast<double>(i + 1));
  return q;
}

std::size_t bare_index(std::span<const int> level_counts, std::span<const int> occupations) {
  if (occupations.size() != level_counts.size())
    throw InvalidArgument("occupation tuple has " + std::to_string(occupations.size()) +
                          " entries, device has " + std::to_string(level_counts.size()) + " modes");
  std::size_t index = 0;
  for (std::size_t j = 0; j < level_counts.size(); ++j) {
    if (occupations[j] < 0 || occupations[j] >= level_counts[j])
      throw InvalidArgument("occupation " + std::to_string(occupations[j]) + " out of range for mode " +
                            std::to_string(j));
    index = index * static_cast<std::size_t>(level_counts[j]) + static_cast<std::size_t>(occupations[j]);
  }
  return index;
}

std::vector<int> bare_occupations(std::span<const int> level_counts, std::size_t index) {
  std::vector<int> occ(level_counts.size());
  for (std::size_t j = level_counts.size(); j-- > 0;) {
    occ[j] = static_cast<int>(index % static_cast<std::size_t>(level_counts[j]));
    index /= static_cast<std::size_t>(level_counts[j]);
  }
  if (index != 0) throw InvalidArgument("basis index out of range");
  return occ;
}

std::size_t bare_index(const DeviceSpec& spec, std::span<const int> occupations) {
  const auto levels = spec.level_counts();
  return bare_index(levels, occupations);
}

HamiltonianAssembler::HamiltonianAssembler(const DeviceSpec& layout, std::size_t max_dimension)
    : levels_(layout.level_counts()), rwa_(layout.rwa) {
  layout.validate();
  dimension_ = layout.dimension();
  if (dimension_ > max_dimension)
    throw ResourceLimit("Hilbert dimension " + std::to_string(dimension_) + " exceeds cap " +
                        std::to_string(max_dimension));

  const auto n = static_cast<Eigen::Index>(dimension_);
  const std::size_t n_modes = levels_.size();
  std::vector<RealMatrix> lowering(n_modes, RealMatrix::Zero(n, n));
  numbers_.assign(n_modes, RealVector::Zero(n));
  for (std::size_t idx = 0; idx < dimension_; ++idx) {
    const auto occ = bare_occupations(levels_, idx);
    std::size_t stride = 1;
    for (std::size_t j = n_modes; j-- > 0;) {
      numbers_[j](static_cast<Eigen::Index>(idx)) = occ[j];
      if (occ[j] > 0)
        lowering[j](static_cast<Eigen::Index>(idx - stride), static_cast<Eigen::Index>(idx)) =
            std::sqrt(static_cast<double>(occ[j]));
      stride *= static_cast<std::size_t>(levels_[j]);
    }
  }
  for (const auto& q : lowering) quadratures_.push_back(q + q.transpose());

  for (std::size_t j = 0; j < n_modes; ++j) {
    for (std::size_t k = j + 1; k < n_modes; ++k) {
      pairs_.emplace_back(j, k);
      if (rwa_) {
        coupling_terms_.push_back(lowering[j] * lowering[k].transpose() +
                                  lowering[j].transpose() * lowering[k]);
      } else {
        coupling_terms_.push_back(quadratures_[j] * quadratures_[k]);
      }
    }
  }
}

void HamiltonianAssembler::check_layout(const DeviceSpec& spec) const {
  if (spec.level_counts() != levels_ || spec.rwa != rwa_)
    throw InvalidArgument("device layout differs from the assembler layout");
}

RealMatrix HamiltonianAssembler::assemble(const DeviceSpec& spec) const {
  check_layout(spec);
  const auto n = static_cast<Eigen::Index>(dimension_);
  RealVector diagonal = RealVector::Constant(n, to_angular(spec.energy_offset));
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    const auto& m = spec.modes[j];
    const auto& num = numbers_[j];
    // q^dag q^dag q q = n (n - 1)
    diagonal += to_angular(m.frequency) * num +
                (0.5 * to_angular(m.anharmonicity)) * (num.array() * (num.array() - 1.0)).matrix();
  }
  RealMatrix h = diagonal.asDiagonal();
  for (const auto& c : spec.couplings) {
    const std::size_t a = spec.mode_index(c.mode_a);
    const std::size_t b = spec.mode_index(c.mode_b);
    const auto key = std::minmax(a, b);
    const auto it = std::find(pairs_.begin(), pairs_.end(), std::pair<std::size_t, std::size_t>{key.first, key.second});
    h += to_angular(c.strength) * coupling_terms_[static_cast<std::size_t>(it - pairs_.begin())];
  }
  return h;
}

HermitianOperator build_hamiltonian(const DeviceSpec& spec, std::size_t max_dimension) {
  HamiltonianAssembler assembler(spec, max_dimension);
  return HermitianOperator(assembler.assemble(spec));
}

DriveOperator::DriveOperator(const DeviceSpec& spec, DriveSpec drive) : drive_(std::move(drive)) {
  spec.validate();
  if (drive_.amplitude < 0.0) throw InvalidArgument("drive amplitude must be >= 0");
  const std::size_t target = spec.mode_index(drive_.target_mode);
  const auto levels = spec.level_counts();
  const auto n = static_cast<Eigen::Index>(spec.dimension());
  quadrature_ = RealMatrix::Zero(n, n);
  std::size_t stride = 1;
  for (std::size_t j = levels.size(); j-- > target + 1;) stride *= static_cast<std::size_t>(levels[j]);
  for (std::size_t idx = 0; idx < spec.dimension(); ++idx) {
    const int occ = bare_occupations(levels, idx)[target];
    if (occ == 0) continue;
    const double v = std::sqrt(static_cast<double>(occ));
    const auto lo = static_cast<Eigen::Index>(idx - stride);
    const auto hi = static_cast<Eigen::Index>(idx);
    quadrature_(lo, hi) = v;
    quadrature_(hi, lo) = v;
  }
}

double DriveOperator::envelope(double t) const {
  return to_angular(drive_.amplitude) * std::cos(to_angular(drive_.frequency) * t + drive_.phase);
}

RealMatrix DriveOperator::at(double t) const { return envelope(t) * quadrature_; }

DriveOperator drive_operator(const DeviceSpec& spec, const DriveSpec& drive) {
  return DriveOperator(spec, drive);
}

}  // namespace zzlab
