#include "zzlab/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zzlab/errors.hpp"
#include "zzlab/units.hpp"

namespace zzlab {

namespace {

// Pairs below this weight cannot decide an assignment; they are handled by
// the completion pass.
constexpr double kCandidateWeight = 1e-3;

struct Candidate {
  double weight;
  std::size_t bare;
  std::size_t eigen;
};

}  // namespace

EigenSystem eigendecompose(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw Error("eigendecomposition did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexEigenSystem eigendecompose(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw InvalidArgument("matrix is not square");
  const double scale = h.cwiseAbs().maxCoeff();
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw InvalidArgument("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw Error("eigendecomposition did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

StateLabels label_states(std::span<const int> level_counts, const RealMatrix& states) {
  const auto n = static_cast<std::size_t>(states.rows());
  std::size_t expected = 1;
  for (int l : level_counts) expected *= static_cast<std::size_t>(l);
  if (expected != n || states.cols() != states.rows())
    throw InvalidArgument("state matrix does not match the device dimension");

  std::vector<Candidate> candidates;
  candidates.reserve(4 * n);
  for (std::size_t e = 0; e < n; ++e) {
    for (std::size_t b = 0; b < n; ++b) {
      const double v = states(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(e));
      const double w = v * v;
      if (w > kCandidateWeight) candidates.push_back({w, b, e});
    }
  }
  // Ties broken by index so the labeling is deterministic.
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    if (x.bare != y.bare) return x.bare < y.bare;
    return x.eigen < y.eigen;
  });

  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  StateLabels labels;
  labels.label_of.assign(n, kUnset);
  labels.bare_of.assign(n, kUnset);
  labels.overlap_of.assign(n, 0.0);
  std::size_t assigned = 0;
  for (const auto& c : candidates) {
    if (labels.label_of[c.bare] != kUnset || labels.bare_of[c.eigen] != kUnset) continue;
    labels.label_of[c.bare] = c.eigen;
    labels.bare_of[c.eigen] = c.bare;
    if (++assigned == n) break;
  }
  // Completion: leftover bare states take the best remaining eigenstate.
  if (assigned < n) {
    for (std::size_t b = 0; b < n; ++b) {
      if (labels.label_of[b] != kUnset) continue;
      std::size_t best = kUnset;
      double best_w = -1.0;
      for (std::size_t e = 0; e < n; ++e) {
        if (labels.bare_of[e] != kUnset) continue;
        const double v = states(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(e));
        if (v * v > best_w) {
          best_w = v * v;
          best = e;
        }
      }
      labels.label_of[b] = best;
      labels.bare_of[best] = b;
    }
  }
  // Verification: bijection and recorded overlaps.
  for (std::size_t b = 0; b < n; ++b) {
    const std::size_t e = labels.label_of[b];
    if (e == kUnset || labels.bare_of[e] != b) throw Error("state labeling is not a bijection");
    const double v = states(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(e));
    labels.overlap_of[b] = v * v;
    if (labels.overlap_of[b] <= 0.5 + kMixedTolerance) labels.mixed = true;
  }
  return labels;
}

StateLabels label_states(const DeviceSpec& spec, const RealMatrix& states) {
  const auto levels = spec.level_counts();
  return label_states(levels, states);
}

LabeledSpectrum::LabeledSpectrum(std::vector<int> level_counts, EigenSystem system, StateLabels labels)
    : levels_(std::move(level_counts)), system_(std::move(system)), labels_(std::move(labels)) {}

std::size_t LabeledSpectrum::eigen_index(std::span<const int> occupations) const {
  return labels_.label_of[bare_index(levels_, occupations)];
}

double LabeledSpectrum::energy(std::span<const int> occupations) const {
  return system_.energies(static_cast<Eigen::Index>(eigen_index(occupations)));
}

double LabeledSpectrum::overlap(std::span<const int> occupations) const {
  return labels_.overlap_of[bare_index(levels_, occupations)];
}

RealVector LabeledSpectrum::state(std::span<const int> occupations) const {
  return system_.states.col(static_cast<Eigen::Index>(eigen_index(occupations)));
}

LabeledSpectrum diagonalize(const DeviceSpec& spec, const HamiltonianAssembler& assembler) {
  auto system = eigendecompose(HermitianOperator(assembler.assemble(spec)));
  auto levels = spec.level_counts();
  auto labels = label_states(levels, system.states);
  return LabeledSpectrum(std::move(levels), std::move(system), std::move(labels));
}

LabeledSpectrum diagonalize(const DeviceSpec& spec) {
  HamiltonianAssembler assembler(spec);
  return diagonalize(spec, assembler);
}

std::vector<int> qubit_occupations(std::size_t n_modes, int first, int last) {
  if (n_modes < 2) throw InvalidArgument("a qubit pair needs at least two modes");
  std::vector<int> occ(n_modes, 0);
  occ.front() = first;
  occ.back() = last;
  return occ;
}

std::array<std::vector<int>, 4> computational_occupations(std::size_t n_modes) {
  return {qubit_occupations(n_modes, 0, 0), qubit_occupations(n_modes, 0, 1), qubit_occupations(n_modes, 1, 0),
          qubit_occupations(n_modes, 1, 1)};
}

std::pair<std::size_t, std::size_t> qubit_like_pair(const LabeledSpectrum& spectrum) {
  const auto& levels = spectrum.level_counts();
  const auto& v = spectrum.states();
  const auto b10 = static_cast<Eigen::Index>(bare_index(levels, qubit_occupations(levels.size(), 1, 0)));
  const auto b01 = static_cast<Eigen::Index>(bare_index(levels, qubit_occupations(levels.size(), 0, 1)));
  const Eigen::Index n = v.cols();
  std::vector<double> weight(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) weight[static_cast<std::size_t>(k)] = v(b10, k) * v(b10, k) + v(b01, k) * v(b01, k);

  std::size_t first = 0;
  std::size_t second = 1;
  if (weight[second] > weight[first]) std::swap(first, second);
  for (std::size_t k = 2; k < weight.size(); ++k) {
    if (weight[k] > weight[first]) {
      second = first;
      first = k;
    } else if (weight[k] > weight[second]) {
      second = k;
    }
  }
  if (weight[first] <= 0.5 || weight[second] <= 0.5)
    throw IllDefined("qubit-like single-excitation states are not identifiable", {weight[first], weight[second]});
  const auto lo = std::min(first, second);
  const auto hi = std::max(first, second);
  std::vector<int> coupler_single(levels.size(), 0);
  for (std::size_t k = lo + 1; k < hi; ++k) {
    double coupler_weight = 0.0;
    for (std::size_t m = 1; m + 1 < levels.size(); ++m) {
      coupler_single.assign(levels.size(), 0);
      coupler_single[m] = 1;
      const auto bc = static_cast<Eigen::Index>(bare_index(levels, coupler_single));
      coupler_weight += v(bc, static_cast<Eigen::Index>(k)) * v(bc, static_cast<Eigen::Index>(k));
    }
    if (weight[k] > 0.1 || coupler_weight > 0.5)
      throw IllDefined("a coupler-like state lies between the qubit-like states", {weight[lo], weight[k], weight[hi]});
  }
  return {lo, hi};
}

double zz_strength(const LabeledSpectrum& spectrum) {
  const auto occ = computational_occupations(spectrum.level_counts().size());
  const bool single_mixed = spectrum.is_mixed(occ[1]) || spectrum.is_mixed(occ[2]);
  if (spectrum.is_mixed(occ[0]) || spectrum.is_mixed(occ[3])) {
    std::vector<double> overlaps;
    for (const auto& o : occ) overlaps.push_back(spectrum.overlap(o));
    throw IllDefined("ZZ strength is ill-defined at this parameter point", std::move(overlaps));
  }
  const double e00 = spectrum.energy(occ[0]);
  const double e11 = spectrum.energy(occ[3]);
  double singles = 0.0;
  if (!single_mixed) {
    singles = spectrum.energy(occ[1]) + spectrum.energy(occ[2]);
  } else {
    // Hybridized qubit pair: the sum of the pair energies replaces E100 + E001.
    const auto [a, b] = qubit_like_pair(spectrum);
    singles = spectrum.energies()(static_cast<Eigen::Index>(a)) + spectrum.energies()(static_cast<Eigen::Index>(b));
  }
  // (E101 - E100) - (E001 - E000), kept as one expression of raw eigenvalues.
  return to_linear((e11 - singles) + e00);
}

double zz_strength(const DeviceSpec& spec) { return zz_strength(diagonalize(spec)); }

std::pair<double, double> dressed_frequencies(const LabeledSpectrum& spectrum) {
  const auto occ = computational_occupations(spectrum.level_counts().size());
  for (int k : {0, 1, 2}) {
    if (spectrum.is_mixed(occ[static_cast<std::size_t>(k)]))
      throw IllDefined("dressed qubit frequencies are ill-defined (mixed labels)",
                       {spectrum.overlap(occ[0]), spectrum.overlap(occ[1]), spectrum.overlap(occ[2])});
  }
  const double e00 = spectrum.energy(occ[0]);
  return {to_linear(spectrum.energy(occ[2]) - e00), to_linear(spectrum.energy(occ[1]) - e00)};
}

std::pair<double, double> dressed_frequencies(const DeviceSpec& spec) {
  return dressed_frequencies(diagonalize(spec));
}

double xy_strength_resonant(const LabeledSpectrum& spectrum) {
  const auto [a, b] = qubit_like_pair(spectrum);
  const auto& e = spectrum.energies();
  return to_linear(std::abs(e(static_cast<Eigen::Index>(b)) - e(static_cast<Eigen::Index>(a)))) / 2.0;
}

double xy_strength_resonant(const DeviceSpec& spec) { return xy_strength_resonant(diagonalize(spec)); }

std::pair<double, double> resonant_partner_frequency(const DeviceSpec& spec, std::string_view mode,
                                                     std::pair<double, double> bracket) {
  HamiltonianAssembler assembler(spec);
  auto splitting = [&](double f) {
    return xy_strength_resonant(diagonalize(spec.with_mode_frequency(mode, f), assembler));
  };
  // Golden-section search; the splitting is unimodal around the anticrossing.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = bracket.first;
  double hi = bracket.second;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = splitting(x1);
  double f2 = splitting(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = splitting(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = splitting(x2);
    }
  }
  const double f = 0.5 * (lo + hi);
  return {f, splitting(f)};
}

CouplingReport coupling_report(const DeviceSpec& spec, double hybridization) {
  const auto spectrum = diagonalize(spec);
  const auto occ = computational_occupations(spec.modes.size());
  CouplingReport report;
  report.mixed = false;
  for (std::size_t k = 0; k < 4; ++k) {
    report.overlaps[k] = spectrum.overlap(occ[k]);
    if (report.overlaps[k] <= 0.5 + kMixedTolerance) report.mixed = true;
  }
  report.zeta = zz_strength(spectrum);
  if (!report.mixed) {
    std::tie(report.omega1, report.omega2) = dressed_frequencies(spectrum);
  } else {
    report.omega1 = report.omega2 = std::numeric_limits<double>::quiet_NaN();
  }
  try {
    const auto [a, b] = qubit_like_pair(spectrum);
    const auto& levels = spectrum.level_counts();
    const auto b10 = static_cast<Eigen::Index>(bare_index(levels, occ[2]));
    const auto b01 = static_cast<Eigen::Index>(bare_index(levels, occ[1]));
    bool hybridized = true;
    for (const auto k : {a, b}) {
      const double w10 = std::pow(spectrum.states()(b10, static_cast<Eigen::Index>(k)), 2);
      const double w01 = std::pow(spectrum.states()(b01, static_cast<Eigen::Index>(k)), 2);
      if (std::min(w10, w01) < hybridization * (w10 + w01)) hybridized = false;
    }
    if (hybridized) report.j_resonant = xy_strength_resonant(spectrum);
  } catch (const IllDefined&) {
  }
  return report;
}

}  // namespace zzlab
