#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "poroperm/network.hpp"

namespace poroperm {

/// One Monte-Carlo closure outcome.
struct TrialRecord {
  double stage_fraction = 0.0;  // closed channels by count, closed / M
  int trial = 0;                // index of the closure sequence
  double f_c = 0.0;             // closed volume fraction V_c / V_t
  double kappa_n = 0.0;         // kappa / kappa(all open)
  std::uint64_t seed = 0;       // seed of the trial's closure permutation
};

/// Per-bin statistics of f_c for k_i - w < kappa_n < k_i + w.
struct BinStats {
  double center = 0.0;
  std::size_t count = 0;
  double mean = 0.0;    // NaN when count == 0
  double stddev = 0.0;  // sample standard deviation (n - 1); 0 for one sample, NaN when empty
  bool defined() const noexcept { return count > 0; }
};

/// Mean first-blocking closed fraction and the implied threshold.
struct ThresholdEstimate {
  double f_c_star = 0.0;
  double f_c_stddev = 0.0;
  double p_c = 0.0;  // 1 - f_c_star
  std::size_t trials = 0;
};

/// Least-squares fit of log Q = log c + b log(N_o - N_hat).
struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double excess_min = 0.0;  // fit range in N_o - N_hat
  double excess_max = 0.0;
  double residual = 0.0;  // RMS residual in log space
  std::size_t points = 0;
};

/// {0.01, 0.02, ..., 1.00}.
std::vector<double> default_stages();
/// {0.1, 0.2, ..., 0.9}.
std::vector<double> default_bin_centers();

/// Closure experiment on a fixed network: holds the all-open reference
/// permeability. Closure sequences are random permutations of the channels;
/// stage s of a sequence closes its first round(s M) entries.
class ClosureExperiment {
 public:
  explicit ClosureExperiment(const PoreNetwork& net, double delta_p = 1.0, double eta = 1.0e-3);

  const PoreNetwork& network() const noexcept { return *net_; }
  double reference_permeability() const noexcept { return kappa0_; }

  /// Record for the configuration with the first `closed` entries of `order` closed.
  TrialRecord evaluate(std::span<const std::size_t> order, std::size_t closed) const;
  /// Connectivity-only check: no open inlet-outlet path (kappa_n == 0).
  bool blocked(std::span<const std::size_t> order, std::size_t closed) const;

  TrialRecord run_trial(double stage_fraction, std::uint64_t seed, int trial = 0) const;

  std::size_t closed_count(double stage_fraction) const;

 private:
  OpenMask mask_for(std::span<const std::size_t> order, std::size_t closed) const;

  const PoreNetwork* net_;
  double delta_p_;
  double eta_;
  double kappa0_;
};

/// Per-trial seed: derive_seed(master_seed, trial).
std::uint64_t trial_seed(std::uint64_t master_seed, int trial);

struct SweepOptions {
  unsigned threads = 0;
  /// Adds records that locate, within each stage bracket, where a sequence
  /// leaves each bin (bisection on the closure count, `refine_depth` halvings)
  /// and the exact first-blocking closure count.
  bool refine = false;
  int refine_depth = 4;
  std::vector<double> bin_centers = default_bin_centers();
  double bin_half_width = 0.05;
};

/// |stages| * trials stage records (plus refinement records if requested),
/// ordered by (trial, closed count). Stages must be sorted and within [0, 1].
std::vector<TrialRecord> sweep(const PoreNetwork& net, std::span<const double> stages, int trials,
                               std::uint64_t master_seed, const SweepOptions& options = {});

enum class BinStatistic {
  /// Every in-bin record contributes.
  AllRecords,
  /// One value per trial: the largest in-bin f_c, i.e. the closed fraction at
  /// which the sequence leaves the bin.
  TrialExit,
};

std::vector<BinStats> bin_stats(std::span<const TrialRecord> records,
                                std::span<const double> centers, double half_width = 0.05,
                                BinStatistic statistic = BinStatistic::TrialExit);

/// Mean over trials of the smallest f_c with kappa_n == 0.
ThresholdEstimate estimate_threshold(std::span<const TrialRecord> records);

/// Fits kappa_n (proportional to Q) against N_o - N_hat using records with
/// open fraction at least `min_open_fraction` and N_o > N_hat, kappa_n > 0.
PowerLawFit fit_power_law(std::span<const TrialRecord> records, const ThresholdEstimate& threshold,
                          std::size_t channel_count, double min_open_fraction = 0.0);

void write_records_csv(std::ostream& os, std::span<const TrialRecord> records, const std::string& topology);
std::vector<TrialRecord> read_records_csv(std::istream& is, std::string* topology = nullptr);
void write_bin_stats_csv(std::ostream& os, std::span<const BinStats> bins, double half_width = 0.05);
void write_threshold_csv(std::ostream& os, const ThresholdEstimate& estimate, const std::string& topology,
                         std::size_t channel_count);

}  // namespace poroperm
