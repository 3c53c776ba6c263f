#include "poroperm/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

#include "poroperm/errors.hpp"
#include "poroperm/parallel.hpp"
#include "poroperm/rng.hpp"

namespace poroperm {

std::vector<double> default_stages() {
  std::vector<double> s;
  for (int k = 1; k <= 100; ++k) s.push_back(k / 100.0);
  return s;
}

std::vector<double> default_bin_centers() {
  std::vector<double> c;
  for (int k = 1; k <= 9; ++k) c.push_back(k / 10.0);
  return c;
}

std::uint64_t trial_seed(std::uint64_t master_seed, int trial) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(trial));
}

ClosureExperiment::ClosureExperiment(const PoreNetwork& net, double delta_p, double eta)
    : net_(&net), delta_p_(delta_p), eta_(eta) {
  OpenMask all(net.channel_count(), 1);
  const auto sol = solve_pressure(net, all, delta_p_, eta_);
  kappa0_ = network_permeability(net, sol, delta_p_, eta_);
  if (!(kappa0_ > 0.0)) throw NumericalError("percolation: all-open network does not conduct");
}

std::size_t ClosureExperiment::closed_count(double stage_fraction) const {
  if (!(stage_fraction >= 0.0 && stage_fraction <= 1.0))
    throw ParameterError("percolation: stage fraction must lie in [0, 1]");
  const auto m = static_cast<double>(net_->channel_count());
  return std::min(net_->channel_count(), static_cast<std::size_t>(std::llround(stage_fraction * m)));
}

OpenMask ClosureExperiment::mask_for(std::span<const std::size_t> order, std::size_t closed) const {
  OpenMask mask(net_->channel_count(), 1);
  for (std::size_t k = 0; k < closed; ++k) mask[order[k]] = 0;
  return mask;
}

bool ClosureExperiment::blocked(std::span<const std::size_t> order, std::size_t closed) const {
  return !percolates(*net_, mask_for(order, closed));
}

TrialRecord ClosureExperiment::evaluate(std::span<const std::size_t> order, std::size_t closed) const {
  const auto mask = mask_for(order, closed);
  TrialRecord rec;
  rec.stage_fraction = static_cast<double>(closed) / static_cast<double>(net_->channel_count());
  rec.f_c = std::clamp(1.0 - net_->open_volume(mask) / net_->total_volume(), 0.0, 1.0);
  if (closed == 0) {
    rec.kappa_n = 1.0;
  } else if (percolates(*net_, mask)) {
    const auto sol = solve_pressure(*net_, mask, delta_p_, eta_);
    rec.kappa_n = std::clamp(network_permeability(*net_, sol, delta_p_, eta_) / kappa0_, 0.0, 1.0);
  }
  return rec;
}

TrialRecord ClosureExperiment::run_trial(double stage_fraction, std::uint64_t seed, int trial) const {
  const std::size_t closed = closed_count(stage_fraction);
  Xoshiro256 rng(seed);
  const auto order = random_permutation(net_->channel_count(), rng);
  TrialRecord rec = evaluate(order, closed);
  rec.stage_fraction = stage_fraction;
  rec.trial = trial;
  rec.seed = seed;
  return rec;
}

namespace {

struct SequenceRun {
  const ClosureExperiment& exp;
  std::span<const std::size_t> order;
  std::map<std::size_t, TrialRecord> by_count;
  std::size_t first_blocked = std::numeric_limits<std::size_t>::max();

  const TrialRecord& at(std::size_t closed) {
    if (auto it = by_count.find(closed); it != by_count.end()) return it->second;
    TrialRecord rec;
    if (closed >= first_blocked) {
      // Closing more channels never reopens a path.
      const auto& net = exp.network();
      OpenMask mask(net.channel_count(), 1);
      for (std::size_t k = 0; k < closed; ++k) mask[order[k]] = 0;
      rec.stage_fraction = static_cast<double>(closed) / static_cast<double>(net.channel_count());
      rec.f_c = std::clamp(1.0 - net.open_volume(mask) / net.total_volume(), 0.0, 1.0);
      rec.kappa_n = 0.0;
    } else {
      rec = exp.evaluate(order, closed);
      if (rec.kappa_n == 0.0 && closed > 0) first_blocked = std::min(first_blocked, closed);
    }
    return by_count.emplace(closed, rec).first->second;
  }
};

}  // namespace

std::vector<TrialRecord> sweep(const PoreNetwork& net, std::span<const double> stages, int trials,
                               std::uint64_t master_seed, const SweepOptions& options) {
  if (trials < 1) throw ParameterError("percolation: need at least one trial");
  if (stages.empty()) throw ParameterError("percolation: empty stage list");
  if (!std::is_sorted(stages.begin(), stages.end()))
    throw ParameterError("percolation: stages must be sorted");
  if (stages.front() < 0.0 || stages.back() > 1.0) throw ParameterError("percolation: stages must lie in [0, 1]");

  const ClosureExperiment exp(net);
  std::vector<std::size_t> counts;
  for (double s : stages) counts.push_back(exp.closed_count(s));

  std::vector<std::vector<TrialRecord>> per_trial(static_cast<std::size_t>(trials));
  parallel_for(per_trial.size(), options.threads, [&](std::size_t t) {
    const std::uint64_t seed = trial_seed(master_seed, static_cast<int>(t));
    Xoshiro256 rng(seed);
    const auto order = random_permutation(net.channel_count(), rng);
    SequenceRun run{exp, order, {}};

    std::vector<TrialRecord> out;
    out.reserve(stages.size());
    for (std::size_t s = 0; s < stages.size(); ++s) {
      TrialRecord rec = run.at(counts[s]);
      rec.stage_fraction = stages[s];
      out.push_back(rec);
    }

    if (options.refine) {
      std::vector<TrialRecord> extra;
      for (double center : options.bin_centers) {
        const double edge = center - options.bin_half_width;
        for (std::size_t s = 0; s + 1 < stages.size(); ++s) {
          if (!(run.at(counts[s]).kappa_n > edge) || run.at(counts[s + 1]).kappa_n > edge) continue;
          std::size_t lo = counts[s], hi = counts[s + 1];
          for (int d = 0; d < options.refine_depth && hi - lo > 1; ++d) {
            const std::size_t mid = lo + (hi - lo) / 2;
            const TrialRecord& rec = run.at(mid);
            extra.push_back(rec);
            (rec.kappa_n > edge ? lo : hi) = mid;
          }
          break;
        }
      }
      // Exact first-blocking count by bisection on connectivity alone.
      for (std::size_t s = 0; s + 1 < stages.size(); ++s) {
        if (run.at(counts[s]).kappa_n == 0.0 || run.at(counts[s + 1]).kappa_n != 0.0) continue;
        std::size_t lo = counts[s], hi = counts[s + 1];
        while (hi - lo > 1) {
          const std::size_t mid = lo + (hi - lo) / 2;
          (exp.blocked(order, mid) ? hi : lo) = mid;
        }
        run.first_blocked = std::min(run.first_blocked, hi);
        extra.push_back(run.at(hi));
        break;
      }
      std::sort(extra.begin(), extra.end(),
                [](const TrialRecord& a, const TrialRecord& b) { return a.stage_fraction < b.stage_fraction; });
      for (const auto& rec : extra) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const TrialRecord& r) {
          return exp.closed_count(r.stage_fraction) == exp.closed_count(rec.stage_fraction);
        });
        if (!dup) out.push_back(rec);
      }
      std::stable_sort(out.begin(), out.end(), [](const TrialRecord& a, const TrialRecord& b) {
        return a.stage_fraction < b.stage_fraction;
      });
    }

    for (auto& rec : out) {
      rec.trial = static_cast<int>(t);
      rec.seed = seed;
    }
    per_trial[t] = std::move(out);
  });

  std::vector<TrialRecord> records;
  for (auto& v : per_trial) records.insert(records.end(), v.begin(), v.end());
  return records;
}

std::vector<BinStats> bin_stats(std::span<const TrialRecord> records, std::span<const double> centers,
                                double half_width, BinStatistic statistic) {
  if (records.empty()) throw ParameterError("percolation: bin statistics need a nonempty record set");
  std::vector<BinStats> out;
  for (double k : centers) {
    std::vector<double> values;
    if (statistic == BinStatistic::AllRecords) {
      for (const auto& r : records)
        if (r.kappa_n > k - half_width && r.kappa_n < k + half_width) values.push_back(r.f_c);
    } else {
      std::map<int, double> exit_fc;
      for (const auto& r : records) {
        if (!(r.kappa_n > k - half_width && r.kappa_n < k + half_width)) continue;
        auto [it, inserted] = exit_fc.emplace(r.trial, r.f_c);
        if (!inserted) it->second = std::max(it->second, r.f_c);
      }
      for (const auto& [trial, fc] : exit_fc) values.push_back(fc);
    }
    BinStats b;
    b.center = k;
    b.count = values.size();
    if (values.empty()) {
      b.mean = b.stddev = std::numeric_limits<double>::quiet_NaN();
    } else {
      const Eigen::Map<const Eigen::ArrayXd> v(values.data(), static_cast<Eigen::Index>(values.size()));
      b.mean = v.mean();
      b.stddev = values.size() > 1 ? std::sqrt((v - b.mean).square().sum() / static_cast<double>(values.size() - 1))
                                   : 0.0;
    }
    out.push_back(b);
  }
  return out;
}

ThresholdEstimate estimate_threshold(std::span<const TrialRecord> records) {
  std::map<int, double> first_block;
  for (const auto& r : records) {
    if (r.kappa_n != 0.0) continue;
    auto [it, inserted] = first_block.emplace(r.trial, r.f_c);
    if (!inserted) it->second = std::min(it->second, r.f_c);
  }
  if (first_block.empty())
    throw NumericalError("percolation: no blocking configuration found; extend the stage range towards 1");
  Eigen::ArrayXd fc(static_cast<Eigen::Index>(first_block.size()));
  Eigen::Index i = 0;
  for (const auto& [trial, v] : first_block) fc[i++] = v;
  ThresholdEstimate est;
  est.trials = first_block.size();
  est.f_c_star = fc.mean();
  est.f_c_stddev = fc.size() > 1 ? std::sqrt((fc - est.f_c_star).square().sum() / static_cast<double>(fc.size() - 1)) : 0.0;
  est.p_c = 1.0 - est.f_c_star;
  return est;
}

PowerLawFit fit_power_law(std::span<const TrialRecord> records, const ThresholdEstimate& threshold,
                          std::size_t channel_count, double min_open_fraction) {
  const double m = static_cast<double>(channel_count);
  const double n_hat = (1.0 - threshold.f_c_star) * m;
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    const double open_fraction = 1.0 - r.stage_fraction;
    const double excess = open_fraction * m - n_hat;
    if (open_fraction < min_open_fraction || !(excess > 0.0) || !(r.kappa_n > 0.0)) continue;
    xs.push_back(std::log(excess));
    ys.push_back(std::log(r.kappa_n));
  }
  if (xs.size() < 2) throw NumericalError("percolation: power-law fit needs at least two points above threshold");
  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd design(n, 2);
  const Eigen::Map<const Eigen::VectorXd> x(xs.data(), n), y(ys.data(), n);
  design.col(0).setOnes();
  design.col(1) = x;
  if (x.maxCoeff() - x.minCoeff() <= 0.0) throw NumericalError("percolation: power-law fit range is degenerate");
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(y);
  PowerLawFit fit;
  fit.prefactor = std::exp(coef[0]);
  fit.exponent = coef[1];
  fit.excess_min = std::exp(x.minCoeff());
  fit.excess_max = std::exp(x.maxCoeff());
  fit.residual = std::sqrt((design * coef - y).squaredNorm() / static_cast<double>(n));
  fit.points = xs.size();
  return fit;
}

void write_records_csv(std::ostream& os, std::span<const TrialRecord> records, const std::string& topology) {
  os << "topology,stage_fraction,trial,f_c,kappa_n,seed\n";
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& r : records)
    os << topology << ',' << r.stage_fraction << ',' << r.trial << ',' << r.f_c << ',' << r.kappa_n << ','
       << r.seed << '\n';
  os.precision(old);
}

std::vector<TrialRecord> read_records_csv(std::istream& is, std::string* topology) {
  std::vector<TrialRecord> out;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line.rfind("topology,stage_fraction,trial,f_c,kappa_n,seed", 0) != 0)
        throw ParameterError("records csv: unexpected header '" + line + "'");
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string topo, f[5];
    std::getline(ss, topo, ',');
    for (auto& field : f) std::getline(ss, field, ',');
    try {
      TrialRecord r;
      r.stage_fraction = std::stod(f[0]);
      r.trial = std::stoi(f[1]);
      r.f_c = std::stod(f[2]);
      r.kappa_n = std::stod(f[3]);
      r.seed = std::stoull(f[4]);
      out.push_back(r);
    } catch (const std::exception&) {
      throw ParameterError("records csv: malformed line " + std::to_string(lineno));
    }
    if (topology) *topology = topo;
  }
  if (!header) throw ParameterError("records csv: missing header");
  return out;
}

void write_bin_stats_csv(std::ostream& os, std::span<const BinStats> bins, double half_width) {
  os << "kappa_n_low,kappa_n_high,center,count,mean_f_c,stddev_f_c\n";
  const auto old = os.precision(10);
  for (const auto& b : bins) {
    os << b.center - half_width << ',' << b.center + half_width << ',' << b.center << ',' << b.count << ',';
    if (b.defined())
      os << b.mean << ',' << b.stddev << '\n';
    else
      os << "nan,nan\n";
  }
  os.precision(old);
}

void write_threshold_csv(std::ostream& os, const ThresholdEstimate& estimate, const std::string& topology,
                         std::size_t channel_count) {
  os << "network_type,f_c,p_c,trials,f_c_stddev,n_hat\n";
  const auto old = os.precision(10);
  os << topology << ',' << estimate.f_c_star << ',' << estimate.p_c << ',' << estimate.trials << ','
     << estimate.f_c_stddev << ',' << (1.0 - estimate.f_c_star) * static_cast<double>(channel_count) << '\n';
  os.precision(old);
}

}  // namespace poroperm
