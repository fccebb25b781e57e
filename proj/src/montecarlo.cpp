//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "pairtherm/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <utility>

namespace pairtherm::montecarlo {

namespace {

using int128 = __int128;
using uint128 = unsigned __int128;

/// Geometric sampler P(n) = (1 - p) p^n via the closed-form inverse CDF
/// n = floor(log(1 - u) / log(p)). Branch-free and reproducible.
class GeometricSampler {
 public:
  explicit GeometricSampler(double ratio) {
    degenerate_ = !(ratio > 0.0);
    inv_log_ratio_ = degenerate_ ? 0.0 : 1.0 / std::log(ratio);
  }

  std::int64_t operator()(rng::Stream& stream) const {
    if (degenerate_) return 0;
    const double u = stream.next_uniform();
    return static_cast<std::int64_t>(
        std::floor(std::log1p(-u) * inv_log_ratio_));
  }

 private:
  double inv_log_ratio_;
  bool degenerate_;
};

std::int64_t thin_count(std::int64_t n, double eta, rng::Stream& stream) {
  std::int64_t kept = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    kept += stream.next_uniform() < eta ? 1 : 0;
  }
  return kept;
}

/// Contiguous batch layout over the flash index space: the first (flashes %
/// batches) batches hold one extra flash.
struct BatchLayout {
  std::uint64_t flashes;
  std::uint64_t batches;
  std::uint64_t base;  // flashes / batches
  std::uint64_t rem;   // flashes % batches

  BatchLayout(std::uint64_t flashes_in, std::uint64_t batches_in)
      : flashes(flashes_in),
        batches(batches_in),
        base(flashes_in / batches_in),
        rem(flashes_in % batches_in) {}

  std::uint64_t batch_of(std::uint64_t flash) const {
    const std::uint64_t split = rem * (base + 1);
    if (flash < split) return flash / (base + 1);
    return rem + (flash - split) / base;
  }
};

std::uint64_t pick_batch_count(std::uint64_t flashes) {
  const std::uint64_t most = flashes / 2;  // keep every batch >= 2 flashes
  if (most == 0) return 1;
  return std::min<std::uint64_t>(kBatchCount, most);
}

struct BatchMoments {
  std::uint64_t count = 0;
  int128 sum_d = 0;
  uint128 sum_d2 = 0;
};

struct Moments {
  std::uint64_t count = 0;
  uint128 sum_a = 0, sum_b = 0;
  uint128 sum_a2 = 0, sum_b2 = 0, sum_ab = 0;
  int128 sum_d = 0;
  uint128 sum_d2 = 0;

  void add(const PairSample& s) {
    const auto a = static_cast<std::uint64_t>(s.n_a);
    const auto b = static_cast<std::uint64_t>(s.n_b);
    ++count;
    sum_a += a;
    sum_b += b;
    sum_a2 += static_cast<uint128>(a) * a;
    sum_b2 += static_cast<uint128>(b) * b;
    sum_ab += static_cast<uint128>(a) * b;
    const std::int64_t d = s.n_a - s.n_b;
    sum_d += d;
    sum_d2 += static_cast<uint128>(static_cast<int128>(d) * d);
  }

  void merge(const Moments& o) {
    count += o.count;
    sum_a += o.sum_a;
    sum_b += o.sum_b;
    sum_a2 += o.sum_a2;
    sum_b2 += o.sum_b2;
    sum_ab += o.sum_ab;
    sum_d += o.sum_d;
    sum_d2 += o.sum_d2;
  }
};

double to_double(int128 v) { return static_cast<double>(v); }
double to_double(uint128 v) { return static_cast<double>(v); }

/// Unbiased second moment (count * sum_sq - sum^2) / (count (count - 1)).
double unbiased(std::uint64_t count, int128 sum_sq_num) {
  const double denom =
      static_cast<double>(count) * (static_cast<double>(count) - 1.0);
  return to_double(sum_sq_num) / denom;
}

double z_score(double value, double prediction, double stderr_value) {
  if (stderr_value > 0.0 || std::isnan(stderr_value)) {
    return (value - prediction) / stderr_value;
  }
  if (value == prediction) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(),
                       value - prediction);
}

Classification rule(double z_thermal, double z_squeezed) {
  const bool thermal_ok = std::abs(z_thermal) < kSigmaThreshold;
  const bool squeezed_ok = std::abs(z_squeezed) < kSigmaThreshold;
  if (squeezed_ok && !thermal_ok) return Classification::squeezed;
  if (thermal_ok && !squeezed_ok) return Classification::thermal;
  return Classification::inconclusive;
}

CorrelationReport finalize(const Moments& total,
                           const std::vector<BatchMoments>& batches,
                           const DetectorConfig& det) {
  const std::uint64_t f = total.count;
  CorrelationReport r;
  r.flashes = f;
  r.low_statistics = f < kLowStatisticsThreshold;

  const double fd = static_cast<double>(f);
  r.mean_a = to_double(total.sum_a) / fd;
  r.mean_b = to_double(total.sum_b) / fd;

  const auto fi = static_cast<int128>(f);
  r.var_a = unbiased(f, fi * static_cast<int128>(total.sum_a2) -
                            static_cast<int128>(total.sum_a * total.sum_a));
  r.var_b = unbiased(f, fi * static_cast<int128>(total.sum_b2) -
                            static_cast<int128>(total.sum_b * total.sum_b));
  r.cov_ab = unbiased(f, fi * static_cast<int128>(total.sum_ab) -
                             static_cast<int128>(total.sum_a) *
                                 static_cast<int128>(total.sum_b));
  r.var_nab = unbiased(f, fi * static_cast<int128>(total.sum_d2) -
                              total.sum_d * total.sum_d);

  // batch-means standard error of var_nab
  if (batches.size() >= 2) {
    std::vector<double> vs;
    vs.reserve(batches.size());
    for (const auto& b : batches) {
      const auto c = static_cast<int128>(b.count);
      vs.push_back(unbiased(b.count, c * static_cast<int128>(b.sum_d2) -
                                         b.sum_d * b.sum_d));
    }
    double mean = 0.0;
    for (double v : vs) mean += v;
    mean /= static_cast<double>(vs.size());
    double ss = 0.0;
    for (double v : vs) ss += (v - mean) * (v - mean);
    const double batch_var = ss / (static_cast<double>(vs.size()) - 1.0);
    r.var_nab_stderr = std::sqrt(batch_var / static_cast<double>(vs.size()));
  } else {
    r.var_nab_stderr = std::numeric_limits<double>::infinity();
  }

  r.prediction_thermal =
      r.mean_a * (r.mean_a + 1.0) + r.mean_b * (r.mean_b + 1.0);

  // Squeezed prediction from the observed (thinned) means: with common pair
  // occupation N and efficiencies eta, Var(n_a' - n_b') =
  // N [eta_a (1-eta_a) + eta_b (1-eta_b)] + (eta_a - eta_b)^2 N (N + 1).
  double pair_occupation = 0.0;
  if (det.eta_a > 0.0 && det.eta_b > 0.0) {
    pair_occupation = 0.5 * (r.mean_a / det.eta_a + r.mean_b / det.eta_b);
  } else if (det.eta_a > 0.0) {
    pair_occupation = r.mean_a / det.eta_a;
  } else if (det.eta_b > 0.0) {
    pair_occupation = r.mean_b / det.eta_b;
  }
  const double spread = det.eta_a * (1.0 - det.eta_a) +
                        det.eta_b * (1.0 - det.eta_b);
  const double imbalance = det.eta_a - det.eta_b;
  r.prediction_squeezed =
      pair_occupation * spread +
      imbalance * imbalance * pair_occupation * (pair_occupation + 1.0);

  r.z_thermal = z_score(r.var_nab, r.prediction_thermal, r.var_nab_stderr);
  r.z_squeezed = z_score(r.var_nab, r.prediction_squeezed, r.var_nab_stderr);
  r.classification = rule(r.z_thermal, r.z_squeezed);
  return r;
}

struct ChunkResult {
  Moments moments;
  std::vector<std::pair<std::uint64_t, BatchMoments>> batch_partials;
};

template <typename SampleFn>
ChunkResult run_chunk(std::uint64_t first, std::uint64_t last,
                      const BatchLayout& layout, SampleFn&& sample,
                      PairSample* events) {
  ChunkResult out;
  std::uint64_t batch = layout.batch_of(first);
  BatchMoments partial;
  for (std::uint64_t g = first; g < last; ++g) {
    const std::uint64_t b = layout.batch_of(g);
    if (b != batch) {
      out.batch_partials.emplace_back(batch, partial);
      partial = BatchMoments{};
      batch = b;
    }
    const PairSample s = sample(g);
    if (events != nullptr) events[g] = s;
    out.moments.add(s);
    const std::int64_t d = s.n_a - s.n_b;
    ++partial.count;
    partial.sum_d += d;
    partial.sum_d2 += static_cast<uint128>(static_cast<int128>(d) * d);
  }
  out.batch_partials.emplace_back(batch, partial);
  return out;
}

}  // namespace

SourceConfig SourceConfig::squeezed(double zeta) {
  states::SqueezeParameter check(zeta);  // validates
  SourceConfig c;
  c.kind = states::SourceKind::squeezed;
  c.zeta = check.value();
  return c;
}

SourceConfig SourceConfig::thermal(double nbar_a, double nbar_b) {
  if (!std::isfinite(nbar_a) || nbar_a < 0.0 || !std::isfinite(nbar_b) ||
      nbar_b < 0.0) {
    throw std::domain_error("thermal occupations must be >= 0 and finite");
  }
  SourceConfig c;
  c.kind = states::SourceKind::thermal;
  c.nbar_a = nbar_a;
  c.nbar_b = nbar_b;
  return c;
}

DetectorConfig::DetectorConfig(double eta_a_in, double eta_b_in)
    : eta_a(eta_a_in), eta_b(eta_b_in) {
  const auto ok = [](double eta) {
    return std::isfinite(eta) && eta >= 0.0 && eta <= 1.0;
  };
  if (!ok(eta_a) || !ok(eta_b)) {
    throw std::domain_error("detector efficiencies must lie in [0, 1]");
  }
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::thermal:
      return "thermal";
    case Classification::squeezed:
      return "squeezed";
    default:
      return "inconclusive";
  }
}

PairSample sample_squeezed_pair(states::SqueezeParameter zeta,
                                rng::Stream& stream) {
  const GeometricSampler draw(states::geometric_ratio_squeezed(zeta));
  const std::int64_t n = draw(stream);
  return {n, n};
}

PairSample sample_thermal_pair(double nbar_a, double nbar_b,
                               rng::Stream& stream) {
  if (!(nbar_a >= 0.0) || !(nbar_b >= 0.0)) {
    throw std::domain_error("thermal occupations must be >= 0");
  }
  const GeometricSampler draw_a(nbar_a / (nbar_a + 1.0));
  const GeometricSampler draw_b(nbar_b / (nbar_b + 1.0));
  const std::int64_t a = draw_a(stream);
  const std::int64_t b = draw_b(stream);
  return {a, b};
}

PairSample apply_detector_loss(const PairSample& sample,
                               const DetectorConfig& det, rng::Stream& stream) {
  return {thin_count(sample.n_a, det.eta_a, stream),
          thin_count(sample.n_b, det.eta_b, stream)};
}

CorrelationReport run_ensemble(const SourceConfig& source,
                               const DetectorConfig& det,
                               std::uint64_t flashes, std::uint64_t seed,
                               const RunOptions& options) {
  if (flashes == 0) throw std::invalid_argument("flashes must be >= 1");

  const BatchLayout layout(flashes, pick_batch_count(flashes));
  const std::uint64_t chunks = (flashes + kChunkFlashes - 1) / kChunkFlashes;

  PairSample* events = nullptr;
  if (options.event_sink != nullptr) {
    options.event_sink->assign(flashes, PairSample{});
    events = options.event_sink->data();
  }

  // Per-flash sampling, parameterized once up front
  const bool is_squeezed = source.kind == states::SourceKind::squeezed;
  const states::SqueezeParameter zeta(is_squeezed ? source.zeta : 0.0);

  std::vector<ChunkResult> results(chunks);
  const auto worker_body = [&](std::uint64_t c) {
    rng::Stream stream(seed, c);
    const std::uint64_t first = c * kChunkFlashes;
    const std::uint64_t last = std::min(flashes, first + kChunkFlashes);
    auto sample_one = [&](std::uint64_t /*flash*/) {
      const PairSample raw =
          is_squeezed ? sample_squeezed_pair(zeta, stream)
                      : sample_thermal_pair(source.nbar_a, source.nbar_b,
                                            stream);
      return apply_detector_loss(raw, det, stream);
    };
    results[c] = run_chunk(first, last, layout, sample_one, events);
  };

  unsigned n_threads = options.threads > 0
                           ? static_cast<unsigned>(options.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(
      std::min<std::uint64_t>(n_threads, chunks));
  if (n_threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) worker_body(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::uint64_t c = next.fetch_add(1);
          if (c >= chunks) return;
          worker_body(c);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Deterministic merge in chunk order; all sums are exact integers, so the
  // result cannot depend on which worker ran which chunk.
  Moments total;
  std::vector<BatchMoments> batches(layout.batches);
  for (const auto& chunk : results) {
    total.merge(chunk.moments);
    for (const auto& [b, partial] : chunk.batch_partials) {
      batches[b].count += partial.count;
      batches[b].sum_d += partial.sum_d;
      batches[b].sum_d2 += partial.sum_d2;
    }
  }
  return finalize(total, batches, det);
}

CorrelationReport report_from_samples(std::span<const PairSample> samples,
                                      const DetectorConfig& det) {
  if (samples.empty()) {
    throw std::invalid_argument("sample set must be non-empty");
  }
  for (const auto& s : samples) {
    if (s.n_a < 0 || s.n_b < 0) {
      throw std::domain_error("photon counts must be nonnegative");
    }
  }
  const std::uint64_t flashes = samples.size();
  const BatchLayout layout(flashes, pick_batch_count(flashes));
  auto chunk = run_chunk(
      0, flashes, layout, [&](std::uint64_t g) { return samples[g]; },
      nullptr);
  std::vector<BatchMoments> batches(layout.batches);
  for (const auto& [b, partial] : chunk.batch_partials) {
    batches[b].count += partial.count;
    batches[b].sum_d += partial.sum_d;
    batches[b].sum_d2 += partial.sum_d2;
  }
  return finalize(chunk.moments, batches, det);
}

Classification classify(const CorrelationReport& report) {
  if (report.var_nab_stderr == 0.0 &&
      report.var_nab != report.prediction_thermal &&
      report.var_nab != report.prediction_squeezed) {
    throw std::domain_error(
        "classify: zero standard error with var_nab matching neither "
        "prediction (degenerate report)");
  }
  const double z_t =
      z_score(report.var_nab, report.prediction_thermal, report.var_nab_stderr);
  const double z_s = z_score(report.var_nab, report.prediction_squeezed,
                             report.var_nab_stderr);
  return rule(z_t, z_s);
}

}  // namespace pairtherm::montecarlo
