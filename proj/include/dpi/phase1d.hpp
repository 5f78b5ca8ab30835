#pragma once

// Hilbert-transform phase analysis of uniformly sampled 1D signals.

#include <Eigen/Core>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "dpi/angles.hpp"
#include "dpi/field.hpp"
#include "dpi/spectra.hpp"

namespace dpi {

template <typename Scalar>
class Signal {
 public:
  using Values = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  Signal(Values samples, double sample_rate_hz)
      : samples_(std::move(samples)), rate_(sample_rate_hz) {
    if (samples_.size() < 2) throw InvalidInput("signal needs at least 2 samples");
    if (!(rate_ > 0) || !std::isfinite(rate_)) throw InvalidInput("sample rate must be positive");
    if (!samples_.allFinite()) throw InvalidInput("signal contains non-finite samples");
  }

  const Values& samples() const noexcept { return samples_; }
  double sample_rate_hz() const noexcept { return rate_; }
  Index size() const noexcept { return samples_.size(); }

  Field<Scalar> as_field() const { return Field<Scalar>(Shape{size()}, samples_); }

 private:
  Values samples_;
  double rate_;
};

using Signald = Signal<double>;

/// Instantaneous phases in (-pi, pi].
template <typename Scalar>
struct PhaseSeries {
  Eigen::Array<Scalar, Eigen::Dynamic, 1> values;
};

template <typename Scalar>
class ChannelSet {
 public:
  ChannelSet(std::vector<Signal<Scalar>> channels, std::vector<std::string> labels)
      : channels_(std::move(channels)), labels_(std::move(labels)) {
    if (channels_.size() != labels_.size())
      throw InvalidInput("channel and label counts differ");
    for (const auto& ch : channels_) {
      if (ch.size() != channels_.front().size())
        throw InvalidInput("channels differ in length");
      if (ch.sample_rate_hz() != channels_.front().sample_rate_hz())
        throw InvalidInput("channels differ in sample rate");
    }
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size())
      throw InvalidInput("channel labels are not unique");
  }

  const std::vector<Signal<Scalar>>& channels() const noexcept { return channels_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return channels_.size(); }

 private:
  std::vector<Signal<Scalar>> channels_;
  std::vector<std::string> labels_;
};

/// Symmetric channel-by-channel matrix of mean phase differences.
struct PairwiseDPIMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> labels;
};

template <typename Scalar>
Signal<Scalar> hilbert(const Signal<Scalar>& f) {
  const auto m = hilbert_multiplier<Scalar>(frequency_grid({f.size()}));
  return Signal<Scalar>(apply_multiplier(f.as_field(), m).values(), f.sample_rate_hz());
}

/// Angle of the analytic signal f + iHf at every sample.
template <typename Scalar>
PhaseSeries<Scalar> instantaneous_phase(const Signal<Scalar>& f) {
  const Signal<Scalar> h = hilbert(f);
  PhaseSeries<Scalar> phase{decltype(PhaseSeries<Scalar>::values)(f.size())};
  for (Index m = 0; m < f.size(); ++m) phase.values[m] = phase_angle(h.samples()[m], f.samples()[m]);
  return phase;
}

namespace detail {

inline void require_compatible(Index na, double ra, Index nb, double rb) {
  if (na != nb)
    throw InvalidInput("signal lengths differ: " + std::to_string(na) + " vs " + std::to_string(nb));
  if (ra != rb) throw InvalidInput("signal sample rates differ");
}

template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> abs_phase_difference(const PhaseSeries<Scalar>& a,
                                                              const PhaseSeries<Scalar>& b) {
  Eigen::Array<Scalar, Eigen::Dynamic, 1> d(a.values.size());
  for (Index m = 0; m < d.size(); ++m) d[m] = std::abs(wrap_difference(a.values[m], b.values[m]));
  return d;
}

}  // namespace detail

/// |phi_f - phi_g| wrapped into [0, pi], per sample.
template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> phase_difference(const Signal<Scalar>& f,
                                                          const Signal<Scalar>& g) {
  detail::require_compatible(f.size(), f.sample_rate_hz(), g.size(), g.sample_rate_hz());
  return detail::abs_phase_difference(instantaneous_phase(f), instantaneous_phase(g));
}

template <typename Scalar>
Scalar mean_phase_difference(const Signal<Scalar>& f, const Signal<Scalar>& g) {
  return phase_difference(f, g).mean();
}

/// Ideal zero-phase band-pass: keeps bins with |freq| in [lo_hz, hi_hz].
template <typename Scalar>
Signal<Scalar> bandpass(const Signal<Scalar>& f, double lo_hz, double hi_hz) {
  const double fs = f.sample_rate_hz();
  if (!(lo_hz >= 0) || !(lo_hz < hi_hz) || !(hi_hz <= fs / 2))
    throw InvalidInput("invalid band [" + std::to_string(lo_hz) + ", " + std::to_string(hi_hz) +
                       "] Hz for sample rate " + std::to_string(fs) + " Hz");
  const Index n = f.size();
  Multiplier<Scalar> m = Multiplier<Scalar>::constant({n}, Scalar(0));
  for (Index k = 0; k < n; ++k) {
    const Index signed_k = k <= (n - 1) / 2 ? k : k - n;
    const double hz = static_cast<double>(std::abs(signed_k)) * fs / static_cast<double>(n);
    if (hz >= lo_hz && hz <= hi_hz) m.values[k] = Scalar(1);
  }
  return Signal<Scalar>(apply_multiplier(f.as_field(), m).values(), fs);
}

/// Band-passes every channel, then fills entry (i, j) with the mean phase
/// difference of channels i and j.
template <typename Scalar>
PairwiseDPIMatrix pairwise_dpi_matrix(const ChannelSet<Scalar>& cs, double lo_hz, double hi_hz) {
  const auto c = static_cast<Index>(cs.size());
  if (c < 2) throw InvalidInput("pairwise DPI needs at least 2 channels");
  std::vector<PhaseSeries<Scalar>> phases;
  phases.reserve(cs.size());
  for (const auto& ch : cs.channels()) phases.push_back(instantaneous_phase(bandpass(ch, lo_hz, hi_hz)));

  PairwiseDPIMatrix out{Eigen::MatrixXd::Zero(c, c), cs.labels()};
  for (Index i = 0; i < c; ++i)
    for (Index j = i + 1; j < c; ++j)
      out.values(i, j) = out.values(j, i) =
          static_cast<double>(detail::abs_phase_difference(phases[i], phases[j]).mean());
  return out;
}

}  // namespace dpi
