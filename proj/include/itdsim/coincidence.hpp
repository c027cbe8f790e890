#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "itdsim/errors.hpp"

namespace itdsim {

// All timestamps are 64-bit integer picoseconds; no floating-point time
// anywhere in this module.

/// Ascending event timestamps (ps) from one detector.
struct TimestampChannel {
  std::vector<std::int64_t> events;

  void validate() const;
};

/// The three-detector record: channel 1 heralds, channel 2 the Π₊ arm,
/// channel 3 the Π₋ arm.
struct TimestampStreams {
  TimestampChannel herald;
  TimestampChannel signal_plus;
  TimestampChannel signal_minus;
};

/// Delay-binned coincidence counts over a uniform delay grid.
struct CoincidenceHistogram {
  std::vector<std::int64_t> delays;
  std::vector<std::int64_t> counts;
  std::int64_t gate_width = 0;
};

struct Peak {
  std::int64_t delay_ps = 0;
  std::int64_t count = 0;
};

/// Interval from each signal event to its nearest strictly-preceding herald;
/// signals with no preceding herald are skipped. Two-pointer scan, O(m+n).
std::vector<std::int64_t> pair_intervals(const TimestampChannel& heralds,
                                         const TimestampChannel& signals);

inline constexpr std::int64_t kDefaultDelayMin = 1000;   // 1 ns
inline constexpr std::int64_t kDefaultDelayMax = 50000;  // 50 ns
inline constexpr std::int64_t kDefaultStep = 5;          // 5 ps
inline constexpr std::int64_t kDefaultGate = 2000;       // 2 ns

/// counts[i] = #{τ : delays[i] − gate/2 < τ < delays[i] + gate/2}, strict
/// endpoints on both sides.
CoincidenceHistogram histogram(const std::vector<std::int64_t>& intervals,
                               std::int64_t delay_min, std::int64_t delay_max,
                               std::int64_t step, std::int64_t gate);

/// Maximum count; ties broken toward the smallest delay.
Peak peak_extract(const CoincidenceHistogram& h);

/// O(m·n) oracle: exhaustive nearest-preceding-herald scan, then an open
/// window test at one delay.
std::int64_t brute_force_count(const TimestampChannel& heralds,
                               const TimestampChannel& signals,
                               std::int64_t delay, std::int64_t gate);

/// Split the record into consecutive windows of segment_ps (events at
/// t ∈ [k·segment, (k+1)·segment) land in group k).
std::vector<TimestampStreams> segment_streams(const TimestampStreams& streams,
                                              std::int64_t segment_ps);

/// CSV with header `channel,timestamp_ps`; rows in any order, sorted per
/// channel on read. Malformed rows raise an INPUT_FORMAT error carrying the
/// line number.
TimestampStreams read_timestamp_csv(std::istream& in);
void write_timestamp_csv(const TimestampStreams& streams, std::ostream& out);

void write_histogram_csv(const CoincidenceHistogram& h, std::ostream& out);

}  // namespace itdsim
