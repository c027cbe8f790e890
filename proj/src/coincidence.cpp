#include "itdsim/coincidence.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>

namespace itdsim {

void TimestampChannel::validate() const {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i] < 0)
      throw SimError(ErrorCode::BadParams, "timestamps must be nonnegative");
    if (i > 0 && events[i] < events[i - 1])
      throw SimError(ErrorCode::BadParams, "timestamps must be ascending");
  }
}

std::vector<std::int64_t> pair_intervals(const TimestampChannel& heralds,
                                         const TimestampChannel& signals) {
  heralds.validate();
  signals.validate();
  std::vector<std::int64_t> intervals;
  intervals.reserve(signals.events.size());
  std::size_t h = 0;
  for (const std::int64_t t_signal : signals.events) {
    // Advance to the last herald strictly before this signal.
    while (h < heralds.events.size() && heralds.events[h] < t_signal) ++h;
    if (h == 0) continue;
    intervals.push_back(t_signal - heralds.events[h - 1]);
  }
  return intervals;
}

namespace {

// τ strictly inside (delay − gate/2, delay + gate/2), evaluated in doubled
// coordinates so odd gates stay integer-exact: 2τ > 2d−w and 2τ < 2d+w.
std::int64_t count_in_window(const std::vector<std::int64_t>& sorted,
                             std::int64_t delay, std::int64_t gate) {
  const std::int64_t lo = 2 * delay - gate;
  const std::int64_t hi = 2 * delay + gate;
  const auto first_gt_lo =
      std::upper_bound(sorted.begin(), sorted.end(), lo,
                       [](std::int64_t bound, std::int64_t tau) {
                         return bound < 2 * tau;
                       });
  const auto first_ge_hi =
      std::lower_bound(sorted.begin(), sorted.end(), hi,
                       [](std::int64_t tau, std::int64_t bound) {
                         return 2 * tau < bound;
                       });
  return first_ge_hi - first_gt_lo;
}

}  // namespace

CoincidenceHistogram histogram(const std::vector<std::int64_t>& intervals,
                               std::int64_t delay_min, std::int64_t delay_max,
                               std::int64_t step, std::int64_t gate) {
  if (step <= 0 || gate <= 0 || delay_min >= delay_max)
    throw SimError(ErrorCode::BadGrid,
                   "need step > 0, gate > 0 and delay_min < delay_max");
  std::vector<std::int64_t> sorted = intervals;
  std::sort(sorted.begin(), sorted.end());

  CoincidenceHistogram h;
  h.gate_width = gate;
  for (std::int64_t d = delay_min; d <= delay_max; d += step) {
    h.delays.push_back(d);
    h.counts.push_back(count_in_window(sorted, d, gate));
  }
  return h;
}

Peak peak_extract(const CoincidenceHistogram& h) {
  if (h.counts.empty() || h.counts.size() != h.delays.size())
    throw SimError(ErrorCode::EmptyHistogram, "histogram is empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < h.counts.size(); ++i)
    if (h.counts[i] > h.counts[best]) best = i;
  return Peak{h.delays[best], h.counts[best]};
}

std::int64_t brute_force_count(const TimestampChannel& heralds,
                               const TimestampChannel& signals,
                               std::int64_t delay, std::int64_t gate) {
  std::int64_t count = 0;
  for (const std::int64_t t_signal : signals.events) {
    bool found = false;
    std::int64_t nearest = 0;
    for (const std::int64_t t_herald : heralds.events) {
      if (t_herald < t_signal && (!found || t_herald > nearest)) {
        nearest = t_herald;
        found = true;
      }
    }
    if (!found) continue;
    const std::int64_t tau = t_signal - nearest;
    if (2 * tau > 2 * delay - gate && 2 * tau < 2 * delay + gate) ++count;
  }
  return count;
}

std::vector<TimestampStreams> segment_streams(const TimestampStreams& streams,
                                              std::int64_t segment_ps) {
  if (segment_ps <= 0)
    throw SimError(ErrorCode::BadParams, "segment length must be positive");
  std::int64_t t_max = 0;
  for (const auto* ch :
       {&streams.herald, &streams.signal_plus, &streams.signal_minus}) {
    ch->validate();
    if (!ch->events.empty()) t_max = std::max(t_max, ch->events.back());
  }
  const std::size_t groups = std::size_t(t_max / segment_ps) + 1;
  std::vector<TimestampStreams> out(groups);
  const auto scatter = [&](const TimestampChannel& src,
                           TimestampChannel TimestampStreams::*member) {
    for (const std::int64_t t : src.events)
      (out[std::size_t(t / segment_ps)].*member).events.push_back(t);
  };
  scatter(streams.herald, &TimestampStreams::herald);
  scatter(streams.signal_plus, &TimestampStreams::signal_plus);
  scatter(streams.signal_minus, &TimestampStreams::signal_minus);
  return out;
}

namespace {

std::int64_t parse_int_field(const std::string& field, std::size_t line_no,
                             const char* what) {
  std::int64_t value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || value < 0)
    throw SimError(ErrorCode::InputFormat,
                   "line " + std::to_string(line_no) + ": bad " + what +
                       " '" + field + "'");
  return value;
}

}  // namespace

TimestampStreams read_timestamp_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line))
    throw SimError(ErrorCode::InputFormat, "empty input, expected a header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "channel,timestamp_ps")
    throw SimError(ErrorCode::InputFormat,
                   "line 1: expected header 'channel,timestamp_ps'");

  TimestampStreams streams;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw SimError(ErrorCode::InputFormat,
                     "line " + std::to_string(line_no) + ": missing comma");
    const std::int64_t channel =
        parse_int_field(line.substr(0, comma), line_no, "channel");
    const std::int64_t t =
        parse_int_field(line.substr(comma + 1), line_no, "timestamp");
    switch (channel) {
      case 1: streams.herald.events.push_back(t); break;
      case 2: streams.signal_plus.events.push_back(t); break;
      case 3: streams.signal_minus.events.push_back(t); break;
      default:
        throw SimError(ErrorCode::InputFormat,
                       "line " + std::to_string(line_no) +
                           ": channel must be 1, 2 or 3");
    }
  }
  for (auto* ch :
       {&streams.herald, &streams.signal_plus, &streams.signal_minus})
    std::sort(ch->events.begin(), ch->events.end());
  return streams;
}

void write_timestamp_csv(const TimestampStreams& streams, std::ostream& out) {
  out << "channel,timestamp_ps\n";
  const auto dump = [&](int channel, const TimestampChannel& ch) {
    for (const std::int64_t t : ch.events)
      out << channel << ',' << t << '\n';
  };
  dump(1, streams.herald);
  dump(2, streams.signal_plus);
  dump(3, streams.signal_minus);
}

void write_histogram_csv(const CoincidenceHistogram& h, std::ostream& out) {
  out << "delay_ps,count\n";
  for (std::size_t i = 0; i < h.delays.size(); ++i)
    out << h.delays[i] << ',' << h.counts[i] << '\n';
}

}  // namespace itdsim
