#pragma once

// Timestamp file formats.
//
// Binary `.pts` (all integers little-endian):
//   magic "PTS1" | version u16 | channel count u8 | duration_ps u64 |
//   records of (channel u8, time_ps u64), sorted by time.
// CSV: header `channel,time_ps`, rows sorted by time. An optional `# duration_ps=<N>`
//   comment before the header sets the acquisition span; otherwise the last timestamp is used.

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fibspdc/detail/text.hpp"
#include "fibspdc/error.hpp"
#include "fibspdc/tcspc.hpp"

namespace fibspdc {

inline constexpr std::array<char, 4> kPtsMagic{'P', 'T', 'S', '1'};
inline constexpr std::uint16_t kPtsVersion = 1;

struct TimestampFile {
  Picoseconds duration = 0;
  std::vector<TimestampStream> channels;  // index == channel id

  const TimestampStream& channel(std::size_t id) const {
    if (id >= channels.size()) {
      throw Error(Errc::InvalidArgument,
                  "channel " + std::to_string(id) + " not present (file has " +
                      std::to_string(channels.size()) + ")",
                  "channel");
    }
    return channels[id];
  }
};

namespace detail {

template <class UInt>
void put_le(std::ostream& out, UInt v) {
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
}

template <class UInt>
bool get_le(std::istream& in, UInt& v) {
  std::array<unsigned char, sizeof(UInt)> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), sizeof(UInt))) return false;
  v = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i) v |= static_cast<UInt>(buf[i]) << (8 * i);
  return true;
}

struct Record {
  std::uint8_t channel;
  Picoseconds time;
};

/// All events of all channels in time order, lower channel first on ties.
inline std::vector<Record> merge_records(std::span<const TimestampStream> streams) {
  std::vector<Record> merged;
  std::size_t total = 0;
  for (const auto& s : streams) total += s.times.size();
  merged.reserve(total);
  for (const auto& s : streams) {
    require_sorted(s);
    for (auto t : s.times) merged.push_back({s.channel, t});
  }
  std::stable_sort(merged.begin(), merged.end(), [](const Record& x, const Record& y) {
    return x.time != y.time ? x.time < y.time : x.channel < y.channel;
  });
  return merged;
}

inline TimestampFile assemble(std::vector<Record> records, std::size_t channel_count,
                              Picoseconds duration) {
  TimestampFile file;
  file.duration = duration;
  file.channels.resize(channel_count);
  for (std::size_t c = 0; c < channel_count; ++c) {
    file.channels[c].channel = static_cast<std::uint8_t>(c);
    file.channels[c].duration = duration;
  }
  for (const auto& r : records) file.channels[r.channel].times.push_back(r.time);
  return file;
}

}  // namespace detail

inline void write_pts(std::ostream& out, std::span<const TimestampStream> streams,
                      Picoseconds duration) {
  if (duration <= 0) throw Error(Errc::InvalidArgument, "duration must be > 0", "duration");
  std::uint8_t channel_count = 0;
  for (const auto& s : streams) {
    channel_count = std::max<std::uint8_t>(channel_count, static_cast<std::uint8_t>(s.channel + 1));
  }
  out.write(kPtsMagic.data(), kPtsMagic.size());
  detail::put_le<std::uint16_t>(out, kPtsVersion);
  detail::put_le<std::uint8_t>(out, channel_count);
  detail::put_le<std::uint64_t>(out, static_cast<std::uint64_t>(duration));
  for (const auto& r : detail::merge_records(streams)) {
    if (r.time < 0 || r.time > duration) {
      throw Error(Errc::MalformedRecord, "timestamp outside [0, duration]", "time_ps");
    }
    detail::put_le<std::uint8_t>(out, r.channel);
    detail::put_le<std::uint64_t>(out, static_cast<std::uint64_t>(r.time));
  }
  if (!out) throw Error(Errc::IoError, "failed writing timestamp stream");
}

inline TimestampFile read_pts(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size())) throw Error(Errc::TruncatedFile, "missing .pts magic");
  if (magic != kPtsMagic) throw Error(Errc::BadMagic, "not a PTS1 timestamp file");

  std::uint16_t version = 0;
  std::uint8_t channel_count = 0;
  std::uint64_t duration = 0;
  if (!detail::get_le(in, version)) throw Error(Errc::TruncatedFile, "truncated .pts header");
  if (version != kPtsVersion) {
    throw Error(Errc::UnsupportedVersion, "unsupported .pts version " + std::to_string(version));
  }
  if (!detail::get_le(in, channel_count) || !detail::get_le(in, duration)) {
    throw Error(Errc::TruncatedFile, "truncated .pts header");
  }
  if (duration == 0 || duration > static_cast<std::uint64_t>(std::numeric_limits<Picoseconds>::max())) {
    throw Error(Errc::MalformedRecord, "invalid duration in .pts header", "duration_ps");
  }

  std::vector<detail::Record> records;
  Picoseconds previous = 0;
  while (true) {
    std::uint8_t channel = 0;
    if (!detail::get_le(in, channel)) break;
    std::uint64_t t = 0;
    if (!detail::get_le(in, t)) {
      throw Error(Errc::TruncatedFile, "truncated record " + std::to_string(records.size()));
    }
    if (channel >= channel_count) {
      throw Error(Errc::MalformedRecord, "record channel exceeds channel count", "channel");
    }
    if (t > duration) {
      throw Error(Errc::MalformedRecord,
                  "record " + std::to_string(records.size()) + " lies beyond duration", "time_ps");
    }
    const auto time = static_cast<Picoseconds>(t);
    if (time < previous) {
      throw Error(Errc::UnsortedStream,
                  "record " + std::to_string(records.size()) + " is earlier than its predecessor",
                  "time_ps");
    }
    previous = time;
    records.push_back({channel, time});
  }
  return detail::assemble(std::move(records), channel_count, static_cast<Picoseconds>(duration));
}

inline constexpr std::string_view kTimestampCsvHeader = "channel,time_ps";

inline void write_timestamp_csv(std::ostream& out, std::span<const TimestampStream> streams,
                                Picoseconds duration) {
  out << "# duration_ps=" << duration << '\n' << kTimestampCsvHeader << '\n';
  for (const auto& r : detail::merge_records(streams)) {
    out << static_cast<int>(r.channel) << ',' << r.time << '\n';
  }
}

inline TimestampFile read_timestamp_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  Picoseconds duration = 0;
  std::vector<detail::Record> records;
  std::size_t channel_count = 0;
  Picoseconds previous = std::numeric_limits<Picoseconds>::min();

  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (!header_seen) {
      if (body.empty()) continue;
      if (body.front() == '#') {
        constexpr std::string_view key = "duration_ps=";
        const auto rest = detail::trim(body.substr(1));
        if (rest.starts_with(key)) {
          const auto v = detail::parse_int(rest.substr(key.size()));
          if (!v || *v <= 0) throw Error(Errc::MalformedRecord, "invalid duration_ps comment");
          duration = *v;
        }
        continue;
      }
      if (body != kTimestampCsvHeader) {
        throw Error(Errc::MalformedHeader, "expected header 'channel,time_ps'");
      }
      header_seen = true;
      continue;
    }
    if (body.empty()) continue;
    const auto fields = detail::split(body);
    const auto ch = fields.size() == 2 ? detail::parse_int(fields[0]) : std::nullopt;
    const auto t = fields.size() == 2 ? detail::parse_int(fields[1]) : std::nullopt;
    if (!ch || !t || *ch < 0 || *ch > 255 || *t < 0) {
      throw Error(Errc::MalformedRow, "line " + std::to_string(line_no) + ": expected channel,time_ps");
    }
    if (*t < previous) {
      throw Error(Errc::UnsortedStream,
                  "line " + std::to_string(line_no) + " is earlier than its predecessor", "time_ps");
    }
    previous = *t;
    channel_count = std::max<std::size_t>(channel_count, static_cast<std::size_t>(*ch) + 1);
    records.push_back({static_cast<std::uint8_t>(*ch), *t});
  }
  if (!header_seen) throw Error(Errc::MalformedHeader, "missing timestamp CSV header");
  if (duration == 0) duration = records.empty() ? 0 : records.back().time;
  if (duration <= 0) throw Error(Errc::MalformedRecord, "cannot infer a positive duration", "duration_ps");
  if (!records.empty() && records.back().time > duration) {
    throw Error(Errc::MalformedRecord, "timestamps extend beyond duration_ps", "time_ps");
  }
  return detail::assemble(std::move(records), std::max<std::size_t>(channel_count, 2), duration);
}

/// Reads `.pts` or CSV depending on the file extension.
inline TimestampFile read_timestamps(const std::string& path) {
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  std::ifstream in(path, csv ? std::ios::in : std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'", path);
  return csv ? read_timestamp_csv(in) : read_pts(in);
}

}  // namespace fibspdc
