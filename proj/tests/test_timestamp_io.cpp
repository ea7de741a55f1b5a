#include <gtest/gtest.h>

#include <sstream>
#include <vector>

#include "fibspdc/timestamp_io.hpp"

using namespace fibspdc;

namespace {

std::vector<TimestampStream> sample_streams() {
  return {{0, {0, 10, 10, 5000, 99'999}, 100'000}, {1, {10, 11, 70'000, 100'000}, 100'000}};
}

Errc read_error(const std::string& bytes) {
  std::istringstream in(bytes);
  try {
    read_pts(in);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

std::string pts_bytes(const std::vector<TimestampStream>& streams, Picoseconds duration) {
  std::ostringstream out(std::ios::binary);
  write_pts(out, streams, duration);
  return out.str();
}

}  // namespace

TEST(TimestampIo, PtsRoundTrip) {
  const auto streams = sample_streams();
  const auto bytes = pts_bytes(streams, 100'000);
  EXPECT_EQ(bytes.size(), 4u + 2 + 1 + 8 + 9u * 9);
  EXPECT_EQ(bytes.substr(0, 4), "PTS1");
  std::istringstream in(bytes);
  const auto file = read_pts(in);
  EXPECT_EQ(file.duration, 100'000);
  ASSERT_EQ(file.channels.size(), 2u);
  EXPECT_EQ(file.channel(0).times, streams[0].times);
  EXPECT_EQ(file.channel(1).times, streams[1].times);
  EXPECT_EQ(file.channel(1).channel, 1);
  // rewriting the parsed streams reproduces the same bytes
  EXPECT_EQ(pts_bytes(file.channels, file.duration), bytes);
}

TEST(TimestampIo, PtsIsLittleEndian) {
  const auto bytes = pts_bytes({{0, {0x0102}, 0x0A0B}, {1, {}, 0x0A0B}}, 0x0A0B);
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1);  // version low byte
  EXPECT_EQ(static_cast<unsigned char>(bytes[5]), 0);
  EXPECT_EQ(static_cast<unsigned char>(bytes[6]), 2);  // channel count
  EXPECT_EQ(static_cast<unsigned char>(bytes[7]), 0x0B);
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 0x0A);
  EXPECT_EQ(static_cast<unsigned char>(bytes[15]), 0);     // record channel
  EXPECT_EQ(static_cast<unsigned char>(bytes[16]), 0x02);  // record time
  EXPECT_EQ(static_cast<unsigned char>(bytes[17]), 0x01);
}

TEST(TimestampIo, PtsRejectsCorruptInput) {
  const auto good = pts_bytes(sample_streams(), 100'000);
  EXPECT_EQ(read_error("XXXX" + good.substr(4)), Errc::BadMagic);
  EXPECT_EQ(read_error(good.substr(0, 3)), Errc::TruncatedFile);
  EXPECT_EQ(read_error(good.substr(0, 10)), Errc::TruncatedFile);
  EXPECT_EQ(read_error(good.substr(0, good.size() - 3)), Errc::TruncatedFile);

  auto version = good;
  version[4] = 2;
  EXPECT_EQ(read_error(version), Errc::UnsupportedVersion);

  auto channel = good;
  channel[15] = 7;
  EXPECT_EQ(read_error(channel), Errc::MalformedRecord);

  // swap the time of the first two records of the merged stream so time decreases
  auto unsorted = good;
  unsorted[16 + 9] = 0;
  unsorted[16] = 5;
  EXPECT_EQ(read_error(unsorted), Errc::UnsortedStream);
}

TEST(TimestampIo, WriterRejectsOutOfRangeEvents) {
  std::ostringstream out;
  EXPECT_THROW(write_pts(out, std::vector<TimestampStream>{{0, {5, 200}, 100}}, 100), Error);
  EXPECT_THROW(write_pts(out, std::vector<TimestampStream>{{0, {5}, 100}}, 0), Error);
}

TEST(TimestampIo, CsvRoundTrip) {
  const auto streams = sample_streams();
  std::stringstream buf;
  write_timestamp_csv(buf, streams, 100'000);
  const auto file = read_timestamp_csv(buf);
  EXPECT_EQ(file.duration, 100'000);
  EXPECT_EQ(file.channel(0).times, streams[0].times);
  EXPECT_EQ(file.channel(1).times, streams[1].times);
}

TEST(TimestampIo, CsvRejectsBadInput) {
  const auto code_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_timestamp_csv(in);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  EXPECT_EQ(code_of("channel,time_ps\n0,10\n1,5\n"), Errc::UnsortedStream);
  EXPECT_EQ(code_of("chan,t\n0,10\n"), Errc::MalformedHeader);
  EXPECT_EQ(code_of("channel,time_ps\n0,x\n"), Errc::MalformedRow);
  EXPECT_EQ(code_of("channel,time_ps\n0,-4\n"), Errc::MalformedRow);
  EXPECT_EQ(code_of("# duration_ps=5\nchannel,time_ps\n0,10\n"), Errc::MalformedRecord);
  EXPECT_EQ(code_of(""), Errc::MalformedHeader);
}

TEST(TimestampIo, CsvDurationDefaultsToLastEvent) {
  std::istringstream in("channel,time_ps\n0,10\n1,40\n");
  const auto file = read_timestamp_csv(in);
  EXPECT_EQ(file.duration, 40);
  EXPECT_EQ(file.channels.size(), 2u);
}
