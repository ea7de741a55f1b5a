#include <gtest/gtest.h>

#include "fibspdc/units.hpp"

using namespace fibspdc;

TEST(Units, Time) {
  EXPECT_EQ(units::time_ps("1.5ns"), 1500);
  EXPECT_EQ(units::time_ps("60ps"), 60);
  EXPECT_EQ(units::time_ps("120s"), 120'000'000'000'000);
  EXPECT_EQ(units::time_ps("22ms"), 22'000'000'000);
  EXPECT_EQ(units::time_ps("3us"), 3'000'000);
  EXPECT_EQ(units::time_ps("3\xC2\xB5s"), 3'000'000);
  EXPECT_EQ(units::time_ps("2min"), 120'000'000'000'000);
  EXPECT_EQ(units::time_ps(" 100ns "), 100'000);
  EXPECT_EQ(units::time_ps("-5ns"), -5000);
}

TEST(Units, Length) {
  EXPECT_DOUBLE_EQ(units::length_nm("424nm"), 424.0);
  EXPECT_DOUBLE_EQ(units::length_nm("2um"), 2000.0);
  EXPECT_DOUBLE_EQ(units::length_nm("2\xC2\xB5m"), 2000.0);
  EXPECT_DOUBLE_EQ(units::length_nm("1mm"), 1e6);
  EXPECT_DOUBLE_EQ(units::length_um("2.3um"), 2.3);
}

TEST(Units, Rate) {
  EXPECT_DOUBLE_EQ(units::rate_hz("1kHz"), 1000.0);
  EXPECT_DOUBLE_EQ(units::rate_hz("100Hz"), 100.0);
  EXPECT_DOUBLE_EQ(units::rate_hz("2MHz"), 2e6);
  EXPECT_DOUBLE_EQ(units::rate_hz("500mHz"), 0.5);
  EXPECT_DOUBLE_EQ(units::rate_hz("82.5Hz/mW"), 82.5);
}

TEST(Units, MissingOrBadSuffixIsUsageError) {
  for (const char* s : {"1500", "1.5", "ns", "1.5 parsecs", "abcns", ""}) {
    try {
      units::time_ps(s, "--window");
      FAIL() << s;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::UsageError);
      EXPECT_EQ(e.kind(), ErrorKind::Usage);
      EXPECT_EQ(e.parameter(), "--window");
    }
  }
  EXPECT_THROW(units::length_nm("5ns"), Error);
  EXPECT_THROW(units::rate_hz("5nm"), Error);
}
