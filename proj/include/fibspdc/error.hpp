#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibspdc {

enum class Errc {
  // usage
  InvalidArgument,
  UsageError,
  // data format
  MalformedHeader,
  MalformedRow,
  TooFewRows,
  NonMonotonicGrid,
  NegativeKappa,
  NonPositiveIndex,
  UnsortedStream,
  BadMagic,
  UnsupportedVersion,
  TruncatedFile,
  MalformedRecord,
  IoError,
  // numeric / domain
  OutOfRange,
  NonPositiveWavelength,
  DegenerateOrInverted,
  EnergyNotConserved,
  NegativeThickness,
  ZeroMismatch,
  NegativeAmplitude,
  NonPositiveWaist,
  InvalidNA,
  NonPositiveWindow,
  OffsetTooSmall,
  ChunkTooSmall,
  NonPositiveSingles,
  ZeroAccidentals,
  DegenerateAbscissa,
  InsufficientAngularSpan,
  InvalidModel,
  InvalidSweep,
  ZeroBackground,
};

enum class ErrorKind { Usage, DataFormat, Domain };

constexpr std::string_view to_string(Errc c) noexcept {
  switch (c) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::UsageError: return "UsageError";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::TooFewRows: return "TooFewRows";
    case Errc::NonMonotonicGrid: return "NonMonotonicGrid";
    case Errc::NegativeKappa: return "NegativeKappa";
    case Errc::NonPositiveIndex: return "NonPositiveIndex";
    case Errc::UnsortedStream: return "UnsortedStream";
    case Errc::BadMagic: return "BadMagic";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::MalformedRecord: return "MalformedRecord";
    case Errc::IoError: return "IoError";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NonPositiveWavelength: return "NonPositiveWavelength";
    case Errc::DegenerateOrInverted: return "DegenerateOrInverted";
    case Errc::EnergyNotConserved: return "EnergyNotConserved";
    case Errc::NegativeThickness: return "NegativeThickness";
    case Errc::ZeroMismatch: return "ZeroMismatch";
    case Errc::NegativeAmplitude: return "NegativeAmplitude";
    case Errc::NonPositiveWaist: return "NonPositiveWaist";
    case Errc::InvalidNA: return "InvalidNA";
    case Errc::NonPositiveWindow: return "NonPositiveWindow";
    case Errc::OffsetTooSmall: return "OffsetTooSmall";
    case Errc::ChunkTooSmall: return "ChunkTooSmall";
    case Errc::NonPositiveSingles: return "NonPositiveSingles";
    case Errc::ZeroAccidentals: return "ZeroAccidentals";
    case Errc::DegenerateAbscissa: return "DegenerateAbscissa";
    case Errc::InsufficientAngularSpan: return "InsufficientAngularSpan";
    case Errc::InvalidModel: return "InvalidModel";
    case Errc::InvalidSweep: return "InvalidSweep";
    case Errc::ZeroBackground: return "ZeroBackground";
  }
  return "Unknown";
}

constexpr ErrorKind kind_of(Errc c) noexcept {
  switch (c) {
    case Errc::InvalidArgument:
    case Errc::UsageError:
      return ErrorKind::Usage;
    case Errc::MalformedHeader:
    case Errc::MalformedRow:
    case Errc::TooFewRows:
    case Errc::NonMonotonicGrid:
    case Errc::NegativeKappa:
    case Errc::NonPositiveIndex:
    case Errc::UnsortedStream:
    case Errc::BadMagic:
    case Errc::UnsupportedVersion:
    case Errc::TruncatedFile:
    case Errc::MalformedRecord:
    case Errc::IoError:
      return ErrorKind::DataFormat;
    default:
      return ErrorKind::Domain;
  }
}

/// Exception carrying a machine-readable code and the parameter that caused it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string parameter = {})
      : std::runtime_error(message), code_(code), parameter_(std::move(parameter)) {}

  Errc code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_of(code_); }
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  Errc code_;
  std::string parameter_;
};

}  // namespace fibspdc
