#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "triwave/field.hpp"

namespace triwave::cli {

inline constexpr std::uint32_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class BadMagic : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};
class UnsupportedVersion : public CheckpointError {
 public:
  UnsupportedVersion(std::uint32_t found)
      : CheckpointError("unsupported checkpoint version " + std::to_string(found) + " (expected " +
                        std::to_string(kCheckpointVersion) + ")"),
        found_(found) {}
  std::uint32_t found() const noexcept { return found_; }

 private:
  std::uint32_t found_;
};
class ChecksumMismatch : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};
class TruncatedFile : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};

struct Checkpoint {
  TriField field;
  Params params;
};

/// Little-endian layout:
///   "TRIW" | u32 version | u64 N | f64 L | f64 p | f64 alpha | f64 beta |
///   3N x (f64 re, f64 im) | u32 CRC-32 of every byte after the version field.
std::string encode_checkpoint(const TriField& v, const Params& params, std::uint32_t version = kCheckpointVersion);
Checkpoint decode_checkpoint(const std::string& bytes);

void checkpoint_write(const TriField& v, const Params& params, const std::filesystem::path& path);
Checkpoint checkpoint_read(const std::filesystem::path& path);

}  // namespace triwave::cli
