#include "triwave/cli/checkpoint.hpp"

#include <zlib.h>

#include <bit>
#include <fstream>
#include <iterator>

namespace triwave::cli {

namespace {

constexpr std::size_t kHeader = 4 + 4 + 8 + 8 * 4;

void put_u32(std::string& out, std::uint32_t x) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((x >> (8 * b)) & 0xffu));
}
void put_u64(std::string& out, std::uint64_t x) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((x >> (8 * b)) & 0xffu));
}
void put_f64(std::string& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }

std::uint64_t get_le(const std::string& in, std::size_t at, int bytes) {
  std::uint64_t x = 0;
  for (int b = 0; b < bytes; ++b) {
    x |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + b])) << (8 * b);
  }
  return x;
}
double get_f64(const std::string& in, std::size_t at) { return std::bit_cast<double>(get_le(in, at, 8)); }

std::uint32_t crc_of(const std::string& s, std::size_t begin, std::size_t end) {
  uLong c = crc32(0L, Z_NULL, 0);
  c = crc32(c, reinterpret_cast<const Bytef*>(s.data() + begin), static_cast<uInt>(end - begin));
  return static_cast<std::uint32_t>(c);
}

}  // namespace

std::string encode_checkpoint(const TriField& v, const Params& params, std::uint32_t version) {
  v.check_finite("checkpoint_write");
  const std::size_t n = v.size();
  std::string out;
  out.reserve(kHeader + 48 * n + 4);
  out.append("TRIW");
  put_u32(out, version);
  put_u64(out, n);
  put_f64(out, v.grid().half_length());
  put_f64(out, params.p);
  put_f64(out, params.alpha);
  put_f64(out, params.beta);
  for (const auto& c : v.components()) {
    for (const auto& z : c) {
      put_f64(out, z.real());
      put_f64(out, z.imag());
    }
  }
  put_u32(out, crc_of(out, 8, out.size()));
  return out;
}

Checkpoint decode_checkpoint(const std::string& in) {
  if (in.size() < 8) throw TruncatedFile("checkpoint shorter than its magic and version");
  if (in.compare(0, 4, "TRIW") != 0) throw BadMagic("not a triwave checkpoint (bad magic bytes)");
  const auto version = static_cast<std::uint32_t>(get_le(in, 4, 4));
  if (version != kCheckpointVersion) throw UnsupportedVersion(version);
  if (in.size() < kHeader + 4) throw TruncatedFile("checkpoint header is truncated");
  const std::uint64_t n = get_le(in, 8, 8);
  const bool crc_ok = crc_of(in, 8, in.size() - 4) == get_le(in, in.size() - 4, 4);
  const std::uint64_t max_n = (in.size() - kHeader) / 48 + 1;
  if (n > max_n || in.size() < kHeader + 48 * n + 4) {
    if (crc_ok) throw ChecksumMismatch("checkpoint length disagrees with its header");
    throw TruncatedFile("checkpoint payload is truncated");
  }
  if (in.size() != kHeader + 48 * n + 4 || !crc_ok) throw ChecksumMismatch("checkpoint checksum mismatch");

  Params params{get_f64(in, 24), get_f64(in, 32), get_f64(in, 40)};
  Grid g(get_f64(in, 16), static_cast<std::size_t>(n));
  std::array<ComplexField, 3> u;
  std::size_t at = kHeader;
  for (auto& c : u) {
    c.resize(n);
    for (auto& z : c) {
      z = cplx(get_f64(in, at), get_f64(in, at + 8));
      at += 16;
    }
  }
  return {TriField(g, std::move(u[0]), std::move(u[1]), std::move(u[2])), params};
}

void checkpoint_write(const TriField& v, const Params& params, const std::filesystem::path& path) {
  const std::string bytes = encode_checkpoint(v, params);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw CheckpointError("cannot open " + path.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw CheckpointError("write failed for " + path.string());
}

Checkpoint checkpoint_read(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CheckpointError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace triwave::cli
