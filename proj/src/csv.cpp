#include "cyclordf/csv.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include "cyclordf/errors.hpp"

namespace cyclordf {

namespace {

std::string format_value(const CsvValue& v) {
  struct Visitor {
    std::string operator()(double d) const {
      if (d == 0.0) return "0";  // folds -0
      std::array<char, 64> buf{};
      std::snprintf(buf.data(), buf.size(), "%.12g", d);
      return buf.data();
    }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, v);
}

}  // namespace

std::string format_csv(const std::vector<CsvRow>& rows, const CsvSchema& schema) {
  std::string out;
  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    if (c) out += ',';
    out += schema.columns[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != schema.columns.size())
      throw Error(ErrorKind::InvalidArgument, "csv: row width does not match the schema");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_value(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string emit_csv(const std::vector<CsvRow>& rows, const CsvSchema& schema,
                     const std::string& path) {
  const std::string body = format_csv(rows, schema);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  f.close();
  if (!f) throw Error(ErrorKind::Io, "failed writing " + path);
  return sha256_hex(body);
}

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1)
    throw Error(ErrorKind::Io, "sha256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xf];
  }
  return hex;
}

}  // namespace cyclordf
