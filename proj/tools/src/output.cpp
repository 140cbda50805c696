#include "output.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <openssl/evp.h>
#include <unistd.h>

namespace vmolab::cli {

std::string config_digest(const nlohmann::json& config) {
  const std::string text = config.dump();
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < 8 && i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xf]);
  }
  return out;
}

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf.data(), buf.size(), "%.*g", precision, x);
    if (std::strtod(buf.data(), nullptr) == x) break;
  }
  return buf.data();
}

std::string number(std::optional<double> x) { return x ? number(*x) : "NA"; }

void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
      body(out);
      out.flush();
      if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

void write_csv(const std::filesystem::path& path, const std::string& command, const std::string& digest,
               const std::string& columns, const std::function<void(std::ostream&)>& rows) {
  write_atomically(path, [&](std::ostream& out) {
    out << "# " << command << " config_digest=" << digest << '\n' << columns << '\n';
    rows(out);
  });
}

}  // namespace vmolab::cli
