#include "convexreg/io/atomic_write.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "convexreg/error.hpp"

namespace convexreg::io {

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      fail(ErrorKind::io, "cannot create directory " + path.parent_path().string() + ": " +
                            ec.message());
    }
  }
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      fail(ErrorKind::io, "cannot open " + tmp.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp, ec);
      fail(ErrorKind::io, "write to " + tmp.string() + " failed");
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorKind::io, "cannot move output into place at " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorKind::io, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace convexreg::io
