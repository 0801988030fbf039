#include "plainloop/audit/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "plainloop/common/error.hpp"

namespace plainloop::audit {

namespace {

[[noreturn]] void storage_failure(const std::string& what) {
  throw Error(ErrorCode::StorageFailure, what + ": " + std::strerror(errno));
}

void write_all(int fd, const std::string& data, const std::string& path) {
  std::size_t done = 0;
  while (done < data.size()) {
    const auto n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      storage_failure("write " + path);
    }
    done += static_cast<std::size_t>(n);
  }
}

void check_line(const std::string& line) {
  if (line.find('\n') != std::string::npos) {
    throw Error(ErrorCode::StorageFailure, "audit line contains a newline");
  }
}

}  // namespace

void MemoryStore::append(const std::string& line) {
  check_line(line);
  std::lock_guard lock(mutex_);
  lines_.push_back(line);
}

std::vector<std::string> MemoryStore::lines() const {
  std::lock_guard lock(mutex_);
  return lines_;
}

void MemoryStore::replace_all(const std::vector<std::string>& lines) {
  for (const auto& line : lines) check_line(line);
  std::lock_guard lock(mutex_);
  lines_ = lines;
}

FileStore::FileStore(std::string path) : path_(std::move(path)) {}

void FileStore::append(const std::string& line) {
  check_line(line);
  std::lock_guard lock(mutex_);
  const int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) storage_failure("open " + path_);
  try {
    write_all(fd, line + "\n", path_);
    if (::fsync(fd) != 0) storage_failure("fsync " + path_);
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
}

std::vector<std::string> FileStore::lines() const {
  std::lock_guard lock(mutex_);
  std::ifstream in(path_, std::ios::binary);
  std::vector<std::string> out;
  if (!in) return out;  // a missing file is an empty log
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

void FileStore::replace_all(const std::vector<std::string>& lines) {
  for (const auto& line : lines) check_line(line);
  std::lock_guard lock(mutex_);
  const auto tmp = path_ + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) storage_failure("open " + tmp);
  try {
    std::string data;
    for (const auto& line : lines) data += line + "\n";
    write_all(fd, data, tmp);
    if (::fsync(fd) != 0) storage_failure("fsync " + tmp);
  } catch (...) {
    ::close(fd);
    std::remove(tmp.c_str());
    throw;
  }
  ::close(fd);
  if (std::rename(tmp.c_str(), path_.c_str()) != 0) storage_failure("rename " + tmp);
}

void FlakyStore::append(const std::string& line) {
  if (failures_ > 0) {
    --failures_;
    throw Error(ErrorCode::StorageFailure, "injected storage failure");
  }
  inner_.append(line);
}

}  // namespace plainloop::audit
