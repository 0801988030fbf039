#pragma once

#include <mutex>
#include <string>
#include <vector>

namespace plainloop::audit {

// Durable ordered append plus ranged scan. Lines never contain '\n'.
class EventStore {
 public:
  virtual ~EventStore() = default;
  // Returns only once the line is durable. Throws StorageFailure.
  virtual void append(const std::string& line) = 0;
  virtual std::vector<std::string> lines() const = 0;
  // Atomic whole-log rewrite, used only by redaction.
  virtual void replace_all(const std::vector<std::string>& lines) = 0;
};

class MemoryStore final : public EventStore {
 public:
  void append(const std::string& line) override;
  std::vector<std::string> lines() const override;
  void replace_all(const std::vector<std::string>& lines) override;

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> lines_;
};

// JSON-lines file; fsync after every append, rename for rewrites.
class FileStore final : public EventStore {
 public:
  explicit FileStore(std::string path);

  void append(const std::string& line) override;
  std::vector<std::string> lines() const override;
  void replace_all(const std::vector<std::string>& lines) override;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  mutable std::mutex mutex_;
};

// Test double: the next `failures` appends throw StorageFailure without
// writing anything.
class FlakyStore final : public EventStore {
 public:
  void fail_next(int failures) { failures_ = failures; }

  void append(const std::string& line) override;
  std::vector<std::string> lines() const override { return inner_.lines(); }
  void replace_all(const std::vector<std::string>& lines) override { inner_.replace_all(lines); }

 private:
  MemoryStore inner_;
  int failures_ = 0;
};

}  // namespace plainloop::audit
