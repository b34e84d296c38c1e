#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace xmap {

enum class Verdict : std::uint8_t { Survives = 1, Dies = 2 };

// Thread-safe memo of resolved survival verdicts. Values up to dense_limit
// live in a flat atomic table, larger ones in a locked hash map.
//
// Entries are write-once. Writing a different verdict for an existing key
// throws std::logic_error, since X is a function and a conflict means the
// engine is broken.
class StatusCache {
 public:
  static constexpr std::uint64_t kDefaultDenseLimit = 1u << 20;

  explicit StatusCache(std::uint64_t dense_limit = kDefaultDenseLimit);
  ~StatusCache();
  StatusCache(StatusCache&&) noexcept;
  StatusCache& operator=(StatusCache&&) noexcept;
  StatusCache(const StatusCache&) = delete;
  StatusCache& operator=(const StatusCache&) = delete;

  std::optional<Verdict> lookup(std::uint64_t n) const;
  void record(std::uint64_t n, Verdict v);

  std::size_t size() const;
  // Sorted copy of every entry.
  std::map<std::uint64_t, Verdict> snapshot() const;

  friend bool operator==(const StatusCache& a, const StatusCache& b) {
    return a.snapshot() == b.snapshot();
  }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class CacheFormatError : public std::runtime_error {
 public:
  CacheFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Text format: one "<n> <S|D>" record per line, strictly ascending n.
StatusCache load_cache(const std::filesystem::path& path,
                       std::uint64_t dense_limit = StatusCache::kDefaultDenseLimit);
StatusCache parse_cache(std::istream& in,
                        std::uint64_t dense_limit = StatusCache::kDefaultDenseLimit);
void write_cache(std::ostream& out, const StatusCache& cache);
// Writes to a sibling temp file then renames over path.
void save_cache(const std::filesystem::path& path, const StatusCache& cache);

}  // namespace xmap
