#include "xmap/status_cache.hpp"

#include <atomic>
#include <charconv>
#include <fstream>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace xmap {

struct StatusCache::Impl {
  explicit Impl(std::uint64_t limit) : dense_limit(limit), dense(limit + 1) {}

  std::uint64_t dense_limit;
  std::vector<std::atomic<std::uint8_t>> dense;
  std::atomic<std::size_t> dense_count{0};
  mutable std::shared_mutex sparse_mutex;
  std::unordered_map<std::uint64_t, Verdict> sparse;
};

StatusCache::StatusCache(std::uint64_t dense_limit)
    : impl_(std::make_unique<Impl>(dense_limit)) {}
StatusCache::~StatusCache() = default;
StatusCache::StatusCache(StatusCache&&) noexcept = default;
StatusCache& StatusCache::operator=(StatusCache&&) noexcept = default;

std::optional<Verdict> StatusCache::lookup(std::uint64_t n) const {
  if (n <= impl_->dense_limit) {
    const auto raw = impl_->dense[n].load(std::memory_order_acquire);
    if (raw == 0) return std::nullopt;
    return static_cast<Verdict>(raw);
  }
  std::shared_lock lock(impl_->sparse_mutex);
  auto it = impl_->sparse.find(n);
  if (it == impl_->sparse.end()) return std::nullopt;
  return it->second;
}

void StatusCache::record(std::uint64_t n, Verdict v) {
  auto conflict = [n] {
    throw std::logic_error("conflicting cache verdicts for " + std::to_string(n));
  };
  if (n <= impl_->dense_limit) {
    std::uint8_t expected = 0;
    const auto raw = static_cast<std::uint8_t>(v);
    if (impl_->dense[n].compare_exchange_strong(expected, raw,
                                                std::memory_order_acq_rel)) {
      impl_->dense_count.fetch_add(1, std::memory_order_relaxed);
    } else if (expected != raw) {
      conflict();
    }
    return;
  }
  std::unique_lock lock(impl_->sparse_mutex);
  auto [it, inserted] = impl_->sparse.emplace(n, v);
  if (!inserted && it->second != v) conflict();
}

std::size_t StatusCache::size() const {
  std::shared_lock lock(impl_->sparse_mutex);
  return impl_->dense_count.load() + impl_->sparse.size();
}

std::map<std::uint64_t, Verdict> StatusCache::snapshot() const {
  std::map<std::uint64_t, Verdict> out;
  for (std::uint64_t n = 0; n <= impl_->dense_limit; ++n) {
    const auto raw = impl_->dense[n].load(std::memory_order_acquire);
    if (raw != 0) out.emplace_hint(out.end(), n, static_cast<Verdict>(raw));
  }
  std::shared_lock lock(impl_->sparse_mutex);
  for (const auto& [n, v] : impl_->sparse) out.emplace(n, v);
  return out;
}

StatusCache parse_cache(std::istream& in, std::uint64_t dense_limit) {
  StatusCache cache(dense_limit);
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::uint64_t> previous;
  while (std::getline(in, line)) {
    ++line_no;
    const char* first = line.data();
    const char* last = line.data() + line.size();
    std::uint64_t n = 0;
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc{} || ptr == first) {
      throw CacheFormatError(line_no, "expected '<n> <S|D>'");
    }
    if (n == 0) throw CacheFormatError(line_no, "n must be positive");
    if (last - ptr != 2 || ptr[0] != ' ' || (ptr[1] != 'S' && ptr[1] != 'D')) {
      throw CacheFormatError(line_no, "expected '<n> <S|D>'");
    }
    if (previous && n <= *previous) {
      throw CacheFormatError(line_no, "keys must be strictly ascending");
    }
    previous = n;
    cache.record(n, ptr[1] == 'S' ? Verdict::Survives : Verdict::Dies);
  }
  return cache;
}

StatusCache load_cache(const std::filesystem::path& path,
                       std::uint64_t dense_limit) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cache file " + path.string());
  return parse_cache(in, dense_limit);
}

void write_cache(std::ostream& out, const StatusCache& cache) {
  for (const auto& [n, v] : cache.snapshot()) {
    out << n << ' ' << (v == Verdict::Survives ? 'S' : 'D') << '\n';
  }
}

void save_cache(const std::filesystem::path& path, const StatusCache& cache) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    write_cache(out, cache);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace xmap
