#include "touchscope/store.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "touchscope/error.hpp"

namespace fs = std::filesystem;

namespace touchscope {
namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::StoreIo, fmt::format("cannot read {}", p.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& p, std::string_view data) {
  static std::atomic<unsigned long> counter{0};
  const fs::path tmp = fmt::format("{}.{}.tmp", p.string(), counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::StoreIo, fmt::format("cannot write {}", tmp.string()));
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(ErrorCode::StoreIo, fmt::format("short write to {}", tmp.string()));
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) throw Error(ErrorCode::StoreIo, fmt::format("cannot replace {}: {}", p.string(), ec.message()));
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::StoreIo, "sha256 failed");
  }
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
  return out;
}

bool SessionStore::valid_session_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 64 || id.front() == '.') return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

SessionStore::SessionStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_ / "sessions", ec);
  if (ec) {
    throw Error(ErrorCode::StoreIo, fmt::format("cannot create store at {}: {}", root_.string(), ec.message()));
  }
  load_existing();
}

fs::path SessionStore::session_dir(const std::string& id) const { return root_ / "sessions" / id; }

void SessionStore::load_existing() {
  for (const auto& entry : fs::directory_iterator(root_ / "sessions")) {
    if (!entry.is_directory()) continue;
    const auto id = entry.path().filename().string();
    const auto log_path = entry.path() / "session.log";
    if (!valid_session_id(id) || !fs::exists(log_path)) continue;
    const auto text = read_file(log_path);
    auto snap = std::make_shared<StoredSession>();
    snap->session_id = id;
    snap->log_hash = sha256_hex(text);
    snap->session = std::make_shared<const Session>(load_session(text, id));
    const auto regions_path = entry.path() / "regions.txt";
    if (fs::exists(regions_path)) {
      const auto regions_text = read_file(regions_path);
      snap->regions = parse_regions(regions_text);
      snap->regions_hash = sha256_hex(regions_text);
    }
    index_[id] = std::move(snap);
  }
}

std::shared_ptr<std::mutex> SessionStore::writer_lock(const std::string& id) {
  std::unique_lock lock(index_mutex_);
  auto& m = writers_[id];
  if (!m) m = std::make_shared<std::mutex>();
  return m;
}

std::shared_ptr<const StoredSession> SessionStore::put(std::optional<std::string> session_id,
                                                       std::string_view log_text) {
  const std::string hash = sha256_hex(log_text);
  const std::string id = session_id.value_or(hash.substr(0, 16));
  if (!valid_session_id(id)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("invalid session id '{}'", id));
  }

  auto writer = writer_lock(id);
  std::unique_lock guard(*writer, std::try_to_lock);
  if (!guard.owns_lock()) {
    throw Error(ErrorCode::SessionBusy, fmt::format("session '{}' is being written", id));
  }

  // parse before touching disk so a bad log leaves the store unchanged
  auto session = std::make_shared<const Session>(load_session(log_text, id));

  std::shared_ptr<const StoredSession> previous;
  {
    std::shared_lock lock(index_mutex_);
    if (auto it = index_.find(id); it != index_.end()) previous = it->second;
  }

  const auto dir = session_dir(id);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::StoreIo, fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  if (previous && previous->log_hash != hash) {
    fs::remove_all(dir / "cache", ec);
    std::lock_guard cl(cache_mutex_);
    const std::string prefix = previous->log_hash + "/";
    for (auto it = cache_.lower_bound(prefix); it != cache_.end() && it->first.starts_with(prefix);) {
      it = cache_.erase(it);
    }
  }
  write_file_atomic(dir / "session.log", log_text);

  auto snap = std::make_shared<StoredSession>();
  snap->session_id = id;
  snap->log_hash = hash;
  snap->session = std::move(session);
  if (previous) {
    snap->regions = previous->regions;
    snap->regions_hash = previous->regions_hash;
  }
  std::unique_lock lock(index_mutex_);
  index_[id] = snap;
  return snap;
}

std::shared_ptr<const StoredSession> SessionStore::get(const std::string& session_id) const {
  std::shared_lock lock(index_mutex_);
  auto it = index_.find(session_id);
  if (it == index_.end()) {
    throw Error(ErrorCode::SessionNotFound, fmt::format("no session '{}'", session_id));
  }
  return it->second;
}

std::vector<std::string> SessionStore::list() const {
  std::shared_lock lock(index_mutex_);
  std::vector<std::string> out;
  out.reserve(index_.size());
  for (const auto& [id, snap] : index_) out.push_back(id);
  return out;
}

std::shared_ptr<const StoredSession> SessionStore::set_regions(const std::string& session_id,
                                                               std::vector<SemanticRegion> regions) {
  auto current = get(session_id);
  auto writer = writer_lock(session_id);
  std::lock_guard guard(*writer);
  current = get(session_id);
  validate_regions(regions, current->session->device);

  const std::string text = format_regions(regions);
  write_file_atomic(session_dir(session_id) / "regions.txt", text);

  auto snap = std::make_shared<StoredSession>(*current);
  snap->regions = parse_regions(text);
  snap->regions_hash = sha256_hex(text);
  std::unique_lock lock(index_mutex_);
  index_[session_id] = snap;
  return snap;
}

std::optional<std::string> SessionStore::cached(const StoredSession& snapshot,
                                                const std::string& key) const {
  const std::string key_hash = sha256_hex(key);
  const std::string mem_key = snapshot.log_hash + "/" + key_hash;
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(mem_key); it != cache_.end()) return it->second;
  }
  const auto path = session_dir(snapshot.session_id) / "cache" / (key_hash + ".json");
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  // on-disk entries carry the log hash on their first line
  auto text = read_file(path);
  const auto nl = text.find('\n');
  if (nl == std::string::npos || text.compare(0, nl, snapshot.log_hash) != 0) return std::nullopt;
  std::string body = text.substr(nl + 1);
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(mem_key, body);
  return body;
}

void SessionStore::store_cache(const StoredSession& snapshot, const std::string& key,
                               const std::string& body) {
  const std::string key_hash = sha256_hex(key);
  const auto dir = session_dir(snapshot.session_id) / "cache";
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!ec) {
    try {
      write_file_atomic(dir / (key_hash + ".json"), snapshot.log_hash + "\n" + body);
    } catch (const Error&) {
      // the in-memory entry still serves repeat requests
    }
  }
  std::lock_guard lock(cache_mutex_);
  cache_[snapshot.log_hash + "/" + key_hash] = body;
}

std::size_t SessionStore::cache_entries() const {
  std::lock_guard lock(cache_mutex_);
  return cache_.size();
}

}  // namespace touchscope
