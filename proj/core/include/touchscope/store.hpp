#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "touchscope/ingest.hpp"
#include "touchscope/regions.hpp"

namespace touchscope {

std::string sha256_hex(std::string_view data);

/// Immutable snapshot of one stored session.
struct StoredSession {
  std::string session_id;
  std::string log_hash;
  std::string regions_hash;
  std::shared_ptr<const Session> session;
  std::vector<SemanticRegion> regions;
};

/// Directory-backed session store:
///
///   <root>/sessions/<id>/session.log
///   <root>/sessions/<id>/regions.txt
///   <root>/sessions/<id>/cache/<key-hash>.json
///
/// Cached bodies are keyed by the log hash, so replacing a log invalidates
/// everything derived from it. Readers get immutable snapshots; uploads to
/// one id are single-writer and a concurrent second upload fails with
/// SessionBusy.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path root);

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  /// Parses, segments and persists a log. Without an id the first 16 hex
  /// digits of its hash are used. Returns the stored snapshot.
  std::shared_ptr<const StoredSession> put(std::optional<std::string> session_id,
                                           std::string_view log_text);

  std::shared_ptr<const StoredSession> get(const std::string& session_id) const;

  /// Lexicographic.
  std::vector<std::string> list() const;

  std::shared_ptr<const StoredSession> set_regions(const std::string& session_id,
                                                   std::vector<SemanticRegion> regions);

  std::optional<std::string> cached(const StoredSession& snapshot, const std::string& key) const;
  void store_cache(const StoredSession& snapshot, const std::string& key, const std::string& body);

  std::size_t cache_entries() const;

  static bool valid_session_id(std::string_view id) noexcept;

 private:
  std::filesystem::path session_dir(const std::string& id) const;
  std::shared_ptr<std::mutex> writer_lock(const std::string& id);
  void load_existing();

  std::filesystem::path root_;
  mutable std::shared_mutex index_mutex_;
  std::map<std::string, std::shared_ptr<const StoredSession>> index_;
  std::map<std::string, std::shared_ptr<std::mutex>> writers_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, std::string> cache_;  // "<log hash>/<key hash>" -> body
};

}  // namespace touchscope
