#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef TOUCHSCOPE_TEST_DATA_DIR
#error "TOUCHSCOPE_TEST_DATA_DIR must point at tests/"
#endif

namespace testdata {

inline std::filesystem::path root() { return TOUCHSCOPE_TEST_DATA_DIR; }
inline std::filesystem::path fixtures() { return root() / "fixtures"; }
inline std::filesystem::path golden() { return root() / "golden"; }

inline std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("touchscope-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testdata
