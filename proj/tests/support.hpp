#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace aco::testing {

inline std::filesystem::path data_path(const std::string& relative) {
  return std::filesystem::path(ACO_DATA_DIR) / relative;
}

inline std::filesystem::path golden_path(const std::string& name) {
  return std::filesystem::path(ACO_GOLDEN_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace aco::testing
