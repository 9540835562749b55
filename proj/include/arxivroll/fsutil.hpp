#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace arxivroll {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// see either the old or the new content.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

// Exclusive advisory lock (flock) held for the object's lifetime. The lock
// file is created if missing.
class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path);
  ~FileLock();
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace arxivroll
