/** Copyright 2026 The ArcForge Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * 	http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "arcforge/common/file_util.h"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include <fmt/format.h>

#include "arcforge/common/error.h"

namespace arcforge {

namespace {

[[noreturn]] void ThrowErrno(std::string_view what, const fs::path& path) {
  Throw(ErrorCode::kIoError, fmt::format("{} {}: {}", what, path.string(), std::strerror(errno)));
}

class Fd {
 public:
  Fd(const fs::path& path, int flags, mode_t mode = 0644) : fd_(::open(path.c_str(), flags, mode)) {
    if (fd_ < 0) ThrowErrno("open", path);
  }
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  int get() const { return fd_; }

 private:
  int fd_;
};

}  // namespace

std::string ReadFile(const fs::path& path) {
  Fd fd(path, O_RDONLY);
  std::string out;
  char buf[1 << 16];
  while (true) {
    ssize_t n = ::read(fd.get(), buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      ThrowErrno("read", path);
    }
    if (n == 0) break;
    out.append(buf, static_cast<size_t>(n));
  }
  return out;
}

void WriteFileSynced(const fs::path& path, std::string_view bytes) {
  Fd fd(path, O_WRONLY | O_CREAT | O_TRUNC);
  const char* p = bytes.data();
  size_t left = bytes.size();
  while (left > 0) {
    ssize_t n = ::write(fd.get(), p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      ThrowErrno("write", path);
    }
    p += n;
    left -= static_cast<size_t>(n);
  }
  if (::fdatasync(fd.get()) != 0) ThrowErrno("fdatasync", path);
}

void FsyncDirectory(const fs::path& dir) {
  Fd fd(dir, O_RDONLY | O_DIRECTORY);
  if (::fsync(fd.get()) != 0) ThrowErrno("fsync", dir);
}

void WriteFileAtomic(const fs::path& path, std::string_view bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  WriteFileSynced(tmp, bytes);
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) Throw(ErrorCode::kIoError, fmt::format("rename {}: {}", tmp.string(), ec.message()));
  FsyncDirectory(path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

MappedFile::MappedFile(const fs::path& path) {
  Fd fd(path, O_RDONLY);
  struct stat st {};
  if (::fstat(fd.get(), &st) != 0) ThrowErrno("stat", path);
  size_ = static_cast<size_t>(st.st_size);
  if (size_ == 0) return;
  data_ = ::mmap(nullptr, size_, PROT_READ, MAP_PRIVATE, fd.get(), 0);
  if (data_ == MAP_FAILED) {
    data_ = nullptr;
    ThrowErrno("mmap", path);
  }
}

MappedFile::~MappedFile() {
  if (data_ != nullptr) ::munmap(data_, size_);
}

}  // namespace arcforge
