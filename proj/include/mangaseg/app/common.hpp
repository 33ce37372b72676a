#ifndef MANGASEG_APP_COMMON_HPP_
#define MANGASEG_APP_COMMON_HPP_

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "mangaseg/error.hpp"

namespace mangaseg::app
{

namespace fs = std::filesystem;

/// Outcome of a batch command. Warnings never affect the exit code.
struct CommandResult
{
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  int exit_code() const noexcept { return errors.empty() ? 0 : 1; }
};

/// Regular files in `dir` with the given extension (lower-case, with dot),
/// sorted by name.
inline std::vector<fs::path> list_files(const fs::path& dir, const std::vector<std::string>& extensions)
{
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (std::find(extensions.begin(), extensions.end(), ext) != extensions.end()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// PNG files keyed by stem.
inline std::map<std::string, fs::path> png_by_stem(const fs::path& dir)
{
  std::map<std::string, fs::path> out;
  for (const auto& p : list_files(dir, {".png"})) out.emplace(p.stem().string(), p);
  return out;
}

/// Inputs given as files or directories, expanded to PNG files.
inline std::vector<fs::path> expand_png_inputs(const std::vector<fs::path>& inputs)
{
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      const auto files = list_files(in, {".png"});
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(in);
    }
  }
  return out;
}

/// Runs fn(i) for i in [0, n) on `jobs` threads. Returns the message of the
/// exception each item threw, or an empty string.
inline std::vector<std::string> parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn)
{
  std::vector<std::string> failures(n);
  auto run_one = [&](std::size_t i) {
    try {
      fn(i);
    } catch (const std::exception& e) {
      failures[i] = e.what();
      if (failures[i].empty()) failures[i] = "unknown error";
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
    return failures;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(workers, n); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) run_one(i);
    });
  }
  for (auto& th : pool) th.join();
  return failures;
}

} // namespace mangaseg::app

#endif
