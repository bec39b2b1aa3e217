#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace vvl {

/// FNV-1a content hash used by run manifests.
uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

/// One line chart as a self-contained SVG string with deterministic bytes.
struct PlotSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};
std::string svg_line_chart(const std::string& title, const std::string& xlabel,
                           const std::string& ylabel,
                           const std::vector<PlotSeries>& series,
                           bool log_x = false, bool log_y = false);

/// Inventory of everything a command wrote, with content hashes. Re-running
/// an identical config reproduces identical file hashes (wall time may
/// differ).
struct RunManifest {
  std::string command;
  std::string version;
  std::string config_echo;
  double wall_time_s = 0.0;
  struct FileEntry {
    std::string path;  // relative to the output dir
    uint64_t bytes = 0;
    std::string fnv1a64;
  };
  std::vector<FileEntry> files;

  void add_file(const std::filesystem::path& base,
                const std::filesystem::path& path);
  std::string json() const;
};

}  // namespace vvl
