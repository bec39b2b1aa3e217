#include "vvl/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vvl/errors.hpp"

namespace vvl {

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

std::string fmt(double v, int precision = 6) {
  char buf[40];
  auto [p, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general,
                    precision);
  return std::string(buf, p);
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

double transform(double v, bool log_scale) {
  return log_scale ? std::log10(std::max(v, 1e-300)) : v;
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& xlabel,
                           const std::string& ylabel,
                           const std::vector<PlotSeries>& series, bool log_x,
                           bool log_y) {
  const double W = 720, H = 480;
  const double ml = 80, mr = 24, mt = 48, mb = 60;

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const PlotSeries& s : series)
    for (size_t i = 0; i < s.xs.size(); ++i) {
      const double x = transform(s.xs[i], log_x);
      const double y = transform(s.ys[i], log_y);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax - xmin < 1e-12) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }

  const auto px = [&](double x) {
    return ml + (transform(x, log_x) - xmin) / (xmax - xmin) * (W - ml - mr);
  };
  const auto py = [&](double y) {
    return H - mb -
           (transform(y, log_y) - ymin) / (ymax - ymin) * (H - mt - mb);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" "
         "height=\"480\" viewBox=\"0 0 720 480\">\n";
  svg += "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"360\" y=\"28\" text-anchor=\"middle\" font-size=\"16\" "
         "font-family=\"sans-serif\">" + title + "</text>\n";
  // axes
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(H - mb) + "\" x2=\"" +
         fmt(W - mr) + "\" y2=\"" + fmt(H - mb) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) +
         "\" y2=\"" + fmt(H - mb) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  // ticks
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    const double tx = ml + (W - ml - mr) * i / 4.0;
    const double ty = H - mb - (H - mt - mb) * i / 4.0;
    const double label_x = log_x ? std::pow(10.0, fx) : fx;
    const double label_y = log_y ? std::pow(10.0, fy) : fy;
    svg += "<line x1=\"" + fmt(tx) + "\" y1=\"" + fmt(H - mb) + "\" x2=\"" +
           fmt(tx) + "\" y2=\"" + fmt(H - mb + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(tx) + "\" y=\"" + fmt(H - mb + 20) +
           "\" text-anchor=\"middle\" font-size=\"11\" "
           "font-family=\"sans-serif\">" + fmt(label_x, 4) + "</text>\n";
    svg += "<line x1=\"" + fmt(ml - 5) + "\" y1=\"" + fmt(ty) + "\" x2=\"" +
           fmt(ml) + "\" y2=\"" + fmt(ty) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(ty + 4) +
           "\" text-anchor=\"end\" font-size=\"11\" "
           "font-family=\"sans-serif\">" + fmt(label_y, 4) + "</text>\n";
  }
  svg += "<text x=\"" + fmt((ml + W - mr) / 2) + "\" y=\"" + fmt(H - 16) +
         "\" text-anchor=\"middle\" font-size=\"13\" "
         "font-family=\"sans-serif\">" + xlabel + "</text>\n";
  svg += "<text x=\"20\" y=\"" + fmt((mt + H - mb) / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" "
         "font-family=\"sans-serif\" transform=\"rotate(-90 20 " +
         fmt((mt + H - mb) / 2) + ")\">" + ylabel + "</text>\n";

  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string pts;
    for (size_t i = 0; i < series[s].xs.size(); ++i) {
      pts += fmt(px(series[s].xs[i])) + "," + fmt(py(series[s].ys[i]));
      if (i + 1 < series[s].xs.size()) pts += " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    const double ly = mt + 18.0 * static_cast<double>(s);
    svg += "<line x1=\"" + fmt(W - mr - 140) + "\" y1=\"" + fmt(ly) +
           "\" x2=\"" + fmt(W - mr - 116) + "\" y2=\"" + fmt(ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(W - mr - 110) + "\" y=\"" + fmt(ly + 4) +
           "\" font-size=\"11\" font-family=\"sans-serif\">" +
           series[s].label + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void RunManifest::add_file(const std::filesystem::path& base,
                           const std::filesystem::path& path) {
  const std::string content = read_text_file(path);
  FileEntry e;
  e.path = std::filesystem::relative(path, base).generic_string();
  e.bytes = content.size();
  e.fnv1a64 = fnv1a64_hex(content);
  files.push_back(std::move(e));
}

std::string RunManifest::json() const {
  std::vector<FileEntry> sorted = files;
  std::sort(sorted.begin(), sorted.end(),
            [](const FileEntry& a, const FileEntry& b) { return a.path < b.path; });
  std::string out = "{\n  \"command\": \"" + command + "\",\n";
  out += "  \"version\": \"" + version + "\",\n";
  out += "  \"wall_time_s\": " + fmt(wall_time_s) + ",\n";
  out += "  \"config\": [";
  // config echo as an array of lines, keeps the JSON readable
  std::istringstream in(config_echo);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!first) out += ", ";
    out += "\"" + line + "\"";
    first = false;
  }
  out += "],\n  \"files\": [\n";
  for (size_t i = 0; i < sorted.size(); ++i) {
    out += "    {\"path\": \"" + sorted[i].path + "\", \"bytes\": " +
           std::to_string(sorted[i].bytes) + ", \"fnv1a64\": \"" +
           sorted[i].fnv1a64 + "\"}";
    if (i + 1 < sorted.size()) out += ",";
    out += "\n";
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace vvl
