#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "modlim/harness.hpp"

namespace modlim::report {

/// %.12g; "nan", "inf" and "-inf" for non-finite values.
std::string fmt(double v);

/// RFC 4180 style: fields with commas, quotes or line breaks are quoted and
/// embedded quotes doubled. Lines end in CRLF-free "\n".
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return out_; }
  static std::string quote(std::string_view field);

 private:
  std::size_t width_;
  std::string out_;
};

std::string sweep_csv(const harness::SweepReport& r);
std::string sweep_summary(const harness::SweepReport& r, double bound);
std::string eta_csv(const harness::EtaReport& r);
std::string eta_summary(const harness::EtaReport& r);
std::string sandwich_summary(const harness::SandwichVerdict& v);
std::string lsc_csv(const harness::LscReport& r);

struct Series {
  std::string label;
  std::vector<double> x, y;
};

/// Static line chart. With `log_x` the x-axis is base-2 logarithmic.
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<Series>& series,
                           bool log_x, std::optional<double> reference_y = std::nullopt);

std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Run manifest: toolkit version, command, seed and a hash of the canonical
/// (key-sorted) config dump.
nlohmann::json manifest(const std::string& command, const nlohmann::json& config,
                        std::uint64_t seed);

}  // namespace modlim::report
